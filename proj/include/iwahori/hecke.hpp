#pragma once

#include "iwahori/whittaker.hpp"

#include <functional>

namespace iwahori {

// Double coset label for an Iwahori-Hecke operator, or a composite word of
// such labels.  Word(g1, g2) acts as the operator composition T_{g1} T_{g2},
// so the rightmost factor is applied first.
struct HeckeGenerator {
    enum class Kind { TLeq, SimpleRefl, DiagDominant, Word };

    Kind kind = Kind::Word;
    int i = 0;                         // TLeq / SimpleRefl index
    std::vector<int> d;                // DiagDominant exponents
    std::vector<HeckeGenerator> word;  // Word factors

    static HeckeGenerator tleq(int i);
    static HeckeGenerator srefl(int i);
    static HeckeGenerator diag(std::vector<int> d);
    static HeckeGenerator compose(std::vector<HeckeGenerator> gens);

    std::string str() const;
};

// e_1 -> pi e_i, e_j -> e_{j-1} for 1 < j <= i, e_j -> e_j for j > i.
SeriesMatrix t_leq_matrix(int n, int p, int i);
SeriesMatrix simple_refl_matrix(int n, int p, int i);
// Base point of the double coset the generator labels.
SeriesMatrix generator_matrix(const HeckeGenerator& g, int n, int p);

// Right coset representatives of Iw g Iw / Iw; rejects Word.
std::vector<SeriesMatrix> coset_reps(const HeckeGenerator& g, int n, int p);

// Volume of the double coset as a power of q; specializing q -> p gives the
// representative count. Rejects Word.
QLPoly generator_volume(const HeckeGenerator& g, int n);

struct RepReport {
    bool ok = true;
    size_t count = 0;
    std::vector<std::string> problems;
};

// Certifies the representative list: expected count, membership in Iw g Iw,
// and pairwise inequivalence modulo right Iw.
RepReport validate_reps(const HeckeGenerator& g, int n, int p, int work_hi);

using MatrixFunction = std::function<CycloScalar(const SeriesMatrix&)>;

// (T_g f)(x) = sum over representatives h of f(x h); words recurse.
CycloScalar hecke_apply(const HeckeGenerator& g, const MatrixFunction& f,
                        const SeriesMatrix& x);

// TLeq(i) -> (-1)^{i-1} lambda, SimpleRefl -> -1, DiagDominant(d) ->
// lambda^{sum d}, Word -> product.
QLPoly expected_eigenvalue(const HeckeGenerator& g);

struct EigenReport {
    bool ok = true;
    size_t cells_checked = 0;
    std::vector<std::string> failures;
};

// Checks T_g W = expected * W at each cell by explicit coset summation.
EigenReport verify_eigen(const HeckeGenerator& g, const std::vector<Cell>& cells,
                         const RunConfig& cfg);

// Adjacent transposition word of minimal length, leftmost factor first:
// sigma = s_{w[0]} s_{w[1]} ... s_{w.back()}.
std::vector<int> reduced_word(const std::vector<int>& sigma);

}  // namespace iwahori
