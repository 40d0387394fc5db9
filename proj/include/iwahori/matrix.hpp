#pragma once

#include "iwahori/series.hpp"

#include <vector>

namespace iwahori {

// Square matrix over F_p((pi)).
class SeriesMatrix {
public:
    SeriesMatrix(int n, int p);  // exact zero matrix
    static SeriesMatrix identity(int n, int p);

    int n() const { return n_; }
    int p() const { return p_; }
    Series& at(int i, int j) { return e_[idx(i, j)]; }          // 1-based
    const Series& at(int i, int j) const { return e_[idx(i, j)]; }

    SeriesMatrix operator*(const SeriesMatrix& o) const;
    SeriesMatrix operator+(const SeriesMatrix& o) const;
    SeriesMatrix operator-(const SeriesMatrix& o) const;

    // Determinant by expansion over column subsets; fine for small n.
    Series det() const;

    SeriesMatrix truncated(int new_hi) const;
    bool agrees_with(const SeriesMatrix& o) const;

    std::string str() const;

private:
    int n_, p_;
    std::vector<Series> e_;

    size_t idx(int i, int j) const;
};

// Label of an Iwahori double coset: diagonal pi-exponents d and a permutation
// sigma in one-line notation (1-based images), with matrix (sigma)_{ij} = 1
// iff i = sigma(j).
struct Cell {
    std::vector<int> d;
    std::vector<int> sigma;

    bool operator==(const Cell& o) const { return d == o.d && sigma == o.sigma; }
};

bool is_permutation(const std::vector<int>& sigma);

SeriesMatrix perm_matrix(int p, const std::vector<int>& sigma);
// diag(pi^{d_1}, ..., pi^{d_n}) * perm(sigma); exact entries.
SeriesMatrix cell_matrix(const Cell& c, int p);
SeriesMatrix diag_pi_matrix(int p, const std::vector<int>& d);

// Membership in the Iwahori subgroup: entries integral, below-diagonal
// entries in pi*O, determinant a unit.  Throws insufficient_precision when
// the window cannot certify either way.
bool iwahori_member(const SeriesMatrix& m);

// Sum over i of the pi^{-1} coefficient of the (i, i+1) entry, mod p.
int residue_character(const SeriesMatrix& u);

struct Decomposition {
    SeriesMatrix u;  // unipotent upper triangular over F_p((pi))
    Cell cell;
    SeriesMatrix k;  // Iwahori factor
};

// g = u * diag(pi^d) * perm(sigma) * k.  Row reduction runs bottom-up with
// bottom-row pivots chosen leftmost among minimal-valuation unused columns;
// unit inversions are truncated below work_hi.
Decomposition decompose(const SeriesMatrix& g, int work_hi);

// Gauss-Jordan inverse with minimal-valuation pivoting.
SeriesMatrix mat_inv(const SeriesMatrix& m, int work_hi);

}  // namespace iwahori
