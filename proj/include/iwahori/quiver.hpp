#pragma once

#include "iwahori/fpmat.hpp"

#include <string>
#include <utility>
#include <vector>

namespace iwahori {

// Nilpotent representations of the cyclic quiver with n nodes over F_p.
// maps[j] is the arrow out of node j into node (j+1) mod n, so it has shape
// dims[(j+1) mod n] x dims[j].
struct QuiverRep {
    int n = 1;
    int p = 2;
    std::vector<int> dims;
    std::vector<FpMatrix> maps;
};

// Indecomposable label: one basis vector at each of the nodes
// start, start+1, ..., start+len-1 (mod n), consecutive arrows acting as the
// identity and the last basis vector mapping to zero.
struct Segment {
    int start = 0;
    int len = 1;

    bool operator==(const Segment& o) const { return start == o.start && len == o.len; }
    bool operator<(const Segment& o) const {
        return start != o.start ? start < o.start : len < o.len;
    }
};

struct Multisegment {
    std::vector<Segment> segments;

    void canonicalize();
    bool operator==(const Multisegment& o) const;
    bool operator!=(const Multisegment& o) const { return !(*this == o); }
    std::vector<int> node_dims(int n) const;
    int total_dim() const;
    std::string str() const;
};

struct QuiverReport {
    bool ok = true;
    std::vector<std::string> problems;
};

// Shape consistency always; nilpotency of the around-the-cycle composites
// unless require_nilpotent is false.
QuiverReport validate_rep(const QuiverRep& r, bool require_nilpotent = true);

// Composite of l consecutive arrows starting at node i; l = 0 is the identity
// on node i.
FpMatrix cycle_map(const QuiverRep& r, int i, int l);
int cycle_rank(const QuiverRep& r, int i, int l);

QuiverRep build_from_multisegment(const Multisegment& ms, int n, int p);
QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b);

// basis[j] is invertible and r.maps[j] * basis[j] == basis[(j+1)%n] * c.maps[j]
// where c = build_from_multisegment(ms, r.n, r.p). The identity is checked on
// every call; a violation throws std::logic_error.
struct SplitResult {
    Multisegment ms;
    std::vector<FpMatrix> basis;
};
SplitResult decompose_rep(const QuiverRep& r);

// All isomorphism classes with the given dimension vector, canonically sorted.
std::vector<Multisegment> enumerate_classes(const std::vector<int>& dims, int n);

int hom_dim(const QuiverRep& x, const QuiverRep& y);
int ext1_dim(const QuiverRep& x, const QuiverRep& y);

// Chain of nested subrepresentations 0 != F_1 < F_2 < ... < F_k = r, each term
// given by node-wise embedding matrices (columns = basis of the subspace in
// r's coordinates).
struct Filtration {
    std::vector<std::vector<FpMatrix>> steps;
};

// Each successive quotient is one-dimensional, concentrated at a single node;
// ties broken by lowest node, then first usable kernel vector.
Filtration elementary_filtration(const QuiverRep& r);

// Requires constant dims (d, ..., d); returns the chain whose k-th term has
// dimension k at every node. Throws std::invalid_argument for non-constant
// dims and std::logic_error if no such chain exists (it always does for
// nilpotent input).
Filtration constant_filtration(const QuiverRep& r);

bool check_filtration(const QuiverRep& r, const Filtration& f);

// Hom/Ext dimension bookkeeping for the pairing of a one-dimensional torsion
// module at node i0 against a chain of lattices with the given degree
// sequence; degrees extend beyond one period by deg(i + n) = deg(i) + rank.
// Returns {hom, ext1} = {deg(i0) - deg(i0-1), deg(i0+1) - deg(i0)}.
std::pair<int, int> pairing_dims_elementary(int i0, const std::vector<int>& degrees,
                                            int rank);
// Torsion module of constant degree d against rank-many lattices: both
// dimensions equal d * rank.
std::pair<int, int> pairing_dims_constant(int d, int rank);

}  // namespace iwahori
