#pragma once

#include "iwahori/hecke.hpp"
#include "iwahori/quiver.hpp"
#include "iwahori/scalars.hpp"

#include <map>
#include <string>
#include <vector>

namespace iwahori {

// Trace values for torsion degree d at every half-integer k in [0, d].
// Keys are t = 2k. The table satisfies values(0) = lambda^d and the shift
// symmetry values(k) = values(d - k); the defining recursion is only applied
// on 0 < k <= d/2, the upper half is filled by the symmetry.
struct TraceTable {
    int d = 1;
    std::map<int, QLPoly> values;

    const QLPoly& at_half(int t) const;
    std::string str() const;
};

TraceTable l_values(int d);

struct TraceReport {
    bool ok = true;
    std::vector<std::string> failures;
};

// Difference identity on 0 < k <= d/2:
//   L(k) - L(k - 1/2) = q^{2k} lambda^d   for integral k,
//                     = -q^{2k} lambda^d  for half-integral k.
TraceReport verify_difference(int d);

// Shell sums with the extension weight dropped, on 0 < k <= d/2:
//   L(k) + (q - 1) * sum_i q^i L(k - 1/2 - i) = q^k lambda^d  for integral k,
//                                             = 0             for half-integral k.
TraceReport verify_unweighted(int d);

// The three classes of node-dimension (1,1) at n = 2, paired with operator
// words and their eigenvalues. Construction recomputes each eigenvalue from
// the word and cross-checks the class list; a mismatch throws.
struct DictionaryEntry {
    Multisegment ms;
    HeckeGenerator op;
    QLPoly eigenvalue;
};

std::vector<DictionaryEntry> sheaf_operator_table();

}  // namespace iwahori
