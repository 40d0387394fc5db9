#pragma once

#include "iwahori/matrix.hpp"
#include "iwahori/scalars.hpp"

namespace iwahori {

// Precision policy for matrix evaluation: start with window [lo, hi) and
// double hi up to `retries` times when a computation runs out of precision.
struct RunConfig {
    int n = 2;
    int p = 3;
    int lo = -4;
    int hi = 8;
    int retries = 3;
    unsigned long seed = 0;

    void validate() const;
};

int inv_count(const std::vector<int>& sigma);
int perm_sign(const std::vector<int>& sigma);
std::vector<int> perm_inverse(const std::vector<int>& sigma);

// q^{inv(sigma)}: index of the Iwahori orbit attached to sigma.
QLPoly vol_sigma(const std::vector<int>& sigma);
// q^{sum_{i<j} (d_i - d_j)} for dominant d.
QLPoly vol_dominant(const std::vector<int>& d);
// lambda^{sum d_i} * q^{-sum_{i<j} (d_i - d_j)}; defined for every d.
QLPoly delta_lambda(const std::vector<int>& d);

// Support condition for the cell (d, sigma): for each i < n,
// d_i >= d_{i+1} - [sigma^{-1}(i) > sigma^{-1}(i+1)].
bool cell_in_support(const Cell& c);

// Formal value on the cell: sign(sigma) * lambda^{sum d} /
// (q^{sum_{i<j}(d_i - d_j)} * q^{inv(sigma)}) on the support, else 0.
QLPoly whittaker_formula(const Cell& c);

// Value at an arbitrary invertible matrix: decompose, read the additive
// character off the unipotent factor, specialize q -> p.
CycloScalar whittaker_eval(const SeriesMatrix& g, const RunConfig& cfg);

}  // namespace iwahori
