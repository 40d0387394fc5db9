#include "iwahori/whittaker.hpp"

namespace iwahori {

void RunConfig::validate() const {
    if (n < 1) throw std::invalid_argument("RunConfig: n must be positive");
    if (!is_prime(p)) throw std::invalid_argument("RunConfig: p must be prime");
    if (!(lo < 0 && 0 < hi))
        throw std::invalid_argument("RunConfig: window must satisfy lo < 0 < hi");
    if (retries < 0) throw std::invalid_argument("RunConfig: negative retry cap");
}

int inv_count(const std::vector<int>& sigma) {
    int n = static_cast<int>(sigma.size()), c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sigma[static_cast<size_t>(i)] > sigma[static_cast<size_t>(j)]) ++c;
    return c;
}

int perm_sign(const std::vector<int>& sigma) {
    return inv_count(sigma) % 2 == 0 ? 1 : -1;
}

std::vector<int> perm_inverse(const std::vector<int>& sigma) {
    if (!is_permutation(sigma))
        throw std::invalid_argument("perm_inverse: not a permutation");
    std::vector<int> inv(sigma.size(), 0);
    for (size_t j = 0; j < sigma.size(); ++j)
        inv[static_cast<size_t>(sigma[j] - 1)] = static_cast<int>(j) + 1;
    return inv;
}

QLPoly vol_sigma(const std::vector<int>& sigma) {
    if (!is_permutation(sigma))
        throw std::invalid_argument("vol_sigma: not a permutation");
    return QLPoly::q_pow(inv_count(sigma));
}

namespace {

int dominance_gap(const std::vector<int>& d) {
    int s = 0, n = static_cast<int>(d.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            s += d[static_cast<size_t>(i)] - d[static_cast<size_t>(j)];
    return s;
}

}  // namespace

QLPoly vol_dominant(const std::vector<int>& d) {
    for (size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i] < d[i + 1])
            throw std::invalid_argument("vol_dominant: exponent vector not dominant");
    return QLPoly::q_pow(dominance_gap(d));
}

QLPoly delta_lambda(const std::vector<int>& d) {
    int s = 0;
    for (int x : d) s += x;
    return QLPoly::term(1, -dominance_gap(d), s);
}

bool cell_in_support(const Cell& c) {
    if (c.d.size() != c.sigma.size() || !is_permutation(c.sigma))
        throw std::invalid_argument("cell_in_support: malformed cell");
    std::vector<int> si = perm_inverse(c.sigma);
    int n = static_cast<int>(c.d.size());
    for (int i = 1; i < n; ++i) {
        int delta = si[static_cast<size_t>(i - 1)] > si[static_cast<size_t>(i)] ? 1 : 0;
        if (c.d[static_cast<size_t>(i - 1)] < c.d[static_cast<size_t>(i)] - delta)
            return false;
    }
    return true;
}

QLPoly whittaker_formula(const Cell& c) {
    if (!cell_in_support(c)) return QLPoly();
    int s = 0;
    for (int x : c.d) s += x;
    return QLPoly::term(perm_sign(c.sigma), -dominance_gap(c.d) - inv_count(c.sigma), s);
}

CycloScalar whittaker_eval(const SeriesMatrix& g, const RunConfig& cfg) {
    cfg.validate();
    int work_hi = cfg.hi;
    for (int attempt = 0;; ++attempt) {
        try {
            Decomposition dec = decompose(g, work_hi);
            QLPoly f = whittaker_formula(dec.cell);
            if (f.is_zero()) return CycloScalar(g.p());
            int r = residue_character(dec.u);
            return psi_char(g.p(), r) * specialize(f, g.p());
        } catch (const insufficient_precision&) {
            if (attempt >= cfg.retries) throw;
            work_hi *= 2;
        }
    }
}

}  // namespace iwahori
