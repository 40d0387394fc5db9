#include "iwahori/matrix.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace iwahori {

SeriesMatrix::SeriesMatrix(int n, int p) : n_(n), p_(p) {
    if (n < 1) throw std::invalid_argument("SeriesMatrix: size must be positive");
    e_.assign(static_cast<size_t>(n) * n, Series(p));
}

size_t SeriesMatrix::idx(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
        throw std::out_of_range("SeriesMatrix: index");
    return static_cast<size_t>(i - 1) * n_ + (j - 1);
}

SeriesMatrix SeriesMatrix::identity(int n, int p) {
    SeriesMatrix m(n, p);
    for (int i = 1; i <= n; ++i) m.at(i, i) = Series::monomial(p, 0);
    return m;
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& o) const {
    if (n_ != o.n_ || p_ != o.p_)
        throw std::invalid_argument("SeriesMatrix: incompatible product");
    SeriesMatrix r(n_, p_);
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j) {
            Series acc(p_);
            for (int k = 1; k <= n_; ++k) acc += at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

SeriesMatrix SeriesMatrix::operator+(const SeriesMatrix& o) const {
    SeriesMatrix r(n_, p_);
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
    return r;
}

SeriesMatrix SeriesMatrix::operator-(const SeriesMatrix& o) const {
    SeriesMatrix r(n_, p_);
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
    return r;
}

Series SeriesMatrix::det() const {
    if (n_ > 12) throw std::invalid_argument("SeriesMatrix::det: size too large");
    // D[mask] = determinant of the first popcount(mask) rows on columns in mask.
    std::vector<Series> D(size_t(1) << n_, Series(p_));
    D[0] = Series::monomial(p_, 0);
    for (unsigned mask = 1; mask < (1u << n_); ++mask) {
        int row = __builtin_popcount(mask);
        Series acc(p_);
        int pos = 0;
        for (int c = 0; c < n_; ++c) {
            if (!(mask & (1u << c))) continue;
            Series term = at(row, c + 1) * D[mask & ~(1u << c)];
            acc += ((row - 1 + pos) % 2 == 0) ? term : -term;
            ++pos;
        }
        D[mask] = acc;
    }
    return D[(1u << n_) - 1];
}

SeriesMatrix SeriesMatrix::truncated(int new_hi) const {
    SeriesMatrix r(n_, p_);
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j) r.at(i, j) = at(i, j).truncated(new_hi);
    return r;
}

bool SeriesMatrix::agrees_with(const SeriesMatrix& o) const {
    if (n_ != o.n_ || p_ != o.p_) return false;
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j)
            if (!at(i, j).agrees_with(o.at(i, j))) return false;
    return true;
}

std::string SeriesMatrix::str() const {
    std::ostringstream os;
    for (int i = 1; i <= n_; ++i) {
        os << "[ ";
        for (int j = 1; j <= n_; ++j) {
            os << at(i, j).str();
            if (j < n_) os << " | ";
        }
        os << " ]\n";
    }
    return os.str();
}

bool is_permutation(const std::vector<int>& sigma) {
    int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (int v : sigma) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v)]) return false;
        seen[static_cast<size_t>(v)] = true;
    }
    return true;
}

SeriesMatrix perm_matrix(int p, const std::vector<int>& sigma) {
    if (!is_permutation(sigma)) throw std::invalid_argument("perm_matrix: not a permutation");
    int n = static_cast<int>(sigma.size());
    SeriesMatrix m(n, p);
    for (int j = 1; j <= n; ++j) m.at(sigma[static_cast<size_t>(j - 1)], j) = Series::monomial(p, 0);
    return m;
}

SeriesMatrix diag_pi_matrix(int p, const std::vector<int>& d) {
    int n = static_cast<int>(d.size());
    SeriesMatrix m(n, p);
    for (int i = 1; i <= n; ++i) m.at(i, i) = Series::monomial(p, d[static_cast<size_t>(i - 1)]);
    return m;
}

SeriesMatrix cell_matrix(const Cell& c, int p) {
    if (c.d.size() != c.sigma.size())
        throw std::invalid_argument("cell_matrix: size mismatch");
    if (!is_permutation(c.sigma))
        throw std::invalid_argument("cell_matrix: sigma is not a permutation");
    int n = static_cast<int>(c.d.size());
    SeriesMatrix m(n, p);
    for (int j = 1; j <= n; ++j) {
        int i = c.sigma[static_cast<size_t>(j - 1)];
        m.at(i, j) = Series::monomial(p, c.d[static_cast<size_t>(i - 1)]);
    }
    return m;
}

bool iwahori_member(const SeriesMatrix& m) {
    bool pending = false;
    for (int i = 1; i <= m.n(); ++i)
        for (int j = 1; j <= m.n(); ++j) {
            int threshold = (i > j) ? 1 : 0;
            try {
                if (!m.at(i, j).val_at_least(threshold)) return false;
            } catch (const insufficient_precision&) {
                pending = true;
            }
        }
    if (pending)
        throw insufficient_precision("iwahori_member: entry window too small");
    Series dv = m.det();
    if (dv.is_exact_zero()) return false;
    if (dv.has_valuation()) return dv.valuation() == 0;
    if (dv.hi() >= 1) return false;  // val >= 1 certified, determinant not a unit
    throw insufficient_precision("iwahori_member: determinant window too small");
}

int residue_character(const SeriesMatrix& u) {
    long s = 0;
    for (int i = 1; i < u.n(); ++i) s += u.at(i, i + 1).residue_coeff();
    return static_cast<int>(s % u.p());
}

Decomposition decompose(const SeriesMatrix& g, int work_hi) {
    const int n = g.n(), p = g.p();
    SeriesMatrix M = g;
    SeriesMatrix u = SeriesMatrix::identity(n, p);
    SeriesMatrix k = SeriesMatrix::identity(n, p);
    std::vector<int> pivcol(static_cast<size_t>(n) + 1, 0);
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    std::vector<int> d(static_cast<size_t>(n), 0);

    for (int r = n; r >= 1; --r) {
        // Clear this row in already-pivoted columns with row operations from
        // below; processed rows hold a single entry pi^{d} at their pivot.
        for (int r2 = r + 1; r2 <= n; ++r2) {
            int jc = pivcol[static_cast<size_t>(r2)];
            const Series& a = M.at(r, jc);
            if (a.known_part_zero()) continue;
            Series beta = a * Series::monomial(p, -d[static_cast<size_t>(r2 - 1)]);
            for (int c = 1; c <= n; ++c)
                M.at(r, c) -= beta * M.at(r2, c);
            for (int i = 1; i <= n; ++i)
                u.at(i, r2) += beta * u.at(i, r);
        }

        // Pivot: leftmost unused column of minimal certified valuation.
        int vstar = INT_MAX, cstar = -1;
        bool unknown_present = false;
        for (int c = 1; c <= n; ++c) {
            if (used[static_cast<size_t>(c)]) continue;
            const Series& a = M.at(r, c);
            if (a.has_valuation()) {
                if (a.valuation() < vstar) {
                    vstar = a.valuation();
                    cstar = c;
                }
            } else if (!a.is_exact_zero()) {
                unknown_present = true;
            }
        }
        if (cstar == -1) {
            if (unknown_present)
                throw insufficient_precision("decompose: no certified pivot in row");
            throw not_invertible("decompose: zero row, matrix is singular");
        }
        for (int c = 1; c <= n; ++c) {
            if (used[static_cast<size_t>(c)] || c == cstar) continue;
            const Series& a = M.at(r, c);
            if (!a.has_valuation() && !a.is_exact_zero() && a.hi() <= vstar)
                throw insufficient_precision("decompose: pivot choice not certified");
        }
        pivcol[static_cast<size_t>(r)] = cstar;
        used[static_cast<size_t>(cstar)] = true;
        d[static_cast<size_t>(r - 1)] = vstar;

        Series pinv = M.at(r, cstar).inverse(work_hi);
        Series unit = M.at(r, cstar) * Series::monomial(p, -vstar);

        // Clear the rest of the row with column operations; multipliers lie in
        // O for columns right of the pivot and in pi*O left of it, since the
        // pivot is leftmost among minimal-valuation columns.
        for (int c = 1; c <= n; ++c) {
            if (used[static_cast<size_t>(c)] || c == cstar) continue;
            const Series& a = M.at(r, c);
            if (a.known_part_zero()) continue;
            Series alpha = -(a * pinv);
            for (int i = 1; i <= n; ++i)
                M.at(i, c) += alpha * M.at(i, cstar);
            for (int j = 1; j <= n; ++j)
                k.at(cstar, j) -= alpha * k.at(c, j);
        }

        // Scale the pivot column so the pivot entry is exactly pi^{vstar}.
        Series s = Series::monomial(p, vstar) * pinv;
        for (int i = 1; i <= n; ++i) M.at(i, cstar) *= s;
        for (int j = 1; j <= n; ++j) k.at(cstar, j) *= unit;
    }

    // Every operation updated (u, M) or (M, k) as a pair, so g = u * M * k
    // holds within tracked windows, and all uncertified residue sits in M.
    // Fold M = D*sigma + tails into the right factor; the product clips k's
    // windows honestly, and equals k unchanged when no entry was truncated.
    SeriesMatrix fold(n, p);
    for (int r = 1; r <= n; ++r)
        fold.at(pivcol[static_cast<size_t>(r)], r) =
            Series::monomial(p, -d[static_cast<size_t>(r - 1)]);
    k = fold * M * k;

    Cell cell;
    cell.d = d;
    cell.sigma.assign(static_cast<size_t>(n), 0);
    for (int r = 1; r <= n; ++r)
        cell.sigma[static_cast<size_t>(pivcol[static_cast<size_t>(r)] - 1)] = r;
    return Decomposition{u, cell, k};
}

SeriesMatrix mat_inv(const SeriesMatrix& m, int work_hi) {
    const int n = m.n(), p = m.p();
    SeriesMatrix B = m;
    SeriesMatrix X = SeriesMatrix::identity(n, p);
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    std::vector<int> pivrow(static_cast<size_t>(n) + 1, 0);

    for (int c = 1; c <= n; ++c) {
        int vstar = INT_MAX, rstar = -1;
        bool unknown_present = false;
        for (int r = 1; r <= n; ++r) {
            if (used[static_cast<size_t>(r)]) continue;
            const Series& a = B.at(r, c);
            if (a.has_valuation()) {
                if (a.valuation() < vstar) {
                    vstar = a.valuation();
                    rstar = r;
                }
            } else if (!a.is_exact_zero()) {
                unknown_present = true;
            }
        }
        if (rstar == -1) {
            if (unknown_present)
                throw insufficient_precision("mat_inv: no certified pivot in column");
            throw not_invertible("mat_inv: singular matrix");
        }
        for (int r = 1; r <= n; ++r) {
            if (used[static_cast<size_t>(r)] || r == rstar) continue;
            const Series& a = B.at(r, c);
            if (!a.has_valuation() && !a.is_exact_zero() && a.hi() <= vstar)
                throw insufficient_precision("mat_inv: pivot choice not certified");
        }
        used[static_cast<size_t>(rstar)] = true;
        pivrow[static_cast<size_t>(c)] = rstar;

        Series pinv = B.at(rstar, c).inverse(work_hi);
        for (int j = 1; j <= n; ++j) {
            B.at(rstar, j) *= pinv;
            X.at(rstar, j) *= pinv;
        }
        for (int r = 1; r <= n; ++r) {
            if (r == rstar) continue;
            Series a = B.at(r, c);
            if (a.known_part_zero()) continue;
            for (int j = 1; j <= n; ++j) {
                B.at(r, j) -= a * B.at(rstar, j);
                X.at(r, j) -= a * X.at(rstar, j);
            }
        }
    }

    SeriesMatrix inv(n, p);
    for (int c = 1; c <= n; ++c)
        for (int j = 1; j <= n; ++j)
            inv.at(c, j) = X.at(pivrow[static_cast<size_t>(c)], j);

    // X * m = B within windows, so after the row reordering inv * m = I + T
    // where T collects the truncation tails (known part zero). The true
    // inverse A satisfies A = inv - T * A; clip each window by a valuation
    // bound on that product instead of silently claiming T = 0.
    int min_tail = INT_MAX;
    std::vector<int> row_tail(static_cast<size_t>(n) + 1, INT_MAX);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Series t = B.at(pivrow[static_cast<size_t>(i)], j);
            if (i == j) t -= Series::monomial(p, 0);
            if (t.is_exact_zero()) continue;
            if (!t.known_part_zero())
                throw std::logic_error("mat_inv: residual has visible content");
            min_tail = std::min(min_tail, t.hi());
            row_tail[static_cast<size_t>(i)] =
                std::min(row_tail[static_cast<size_t>(i)], t.hi());
        }
    if (min_tail == INT_MAX) return inv;  // nothing was truncated
    if (min_tail <= 0)
        throw insufficient_precision("mat_inv: residual window too small");
    for (int k = 1; k <= n; ++k) {
        int mu = INT_MAX;  // valuation floor of column k of A
        for (int j = 1; j <= n; ++j)
            mu = std::min(mu, inv.at(j, k).val_lower_bound());
        for (int i = 1; i <= n; ++i) {
            if (row_tail[static_cast<size_t>(i)] == INT_MAX || mu == INT_MAX) continue;
            inv.at(i, k) =
                inv.at(i, k).truncated(row_tail[static_cast<size_t>(i)] + mu);
        }
    }
    return inv;
}

}  // namespace iwahori
