// Acceptance gate: one line per criterion, exact equality throughout.
// Exit status is the number of failed criteria.

#include "iwahori/hecke.hpp"
#include "iwahori/quiver.hpp"
#include "iwahori/trace.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace iwahori;

namespace {

// Raw modulo draws: deterministic across standard libraries.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long seed) : eng(seed) {}
    int next(int m) { return static_cast<int>(eng() % m); }
};

std::vector<int> identity_perm(int n) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = i + 1;
    return s;
}

std::vector<Cell> sample_cells(int n, int count, Rng& rng) {
    std::vector<Cell> cells;
    cells.push_back({std::vector<int>(n, 0), identity_perm(n)});
    std::vector<int> w0(n);
    for (int i = 0; i < n; ++i) w0[i] = n - i;
    cells.push_back({std::vector<int>(n, 0), w0});
    while (static_cast<int>(cells.size()) < count) {
        Cell c;
        for (int i = 0; i < n; ++i) c.d.push_back(rng.next(5) - 2);
        c.sigma = identity_perm(n);
        for (int i = n - 1; i > 0; --i) std::swap(c.sigma[i], c.sigma[rng.next(i + 1)]);
        cells.push_back(c);
    }
    return cells;
}

// Dominant vectors with entries in [-2, 2] and pair-gap sum at most max_gap.
std::vector<std::vector<int>> dominant_diags(int n, int max_gap) {
    std::vector<std::vector<int>> out;
    std::vector<int> d(n);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            int gap = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) gap += d[i] - d[j];
            if (gap <= max_gap) out.push_back(d);
            return;
        }
        int top = pos == 0 ? 2 : d[pos - 1];
        for (int v = -2; v <= top; ++v) {
            d[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

Series random_poly(int p, int lo, int hi, Rng& rng, bool force_unit) {
    std::map<int, int> coeffs;
    if (force_unit) coeffs[0] = 1 + rng.next(p - 1);
    for (int t = 0; t < 3; ++t) {
        int e = lo + rng.next(hi - lo + 1);
        int c = rng.next(p);
        if (c != 0 && (!force_unit || e != 0)) coeffs[e] = c;
    }
    return Series::from_coeffs(p, coeffs);
}

SeriesMatrix random_unipotent(int n, int p, Rng& rng) {
    SeriesMatrix u = SeriesMatrix::identity(n, p);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) u.at(i, j) = random_poly(p, -2, 3, rng, false);
    return u;
}

// (I + pi * strict lower) * (upper with unit diagonal): determinant is a unit,
// so membership holds by construction.
SeriesMatrix random_iwahori(int n, int p, Rng& rng) {
    SeriesMatrix l = SeriesMatrix::identity(n, p);
    for (int i = 2; i <= n; ++i)
        for (int j = 1; j < i; ++j) l.at(i, j) = random_poly(p, 1, 3, rng, false);
    SeriesMatrix r(n, p);
    for (int i = 1; i <= n; ++i) {
        r.at(i, i) = random_poly(p, 1, 3, rng, true);
        for (int j = i + 1; j <= n; ++j) r.at(i, j) = random_poly(p, 0, 3, rng, false);
    }
    return l * r;
}

FpMatrix random_fpmat(int p, int rows, int cols, Rng& rng) {
    FpMatrix m(p, rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, rng.next(2) ? rng.next(p) : 0);
    return m;
}

FpMatrix random_invertible(int p, int k, Rng& rng) {
    for (;;) {
        FpMatrix g(p, k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) g.set(r, c, rng.next(p));
        if (g.rank() == k) return g;
    }
}

QuiverRep random_nilpotent(int n, int p, const std::vector<int>& dims, Rng& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        QuiverRep r;
        r.n = n;
        r.p = p;
        r.dims = dims;
        for (int j = 0; j < n; ++j)
            r.maps.push_back(random_fpmat(p, dims[(j + 1) % n], dims[j], rng));
        if (validate_rep(r).ok) return r;
    }
    // Dense draws rarely miss at these sizes; fall back to a conjugated
    // canonical representative so the sample is still uniform-ish over classes.
    std::vector<Multisegment> classes = enumerate_classes(dims, n);
    QuiverRep canon = build_from_multisegment(classes[rng.next(classes.size())], n, p);
    std::vector<FpMatrix> g;
    for (int j = 0; j < n; ++j) g.push_back(random_invertible(p, dims[j], rng));
    QuiverRep out = canon;
    for (int j = 0; j < n; ++j)
        out.maps[j] = g[(j + 1) % n] * canon.maps[j] * g[j].inverse();
    return out;
}

std::string rep_key(const QuiverRep& r) {
    std::ostringstream os;
    for (int d : r.dims) os << d << ";";
    for (const FpMatrix& m : r.maps)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) os << m.at(i, j) << ",";
    return os.str();
}

std::vector<FpMatrix> all_matrices(int p, int rows, int cols) {
    std::vector<FpMatrix> out;
    long long total = 1;
    for (int i = 0; i < rows * cols; ++i) total *= p;
    for (long long code = 0; code < total; ++code) {
        FpMatrix m(p, rows, cols);
        long long c = code;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                m.set(i, j, static_cast<int>(c % p));
                c /= p;
            }
        out.push_back(std::move(m));
    }
    return out;
}

// Dimension vectors of the given length with total in [1, max_total].
std::vector<std::vector<int>> all_dim_vectors(int n, int max_total) {
    std::vector<std::vector<int>> out;
    std::vector<int> d(n);
    std::function<void(int, int)> rec = [&](int pos, int used) {
        if (pos == n) {
            if (used > 0) out.push_back(d);
            return;
        }
        for (int v = 0; v + used <= max_total; ++v) {
            d[pos] = v;
            rec(pos + 1, used + v);
        }
    };
    rec(0, 0);
    return out;
}

bool check_split_certificate(const QuiverRep& r, const SplitResult& sr) {
    QuiverRep canon = build_from_multisegment(sr.ms, r.n, r.p);
    if (sr.ms.node_dims(r.n) != r.dims) return false;
    for (int j = 0; j < r.n; ++j) {
        if (sr.basis[j].rank() != r.dims[j]) return false;
        if (r.maps[j] * sr.basis[j] != sr.basis[(j + 1) % r.n] * canon.maps[j])
            return false;
    }
    return true;
}

struct Criterion {
    int num;
    std::string desc;
    double budget_s;
    std::function<bool(std::string&)> run;
};

}  // namespace

// 1. Eigenvalue verification for every generator family, exact scalars.
static bool criterion1(std::string& note) {
    bool ok = true;
    size_t checked = 0;
    for (int n : {2, 3}) {
        for (int p : {2, 3}) {
            RunConfig cfg;
            cfg.n = n;
            cfg.p = p;
            Rng rng(1000UL * n + p);
            std::vector<Cell> cells = sample_cells(n, 20, rng);
            std::vector<HeckeGenerator> gens;
            for (int i = 1; i < n; ++i) gens.push_back(HeckeGenerator::srefl(i));
            for (int i = 1; i <= n; ++i) gens.push_back(HeckeGenerator::tleq(i));
            for (const std::vector<int>& d : dominant_diags(n, 4))
                gens.push_back(HeckeGenerator::diag(d));
            for (const HeckeGenerator& g : gens) {
                EigenReport rep = verify_eigen(g, cells, cfg);
                checked += rep.cells_checked;
                if (!rep.ok) {
                    ok = false;
                    note = g.str() + " at n=" + std::to_string(n) +
                           " p=" + std::to_string(p) + ": " + rep.failures.front();
                }
            }
        }
    }
    if (ok) note = std::to_string(checked) + " cell evaluations";
    return ok;
}

// 2. Rank-2 closed-form table, antidiagonal sign pinned by the simple
// reflection eigenvalue (the unsigned variant fails that check; see the
// negative control in test_hecke.cpp).
static bool criterion2(std::string& note) {
    bool ok = true;
    for (int gap = 0; gap <= 4; ++gap) {
        for (int d2 : {-2, 0, 1}) {
            int d1 = d2 + gap;
            QLPoly diag = whittaker_formula({{d1, d2}, {1, 2}});
            if (diag != QLPoly::term(1, d2 - d1, d1 + d2)) {
                ok = false;
                note = "diagonal column at gap " + std::to_string(gap);
            }
            QLPoly anti = whittaker_formula({{d1, d2}, {2, 1}});
            if (anti != QLPoly::term(-1, d2 - d1 - 1, d1 + d2)) {
                ok = false;
                note = "antidiagonal column at gap " + std::to_string(gap);
            }
        }
    }
    // The sign arbitration itself: the simple reflection acts by -1 at the
    // identity cell, which forces the antidiagonal values negative.
    RunConfig cfg;
    EigenReport rep = verify_eigen(HeckeGenerator::srefl(1),
                                   {{{0, 0}, {1, 2}}}, cfg);
    if (!rep.ok) {
        ok = false;
        note = "sign oracle failed";
    }
    if (ok) note = "15 diagonal + 15 antidiagonal values, sign oracle re-run";
    return ok;
}

// 3. Trace recursion identities through degree 8.
static bool criterion3(std::string& note) {
    for (int d = 1; d <= 8; ++d) {
        TraceReport diff = verify_difference(d);
        TraceReport unw = verify_unweighted(d);
        if (!diff.ok || !unw.ok) {
            note = "degree " + std::to_string(d) + ": " +
                   (!diff.ok ? diff.failures.front() : unw.failures.front());
            return false;
        }
    }
    note = "degrees 1..8, both identities";
    return true;
}

// 4. Dimension (1,1) classification and the operator dictionary.
static bool criterion4(std::string& note) {
    std::vector<Multisegment> classes = enumerate_classes({1, 1}, 2);
    if (classes.size() != 3) {
        note = "expected 3 classes, got " + std::to_string(classes.size());
        return false;
    }
    std::vector<DictionaryEntry> table = sheaf_operator_table();
    if (table.size() != 3) {
        note = "dictionary has " + std::to_string(table.size()) + " rows";
        return false;
    }
    QLPoly lam = QLPoly::lam_pow(1);
    int minus = 0, plus = 0;
    for (size_t i = 0; i < 3; ++i) {
        if (table[i].ms != classes[i]) {
            note = "row " + std::to_string(i) + " class mismatch";
            return false;
        }
        if (table[i].eigenvalue != expected_eigenvalue(table[i].op)) {
            note = "row " + std::to_string(i) + " eigenvalue mismatch";
            return false;
        }
        if (table[i].eigenvalue == lam) ++plus;
        if (table[i].eigenvalue == -lam) ++minus;
    }
    if (plus != 2 || minus != 1) {
        note = "eigenvalue multiset is not {lambda, lambda, -lambda}";
        return false;
    }
    note = "3 classes, eigenvalues {lambda, lambda, -lambda}";
    return true;
}

// 5. Segment decomposition: canonical round-trips, random certified splits,
// and exhaustive orbit cross-validation over F_2.
static bool criterion5(std::string& note) {
    size_t roundtrips = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int p : {2, 3}) {
            for (const std::vector<int>& dims : all_dim_vectors(n, 4)) {
                for (const Multisegment& ms : enumerate_classes(dims, n)) {
                    QuiverRep r = build_from_multisegment(ms, n, p);
                    SplitResult sr = decompose_rep(r);
                    if (!(sr.ms == ms) || !check_split_certificate(r, sr)) {
                        note = "round-trip failed for " + ms.str();
                        return false;
                    }
                    ++roundtrips;
                }
            }
        }
    }

    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + trial % 3;
        int p = (trial / 3) % 2 == 0 ? 2 : 3;
        std::vector<int> dims(n);
        int total = 0;
        for (int j = 0; j < n; ++j) total += dims[j] = rng.next(3);
        if (total == 0) dims[rng.next(n)] = 1 + rng.next(2);
        QuiverRep r = random_nilpotent(n, p, dims, rng);
        SplitResult sr = decompose_rep(r);
        if (!check_split_certificate(r, sr)) {
            note = "random split certificate failed at trial " + std::to_string(trial);
            return false;
        }
    }

    // Orbit cross-validation: the label partition must coincide with the
    // orbit partition under simultaneous base change at every node.
    for (int n = 1; n <= 3; ++n) {
        for (const std::vector<int>& dims : all_dim_vectors(n, 3)) {
            int p = 2;
            std::vector<std::vector<FpMatrix>> choices;
            for (int j = 0; j < n; ++j)
                choices.push_back(all_matrices(p, dims[(j + 1) % n], dims[j]));
            std::map<std::string, std::set<std::string>> labeled;
            QuiverRep r;
            r.n = n;
            r.p = p;
            r.dims = dims;
            r.maps.assign(n, FpMatrix(p, 0, 0));
            std::function<bool(int)> sweep = [&](int j) -> bool {
                if (j == n) {
                    if (!validate_rep(r).ok) return true;
                    labeled[decompose_rep(r).ms.str()].insert(rep_key(r));
                    return true;
                }
                for (const FpMatrix& m : choices[j]) {
                    r.maps[j] = m;
                    if (!sweep(j + 1)) return false;
                }
                return true;
            };
            sweep(0);
            std::vector<Multisegment> classes = enumerate_classes(dims, n);
            if (labeled.size() != classes.size()) {
                note = "label count mismatch at n=" + std::to_string(n);
                return false;
            }
            std::vector<std::vector<FpMatrix>> gls;
            for (int j = 0; j < n; ++j) {
                std::vector<FpMatrix> inv;
                for (const FpMatrix& g : all_matrices(p, dims[j], dims[j]))
                    if (g.rank() == dims[j]) inv.push_back(g);
                gls.push_back(std::move(inv));
            }
            for (const Multisegment& ms : classes) {
                QuiverRep canon = build_from_multisegment(ms, n, p);
                std::set<std::string> orbit;
                std::vector<int> pick(n, 0);
                std::function<void(int)> act = [&](int j) {
                    if (j == n) {
                        QuiverRep img = canon;
                        for (int a = 0; a < n; ++a)
                            img.maps[a] = gls[(a + 1) % n][pick[(a + 1) % n]] *
                                          canon.maps[a] * gls[a][pick[a]].inverse();
                        orbit.insert(rep_key(img));
                        return;
                    }
                    for (size_t t = 0; t < gls[j].size(); ++t) {
                        pick[j] = static_cast<int>(t);
                        act(j + 1);
                    }
                };
                act(0);
                if (orbit != labeled[ms.str()]) {
                    note = "orbit of " + ms.str() + " disagrees with its label set";
                    return false;
                }
            }
        }
    }
    note = std::to_string(roundtrips) + " round-trips, 100 random splits, orbits exact";
    return true;
}

// 6. Matrix decomposition: reconstruction, bi-invariance, coset certificates.
static bool criterion6(std::string& note) {
    Rng rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + trial % 2;
        int p = (trial / 2) % 2 == 0 ? 2 : 3;
        RunConfig cfg;
        cfg.n = n;
        cfg.p = p;
        Cell c;
        for (int i = 0; i < n; ++i) c.d.push_back(rng.next(5) - 2);
        c.sigma = identity_perm(n);
        for (int i = n - 1; i > 0; --i) std::swap(c.sigma[i], c.sigma[rng.next(i + 1)]);
        SeriesMatrix u = random_unipotent(n, p, rng);
        SeriesMatrix k = random_iwahori(n, p, rng);
        if (!iwahori_member(k)) {
            note = "constructed right factor left the Iwahori subgroup";
            return false;
        }
        SeriesMatrix base = cell_matrix(c, p);
        SeriesMatrix g = u * base * k;
        // Same widening policy the evaluator uses: double the work window on
        // a precision miss, up to the retry cap.
        Decomposition dec = [&] {
            int work_hi = cfg.hi;
            for (int attempt = 0;; ++attempt) {
                try {
                    return decompose(g, work_hi);
                } catch (const insufficient_precision&) {
                    if (attempt >= cfg.retries) throw;
                    work_hi *= 2;
                }
            }
        }();
        if (!(dec.cell == c)) {
            note = "cell not recovered at trial " + std::to_string(trial);
            return false;
        }
        SeriesMatrix rebuilt = dec.u * cell_matrix(dec.cell, p) * dec.k;
        if (!rebuilt.agrees_with(g)) {
            note = "factor product disagrees at trial " + std::to_string(trial);
            return false;
        }
        CycloScalar lhs = whittaker_eval(g, cfg);
        CycloScalar rhs = psi_char(p, residue_character(u)) * whittaker_eval(base, cfg);
        if (!(lhs == rhs)) {
            note = "bi-invariance failed at trial " + std::to_string(trial);
            return false;
        }
    }

    size_t families = 0;
    for (int n : {2, 3}) {
        for (int p : {2, 3}) {
            std::vector<HeckeGenerator> gens;
            for (int i = 1; i < n; ++i) gens.push_back(HeckeGenerator::srefl(i));
            for (int i = 1; i <= n; ++i) gens.push_back(HeckeGenerator::tleq(i));
            for (const std::vector<int>& d : dominant_diags(n, 4))
                gens.push_back(HeckeGenerator::diag(d));
            for (const HeckeGenerator& g : gens) {
                RepReport rep = validate_reps(g, n, p, 8);
                if (!rep.ok) {
                    note = g.str() + " representatives: " + rep.problems.front();
                    return false;
                }
                ++families;
            }
        }
    }
    note = "200 reconstructions, " + std::to_string(families) + " certified rep lists";
    return true;
}

// 7. Pairing dimension bookkeeping and the Euler form identity.
static bool criterion7(std::string& note) {
    for (int d = 0; d <= 5; ++d)
        for (int rank = 1; rank <= 5; ++rank) {
            std::pair<int, int> pr = pairing_dims_constant(d, rank);
            if (pr.first != d * rank || pr.second != d * rank) {
                note = "constant case at d=" + std::to_string(d);
                return false;
            }
        }

    Rng rng(9);
    for (int n : {2, 3, 4}) {
        for (int rank = n; rank <= n + 2; ++rank) {
            for (int rep = 0; rep < 10; ++rep) {
                std::vector<int> deg(n);
                for (int i = 0; i < n; ++i) deg[i] = rng.next(7) - 3;
                // Reference periodic extension, written independently of the
                // library: deg(i + n) = deg(i) + rank.
                auto ext = [&](int i) {
                    int q = i >= 0 ? i / n : -((-i + n - 1) / n);
                    return deg[i - q * n] + q * rank;
                };
                for (int i0 = 0; i0 < n; ++i0) {
                    std::pair<int, int> pr = pairing_dims_elementary(i0, deg, rank);
                    if (pr.first != ext(i0) - ext(i0 - 1) ||
                        pr.second != ext(i0 + 1) - ext(i0)) {
                        note = "consecutive differences at i0=" + std::to_string(i0);
                        return false;
                    }
                }
            }
        }
    }

    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + trial % 3;
        int p = trial % 2 == 0 ? 2 : 3;
        std::vector<int> dx(n), dy(n);
        for (int j = 0; j < n; ++j) {
            dx[j] = rng.next(3);
            dy[j] = rng.next(3);
        }
        QuiverRep x = random_nilpotent(n, p, dx, rng);
        QuiverRep y = random_nilpotent(n, p, dy, rng);
        int euler = 0;
        for (int j = 0; j < n; ++j) euler += dx[j] * (dy[j] - dy[(j + 1) % n]);
        if (hom_dim(x, y) - ext1_dim(x, y) != euler) {
            note = "Euler identity failed at trial " + std::to_string(trial);
            return false;
        }
    }
    note = "constant grid, difference grid, 100 Euler pairs";
    return true;
}

int main() {
    std::vector<Criterion> criteria = {
        {1, "Hecke eigenvalues across all generator families, n,p in {2,3}", 60, criterion1},
        {2, "rank-2 value table, antidiagonal sign pinned by the reflection oracle", 1, criterion2},
        {3, "trace difference and unweighted identities through degree 8", 1, criterion3},
        {4, "dimension (1,1) classification and operator dictionary", 1, criterion4},
        {5, "segment decomposition round-trips, certificates, orbit cross-check", 120, criterion5},
        {6, "triangular decomposition reconstruction, bi-invariance, coset certificates", 60, criterion6},
        {7, "pairing dimensions and the Euler form identity", 5, criterion7},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = c.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
        if (secs >= c.budget_s) {
            ok = false;
            note += " [over " + std::to_string(c.budget_s) + "s budget]";
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.num << ": " << c.desc
                  << " -- " << note << " (" << std::fixed << std::setprecision(1)
                  << secs << "s)" << std::endl;
        if (!ok) ++failures;
    }
    return failures;
}
