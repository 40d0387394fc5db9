#include "iwahori/hecke.hpp"

#include <sstream>

namespace iwahori {

HeckeGenerator HeckeGenerator::tleq(int i) {
    HeckeGenerator g;
    g.kind = Kind::TLeq;
    g.i = i;
    return g;
}

HeckeGenerator HeckeGenerator::srefl(int i) {
    HeckeGenerator g;
    g.kind = Kind::SimpleRefl;
    g.i = i;
    return g;
}

HeckeGenerator HeckeGenerator::diag(std::vector<int> d) {
    HeckeGenerator g;
    g.kind = Kind::DiagDominant;
    g.d = std::move(d);
    return g;
}

HeckeGenerator HeckeGenerator::compose(std::vector<HeckeGenerator> gens) {
    HeckeGenerator g;
    g.kind = Kind::Word;
    g.word = std::move(gens);
    return g;
}

std::string HeckeGenerator::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::TLeq:
            os << "tleq:" << i;
            break;
        case Kind::SimpleRefl:
            os << "srefl:" << i;
            break;
        case Kind::DiagDominant:
            os << "diag:";
            for (size_t t = 0; t < d.size(); ++t) os << (t ? "," : "") << d[t];
            break;
        case Kind::Word:
            os << "word(";
            for (size_t t = 0; t < word.size(); ++t)
                os << (t ? " " : "") << word[t].str();
            os << ")";
            break;
    }
    return os.str();
}

SeriesMatrix t_leq_matrix(int n, int p, int i) {
    if (i < 1 || i > n) throw std::invalid_argument("t_leq_matrix: index out of range");
    SeriesMatrix m(n, p);
    m.at(i, 1) = Series::monomial(p, 1);
    for (int j = 2; j <= i; ++j) m.at(j - 1, j) = Series::monomial(p, 0);
    for (int j = i + 1; j <= n; ++j) m.at(j, j) = Series::monomial(p, 0);
    return m;
}

SeriesMatrix simple_refl_matrix(int n, int p, int i) {
    if (i < 1 || i >= n)
        throw std::invalid_argument("simple_refl_matrix: index out of range");
    std::vector<int> sigma;
    for (int j = 1; j <= n; ++j) sigma.push_back(j);
    std::swap(sigma[static_cast<size_t>(i - 1)], sigma[static_cast<size_t>(i)]);
    return perm_matrix(p, sigma);
}

namespace {

void check_dominant(const std::vector<int>& d) {
    for (size_t t = 0; t + 1 < d.size(); ++t)
        if (d[t] < d[t + 1])
            throw std::invalid_argument("DiagDominant: exponents not dominant");
}

int dominance_gap(const std::vector<int>& d) {
    int s = 0, n = static_cast<int>(d.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            s += d[static_cast<size_t>(i)] - d[static_cast<size_t>(j)];
    return s;
}

}  // namespace

SeriesMatrix generator_matrix(const HeckeGenerator& g, int n, int p) {
    switch (g.kind) {
        case HeckeGenerator::Kind::TLeq:
            return t_leq_matrix(n, p, g.i);
        case HeckeGenerator::Kind::SimpleRefl:
            return simple_refl_matrix(n, p, g.i);
        case HeckeGenerator::Kind::DiagDominant:
            if (static_cast<int>(g.d.size()) != n)
                throw std::invalid_argument("generator_matrix: wrong exponent count");
            check_dominant(g.d);
            return diag_pi_matrix(p, g.d);
        case HeckeGenerator::Kind::Word:
            break;
    }
    throw std::invalid_argument("generator_matrix: composite word has no base point");
}

std::vector<SeriesMatrix> coset_reps(const HeckeGenerator& g, int n, int p) {
    std::vector<SeriesMatrix> reps;
    switch (g.kind) {
        case HeckeGenerator::Kind::TLeq: {
            SeriesMatrix t = t_leq_matrix(n, p, g.i);
            int slots = n - g.i;
            std::vector<int> v(static_cast<size_t>(slots), 0);
            while (true) {
                SeriesMatrix m = SeriesMatrix::identity(n, p);
                for (int s = 0; s < slots; ++s)
                    if (v[static_cast<size_t>(s)] != 0)
                        m.at(1, g.i + 1 + s) =
                            Series::monomial(p, -1, v[static_cast<size_t>(s)]);
                reps.push_back(t * m);
                int pos = slots - 1;
                while (pos >= 0 && v[static_cast<size_t>(pos)] == p - 1)
                    v[static_cast<size_t>(pos--)] = 0;
                if (pos < 0) break;
                ++v[static_cast<size_t>(pos)];
            }
            break;
        }
        case HeckeGenerator::Kind::SimpleRefl: {
            SeriesMatrix s = simple_refl_matrix(n, p, g.i);
            for (int a = 0; a < p; ++a) {
                SeriesMatrix m = SeriesMatrix::identity(n, p);
                if (a != 0) m.at(g.i, g.i + 1) = Series::monomial(p, 0, a);
                reps.push_back(m * s);
            }
            break;
        }
        case HeckeGenerator::Kind::DiagDominant: {
            if (static_cast<int>(g.d.size()) != n)
                throw std::invalid_argument("coset_reps: wrong exponent count");
            check_dominant(g.d);
            SeriesMatrix base = diag_pi_matrix(p, g.d);
            // One free F_p slot per pi-power below each positive gap.
            struct Slot {
                int i, j, e;
            };
            std::vector<Slot> slots;
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    int gap = g.d[static_cast<size_t>(i - 1)] - g.d[static_cast<size_t>(j - 1)];
                    for (int e = 0; e < gap; ++e) slots.push_back({i, j, e});
                }
            std::vector<int> v(slots.size(), 0);
            while (true) {
                SeriesMatrix m = SeriesMatrix::identity(n, p);
                for (size_t s = 0; s < slots.size(); ++s)
                    if (v[s] != 0)
                        m.at(slots[s].i, slots[s].j) +=
                            Series::monomial(p, slots[s].e, v[s]);
                reps.push_back(m * base);
                size_t pos = slots.size();
                while (pos > 0 && v[pos - 1] == p - 1) v[--pos] = 0;
                if (pos == 0) break;
                ++v[pos - 1];
            }
            break;
        }
        case HeckeGenerator::Kind::Word:
            throw std::invalid_argument("coset_reps: composite word, expand factors");
    }
    return reps;
}

QLPoly generator_volume(const HeckeGenerator& g, int n) {
    switch (g.kind) {
        case HeckeGenerator::Kind::TLeq:
            return QLPoly::q_pow(n - g.i);
        case HeckeGenerator::Kind::SimpleRefl:
            return QLPoly::q_pow(1);
        case HeckeGenerator::Kind::DiagDominant:
            check_dominant(g.d);
            return QLPoly::q_pow(dominance_gap(g.d));
        case HeckeGenerator::Kind::Word:
            break;
    }
    throw std::invalid_argument("generator_volume: composite word");
}

RepReport validate_reps(const HeckeGenerator& g, int n, int p, int work_hi) {
    RepReport rep;
    std::vector<SeriesMatrix> hs = coset_reps(g, n, p);
    rep.count = hs.size();

    // Volume check: the q-power must specialize to the list length.
    QLPoly vol = generator_volume(g, n);
    int exponent = vol.terms().begin()->first.first;
    size_t expected = 1;
    for (int t = 0; t < exponent; ++t) expected *= static_cast<size_t>(p);
    if (expected != hs.size()) {
        rep.ok = false;
        rep.problems.push_back("representative count does not match coset volume");
    }

    // Membership: each representative lies in Iw * base * Iw, via h * base^{-1}
    // in Iw (all lists are built as (Iw element) * base).
    SeriesMatrix base_inv = mat_inv(generator_matrix(g, n, p), work_hi);
    for (size_t a = 0; a < hs.size(); ++a) {
        if (!iwahori_member(hs[a] * base_inv)) {
            rep.ok = false;
            rep.problems.push_back("representative " + std::to_string(a) +
                                   " leaves the double coset");
        }
    }

    // Pairwise inequivalence modulo right multiplication by Iw.
    std::vector<SeriesMatrix> inv;
    inv.reserve(hs.size());
    for (const auto& h : hs) inv.push_back(mat_inv(h, work_hi));
    for (size_t a = 0; a < hs.size(); ++a)
        for (size_t b = a + 1; b < hs.size(); ++b) {
            if (iwahori_member(inv[a] * hs[b])) {
                rep.ok = false;
                rep.problems.push_back("representatives " + std::to_string(a) + " and " +
                                       std::to_string(b) + " define the same coset");
            }
        }
    return rep;
}

CycloScalar hecke_apply(const HeckeGenerator& g, const MatrixFunction& f,
                        const SeriesMatrix& x) {
    if (g.kind == HeckeGenerator::Kind::Word) {
        if (g.word.empty()) return f(x);
        HeckeGenerator rest = HeckeGenerator::compose(
            std::vector<HeckeGenerator>(g.word.begin() + 1, g.word.end()));
        CycloScalar acc(x.p());
        for (const auto& h : coset_reps(g.word.front(), x.n(), x.p()))
            acc += hecke_apply(rest, f, x * h);
        return acc;
    }
    CycloScalar acc(x.p());
    for (const auto& h : coset_reps(g, x.n(), x.p())) acc += f(x * h);
    return acc;
}

QLPoly expected_eigenvalue(const HeckeGenerator& g) {
    switch (g.kind) {
        case HeckeGenerator::Kind::TLeq:
            return QLPoly::term(g.i % 2 == 1 ? 1 : -1, 0, 1);
        case HeckeGenerator::Kind::SimpleRefl:
            return QLPoly::constant(-1);
        case HeckeGenerator::Kind::DiagDominant: {
            check_dominant(g.d);
            int s = 0;
            for (int x : g.d) s += x;
            return QLPoly::lam_pow(s);
        }
        case HeckeGenerator::Kind::Word: {
            QLPoly prod = QLPoly::constant(1);
            for (const auto& w : g.word) prod *= expected_eigenvalue(w);
            return prod;
        }
    }
    throw std::logic_error("expected_eigenvalue: unreachable");
}

EigenReport verify_eigen(const HeckeGenerator& g, const std::vector<Cell>& cells,
                         const RunConfig& cfg) {
    cfg.validate();
    EigenReport report;
    CycloScalar ev = specialize(expected_eigenvalue(g), cfg.p);
    MatrixFunction W = [&cfg](const SeriesMatrix& m) {
        return whittaker_eval(m, cfg);
    };
    for (const auto& c : cells) {
        SeriesMatrix x = cell_matrix(c, cfg.p);
        CycloScalar lhs = hecke_apply(g, W, x);
        CycloScalar rhs = ev * whittaker_eval(x, cfg);
        ++report.cells_checked;
        if (lhs != rhs) {
            report.ok = false;
            std::ostringstream os;
            os << "cell d=(";
            for (size_t t = 0; t < c.d.size(); ++t) os << (t ? "," : "") << c.d[t];
            os << ") sigma=(";
            for (size_t t = 0; t < c.sigma.size(); ++t)
                os << (t ? "," : "") << c.sigma[t];
            os << "): got " << lhs.str() << ", expected " << rhs.str();
            report.failures.push_back(os.str());
        }
    }
    return report;
}

std::vector<int> reduced_word(const std::vector<int>& sigma) {
    if (!is_permutation(sigma))
        throw std::invalid_argument("reduced_word: not a permutation");
    std::vector<int> w = sigma, moves;
    int n = static_cast<int>(w.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 1; i < n; ++i) {
            if (w[static_cast<size_t>(i - 1)] > w[static_cast<size_t>(i)]) {
                std::swap(w[static_cast<size_t>(i - 1)], w[static_cast<size_t>(i)]);
                moves.push_back(i);
                changed = true;
            }
        }
    }
    // sigma * s_{moves[0]} * ... * s_{moves.back()} = id, so reading the
    // factors of sigma left to right reverses the list.
    std::reverse(moves.begin(), moves.end());
    return moves;
}

}  // namespace iwahori
