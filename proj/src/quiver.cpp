#include "iwahori/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace iwahori {

void Multisegment::canonicalize() { std::sort(segments.begin(), segments.end()); }

bool Multisegment::operator==(const Multisegment& o) const {
    std::vector<Segment> a = segments, b = o.segments;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

std::vector<int> Multisegment::node_dims(int n) const {
    std::vector<int> d(static_cast<size_t>(n), 0);
    for (const Segment& s : segments)
        for (int t = 0; t < s.len; ++t) d[static_cast<size_t>((s.start + t) % n)] += 1;
    return d;
}

int Multisegment::total_dim() const {
    int t = 0;
    for (const Segment& s : segments) t += s.len;
    return t;
}

std::string Multisegment::str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < segments.size(); ++i) {
        if (i) os << ", ";
        os << "(" << segments[i].start << "," << segments[i].len << ")";
    }
    os << "}";
    return os.str();
}

QuiverReport validate_rep(const QuiverRep& r, bool require_nilpotent) {
    QuiverReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.problems.push_back(msg);
    };
    if (r.n < 1) fail("node count must be positive");
    if (static_cast<int>(r.dims.size()) != r.n) fail("dims size differs from node count");
    if (static_cast<int>(r.maps.size()) != r.n) fail("maps size differs from node count");
    if (!rep.ok) return rep;
    for (int j = 0; j < r.n; ++j) {
        if (r.dims[j] < 0) fail("negative dimension at node " + std::to_string(j));
        if (r.maps[j].p() != r.p) fail("modulus mismatch at arrow " + std::to_string(j));
        if (r.maps[j].rows() != r.dims[(j + 1) % r.n] ||
            r.maps[j].cols() != r.dims[j])
            fail("arrow " + std::to_string(j) + " has the wrong shape");
    }
    if (!rep.ok || !require_nilpotent) return rep;
    for (int i = 0; i < r.n; ++i) {
        FpMatrix c = cycle_map(r, i, r.n);
        FpMatrix pw = FpMatrix::identity(r.p, r.dims[i]);
        for (int e = 0; e < r.dims[i]; ++e) pw = c * pw;
        if (!pw.is_zero())
            fail("around-the-cycle composite at node " + std::to_string(i) +
                 " is not nilpotent");
    }
    return rep;
}

FpMatrix cycle_map(const QuiverRep& r, int i, int l) {
    if (l < 0) throw std::invalid_argument("cycle_map: negative length");
    i = ((i % r.n) + r.n) % r.n;
    FpMatrix m = FpMatrix::identity(r.p, r.dims[static_cast<size_t>(i)]);
    for (int s = 0; s < l; ++s) m = r.maps[static_cast<size_t>((i + s) % r.n)] * m;
    return m;
}

int cycle_rank(const QuiverRep& r, int i, int l) { return cycle_map(r, i, l).rank(); }

QuiverRep build_from_multisegment(const Multisegment& ms_in, int n, int p) {
    Multisegment ms = ms_in;
    ms.canonicalize();
    QuiverRep r;
    r.n = n;
    r.p = p;
    r.dims = ms.node_dims(n);
    std::vector<std::vector<int>> pos_index;
    std::vector<int> counter(static_cast<size_t>(n), 0);
    for (const Segment& s : ms.segments) {
        std::vector<int> idx;
        for (int t = 0; t < s.len; ++t)
            idx.push_back(counter[static_cast<size_t>((s.start + t) % n)]++);
        pos_index.push_back(idx);
    }
    for (int j = 0; j < n; ++j)
        r.maps.emplace_back(p, r.dims[static_cast<size_t>((j + 1) % n)],
                            r.dims[static_cast<size_t>(j)]);
    for (size_t si = 0; si < ms.segments.size(); ++si) {
        const Segment& s = ms.segments[si];
        for (int t = 0; t + 1 < s.len; ++t) {
            int node = (s.start + t) % n;
            r.maps[static_cast<size_t>(node)].set(pos_index[si][static_cast<size_t>(t + 1)],
                                                  pos_index[si][static_cast<size_t>(t)], 1);
        }
    }
    return r;
}

QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b) {
    if (a.n != b.n || a.p != b.p)
        throw std::invalid_argument("direct_sum: incompatible representations");
    QuiverRep r;
    r.n = a.n;
    r.p = a.p;
    for (int j = 0; j < a.n; ++j)
        r.dims.push_back(a.dims[static_cast<size_t>(j)] + b.dims[static_cast<size_t>(j)]);
    for (int j = 0; j < a.n; ++j) {
        int jn = (j + 1) % a.n;
        FpMatrix m(a.p, r.dims[static_cast<size_t>(jn)], r.dims[static_cast<size_t>(j)]);
        const FpMatrix& am = a.maps[static_cast<size_t>(j)];
        const FpMatrix& bm = b.maps[static_cast<size_t>(j)];
        for (int i = 0; i < am.rows(); ++i)
            for (int c = 0; c < am.cols(); ++c) m.set(i, c, am.at(i, c));
        for (int i = 0; i < bm.rows(); ++i)
            for (int c = 0; c < bm.cols(); ++c)
                m.set(am.rows() + i, am.cols() + c, bm.at(i, c));
        r.maps.push_back(m);
    }
    return r;
}

namespace {

int total_dim_of(const QuiverRep& r) {
    return std::accumulate(r.dims.begin(), r.dims.end(), 0);
}

struct PeeledSeg {
    Segment seg;
    std::vector<FpMatrix> vecs;  // chain vectors in the original coordinates
};

}  // namespace

SplitResult decompose_rep(const QuiverRep& r) {
    QuiverReport v = validate_rep(r);
    if (!v.ok)
        throw std::invalid_argument("decompose_rep: invalid representation: " +
                                    (v.problems.empty() ? std::string() : v.problems[0]));
    int n = r.n;
    QuiverRep w = r;
    std::vector<FpMatrix> embed;
    for (int j = 0; j < n; ++j)
        embed.push_back(FpMatrix::identity(r.p, r.dims[static_cast<size_t>(j)]));
    std::vector<PeeledSeg> peeled;

    while (total_dim_of(w) > 0) {
        // Longest surviving chain; ties go to the lowest node.
        int total = total_dim_of(w);
        int L = 0, node = -1;
        FpMatrix chain_map(w.p, 0, 0);
        for (int l = total; l >= 1 && node < 0; --l) {
            for (int i = 0; i < n; ++i) {
                if (w.dims[static_cast<size_t>(i)] == 0) continue;
                FpMatrix c = cycle_map(w, i, l - 1);
                if (!c.is_zero()) {
                    L = l;
                    node = i;
                    chain_map = c;
                    break;
                }
            }
        }
        if (node < 0) throw std::logic_error("decompose_rep: no chain found");

        int gen = -1;
        for (int c = 0; c < chain_map.cols() && gen < 0; ++c)
            if (!chain_map.col(c).is_zero()) gen = c;
        FpMatrix vgen(w.p, w.dims[static_cast<size_t>(node)], 1);
        vgen.set(gen, 0, 1);

        std::vector<FpMatrix> chain{vgen};
        for (int t = 1; t < L; ++t)
            chain.push_back(w.maps[static_cast<size_t>((node + t - 1) % n)] * chain.back());

        // Coordinate functional that is nonzero on the deepest chain vector.
        int m_node = (node + L - 1) % n;
        const FpMatrix& deep = chain[static_cast<size_t>(L - 1)];
        int frow = -1;
        for (int i = 0; i < deep.rows(); ++i)
            if (deep.at(i, 0) != 0) {
                frow = i;
                break;
            }
        FpMatrix f(w.p, 1, w.dims[static_cast<size_t>(m_node)]);
        f.set(0, frow, 1);

        // Complement: at each node, the joint kernel of the functionals that
        // route through the remaining chain steps. The chain spans the rest.
        std::vector<FpMatrix> tbasis;
        for (int j = 0; j < n; ++j) {
            FpMatrix rows(w.p, 0, w.dims[static_cast<size_t>(j)]);
            for (int t = 0; t < L; ++t) {
                if ((node + t) % n != j) continue;
                rows = FpMatrix::vstack(rows, f * cycle_map(w, j, L - 1 - t));
            }
            tbasis.push_back(rows.kernel_basis());
        }

        PeeledSeg ps;
        ps.seg = Segment{node, L};
        for (int t = 0; t < L; ++t)
            ps.vecs.push_back(embed[static_cast<size_t>((node + t) % n)] *
                              chain[static_cast<size_t>(t)]);
        peeled.push_back(ps);

        QuiverRep nw;
        nw.n = n;
        nw.p = w.p;
        for (int j = 0; j < n; ++j) nw.dims.push_back(tbasis[static_cast<size_t>(j)].cols());
        for (int j = 0; j < n; ++j)
            nw.maps.push_back(tbasis[static_cast<size_t>((j + 1) % n)].solve(
                w.maps[static_cast<size_t>(j)] * tbasis[static_cast<size_t>(j)]));
        for (int j = 0; j < n; ++j)
            embed[static_cast<size_t>(j)] =
                embed[static_cast<size_t>(j)] * tbasis[static_cast<size_t>(j)];
        w = nw;
    }

    std::stable_sort(peeled.begin(), peeled.end(),
                     [](const PeeledSeg& a, const PeeledSeg& b) { return a.seg < b.seg; });
    SplitResult out;
    for (const PeeledSeg& ps : peeled) out.ms.segments.push_back(ps.seg);
    QuiverRep canon = build_from_multisegment(out.ms, n, r.p);
    if (canon.dims != r.dims)
        throw std::logic_error("decompose_rep: peeled dimensions disagree");

    for (int j = 0; j < n; ++j)
        out.basis.emplace_back(r.p, r.dims[static_cast<size_t>(j)],
                               r.dims[static_cast<size_t>(j)]);
    std::vector<int> counter(static_cast<size_t>(n), 0);
    for (const PeeledSeg& ps : peeled) {
        for (int t = 0; t < ps.seg.len; ++t) {
            int j = (ps.seg.start + t) % n;
            int cidx = counter[static_cast<size_t>(j)]++;
            const FpMatrix& vec = ps.vecs[static_cast<size_t>(t)];
            for (int i = 0; i < vec.rows(); ++i) out.basis[static_cast<size_t>(j)].set(i, cidx, vec.at(i, 0));
        }
    }

    for (int j = 0; j < n; ++j) {
        if (out.basis[static_cast<size_t>(j)].rank() != r.dims[static_cast<size_t>(j)])
            throw std::logic_error("decompose_rep: basis not invertible at node " +
                                   std::to_string(j));
        FpMatrix lhs = r.maps[static_cast<size_t>(j)] * out.basis[static_cast<size_t>(j)];
        FpMatrix rhs = out.basis[static_cast<size_t>((j + 1) % n)] *
                       canon.maps[static_cast<size_t>(j)];
        if (lhs != rhs)
            throw std::logic_error("decompose_rep: basis fails to intertwine at arrow " +
                                   std::to_string(j));
    }
    return out;
}

namespace {

void enumerate_dfs(std::vector<int>& rem, int total, int n, Segment min_seg,
                   std::vector<Segment>& cur, std::vector<Multisegment>& out) {
    if (total == 0) {
        out.push_back(Multisegment{cur});
        return;
    }
    for (int a = 0; a < n; ++a) {
        for (int l = 1; l <= total; ++l) {
            Segment s{a, l};
            if (s < min_seg) continue;
            bool ok = true;
            for (int t = 0; t < l; ++t) {
                size_t j = static_cast<size_t>((a + t) % n);
                if (--rem[j] < 0) ok = false;
            }
            if (ok) {
                cur.push_back(s);
                enumerate_dfs(rem, total - l, n, s, cur, out);
                cur.pop_back();
            }
            for (int t = 0; t < l; ++t) ++rem[static_cast<size_t>((a + t) % n)];
        }
    }
}

}  // namespace

std::vector<Multisegment> enumerate_classes(const std::vector<int>& dims, int n) {
    if (n < 1 || static_cast<int>(dims.size()) != n)
        throw std::invalid_argument("enumerate_classes: bad dimension vector");
    for (int d : dims)
        if (d < 0) throw std::invalid_argument("enumerate_classes: negative dimension");
    std::vector<int> rem = dims;
    int total = std::accumulate(rem.begin(), rem.end(), 0);
    std::vector<Segment> cur;
    std::vector<Multisegment> out;
    enumerate_dfs(rem, total, n, Segment{0, 1}, cur, out);
    return out;
}

namespace {

// Matrix of the linear condition "arrow-compatible node-wise maps": a family
// (phi_j) lies in Hom(x, y) iff D * vec(phi) = 0 where vec stacks the
// column-major phi_j blocks in node order.
FpMatrix hom_complex(const QuiverRep& x, const QuiverRep& y) {
    int n = x.n;
    std::vector<int> cofs(static_cast<size_t>(n) + 1, 0), rofs(static_cast<size_t>(n) + 1, 0);
    for (int j = 0; j < n; ++j)
        cofs[static_cast<size_t>(j + 1)] =
            cofs[static_cast<size_t>(j)] +
            x.dims[static_cast<size_t>(j)] * y.dims[static_cast<size_t>(j)];
    for (int i = 0; i < n; ++i)
        rofs[static_cast<size_t>(i + 1)] =
            rofs[static_cast<size_t>(i)] +
            x.dims[static_cast<size_t>(i)] * y.dims[static_cast<size_t>((i + 1) % n)];
    FpMatrix D(x.p, rofs[static_cast<size_t>(n)], cofs[static_cast<size_t>(n)]);
    auto add_block = [&](int br, int bc, const FpMatrix& B, int sign) {
        for (int r = 0; r < B.rows(); ++r)
            for (int c = 0; c < B.cols(); ++c) {
                int rr = rofs[static_cast<size_t>(br)] + r;
                int cc = cofs[static_cast<size_t>(bc)] + c;
                D.set(rr, cc, D.at(rr, cc) + sign * B.at(r, c));
            }
    };
    for (int i = 0; i < n; ++i) {
        int in = (i + 1) % n;
        add_block(i, i,
                  FpMatrix::identity(x.p, x.dims[static_cast<size_t>(i)])
                      .kron(y.maps[static_cast<size_t>(i)]),
                  1);
        add_block(i, in,
                  x.maps[static_cast<size_t>(i)].transpose().kron(
                      FpMatrix::identity(x.p, y.dims[static_cast<size_t>(in)])),
                  -1);
    }
    return D;
}

void check_pair(const QuiverRep& x, const QuiverRep& y) {
    if (x.n != y.n || x.p != y.p)
        throw std::invalid_argument("hom/ext: incompatible representations");
}

}  // namespace

int hom_dim(const QuiverRep& x, const QuiverRep& y) {
    check_pair(x, y);
    FpMatrix D = hom_complex(x, y);
    return D.cols() - D.rank();
}

int ext1_dim(const QuiverRep& x, const QuiverRep& y) {
    check_pair(x, y);
    FpMatrix D = hom_complex(x, y);
    return D.rows() - D.rank();
}

Filtration elementary_filtration(const QuiverRep& r) {
    QuiverReport v = validate_rep(r);
    if (!v.ok) throw std::invalid_argument("elementary_filtration: invalid representation");
    int n = r.n;
    std::vector<FpMatrix> U;
    for (int j = 0; j < n; ++j) U.emplace_back(r.p, r.dims[static_cast<size_t>(j)], 0);
    Filtration f;
    int total = total_dim_of(r);
    for (int step = 0; step < total; ++step) {
        bool added = false;
        for (int j = 0; j < n && !added; ++j) {
            if (U[static_cast<size_t>(j)].cols() == r.dims[static_cast<size_t>(j)]) continue;
            int jn = (j + 1) % n;
            // Vectors whose image under the outgoing arrow already lies in the
            // chain keep it a subrepresentation after adjoining.
            FpMatrix sys = FpMatrix::hstack(r.maps[static_cast<size_t>(j)],
                                            U[static_cast<size_t>(jn)]);
            FpMatrix ker = sys.kernel_basis();
            for (int c = 0; c < ker.cols() && !added; ++c) {
                FpMatrix w(r.p, r.dims[static_cast<size_t>(j)], 1);
                for (int i = 0; i < w.rows(); ++i) w.set(i, 0, ker.at(i, c));
                if (w.is_zero() || U[static_cast<size_t>(j)].contains(w)) continue;
                U[static_cast<size_t>(j)] = FpMatrix::hstack(U[static_cast<size_t>(j)], w);
                added = true;
            }
        }
        if (!added) throw std::logic_error("elementary_filtration: no admissible vector");
        f.steps.push_back(U);
    }
    return f;
}

namespace {

struct SegState {
    Segment seg;
    std::vector<FpMatrix> vecs;
};

// Exact cover of the node circle by per-segment head arcs, one layer of a
// constant-degree chain. take[s] = chosen head length (0 = unused).
bool cover_layer(const std::vector<SegState>& segs, const std::vector<int>& cuts,
                 std::vector<int>& take, std::vector<bool>& covered, int n) {
    int target = -1;
    for (int i = 0; i < n; ++i)
        if (!covered[static_cast<size_t>(i)]) {
            target = i;
            break;
        }
    if (target < 0) return true;
    for (size_t s = 0; s < segs.size(); ++s) {
        if (take[s] > 0) continue;
        int rem = segs[s].seg.len - cuts[s];
        if (rem <= 0) continue;
        int start = (segs[s].seg.start + cuts[s]) % n;
        for (int m = 1; m <= std::min(rem, n); ++m) {
            bool contains_target = false, all_free = true;
            for (int t = 0; t < m; ++t) {
                int node = (start + t) % n;
                if (node == target) contains_target = true;
                if (covered[static_cast<size_t>(node)]) {
                    all_free = false;
                    break;
                }
            }
            if (!all_free) break;
            if (!contains_target) continue;
            take[s] = m;
            for (int t = 0; t < m; ++t) covered[static_cast<size_t>((start + t) % n)] = true;
            if (cover_layer(segs, cuts, take, covered, n)) return true;
            take[s] = 0;
            for (int t = 0; t < m; ++t) covered[static_cast<size_t>((start + t) % n)] = false;
        }
    }
    return false;
}

std::vector<FpMatrix> assemble_term(const QuiverRep& r, const std::vector<SegState>& segs,
                                    const std::vector<int>& cuts) {
    std::vector<FpMatrix> term;
    for (int j = 0; j < r.n; ++j) term.emplace_back(r.p, r.dims[static_cast<size_t>(j)], 0);
    for (size_t s = 0; s < segs.size(); ++s)
        for (int t = cuts[s]; t < segs[s].seg.len; ++t) {
            int j = (segs[s].seg.start + t) % r.n;
            term[static_cast<size_t>(j)] = FpMatrix::hstack(
                term[static_cast<size_t>(j)], segs[s].vecs[static_cast<size_t>(t)]);
        }
    return term;
}

}  // namespace

Filtration constant_filtration(const QuiverRep& r) {
    QuiverReport v = validate_rep(r);
    if (!v.ok) throw std::invalid_argument("constant_filtration: invalid representation");
    int d = r.dims.empty() ? 0 : r.dims[0];
    for (int x : r.dims)
        if (x != d) throw std::invalid_argument("constant_filtration: dims not constant");
    Filtration f;
    if (d == 0) return f;

    SplitResult sr = decompose_rep(r);
    std::vector<SegState> segs;
    std::vector<int> counter(static_cast<size_t>(r.n), 0);
    for (const Segment& s : sr.ms.segments) {
        SegState st;
        st.seg = s;
        for (int t = 0; t < s.len; ++t) {
            int j = (s.start + t) % r.n;
            st.vecs.push_back(sr.basis[static_cast<size_t>(j)].col(counter[static_cast<size_t>(j)]++));
        }
        segs.push_back(st);
    }

    // Peel one constant layer per level, top down, then emit terms bottom up.
    std::vector<std::vector<int>> cuts_by_level;
    std::vector<int> cuts(segs.size(), 0);
    for (int level = d; level >= 2; --level) {
        std::vector<int> take(segs.size(), 0);
        std::vector<bool> covered(static_cast<size_t>(r.n), false);
        if (!cover_layer(segs, cuts, take, covered, r.n))
            throw std::logic_error("constant_filtration: no head cover at level " +
                                   std::to_string(level));
        for (size_t s = 0; s < segs.size(); ++s) cuts[s] += take[s];
        cuts_by_level.push_back(cuts);
    }
    for (auto it = cuts_by_level.rbegin(); it != cuts_by_level.rend(); ++it)
        f.steps.push_back(assemble_term(r, segs, *it));
    f.steps.push_back(assemble_term(r, segs, std::vector<int>(segs.size(), 0)));
    return f;
}

bool check_filtration(const QuiverRep& r, const Filtration& f) {
    int n = r.n;
    if (f.steps.empty()) return total_dim_of(r) == 0;
    std::vector<FpMatrix> prev;
    for (int j = 0; j < n; ++j) prev.emplace_back(r.p, r.dims[static_cast<size_t>(j)], 0);
    for (const auto& term : f.steps) {
        if (static_cast<int>(term.size()) != n) return false;
        for (int j = 0; j < n; ++j) {
            const FpMatrix& U = term[static_cast<size_t>(j)];
            if (U.rows() != r.dims[static_cast<size_t>(j)]) return false;
            if (U.rank() != U.cols()) return false;
            if (!U.contains(prev[static_cast<size_t>(j)])) return false;
            if (U.cols() < prev[static_cast<size_t>(j)].cols()) return false;
            const FpMatrix& V = term[static_cast<size_t>((j + 1) % n)];
            if (!V.contains(r.maps[static_cast<size_t>(j)] * U)) return false;
        }
        prev = term;
    }
    for (int j = 0; j < n; ++j)
        if (prev[static_cast<size_t>(j)].cols() != r.dims[static_cast<size_t>(j)]) return false;
    return true;
}

std::pair<int, int> pairing_dims_elementary(int i0, const std::vector<int>& degrees,
                                            int rank) {
    int n = static_cast<int>(degrees.size());
    if (n == 0) throw std::invalid_argument("pairing_dims_elementary: empty degrees");
    auto deg = [&](int j) {
        int q = j >= 0 ? j / n : -((-j + n - 1) / n);
        return degrees[static_cast<size_t>(j - q * n)] + q * rank;
    };
    return {deg(i0) - deg(i0 - 1), deg(i0 + 1) - deg(i0)};
}

std::pair<int, int> pairing_dims_constant(int d, int rank) {
    return {d * rank, d * rank};
}

}  // namespace iwahori
