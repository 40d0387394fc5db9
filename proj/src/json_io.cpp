#include "iwahori/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace iwahori {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw input_error(std::string("missing field: ") + key);
    return j.at(key);
}

int need_int(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number_integer()) throw input_error(std::string("field is not an integer: ") + key);
    return v.get<int>();
}

const json& need_array(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_array()) throw input_error(std::string("field is not an array: ") + key);
    return v;
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw input_error(std::string("expected an integer in ") + what);
    return j.get<int>();
}

std::vector<int> int_vector(const json& j, const char* what) {
    if (!j.is_array()) throw input_error(std::string("expected an array in ") + what);
    std::vector<int> out;
    for (const json& v : j) out.push_back(as_int(v, what));
    return out;
}

json mpz_to_json(const mpz_class& c) {
    if (c.fits_slong_p()) return json(static_cast<long long>(c.get_si()));
    return json(c.get_str());
}

mpz_class mpz_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (j.is_string()) {
        try {
            return mpz_class(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw input_error("bad integer literal: " + j.get<std::string>());
        }
    }
    throw input_error("expected an integer or integer string");
}

json series_to_json(const Series& s, int clip_hi) {
    json coeffs = json::array();
    for (const auto& [e, c] : s.coeffs()) {
        if (e >= clip_hi) continue;
        coeffs.push_back(json::array({e, c}));
    }
    return json{{"exact_zero", s.is_exact_zero()}, {"coeffs", coeffs}};
}

Series series_from_json(const json& j, int p, int window_hi) {
    if (!j.is_object()) throw input_error("series entry is not an object");
    const json& ez = need(j, "exact_zero");
    if (!ez.is_boolean()) throw input_error("exact_zero is not a boolean");
    if (ez.get<bool>()) return Series::exact_zero(p);
    std::map<int, int> coeffs;
    for (const json& pair : need_array(j, "coeffs")) {
        if (!pair.is_array() || pair.size() != 2)
            throw input_error("series coefficient is not an [exponent, value] pair");
        int e = as_int(pair.at(0), "series coefficients");
        if (e >= window_hi) throw input_error("series coefficient outside the window");
        coeffs[e] = as_int(pair.at(1), "series coefficients");
    }
    return Series::from_coeffs(p, coeffs, window_hi);
}

}  // namespace

json qlpoly_to_json(const QLPoly& f) {
    json out = json::array();
    for (const auto& [key, c] : f.terms())
        out.push_back(json::array({key.first, key.second, mpz_to_json(c)}));
    return out;
}

QLPoly qlpoly_from_json(const json& j) {
    if (!j.is_array()) throw input_error("polynomial is not an array of triples");
    QLPoly f;
    for (const json& t : j) {
        if (!t.is_array() || t.size() != 3)
            throw input_error("polynomial term is not a [qexp, lexp, coeff] triple");
        f += QLPoly::term(mpz_from_json(t.at(2)), as_int(t.at(0), "polynomial"),
                          as_int(t.at(1), "polynomial"));
    }
    return f;
}

json cyclo_to_json(const CycloScalar& c) {
    json terms = json::array();
    for (const auto& [lexp, coords] : c.terms()) {
        json cs = json::array();
        for (const mpq_class& x : coords) cs.push_back(x.get_str());
        terms.push_back(json::array({lexp, cs}));
    }
    return json{{"p", c.p()}, {"terms", terms}};
}

CycloScalar cyclo_from_json(const json& j) {
    int p = need_int(j, "p");
    if (!is_prime(p)) throw input_error("p is not prime");
    CycloScalar out(p);
    for (const json& t : need_array(j, "terms")) {
        if (!t.is_array() || t.size() != 2)
            throw input_error("scalar term is not a [lexp, coords] pair");
        const json& cj = t.at(1);
        if (!cj.is_array() || static_cast<int>(cj.size()) != p - 1)
            throw input_error("scalar term needs p-1 coordinates");
        CycloScalar::Coords coords;
        for (const json& x : cj) {
            if (!x.is_string()) throw input_error("rational coordinate is not a string");
            mpq_class q;
            try {
                q = mpq_class(x.get<std::string>());
            } catch (const std::invalid_argument&) {
                throw input_error("bad rational literal: " + x.get<std::string>());
            }
            q.canonicalize();
            coords.push_back(q);
        }
        out += CycloScalar::term(p, as_int(t.at(0), "scalar terms"), coords);
    }
    return out;
}

json matrix_to_json(const SeriesMatrix& m, int lo) {
    int hi = Series::kExactHi;
    for (int i = 1; i <= m.n(); ++i)
        for (int j = 1; j <= m.n(); ++j) hi = std::min(hi, m.at(i, j).hi());
    json rows = json::array();
    for (int i = 1; i <= m.n(); ++i) {
        json row = json::array();
        for (int j = 1; j <= m.n(); ++j) row.push_back(series_to_json(m.at(i, j), hi));
        rows.push_back(row);
    }
    return json{{"p", m.p()}, {"n", m.n()}, {"window", json::array({lo, hi})},
                {"entries", rows}};
}

SeriesMatrix matrix_from_json(const json& j) {
    int p = need_int(j, "p");
    int n = need_int(j, "n");
    if (n < 1) throw input_error("matrix size must be positive");
    if (!is_prime(p)) throw input_error("p is not prime");
    const json& window = need_array(j, "window");
    if (window.size() != 2) throw input_error("window is not [lo, hi]");
    int hi = as_int(window.at(1), "window");
    const json& rows = need_array(j, "entries");
    if (static_cast<int>(rows.size()) != n) throw input_error("wrong number of matrix rows");
    SeriesMatrix m(n, p);
    for (int i = 0; i < n; ++i) {
        const json& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw input_error("wrong number of matrix columns");
        for (int c = 0; c < n; ++c) m.at(i + 1, c + 1) = series_from_json(row.at(c), p, hi);
    }
    return m;
}

json cell_to_json(const Cell& c) {
    return json{{"d", c.d}, {"sigma", c.sigma}};
}

Cell cell_from_json(const json& j) {
    Cell c;
    c.d = int_vector(need(j, "d"), "cell exponents");
    c.sigma = int_vector(need(j, "sigma"), "cell permutation");
    if (c.d.size() != c.sigma.size()) throw input_error("cell fields differ in length");
    if (!is_permutation(c.sigma)) throw input_error("sigma is not a permutation");
    return c;
}

json generator_to_json(const HeckeGenerator& g) {
    switch (g.kind) {
        case HeckeGenerator::Kind::TLeq:
            return json{{"kind", "tleq"}, {"i", g.i}};
        case HeckeGenerator::Kind::SimpleRefl:
            return json{{"kind", "srefl"}, {"i", g.i}};
        case HeckeGenerator::Kind::DiagDominant:
            return json{{"kind", "diag"}, {"d", g.d}};
        case HeckeGenerator::Kind::Word: {
            json of = json::array();
            for (const HeckeGenerator& h : g.word) of.push_back(generator_to_json(h));
            return json{{"kind", "word"}, {"of", of}};
        }
    }
    throw std::logic_error("generator_to_json: unreachable");
}

HeckeGenerator generator_from_json(const json& j) {
    const json& kind = need(j, "kind");
    if (!kind.is_string()) throw input_error("generator kind is not a string");
    std::string k = kind.get<std::string>();
    if (k == "tleq") return HeckeGenerator::tleq(need_int(j, "i"));
    if (k == "srefl") return HeckeGenerator::srefl(need_int(j, "i"));
    if (k == "diag") return HeckeGenerator::diag(int_vector(need(j, "d"), "generator d"));
    if (k == "word") {
        std::vector<HeckeGenerator> parts;
        for (const json& h : need_array(j, "of")) parts.push_back(generator_from_json(h));
        return HeckeGenerator::compose(parts);
    }
    throw input_error("unknown generator kind: " + k);
}

namespace {

HeckeGenerator simple_generator_from_text(const std::string& text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw input_error("generator needs the form kind:args: " + text);
    std::string kind = text.substr(0, colon);
    std::string args = text.substr(colon + 1);
    auto parse_ints = [&args]() {
        std::vector<int> out;
        std::istringstream is(args);
        std::string piece;
        while (std::getline(is, piece, ',')) {
            try {
                size_t used = 0;
                out.push_back(std::stoi(piece, &used));
                if (used != piece.size()) throw std::invalid_argument(piece);
            } catch (const std::exception&) {
                throw input_error("bad integer in generator: " + piece);
            }
        }
        return out;
    };
    std::vector<int> vals = parse_ints();
    if (kind == "tleq" || kind == "srefl") {
        if (vals.size() != 1) throw input_error("generator needs one index: " + text);
        return kind == "tleq" ? HeckeGenerator::tleq(vals[0]) : HeckeGenerator::srefl(vals[0]);
    }
    if (kind == "diag") {
        if (vals.empty()) throw input_error("diag generator needs exponents: " + text);
        return HeckeGenerator::diag(vals);
    }
    throw input_error("unknown generator kind: " + kind);
}

}  // namespace

HeckeGenerator generator_from_text(const std::string& text) {
    if (text.rfind("word:", 0) == 0) {
        std::string rest = text.substr(5);
        // Factors are kind:index pairs, comma separated.
        std::vector<HeckeGenerator> parts;
        std::istringstream is(rest);
        std::string piece;
        while (std::getline(is, piece, ',')) {
            // diag exponents would be ambiguous in the comma syntax; use the
            // JSON form for words containing diag.
            if (piece.rfind("diag:", 0) == 0)
                throw input_error("diag is not supported inside word: " + text);
            parts.push_back(simple_generator_from_text(piece));
        }
        if (parts.empty()) throw input_error("empty word: " + text);
        return HeckeGenerator::compose(parts);
    }
    return simple_generator_from_text(text);
}

json quiver_to_json(const QuiverRep& r) {
    json maps = json::array();
    for (const FpMatrix& m : r.maps) {
        json rows = json::array();
        for (int i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c));
            rows.push_back(row);
        }
        maps.push_back(rows);
    }
    return json{{"n", r.n}, {"p", r.p}, {"dims", r.dims}, {"maps", maps}};
}

QuiverRep quiver_from_json(const json& j) {
    QuiverRep r;
    r.n = need_int(j, "n");
    r.p = need_int(j, "p");
    if (r.n < 1) throw input_error("node count must be positive");
    if (!is_prime(r.p)) throw input_error("p is not prime");
    r.dims = int_vector(need(j, "dims"), "dims");
    if (static_cast<int>(r.dims.size()) != r.n) throw input_error("dims size differs from n");
    const json& maps = need_array(j, "maps");
    if (static_cast<int>(maps.size()) != r.n) throw input_error("maps size differs from n");
    for (int a = 0; a < r.n; ++a) {
        int rows_want = r.dims[static_cast<size_t>((a + 1) % r.n)];
        int cols_want = r.dims[static_cast<size_t>(a)];
        const json& rows = maps.at(a);
        if (!rows.is_array() || static_cast<int>(rows.size()) != rows_want)
            throw input_error("arrow " + std::to_string(a) + " has the wrong row count");
        FpMatrix m(r.p, rows_want, cols_want);
        for (int i = 0; i < rows_want; ++i) {
            std::vector<int> row = int_vector(rows.at(i), "arrow entries");
            if (static_cast<int>(row.size()) != cols_want)
                throw input_error("arrow " + std::to_string(a) + " has the wrong column count");
            for (int c = 0; c < cols_want; ++c) m.set(i, c, row[static_cast<size_t>(c)]);
        }
        r.maps.push_back(m);
    }
    return r;
}

json multisegment_to_json(const Multisegment& ms_in) {
    Multisegment ms = ms_in;
    ms.canonicalize();
    json segs = json::array();
    for (const Segment& s : ms.segments) segs.push_back(json::array({s.start, s.len}));
    return json{{"segments", segs}};
}

Multisegment multisegment_from_json(const json& j) {
    Multisegment ms;
    for (const json& s : need_array(j, "segments")) {
        if (!s.is_array() || s.size() != 2)
            throw input_error("segment is not a [start, length] pair");
        Segment seg{as_int(s.at(0), "segments"), as_int(s.at(1), "segments")};
        if (seg.len < 1) throw input_error("segment length must be positive");
        ms.segments.push_back(seg);
    }
    ms.canonicalize();
    return ms;
}

json trace_table_to_json(const TraceTable& t) {
    json rows = json::array();
    for (const auto& [k2, v] : t.values) {
        std::string k = k2 % 2 == 0 ? std::to_string(k2 / 2) : std::to_string(k2) + "/2";
        rows.push_back(json::array({k, qlpoly_to_json(v)}));
    }
    return json{{"d", t.d}, {"rows", rows}};
}

}  // namespace iwahori
