#pragma once

#include "iwahori/hecke.hpp"
#include "iwahori/matrix.hpp"
#include "iwahori/quiver.hpp"
#include "iwahori/scalars.hpp"
#include "iwahori/trace.hpp"

#include "json.hpp"

#include <stdexcept>

namespace iwahori {

// Malformed or inconsistent input data. The command-line driver maps this
// (and the underlying json parse errors) to its input-error exit code.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Laurent polynomial: list of [qexp, lexp, coeff] triples, sorted by
// exponents. Coefficients that fit a 64-bit integer are numbers, larger ones
// decimal strings.
nlohmann::json qlpoly_to_json(const QLPoly& f);
QLPoly qlpoly_from_json(const nlohmann::json& j);

// {"p": p, "terms": [[lexp, ["num/den", ...]], ...]} with p-1 coordinates per
// term in the power basis of zeta_p.
nlohmann::json cyclo_to_json(const CycloScalar& c);
CycloScalar cyclo_from_json(const nlohmann::json& j);

// {"p", "n", "window": [lo, hi], "entries": row-major series}.
// A series is {"exact_zero": bool, "coeffs": [[exp, coeff], ...]}.
// hi is the common certified window of the non-zero entries; when every entry
// is exact it is the exactness sentinel, so fully exact matrices round-trip.
nlohmann::json matrix_to_json(const SeriesMatrix& m, int lo);
SeriesMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json cell_to_json(const Cell& c);
Cell cell_from_json(const nlohmann::json& j);

// {"kind": "tleq"|"srefl", "i": ..} | {"kind": "diag", "d": [..]} |
// {"kind": "word", "of": [..]}.
nlohmann::json generator_to_json(const HeckeGenerator& g);
HeckeGenerator generator_from_json(const nlohmann::json& j);
// Text form used on the command line: "tleq:2", "srefl:1", "diag:1,0",
// "word:srefl:1,tleq:2".
HeckeGenerator generator_from_text(const std::string& text);

// {"n", "p", "dims", "maps"} with maps as row-major integer matrices.
nlohmann::json quiver_to_json(const QuiverRep& r);
QuiverRep quiver_from_json(const nlohmann::json& j);

// {"segments": [[start, len], ...]}.
nlohmann::json multisegment_to_json(const Multisegment& ms);
Multisegment multisegment_from_json(const nlohmann::json& j);

// {"d": d, "rows": [[k, poly], ...]} with k rendered as "0", "1/2", "1", ...
nlohmann::json trace_table_to_json(const TraceTable& t);

}  // namespace iwahori
