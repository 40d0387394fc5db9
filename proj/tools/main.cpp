// Batch driver: JSON in, JSON out, deterministic exit codes.
//   0  success
//   1  a verification failed
//   2  precision exhausted after the configured retries
//   3  malformed input (bad JSON, bad flags, invalid representation)

#include "iwahori/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace iwahori;
using nlohmann::json;

namespace {

json read_input(const std::string& path) {
    std::string text;
    if (path.empty()) {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) throw input_error("cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("bad JSON: ") + e.what());
    }
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw input_error("cannot open " + out_path);
    out << j.dump(2) << "\n";
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string piece;
    while (std::getline(is, piece, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stoi(piece, &pos));
            if (pos != piece.size()) throw input_error("trailing junk in " + piece);
        } catch (const input_error&) {
            throw;
        } catch (const std::exception&) {
            throw input_error("not an integer: " + piece);
        }
    }
    if (out.empty()) throw input_error("empty integer list");
    return out;
}

void apply_prec(const std::string& prec, RunConfig& cfg) {
    if (prec.empty()) return;
    size_t colon = prec.find(':');
    if (colon == std::string::npos) throw input_error("--prec wants lo:hi");
    try {
        cfg.lo = std::stoi(prec.substr(0, colon));
        cfg.hi = std::stoi(prec.substr(colon + 1));
    } catch (const std::exception&) {
        throw input_error("--prec wants lo:hi, got " + prec);
    }
}

json fpmat_to_json(const FpMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Identity cell followed by seeded random cells with |d_i| <= 2. Raw modulo
// draws keep the sequence identical across standard libraries.
std::vector<Cell> random_cells(int n, unsigned long seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Cell> cells;
    Cell id;
    for (int i = 1; i <= n; ++i) {
        id.d.push_back(0);
        id.sigma.push_back(i);
    }
    cells.push_back(id);
    while (static_cast<int>(cells.size()) < count) {
        Cell c;
        for (int i = 0; i < n; ++i) c.d.push_back(static_cast<int>(rng() % 5) - 2);
        for (int i = 1; i <= n; ++i) c.sigma.push_back(i);
        for (int i = n - 1; i > 0; --i)
            std::swap(c.sigma[i], c.sigma[rng() % (i + 1)]);
        cells.push_back(c);
    }
    return cells;
}

QuiverRep load_rep(const std::string& path) {
    QuiverRep r = quiver_from_json(read_input(path));
    QuiverReport rep = validate_rep(r);
    if (!rep.ok) {
        std::string msg = "invalid representation";
        for (const std::string& pr : rep.problems) msg += "; " + pr;
        throw input_error(msg);
    }
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Whittaker, Hecke, quiver, and trace computations"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string prec, out_path;
    int rc = 0;

    auto* opt_n = app.add_option("--n", cfg.n, "matrix rank");
    auto* opt_p = app.add_option("--p", cfg.p, "residue characteristic (prime)");
    app.add_option("--prec", prec, "precision window lo:hi");
    app.add_option("--retries", cfg.retries, "window doublings before giving up");
    app.add_option("--seed", cfg.seed, "seed for generated test cells");
    app.add_option("--out", out_path, "write the JSON result to this file");

    auto sub = [](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    // whittaker ------------------------------------------------------------
    CLI::App* wh = sub(&app, "whittaker", "Iwahori-fixed Whittaker values");

    std::string d_str, sigma_str, file;
    CLI::App* wh_eval = sub(wh, "eval", "formal value on a cell (d, sigma)");
    wh_eval->add_option("--d", d_str, "diagonal exponents, comma separated")->required();
    wh_eval->add_option("--sigma", sigma_str, "permutation, one-line images")->required();
    wh_eval->callback([&] {
        std::vector<int> d = parse_int_list(d_str);
        std::vector<int> sigma = parse_int_list(sigma_str);
        if (d.size() != sigma.size())
            throw input_error("--d and --sigma must have the same length");
        if (!is_permutation(sigma)) throw input_error("--sigma is not a permutation");
        Cell c{d, sigma};
        emit(json{{"cell", cell_to_json(c)},
                  {"in_support", cell_in_support(c)},
                  {"value", qlpoly_to_json(whittaker_formula(c))}},
             out_path);
    });

    CLI::App* wh_evalm = sub(wh, "eval-matrix", "value at a matrix (JSON input)");
    wh_evalm->add_option("--file", file, "matrix JSON (stdin when omitted)");
    wh_evalm->callback([&] {
        apply_prec(prec, cfg);
        SeriesMatrix m = matrix_from_json(read_input(file));
        if (opt_p->count() > 0 && cfg.p != m.p())
            throw input_error("--p disagrees with the matrix header");
        if (opt_n->count() > 0 && cfg.n != m.n())
            throw input_error("--n disagrees with the matrix header");
        cfg.n = m.n();
        cfg.p = m.p();
        cfg.validate();
        int work_hi = cfg.hi;
        for (int attempt = 0;; ++attempt) {
            try {
                Decomposition dec = decompose(m, work_hi);
                QLPoly f = whittaker_formula(dec.cell);
                json phase;  // null when the value is zero regardless of psi
                CycloScalar value(m.p());
                if (!f.is_zero()) {
                    int r = residue_character(dec.u);
                    phase = r;
                    value = psi_char(m.p(), r) * specialize(f, m.p());
                }
                emit(json{{"cell", cell_to_json(dec.cell)},
                          {"psi_phase", phase},
                          {"value", cyclo_to_json(value)}},
                     out_path);
                return;
            } catch (const insufficient_precision&) {
                if (attempt >= cfg.retries) throw;
                work_hi *= 2;
            }
        }
    });

    // hecke ----------------------------------------------------------------
    CLI::App* he = sub(&app, "hecke", "Iwahori-Hecke operators by coset summation");

    std::string gen_str, cells_file;
    int cell_count = 10;
    CLI::App* he_verify = sub(he, "verify", "check the eigenvalue on test cells");
    he_verify->add_option("--gen", gen_str, "generator, e.g. tleq:2 or word:srefl:1,tleq:2")
        ->required();
    he_verify->add_option("--cells", cells_file, "JSON array of cells (default: generated)");
    he_verify->add_option("--count", cell_count, "number of generated cells");
    he_verify->callback([&] {
        apply_prec(prec, cfg);
        cfg.validate();
        HeckeGenerator g = generator_from_text(gen_str);
        std::vector<Cell> cells;
        if (!cells_file.empty()) {
            json j = read_input(cells_file);
            if (!j.is_array()) throw input_error("--cells wants a JSON array");
            for (const json& cj : j) cells.push_back(cell_from_json(cj));
        } else {
            cells = random_cells(cfg.n, cfg.seed, cell_count);
        }
        EigenReport rep = verify_eigen(g, cells, cfg);
        emit(json{{"generator", generator_to_json(g)},
                  {"eigenvalue", qlpoly_to_json(expected_eigenvalue(g))},
                  {"cells_checked", rep.cells_checked},
                  {"ok", rep.ok},
                  {"failures", rep.failures}},
             out_path);
        if (!rep.ok) rc = 1;
    });

    CLI::App* he_reps = sub(he, "reps", "coset representatives with certificates");
    he_reps->add_option("--gen", gen_str, "generator (words rejected)")->required();
    he_reps->callback([&] {
        apply_prec(prec, cfg);
        cfg.validate();
        HeckeGenerator g = generator_from_text(gen_str);
        std::vector<SeriesMatrix> reps = coset_reps(g, cfg.n, cfg.p);
        RepReport report = validate_reps(g, cfg.n, cfg.p, cfg.hi);
        json mats = json::array();
        for (const SeriesMatrix& m : reps) mats.push_back(matrix_to_json(m, cfg.lo));
        emit(json{{"generator", generator_to_json(g)},
                  {"volume", qlpoly_to_json(generator_volume(g, cfg.n))},
                  {"count", report.count},
                  {"reps", mats},
                  {"ok", report.ok},
                  {"problems", report.problems}},
             out_path);
        if (!report.ok) rc = 1;
    });

    CLI::App* he_apply = sub(he, "apply", "apply the operator to the Whittaker function");
    he_apply->add_option("--gen", gen_str, "generator or word")->required();
    he_apply->add_option("--file", file, "matrix JSON for the base point (stdin when omitted)");
    he_apply->callback([&] {
        apply_prec(prec, cfg);
        HeckeGenerator g = generator_from_text(gen_str);
        SeriesMatrix x = matrix_from_json(read_input(file));
        cfg.n = x.n();
        cfg.p = x.p();
        cfg.validate();
        MatrixFunction f = [&cfg](const SeriesMatrix& m) { return whittaker_eval(m, cfg); };
        CycloScalar value = hecke_apply(g, f, x);
        emit(json{{"generator", generator_to_json(g)}, {"value", cyclo_to_json(value)}},
             out_path);
    });

    // quiver ---------------------------------------------------------------
    CLI::App* qu = sub(&app, "quiver", "nilpotent cyclic-quiver representations");

    std::string dims_str, x_file, y_file, mode = "elementary";
    CLI::App* qu_dec = sub(qu, "decompose", "split into segment modules");
    qu_dec->add_option("--file", file, "representation JSON (stdin when omitted)");
    qu_dec->callback([&] {
        QuiverRep r = load_rep(file);
        SplitResult sr = decompose_rep(r);
        json basis = json::array();
        for (const FpMatrix& b : sr.basis) basis.push_back(fpmat_to_json(b));
        emit(json{{"multisegment", multisegment_to_json(sr.ms)},
                  {"node_dims", sr.ms.node_dims(r.n)},
                  {"basis", basis}},
             out_path);
    });

    CLI::App* qu_enum = sub(qu, "enumerate", "isomorphism classes for a dimension vector");
    qu_enum->add_option("--dims", dims_str, "dimension vector, comma separated")->required();
    qu_enum->callback([&] {
        std::vector<int> dims = parse_int_list(dims_str);
        if (opt_n->count() > 0 && cfg.n != static_cast<int>(dims.size()))
            throw input_error("--n disagrees with the length of --dims");
        std::vector<Multisegment> classes = enumerate_classes(dims, dims.size());
        json out = json::array();
        for (const Multisegment& ms : classes) out.push_back(multisegment_to_json(ms));
        emit(json{{"n", dims.size()}, {"dims", dims}, {"count", classes.size()},
                  {"classes", out}},
             out_path);
    });

    CLI::App* qu_homext = sub(qu, "homext", "hom and ext^1 dimensions");
    qu_homext->add_option("--x", x_file, "first representation JSON")->required();
    qu_homext->add_option("--y", y_file, "second representation JSON")->required();
    qu_homext->callback([&] {
        QuiverRep x = load_rep(x_file);
        QuiverRep y = load_rep(y_file);
        if (x.n != y.n || x.p != y.p)
            throw input_error("representations live over different quivers");
        emit(json{{"hom", hom_dim(x, y)}, {"ext1", ext1_dim(x, y)}}, out_path);
    });

    CLI::App* qu_filter = sub(qu, "filter", "filtration with elementary or constant quotients");
    qu_filter->add_option("--file", file, "representation JSON (stdin when omitted)");
    qu_filter->add_option("--mode", mode, "elementary (default) or constant");
    qu_filter->callback([&] {
        QuiverRep r = load_rep(file);
        Filtration filt;
        if (mode == "elementary") {
            filt = elementary_filtration(r);
        } else if (mode == "constant") {
            filt = constant_filtration(r);
        } else {
            throw input_error("--mode wants elementary or constant");
        }
        json steps = json::array();
        for (const std::vector<FpMatrix>& step : filt.steps) {
            json nodes = json::array();
            for (const FpMatrix& b : step) nodes.push_back(fpmat_to_json(b));
            steps.push_back(std::move(nodes));
        }
        bool ok = check_filtration(r, filt);
        emit(json{{"mode", mode}, {"steps", steps}, {"ok", ok}}, out_path);
        if (!ok) rc = 1;
    });

    // trace ----------------------------------------------------------------
    CLI::App* tr = sub(&app, "trace", "trace tables for torsion of a fixed degree");

    int trace_d = 1, d_max = 8;
    CLI::App* tr_table = sub(tr, "table", "half-integer trace table for degree d");
    tr_table->add_option("--d", trace_d, "torsion degree")->required();
    tr_table->callback([&] { emit(trace_table_to_json(l_values(trace_d)), out_path); });

    CLI::App* tr_verify = sub(tr, "verify", "difference and unweighted identities up to d-max");
    tr_verify->add_option("--d-max", d_max, "largest degree checked");
    tr_verify->callback([&] {
        json failures = json::array();
        int checked = 0;
        for (int d = 1; d <= d_max; ++d) {
            for (const TraceReport& rep : {verify_difference(d), verify_unweighted(d)}) {
                for (const std::string& fmsg : rep.failures) failures.push_back(fmsg);
            }
            ++checked;
        }
        bool ok = failures.empty();
        emit(json{{"d_max", d_max}, {"degrees_checked", checked}, {"ok", ok},
                  {"failures", failures}},
             out_path);
        if (!ok) rc = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    } catch (const insufficient_precision& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}
