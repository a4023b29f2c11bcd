// ncsphere: command-line front end. Every subcommand reads/writes JSON
// (machine-readable on stdout; --pretty renders human text where that makes
// sense). Exit codes: 0 success / pass, 1 mathematical failure (failed suite,
// invalid homomorphism, violated bound), 2 usage or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "ncsphere/ncsphere.hpp"

using namespace ncsphere;
using nlohmann::json;

namespace {

struct GlobalOpts {
    bool pretty = false;
    bool timings = false;
    std::string out_path;
    std::string config_path;
    std::vector<std::string> tolerance_overrides;
    std::int64_t extra_conductor = 1;
    Tolerances tol;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw error("bad JSON in '" + path + "': " + e.what());
    }
    return j;
}

void apply_tolerance(Tolerances& tol, const std::string& key, double value) {
    if (key == "eps_eq")
        tol.eps_eq = value;
    else if (key == "eps_rel")
        tol.eps_rel = value;
    else if (key == "rep_residual")
        tol.rep_residual = value;
    else if (key == "det_parity")
        tol.det_parity = value;
    else if (key == "point_residual")
        tol.point_residual = value;
    else if (key == "winding_closure")
        tol.winding_closure = value;
    else if (key == "min_det")
        tol.min_det = value;
    else if (key == "invariance")
        tol.invariance = value;
    else if (key == "grid_slack")
        tol.grid_slack = value;
    else
        throw error("unknown tolerance '" + key + "'");
}

void finalize_options(GlobalOpts& g) {
    if (!g.config_path.empty()) {
        const json cfg = read_json_file(g.config_path);
        if (cfg.contains("pretty")) g.pretty = cfg.at("pretty").get<bool>();
        if (cfg.contains("timings")) g.timings = cfg.at("timings").get<bool>();
        if (cfg.contains("tolerances"))
            for (const auto& [key, value] : cfg.at("tolerances").items())
                apply_tolerance(g.tol, key, value.get<double>());
    }
    for (const auto& kv : g.tolerance_overrides) {  // flags beat config
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw error("--tolerance expects key=value");
        apply_tolerance(g.tol, kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
    }
}

Context load_context(const std::string& path, const GlobalOpts& g,
                     std::int64_t action_order = 1) {
    Context ctx = io::context_from_json(read_json_file(path));
    if (!ctx->exact) return ctx;
    const std::int64_t extra = lcm64(g.extra_conductor, action_order);
    if (extra > 1) ctx = upgrade_context(ctx, extra);
    return ctx;
}

void emit(const GlobalOpts& g, const json& payload, const std::string& pretty_text = "") {
    const std::string text = g.pretty && !pretty_text.empty()
                                 ? pretty_text
                                 : (g.pretty ? payload.dump(2) : payload.dump());
    if (!g.out_path.empty()) {
        std::ofstream out(g.out_path);
        if (!out) throw error("cannot write '" + g.out_path + "'");
        out << text << "\n";
    } else {
        std::cout << text << "\n";
    }
}

std::string matrix_pretty(const PolyMatrix& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            out += "[" + print(m.at(i, j)) + "]";
            if (j + 1 < m.cols()) out += "  ";
        }
        out += "\n";
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computer algebra for theta-deformed spheres and quantum tori"};
    app.require_subcommand(1);

    GlobalOpts g;
    // runs after all option parsing but before any subcommand callback
    app.parse_complete_callback([&] { finalize_options(g); });
    app.add_flag("--pretty", g.pretty, "human-readable output");
    app.add_flag("--timings", g.timings, "include timings in reports");
    app.add_option("--out", g.out_path, "write output to a file instead of stdout");
    app.add_option("--config", g.config_path, "JSON config file (tolerances, pretty)");
    app.add_option("--tolerance", g.tolerance_overrides, "override, e.g. eps_rel=1e-8")
        ->take_all();
    app.add_option("--extra-conductor", g.extra_conductor,
                   "extra factor admitted into exact coefficient fields");

    int exit_code = 0;

    // ---- zgen ----
    {
        auto* cmd = app.add_subcommand("zgen", "the recursive K1 generator matrix");
        auto rho_path = std::make_shared<std::string>();
        auto level = std::make_shared<int>(1);
        auto check = std::make_shared<bool>(false);
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("--level", *level, "level k (matrix is 2^{k-1} square)")->required();
        cmd->add_flag("--check", *check, "also verify sphere-unitarity");
        cmd->callback([&, rho_path, level, check] {
            const Context ctx = load_context(*rho_path, g);
            const PolyMatrix z = zgen(ctx, *level);
            json out = {{"matrix", io::to_json(z)}};
            if (*check) {
                const auto rep = is_sphere_unitary(z, *level);
                out["unitary"] = rep.unitary;
                if (!rep.unitary) exit_code = 1;
            }
            emit(g, out, matrix_pretty(z));
        });
    }

    // ---- normalize / mul / adjoint ----
    {
        auto* cmd = app.add_subcommand("normalize", "parse an expression and print normal form");
        auto rho_path = std::make_shared<std::string>();
        auto expr = std::make_shared<std::string>();
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("expr", *expr, "expression string")->required();
        cmd->callback([&, rho_path, expr] {
            const Context ctx = load_context(*rho_path, g);
            const StarPolynomial p = parse(*expr, ctx);
            emit(g, {{"expr", print(p)}, {"terms", io::to_json(p)}}, print(p) + "\n");
        });
    }
    {
        auto* cmd = app.add_subcommand("mul", "product of two expressions");
        auto rho_path = std::make_shared<std::string>();
        auto lhs = std::make_shared<std::string>(), rhs = std::make_shared<std::string>();
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("lhs", *lhs, "left factor")->required();
        cmd->add_option("rhs", *rhs, "right factor")->required();
        cmd->callback([&, rho_path, lhs, rhs] {
            const Context ctx = load_context(*rho_path, g);
            const StarPolynomial p = parse(*lhs, ctx) * parse(*rhs, ctx);
            emit(g, {{"expr", print(p)}, {"terms", io::to_json(p)}}, print(p) + "\n");
        });
    }
    {
        auto* cmd = app.add_subcommand("adjoint", "adjoint of an expression");
        auto rho_path = std::make_shared<std::string>();
        auto expr = std::make_shared<std::string>();
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("expr", *expr, "expression string")->required();
        cmd->callback([&, rho_path, expr] {
            const Context ctx = load_context(*rho_path, g);
            const StarPolynomial p = parse(*expr, ctx).adjoint();
            emit(g, {{"expr", print(p)}, {"terms", io::to_json(p)}}, print(p) + "\n");
        });
    }

    // ---- project / classify ----
    {
        auto* cmd = app.add_subcommand("project", "graded component pi_j");
        auto rho_path = std::make_shared<std::string>(), action_path = std::make_shared<std::string>();
        auto expr = std::make_shared<std::string>();
        auto cls = std::make_shared<std::int64_t>(0);
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("--action", *action_path, "rotation JSON")->required();
        cmd->add_option("--class", *cls, "class j in Z_k")->required();
        cmd->add_option("expr", *expr, "expression string")->required();
        cmd->callback([&, rho_path, action_path, expr, cls] {
            const RotationAction r = io::rotation_from_json(read_json_file(*action_path));
            const Context ctx = load_context(*rho_path, g, r.k);
            const StarPolynomial p = graded_project(parse(*expr, ctx), r, *cls);
            emit(g, {{"expr", print(p)}, {"terms", io::to_json(p)}}, print(p) + "\n");
        });
    }
    {
        auto* cmd = app.add_subcommand("classify", "homogeneity class under a rotation");
        auto rho_path = std::make_shared<std::string>(), action_path = std::make_shared<std::string>();
        auto expr = std::make_shared<std::string>();
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("--action", *action_path, "rotation JSON")->required();
        cmd->add_option("expr", *expr, "expression string")->required();
        cmd->callback([&, rho_path, action_path, expr] {
            const RotationAction r = io::rotation_from_json(read_json_file(*action_path));
            const Context ctx = load_context(*rho_path, g, r.k);
            const auto cls = homogeneity_class(parse(*expr, ctx), r);
            json out = {{"k", r.k}};
            if (cls)
                out["class"] = *cls;
            else
                out["class"] = "inhomogeneous";
            emit(g, out);
        });
    }

    // ---- factor-rotation ----
    {
        auto* cmd = app.add_subcommand("factor-rotation", "diagonal factorization R(M) = A M B");
        auto rho_path = std::make_shared<std::string>(), action_path = std::make_shared<std::string>();
        auto matrix_path = std::make_shared<std::string>();
        auto level = std::make_shared<int>(0);
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("--action", *action_path, "rotation JSON")->required();
        cmd->add_option("--level", *level, "factor zgen of this level");
        cmd->add_option("--matrix", *matrix_path, "factor a matrix from JSON");
        cmd->callback([&, rho_path, action_path, matrix_path, level] {
            const RotationAction r = io::rotation_from_json(read_json_file(*action_path));
            const Context ctx = load_context(*rho_path, g, r.k);
            if ((*level > 0) == !matrix_path->empty())
                throw error("give exactly one of --level or --matrix");
            const PolyMatrix m = *level > 0
                                     ? zgen(ctx, *level)
                                     : io::poly_matrix_from_json(read_json_file(*matrix_path), ctx);
            const auto f = factor_rotation(m, r);
            emit(g, {{"a", io::to_json(f.a)},
                     {"b", io::to_json(f.b)},
                     {"a_exponents", f.a_exponents},
                     {"b_exponents", f.b_exponents},
                     {"k", r.k}});
        });
    }

    // ---- validate-hom / apply-hom ----
    {
        auto* cmd = app.add_subcommand("validate-hom", "check a generator map against the relations");
        auto hom_path = std::make_shared<std::string>();
        auto numeric = std::make_shared<int>(0);
        auto seed = std::make_shared<std::uint64_t>(1);
        cmd->add_option("--hom", *hom_path, "generator map JSON")->required();
        cmd->add_option("--numeric", *numeric, "numeric mode with this many sample points");
        cmd->add_option("--seed", *seed, "sampling seed");
        cmd->callback([&, hom_path, numeric, seed] {
            GeneratorMap h = io::generator_map_from_json(read_json_file(*hom_path));
            const ValidationReport report =
                *numeric > 0 ? h.validate(true, *numeric, *seed, g.tol) : h.validate();
            if (!report.valid) exit_code = 1;
            emit(g, io::to_json(report));
        });
    }
    {
        auto* cmd = app.add_subcommand("apply-hom", "apply a generator map to an expression or matrix");
        auto hom_path = std::make_shared<std::string>(), matrix_path = std::make_shared<std::string>();
        auto expr = std::make_shared<std::string>();
        cmd->add_option("--hom", *hom_path, "generator map JSON")->required();
        cmd->add_option("--matrix", *matrix_path, "matrix JSON over the domain");
        cmd->add_option("expr", *expr, "expression over the domain");
        cmd->callback([&, hom_path, matrix_path, expr] {
            GeneratorMap h = io::generator_map_from_json(read_json_file(*hom_path));
            h.validate_or_throw();
            if (expr->empty() == matrix_path->empty())
                throw error("give exactly one of an expression or --matrix");
            if (!expr->empty()) {
                const StarPolynomial image = h.apply(parse(*expr, h.domain()));
                emit(g, {{"expr", print(image)}, {"terms", io::to_json(image)}},
                     print(image) + "\n");
            } else {
                const PolyMatrix image =
                    h.apply(io::poly_matrix_from_json(read_json_file(*matrix_path), h.domain()));
                emit(g, {{"matrix", io::to_json(image)}}, matrix_pretty(image));
            }
        });
    }

    // ---- rep-build / eval / grid-norm ----
    {
        auto* cmd = app.add_subcommand("rep-build", "clock-shift representation of a rational torus");
        auto rho_path = std::make_shared<std::string>();
        auto with_matrices = std::make_shared<bool>(false);
        cmd->add_option("--rho", *rho_path, "context JSON (rational angles)")->required();
        cmd->add_flag("--with-matrices", *with_matrices, "include the unitaries");
        cmd->callback([&, rho_path, with_matrices] {
            const Context ctx = load_context(*rho_path, g);
            const RationalRep rep = build_rational_rep(ctx->rho, g.tol);
            emit(g, io::to_json(rep, *with_matrices));
        });
    }
    {
        auto* cmd = app.add_subcommand("eval", "evaluate at a sphere point through a representation");
        auto rho_path = std::make_shared<std::string>(), point_path = std::make_shared<std::string>();
        auto matrix_path = std::make_shared<std::string>();
        auto rep_path = std::make_shared<std::string>();
        auto expr = std::make_shared<std::string>();
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("--point", *point_path, "sphere point JSON")->required();
        cmd->add_option("--matrix", *matrix_path, "matrix JSON");
        cmd->add_option("--rep", *rep_path, "representation JSON (default: built from --rho)");
        cmd->add_option("expr", *expr, "expression string");
        cmd->callback([&, rho_path, point_path, matrix_path, rep_path, expr] {
            const Context ctx = load_context(*rho_path, g);
            const RationalRep rep =
                rep_path->empty()
                    ? build_rational_rep(ctx->rho, g.tol)
                    : io::rational_rep_from_json(read_json_file(*rep_path), g.tol);
            const SpherePoint pt = io::sphere_point_from_json(read_json_file(*point_path));
            if (expr->empty() == matrix_path->empty())
                throw error("give exactly one of an expression or --matrix");
            const CMat value =
                !expr->empty()
                    ? eval(parse(*expr, ctx), pt, rep)
                    : eval(io::poly_matrix_from_json(read_json_file(*matrix_path), ctx), pt, rep);
            emit(g, {{"q", rep.q}, {"value", io::to_json(value)}});
        });
    }
    {
        auto* cmd = app.add_subcommand("grid-norm", "grid sup-norm estimate (lower bound)");
        auto rho_path = std::make_shared<std::string>(), grid_path = std::make_shared<std::string>();
        auto matrix_path = std::make_shared<std::string>();
        auto rep_path = std::make_shared<std::string>();
        auto expr = std::make_shared<std::string>();
        auto min_singular = std::make_shared<bool>(false);
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("--grid", *grid_path, "grid spec JSON");
        cmd->add_option("--matrix", *matrix_path, "matrix JSON");
        cmd->add_option("--rep", *rep_path, "representation JSON (default: built from --rho)");
        cmd->add_option("expr", *expr, "expression string");
        cmd->add_flag("--min-singular", *min_singular,
                      "report the minimum smallest singular value instead");
        cmd->callback([&, rho_path, grid_path, matrix_path, rep_path, expr, min_singular] {
            const Context ctx = load_context(*rho_path, g);
            const RationalRep rep =
                rep_path->empty()
                    ? build_rational_rep(ctx->rho, g.tol)
                    : io::rational_rep_from_json(read_json_file(*rep_path), g.tol);
            const GridSpec grid =
                grid_path->empty() ? GridSpec{} : io::grid_from_json(read_json_file(*grid_path));
            if (expr->empty() == matrix_path->empty())
                throw error("give exactly one of an expression or --matrix");
            PolyMatrix m(ctx, 1, 1);
            if (!expr->empty())
                m.at(0, 0) = parse(*expr, ctx);
            else
                m = io::poly_matrix_from_json(read_json_file(*matrix_path), ctx);
            const GridExtremum ex =
                *min_singular ? grid_min_singular(m, rep, grid) : grid_norm(m, rep, grid);
            emit(g, {{"value", ex.value}, {"point", io::to_json(ex.point)}});
        });
    }

    // ---- counterexample ----
    {
        auto* cmd = app.add_subcommand("counterexample",
                                       "invertible square sum attached to a noncommuting pair");
        auto rho_path = std::make_shared<std::string>();
        auto jgen = std::make_shared<int>(1), kgen = std::make_shared<int>(2);
        auto steps = std::make_shared<int>(30);
        cmd->add_option("--rho", *rho_path, "context JSON")->required();
        cmd->add_option("--j", *jgen, "first generator (1-based)");
        cmd->add_option("--k", *kgen, "second generator (1-based)");
        cmd->add_option("--grid-steps", *steps, "grid resolution per dimension");
        cmd->callback([&, rho_path, jgen, kgen, steps] {
            const Context ctx = load_context(*rho_path, g);
            const CounterexampleSum ce = counterexample_sum(ctx, *jgen - 1, *kgen - 1);
            const RationalRep rep = build_rational_rep(ctx->rho, g.tol);
            PolyMatrix m(ctx, 1, 1);
            m.at(0, 0) = ce.sum - StarPolynomial::one(ctx);
            const GridExtremum ex = grid_norm(m, rep, GridSpec{*steps, *steps, std::nullopt});
            const bool pass = ce.bound < 1.0 && ex.value <= ce.bound + g.tol.grid_slack;
            if (!pass) exit_code = 1;
            emit(g, {{"sum", print(ce.sum)},
                     {"simplified", print(ce.simplified)},
                     {"bound", ce.bound},
                     {"grid_max", ex.value},
                     {"pass", pass}});
        });
    }

    // ---- winding / circle-loop ----
    {
        auto* cmd = app.add_subcommand("winding", "winding number of a sampled loop");
        auto loop_path = std::make_shared<std::string>(), unitary_path = std::make_shared<std::string>();
        auto order = std::make_shared<std::int64_t>(0);
        cmd->add_option("--loop", *loop_path, "loop JSON (array of sampled matrices)")->required();
        cmd->add_option("--invariant-order", *order, "also check R_U-invariant divisibility");
        cmd->add_option("--unitary", *unitary_path, "scalar unitary JSON (with --invariant-order)");
        cmd->callback([&, loop_path, unitary_path, order] {
            const MatrixLoop loop = io::loop_from_json(read_json_file(*loop_path));
            if (*order >= 2) {
                CMat u = CMat::Identity(loop.dim(), loop.dim());
                if (!unitary_path->empty()) u = io::cmat_from_json(read_json_file(*unitary_path));
                const auto report = invariant_winding_check(loop, *order, u, g.tol);
                if (!report.pass) exit_code = 1;
                emit(g, {{"winding", report.winding},
                         {"invariance_residual", report.invariance_residual},
                         {"divisible", report.divisible},
                         {"k", *order}});
            } else {
                emit(g, {{"winding", winding(loop, g.tol)}, {"samples", loop.size()}});
            }
        });
    }
    {
        auto* cmd = app.add_subcommand("circle-loop",
                                       "restrict a commutative-context matrix to a circle");
        auto rho_path = std::make_shared<std::string>(), matrix_path = std::make_shared<std::string>();
        auto level = std::make_shared<int>(0);
        auto circle = std::make_shared<int>(1);
        auto resolution = std::make_shared<int>(64);
        auto emit_loop = std::make_shared<bool>(false);
        cmd->add_option("--rho", *rho_path, "context JSON (all angles zero)")->required();
        cmd->add_option("--level", *level, "use zgen of this level");
        cmd->add_option("--matrix", *matrix_path, "matrix JSON");
        cmd->add_option("--circle", *circle, "circle index j (1-based)");
        cmd->add_option("--resolution", *resolution, "initial sample count");
        cmd->add_flag("--emit-loop", *emit_loop, "include the sampled loop");
        cmd->callback([&, rho_path, matrix_path, level, circle, resolution, emit_loop] {
            const Context ctx = load_context(*rho_path, g);
            const RationalRep rep = build_rational_rep(ctx->rho, g.tol);
            if ((*level > 0) == !matrix_path->empty())
                throw error("give exactly one of --level or --matrix");
            const PolyMatrix m = *level > 0
                                     ? zgen(ctx, *level)
                                     : io::poly_matrix_from_json(read_json_file(*matrix_path), ctx);
            const SampledLoop sampled = circle_loop(m, *circle - 1, rep, *resolution, g.tol);
            json out = {{"winding", winding(sampled.loop, g.tol)},
                        {"refinements", sampled.refinements},
                        {"samples", sampled.loop.size()}};
            if (*emit_loop) out["loop"] = io::to_json(sampled.loop);
            emit(g, out);
        });
    }

    // ---- suite ----
    {
        auto* cmd = app.add_subcommand("suite", "named end-to-end verification scenario");
        auto name = std::make_shared<std::string>();
        auto seed = std::make_shared<std::uint64_t>(1);
        auto trials = std::make_shared<int>(-1);
        cmd->add_option("--name", *name,
                        "zgen | borsuk-ulam-engine | counterexample | winding | rational-rep")
            ->required();
        cmd->add_option("--seed", *seed, "random seed");
        cmd->add_option("--trials", *trials, "trial count override");
        cmd->callback([&, name, seed, trials] {
            const SuiteReport report = run_suite(*name, *seed, *trials);
            if (!report.pass) exit_code = 1;
            emit(g, io::to_json(report, g.timings));
        });
    }

    // allow global flags (--pretty, --out, ...) after the subcommand name
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
