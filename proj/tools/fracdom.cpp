#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "fracdom/dominance.hpp"
#include "fracdom/engine.hpp"
#include "fracdom/error.hpp"
#include "fracdom/io.hpp"
#include "fracdom/service.hpp"
#include "fracdom/transforms.hpp"

using namespace fracdom;
using io::json;

namespace {

void print_json(const json& j)
{
    std::cout << j.dump(2) << "\n";
}

// ---- render ---------------------------------------------------------------

struct RenderArgs {
    std::string scene_path;
    std::optional<std::string> expr;
    std::optional<std::string> center;
    std::optional<double> scale;
    std::optional<int> width;
    std::optional<int> height;
    std::optional<double> log_k;
    std::optional<int> max_iter;
    std::optional<std::string> palette;
    std::string out;
    std::string grid_out;
    std::string save_scene;
    std::string palette_dir;
    unsigned workers = 0;
    bool dump_bytecode = false;
};

io::Scene scene_for(const RenderArgs& a)
{
    io::Scene s = a.scene_path.empty() ? io::Scene{} : io::load_scene(a.scene_path);
    if (a.expr) s.expr = *a.expr;
    if (a.center) s.viewport.center = io::parse_complex_pair(*a.center);
    if (a.scale) s.viewport.scale = *a.scale;
    if (a.width) s.viewport.width = *a.width;
    if (a.height) s.viewport.height = *a.height;
    if (a.log_k) s.log_k = *a.log_k;
    if (a.max_iter) s.max_iter = *a.max_iter;
    if (a.palette) s.palette_id = *a.palette;
    return s;
}

int cmd_render(const RenderArgs& a)
{
    if (a.out.empty() && a.grid_out.empty() && !a.dump_bytecode && a.save_scene.empty()) {
        throw IoError("nothing to do: pass -o, --dump-grid, --dump-bytecode or --save-scene");
    }
    const io::Scene scene = scene_for(a);
    const engine::RenderParams params = io::render_params(scene);
    if (a.dump_bytecode) {
        std::cout << vm::disassemble(params.program);
    }
    if (!a.save_scene.empty()) {
        io::save_scene(a.save_scene, scene);
    }
    if (a.out.empty() && a.grid_out.empty()) {
        return 0;
    }

    engine::PaletteRegistry palettes;
    if (!a.palette_dir.empty()) {
        std::vector<std::string> warnings;
        palettes.load_directory(a.palette_dir, warnings);
        for (const auto& w : warnings) {
            std::cerr << "warning: " << w << "\n";
        }
    }
    const engine::Palette* palette = palettes.find(scene.palette_id);
    if (palette == nullptr) {
        throw DomainError("unknown palette \"" + scene.palette_id + "\"");
    }
    scene.viewport.validate();
    params.validate();
    if (const auto w = scene.viewport.precision_warning()) {
        std::cerr << "warning: " << *w << "\n";
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = engine::render(scene.viewport, params, {a.workers});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!a.out.empty()) {
        engine::write_png(a.out, engine::colorize(grid, *palette));
    }
    if (!a.grid_out.empty()) {
        const auto bytes = engine::dump_grid(grid);
        std::ofstream f(a.grid_out, std::ios::binary);
        f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!f) {
            throw IoError("cannot write " + a.grid_out);
        }
    }
    const std::size_t pixels = grid.cells().size();
    std::cerr << "pixels " << pixels << "  escaped " << 1.0 - grid.interior_fraction() << "  interior "
              << grid.interior_fraction() << "  time " << seconds << " s\n";
    return 0;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
    std::string expr;
    int order = dominance::kDefaultOrder;
    std::string regime = "zero";
    std::vector<std::string> tg;
    std::optional<int> theta_m;
    double radius = 0.1;
    int samples = 720;
    std::string point = "0,0";
    std::optional<int> iterate;
};

int cmd_analyze(const AnalyzeArgs& a)
{
    if (!a.tg.empty()) {
        std::size_t used = 0;
        const int n = std::stoi(a.tg[2], &used);
        if (used != a.tg[2].size()) {
            throw DomainError("--tg n must be an integer");
        }
        print_json(io::tg_to_json(
            dominance::analyze_tg(io::parse_complex_pair(a.tg[0]), io::parse_complex_pair(a.tg[1]), n)));
        return 0;
    }
    if (a.expr.empty()) {
        throw IoError("analyze needs --expr or --tg");
    }
    const auto e = expr::parse(a.expr);
    const auto regime = a.regime == "inf" ? dominance::Regime::ToInfinity : dominance::Regime::ToZero;
    const auto report = dominance::predict_embedded(e, a.order, regime);
    json out = io::report_to_json(report);
    if (a.theta_m) {
        out["theta_bound"] = io::theta_to_json(
            dominance::check_theta_bound(e, *a.theta_m, a.radius, a.samples, io::parse_complex_pair(a.point)));
    }
    if (a.iterate) {
        const int m = a.theta_m ? *a.theta_m : report.predicted_order.value_or(0);
        if (m < 1) {
            throw DomainError("--iterate needs --theta-m or a predicted order");
        }
        const auto d = dominance::iterate_theta_consistency(report.series.without_degree(0), m, *a.iterate);
        out["iteration"] = {{"n", *a.iterate}, {"m", m}, {"lowest_degree", d.lowest_degree},
                            {"expected", d.expected}, {"holds", d.holds}};
    }
    print_json(out);
    return 0;
}

// ---- transform ------------------------------------------------------------

struct TransformArgs {
    std::string poly;
    std::string expr;
    double scale_u = 1.0;
    double theta = 0.0;
    std::string shift = "0,0";
    int digits = 4;
    bool json_out = false;

    std::string builder;
    double n = 2.0;
    std::string a = "0,0";
    std::string b = "0,0";
    double s = 1.0;
    double phi = 0.0;
    std::string f;
};

// Rounds each component to `digits` significant digits relative to |v|, so
// angles typed to a few decimals print as the exact unit they approximate.
double round_to(double x, double quantum)
{
    return quantum > 0.0 ? std::round(x / quantum) * quantum : x;
}

Complex rounded(Complex v, int digits)
{
    const double mag = std::abs(v);
    if (mag == 0.0 || digits <= 0) {
        return v;
    }
    const double quantum = std::pow(10.0, std::floor(std::log10(mag)) - digits + 1);
    return {round_to(v.real(), quantum), round_to(v.imag(), quantum)};
}

transforms::SparseLaurentPolynomial rounded(const transforms::SparseLaurentPolynomial& p, int digits)
{
    std::map<int, Complex> terms;
    for (const auto& [d, a] : p.terms()) {
        const Complex r = rounded(a, digits);
        if (r != Complex(0.0)) {
            terms.emplace(d, r);
        }
    }
    return transforms::SparseLaurentPolynomial(terms, rounded(p.center(), digits));
}

void emit_map(const expr::Expr& map, const std::vector<std::string>& notes, bool json_out, json extra = {})
{
    for (const auto& n : notes) {
        std::cerr << "note: " << n << "\n";
    }
    if (json_out) {
        json j = extra.is_null() ? json::object() : std::move(extra);
        j["expr"] = expr::format(map);
        j["notes"] = notes;
        print_json(j);
    } else {
        std::cout << expr::format(map) << "\n";
    }
}

int cmd_builder(const TransformArgs& t)
{
    using namespace transforms;
    if (t.builder == "translated") {
        emit_map(build_translated(t.n, io::parse_complex_pair(t.a)), {}, t.json_out);
    } else if (t.builder == "rotated") {
        const auto r = build_rotated(t.n, t.theta);
        emit_map(r.map, r.notes, t.json_out, {{"rho", r.rho}, {"clockwise", r.clockwise}});
    } else if (t.builder == "scaled") {
        const auto r = build_scaled(t.n, io::parse_complex_pair(t.a).real());
        emit_map(r.map, {}, t.json_out, {{"sigma", r.sigma}});
    } else if (t.builder == "spt") {
        const auto r = build_spt(t.n, io::parse_complex_pair(t.a), io::parse_complex_pair(t.b));
        emit_map(r.map, {r.description}, t.json_out,
                 {{"translation", io::complex_to_json(r.translation)}, {"rotation", r.rotation},
                  {"clockwise", r.clockwise}, {"scale", r.scale}});
    } else if (t.builder == "zoom") {
        if (t.f.empty()) {
            throw IoError("--builder zoom needs --f");
        }
        emit_map(build_zoom(expr::parse(t.f), t.s, t.phi, io::parse_complex_pair(t.a)), {}, t.json_out);
    } else {
        throw IoError("unknown builder \"" + t.builder + "\"");
    }
    return 0;
}

int cmd_transform(const TransformArgs& t)
{
    if (!t.builder.empty()) {
        return cmd_builder(t);
    }
    if (t.poly.empty() == t.expr.empty()) {
        throw IoError("transform needs exactly one of --poly or --expr");
    }
    const auto poly = t.poly.empty() ? transforms::polynomial_from_expr(expr::parse(t.expr))
                                     : transforms::parse_term_list(t.poly);
    const transforms::TransformSpec spec{t.scale_u, t.theta, io::parse_complex_pair(t.shift)};
    const auto built = transforms::build_transformed(poly, spec);
    const auto exact = transforms::transform_polynomial(poly, spec);
    const auto shown = rounded(exact, t.digits);
    if (t.json_out) {
        const auto m = transforms::motion_of(spec);
        emit_map(shown.to_map(), built.notes, true,
                 {{"polynomial", io::polynomial_to_json(exact)},
                  {"motion", {{"rotation", io::complex_to_json(m.rotation)}, {"shift", io::complex_to_json(m.shift)}}}});
    } else {
        emit_map(shown.to_map(), built.notes, false);
    }
    return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
    std::string theorem;
    std::optional<int> n;
    std::optional<double> theta;
    std::optional<std::string> a;
    std::optional<std::string> c;
    int trials = 100;
    int iterations = 50;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
};

int cmd_verify(const VerifyArgs& v)
{
    if (v.trials < 1) {
        throw DomainError("--trials must be at least 1");
    }
    std::mt19937_64 rng(v.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> degree(2, 6);
    auto disk = [&](double radius) { return std::polar(radius * std::sqrt(unit(rng)), 2 * std::numbers::pi * unit(rng)); };

    double worst = 0.0;
    json worst_case = nullptr;
    for (int trial = 0; trial < v.trials; ++trial) {
        const int n = v.n.value_or(degree(rng));
        const Complex c = v.c ? io::parse_complex_pair(*v.c) : disk(2.0);
        double dev = 0.0;
        json params{{"n", n}, {"c", io::complex_to_json(c)}};
        if (v.theorem == "translation") {
            const Complex a = v.a ? io::parse_complex_pair(*v.a) : disk(1.0);
            dev = transforms::verify_translation(n, a, c, v.iterations);
            params["a"] = io::complex_to_json(a);
        } else if (v.theorem == "rotation") {
            const double theta = v.theta.value_or(2 * std::numbers::pi * unit(rng));
            dev = transforms::verify_rotation(n, theta, c, v.iterations);
            params["theta"] = theta;
        } else if (v.theorem == "scaling") {
            const double a = v.a ? io::parse_complex_pair(*v.a).real() : 0.5 + 1.5 * unit(rng);
            dev = transforms::verify_scaling(n, a, c, v.iterations);
            params["a"] = a;
        } else {
            throw IoError("unknown theorem \"" + v.theorem + "\"; use translation, rotation or scaling");
        }
        if (!(dev <= worst)) {
            worst = dev;
            worst_case = params;
        }
    }
    const bool passed = worst <= v.tolerance;
    print_json({{"theorem", v.theorem}, {"trials", v.trials}, {"iterations", v.iterations},
                {"max_deviation", worst}, {"worst_case", worst_case}, {"tolerance", v.tolerance},
                {"passed", passed}});
    return passed ? 0 : io::kExitVerificationFailed;
}

// ---- serve ----------------------------------------------------------------

struct ServeArgs {
    std::string host = "127.0.0.1";
    int port = 8080;
    unsigned workers = 0;
    unsigned render_threads = 1;
    std::size_t cache = 256;
    std::string static_dir;
    std::string palette_dir;
};

int cmd_serve(const ServeArgs& s)
{
    service::TileService svc({.workers = s.workers,
                              .render_threads = s.render_threads,
                              .tile_cache_size = s.cache,
                              .palette_dir = s.palette_dir});
    for (const auto& w : svc.warnings()) {
        std::cerr << "warning: " << w << "\n";
    }
    service::Server server(svc, {.host = s.host, .port = s.port, .static_dir = s.static_dir});
    const int port = server.bind();
    std::cerr << "listening on http://" << s.host << ":" << port << " with " << svc.workers()
              << " render slots\n";
    server.listen();
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Escape-time fractal renderer and dominant-term analyzer"};
    app.require_subcommand(1);

    RenderArgs render;
    auto* r = app.add_subcommand("render", "render a scene to PNG");
    r->add_option("--scene", render.scene_path, "scene JSON file")->check(CLI::ExistingFile);
    r->add_option("--expr", render.expr, "map text, e.g. z^2+c");
    r->add_option("--center", render.center, "re,im");
    r->add_option("--scale", render.scale, "plane units per pixel");
    r->add_option("--width", render.width);
    r->add_option("--height", render.height);
    r->add_option("--log-k", render.log_k, "natural log of the escape radius");
    r->add_option("--max-iter,-n", render.max_iter);
    r->add_option("--palette", render.palette);
    r->add_option("--palette-dir", render.palette_dir, "extra palette JSON files");
    r->add_option("-o,--out", render.out, "PNG output path");
    r->add_option("--dump-grid", render.grid_out, "raw u32 escape counts");
    r->add_option("--save-scene", render.save_scene, "write the effective scene JSON");
    r->add_option("--workers", render.workers, "render threads (0: all cores)");
    r->add_flag("--dump-bytecode", render.dump_bytecode, "print compiled bytecode to stdout");

    AnalyzeArgs analyze;
    auto* a = app.add_subcommand("analyze", "series expansion and embedded-Multibrot prediction");
    auto* a_expr = a->add_option("--expr", analyze.expr, "map text");
    a->add_option("--order", analyze.order, "expansion order")->check(CLI::PositiveNumber);
    a->add_option("--regime", analyze.regime)->check(CLI::IsMember({"zero", "inf"}));
    a->add_option("--tg", analyze.tg, "T_g family: a_re,a_im b_re,b_im n")->expected(3)->excludes(a_expr);
    a->add_option("--theta-m", analyze.theta_m, "also sample the bound |f(z)| ~ |z|^m");
    a->add_option("--radius", analyze.radius, "outer sampling radius");
    a->add_option("--samples", analyze.samples, "samples per circle");
    a->add_option("--point", analyze.point, "sampling center re,im");
    a->add_option("--iterate", analyze.iterate, "check the lowest degree of the n-fold composition");

    TransformArgs transform;
    auto* t = app.add_subcommand("transform", "rotate, scale and shift a polynomial map");
    t->add_option("--poly", transform.poly, "coefficient:degree list, e.g. 1:2,1:3");
    t->add_option("--expr", transform.expr, "polynomial map text, e.g. z^2+z^3+c");
    t->add_option("--scale-u", transform.scale_u);
    t->add_option("--theta", transform.theta, "rotation angle in radians");
    t->add_option("--shift", transform.shift, "re,im");
    t->add_option("--digits", transform.digits, "significant digits shown per coefficient (0: all)");
    t->add_flag("--json", transform.json_out);
    t->add_option("--builder", transform.builder)
        ->check(CLI::IsMember({"translated", "rotated", "scaled", "spt", "zoom"}));
    t->add_option("--n", transform.n, "builder exponent");
    t->add_option("--a", transform.a, "builder parameter re,im");
    t->add_option("--b", transform.b, "builder parameter re,im");
    t->add_option("--s", transform.s, "zoom scale");
    t->add_option("--phi", transform.phi, "zoom angle");
    t->add_option("--f", transform.f, "zoom base map");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "check a similarity identity by dual iteration");
    v->add_option("--theorem", verify.theorem)->required()->check(
        CLI::IsMember({"translation", "rotation", "scaling"}));
    v->add_option("--n", verify.n, "exponent (random 2..6 when omitted)");
    v->add_option("--theta", verify.theta);
    v->add_option("--a", verify.a, "translation re,im or real scale");
    v->add_option("--c", verify.c, "re,im (random in |c| < 2 when omitted)");
    v->add_option("--trials", verify.trials);
    v->add_option("--iterations", verify.iterations);
    v->add_option("--seed", verify.seed);
    v->add_option("--tolerance", verify.tolerance);

    ServeArgs serve;
    auto* s = app.add_subcommand("serve", "HTTP tile and analysis service");
    s->add_option("--host", serve.host);
    s->add_option("--port", serve.port);
    s->add_option("--workers", serve.workers, "concurrent renders (0: all cores)");
    s->add_option("--render-threads", serve.render_threads, "threads per render");
    s->add_option("--cache", serve.cache, "tile cache entries");
    s->add_option("--static", serve.static_dir, "directory served at /");
    s->add_option("--palette-dir", serve.palette_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*r) return cmd_render(render);
        if (*a) return cmd_analyze(analyze);
        if (*t) return cmd_transform(transform);
        if (*v) return cmd_verify(verify);
        if (*s) return cmd_serve(serve);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io::exit_code_for(e);
    }
    return 1;
}
