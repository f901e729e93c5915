#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracdom/dominance.hpp"
#include "fracdom/engine.hpp"
#include "fracdom/error.hpp"
#include "fracdom/io.hpp"
#include "fracdom/transforms.hpp"

namespace py = pybind11;
using namespace fracdom;

namespace {

py::object to_python(const io::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

dominance::Regime regime_of(const std::string& name)
{
    if (name == "zero") return dominance::Regime::ToZero;
    if (name == "inf") return dominance::Regime::ToInfinity;
    throw DomainError("regime must be \"zero\" or \"inf\"");
}

io::Scene scene_of(const std::string& scene_json)
{
    return io::scene_from_json_text(scene_json);
}

py::dict render_arrays(const std::string& expr, Complex center, double scale, int width, int height,
                       double log_k, int max_iter, unsigned workers)
{
    const engine::Viewport v{center, scale, width, height};
    const engine::RenderParams p{vm::compile(expr::parse(expr)), log_k, max_iter, "gray256"};
    engine::EscapeGrid grid(1, 1, 1);
    {
        py::gil_scoped_release release;
        grid = engine::render(v, p, {workers});
    }
    py::array_t<std::uint32_t> m({height, width});
    py::array_t<bool> interior({height, width});
    auto mm = m.mutable_unchecked<2>();
    auto ii = interior.mutable_unchecked<2>();
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            mm(y, x) = grid.at(x, y).m;
            ii(y, x) = !grid.at(x, y).escaped;
        }
    }
    py::dict out;
    out["m"] = m;
    out["interior"] = interior;
    out["interior_fraction"] = grid.interior_fraction();
    return out;
}

py::bytes render_png(const std::string& scene_json)
{
    const io::Scene s = scene_of(scene_json);
    const auto params = io::render_params(s);
    const engine::PaletteRegistry palettes;
    const engine::Palette* palette = palettes.find(s.palette_id);
    if (palette == nullptr) {
        throw DomainError("unknown palette \"" + s.palette_id + "\"");
    }
    std::vector<std::uint8_t> png;
    {
        py::gil_scoped_release release;
        png = engine::encode_png(engine::colorize(engine::render(s.viewport, params), *palette));
    }
    return {reinterpret_cast<const char*>(png.data()), png.size()};
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Escape-time fractal renderer and dominant-term analyzer";

    // Translators registered later are tried first, so the base goes in first.
    auto& base = py::register_exception<Error>(m, "FracdomError");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    py::register_exception<NotExpandable>(m, "NotExpandable", base.ptr());

    m.def("format", [](const std::string& text) { return expr::format(expr::parse(text)); },
          "Canonical text of a parsed expression.");
    m.def("evaluate", [](const std::string& text, Complex z, Complex c) {
        return vm::execute(vm::compile(expr::parse(text)), z, c);
    }, py::arg("expr"), py::arg("z"), py::arg("c"));
    m.def("disassemble", [](const std::string& text) { return vm::disassemble(vm::compile(expr::parse(text))); });

    m.def("render", &render_arrays, py::arg("expr"), py::arg("center"), py::arg("scale"), py::arg("width"),
          py::arg("height"), py::arg("log_k") = 0.6931471805599453, py::arg("max_iter") = 500,
          py::arg("workers") = 0u,
          "Escape counts and interior mask as (height, width) arrays.");
    m.def("render_png", &render_png, py::arg("scene_json"), "PNG bytes for a scene JSON document.");
    m.def("palettes", [] {
        io::json out = io::json::array();
        for (const auto& p : engine::builtin_palettes()) {
            out.push_back(io::json::parse(engine::palette_to_json(p)));
        }
        return to_python(out);
    });

    m.def("series", [](const std::string& text, int order) {
        return dominance::series_of(expr::parse(text), order).to_string();
    }, py::arg("expr"), py::arg("order") = dominance::kDefaultOrder);
    m.def("predict", [](const std::string& text, int order, const std::string& regime) {
        return to_python(io::report_to_json(dominance::predict_embedded(expr::parse(text), order, regime_of(regime))));
    }, py::arg("expr"), py::arg("order") = dominance::kDefaultOrder, py::arg("regime") = "zero");
    m.def("analyze_tg", [](Complex a, Complex b, int n) { return to_python(io::tg_to_json(dominance::analyze_tg(a, b, n))); },
          py::arg("a"), py::arg("b"), py::arg("n"));
    m.def("theta_bound", [](const std::string& text, int mm, double radius, int samples) {
        return to_python(io::theta_to_json(dominance::check_theta_bound(expr::parse(text), mm, radius, samples)));
    }, py::arg("expr"), py::arg("m"), py::arg("radius") = 0.1, py::arg("samples") = 720);

    m.def("transform", [](const std::string& poly, double u, double theta, Complex shift) {
        const auto p = poly.find(':') != std::string::npos ? transforms::parse_term_list(poly)
                                                           : transforms::polynomial_from_expr(expr::parse(poly));
        const auto t = transforms::transform_polynomial(p, {u, theta, shift});
        return to_python(io::polynomial_to_json(t));
    }, py::arg("poly"), py::arg("u") = 1.0, py::arg("theta") = 0.0, py::arg("shift") = Complex(0.0),
          "Transformed polynomial as {center, terms, expr}. Accepts "
          "\"coef:degree,...\" or map text.");
    m.def("verify_translation", &transforms::verify_translation, py::arg("n"), py::arg("a"), py::arg("c"),
          py::arg("iterations") = 50);
    m.def("verify_rotation", &transforms::verify_rotation, py::arg("n"), py::arg("theta"), py::arg("c"),
          py::arg("iterations") = 50);
    m.def("verify_scaling", &transforms::verify_scaling, py::arg("n"), py::arg("a"), py::arg("c"),
          py::arg("iterations") = 50);

    m.def("scene_roundtrip", [](const std::string& scene_json) {
        return io::scene_to_json(io::scene_from_json_text(scene_json)).dump();
    });
}
