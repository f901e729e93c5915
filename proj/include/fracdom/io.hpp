#pragma once

#include <exception>
#include <filesystem>
#include <string>

#include "fracdom/dominance.hpp"
#include "fracdom/engine.hpp"
#include "fracdom/transforms.hpp"
#include "json.hpp"

namespace fracdom::io {

using nlohmann::json;

// One render: expression, window and iteration controls.
struct Scene {
    std::string expr = "z^2+c";
    engine::Viewport viewport{{-0.5, 0.0}, 4.0 / 512, 512, 512};
    double log_k = 0.6931471805599453;
    int max_iter = 500;
    std::string palette_id = "gray256";

    friend bool operator==(const Scene&, const Scene&) = default;
};

// {expr, center:[re,im], scale, width, height, log_k, max_iter, palette}.
// Only expr, center, scale, width and height are required; unknown keys are ignored.
Scene scene_from_json(const json& j);
Scene scene_from_json_text(const std::string& text);
json scene_to_json(const Scene& scene);
Scene load_scene(const std::filesystem::path& path);
void save_scene(const std::filesystem::path& path, const Scene& scene);

// Parses and compiles the expression; throws ParseError on bad text.
engine::RenderParams render_params(const Scene& scene);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);
// "re,im" or "re" (imaginary part 0).
Complex parse_complex_pair(const std::string& text);

std::string rational_text(const dominance::Rational& r);
json series_to_json(const dominance::FormalSeries& s);
json report_to_json(const dominance::DominanceReport& r);
json theta_to_json(const dominance::ThetaBoundReport& r);
json tg_to_json(const dominance::TgAnalysis& t);
json polynomial_to_json(const transforms::SparseLaurentPolynomial& p);

// {"error": kind, "message": ..., plus offset / expected / name / construct when known}.
json error_to_json(const std::exception& e);

// 2 for domain errors (including NotExpandable), 1 for parse, IO and anything else.
int exit_code_for(const std::exception& e) noexcept;

inline constexpr int kExitVerificationFailed = 3;

}  // namespace fracdom::io
