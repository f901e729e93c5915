#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "fracdom/error.hpp"
#include "fracdom/io.hpp"
#include "test_support.hpp"

using namespace fracdom;
using namespace fracdom::io;

TEST_CASE("scene round-trips through JSON on random scenes")
{
    std::mt19937_64 rng(11);
    testing::RandomExpr gen(12);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_int_distribution<int> dim(1, 2048);
    const auto dir = std::filesystem::temp_directory_path() / "fracdom_test_io";
    std::filesystem::create_directories(dir);
    for (int trial = 0; trial < 300; ++trial) {
        Scene s;
        s.expr = expr::format(gen(5));
        s.viewport = {{u(rng), u(rng)}, std::exp(u(rng) * 8.0), dim(rng), dim(rng)};
        s.log_k = std::abs(u(rng)) + 1e-3;
        s.max_iter = dim(rng);
        s.palette_id = trial % 2 == 0 ? "gray256" : "fire";
        CHECK(scene_from_json_text(scene_to_json(s).dump()) == s);
        if (trial % 50 == 0) {
            const auto path = dir / "scene.json";
            save_scene(path, s);
            CHECK(load_scene(path) == s);
        }
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("scene fields: required, optional and wrong types")
{
    const Scene s = scene_from_json_text(R"({"expr":"z^3+c","center":[0,1],"scale":0.01,"width":10,"height":20})");
    CHECK(s.expr == "z^3+c");
    CHECK(s.viewport.center == Complex(0, 1));
    CHECK(s.max_iter == Scene{}.max_iter);
    CHECK(s.palette_id == "gray256");

    CHECK_THROWS_AS(scene_from_json_text(R"({"center":[0,0],"scale":1,"width":1,"height":1})"), IoError);
    CHECK_THROWS_AS(scene_from_json_text(R"({"expr":"z","scale":1,"width":1,"height":1})"), IoError);
    CHECK_THROWS_AS(scene_from_json_text(R"({"expr":"z","center":[0],"scale":1,"width":1,"height":1})"), IoError);
    CHECK_THROWS_AS(scene_from_json_text(R"({"expr":"z","center":[0,0],"scale":"x","width":1,"height":1})"), IoError);
    CHECK_THROWS_AS(scene_from_json_text("{not json"), IoError);
    CHECK_THROWS_AS(scene_from_json_text("[1,2]"), IoError);
    CHECK_THROWS_AS(load_scene("/nonexistent/scene.json"), IoError);
}

TEST_CASE("render_params compiles the scene expression")
{
    Scene s;
    s.expr = "z^2+c";
    const auto p = render_params(s);
    CHECK(vm::execute(p.program, 2.0, 1.0) == Complex(5.0, 0.0));
    s.expr = "z^^2";
    CHECK_THROWS_AS(render_params(s), SyntaxError);
}

TEST_CASE("parse_complex_pair")
{
    CHECK(parse_complex_pair("1.5,-2") == Complex(1.5, -2));
    CHECK(parse_complex_pair("-0.25") == Complex(-0.25, 0));
    CHECK(parse_complex_pair("1e-3,4e2") == Complex(1e-3, 400));
    CHECK_THROWS_AS(parse_complex_pair("a,b"), DomainError);
    CHECK_THROWS_AS(parse_complex_pair("1,2x"), DomainError);
    CHECK_THROWS_AS(parse_complex_pair(""), DomainError);
}

TEST_CASE("error JSON carries the located details")
{
    try {
        expr::parse("z^^2");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        const json j = error_to_json(e);
        CHECK(j["error"] == "SyntaxError");
        CHECK(j["offset"] == 2);
        CHECK(exit_code_for(e) == 1);
    }
    try {
        expr::parse("z + foo(z)");
        FAIL("expected an unknown function");
    } catch (const UnknownFunction& e) {
        const json j = error_to_json(e);
        CHECK(j["error"] == "UnknownFunction");
        CHECK(j["name"] == "foo");
        CHECK(j["offset"] == 4);
    }
    const NotExpandable ne("log");
    CHECK(error_to_json(ne)["construct"] == "log");
    CHECK(exit_code_for(ne) == 2);
    CHECK(exit_code_for(DomainError("x")) == 2);
    CHECK(exit_code_for(TruncationError("x")) == 2);
    CHECK(error_to_json(TruncationError("x"))["error"] == "TruncationError");
    CHECK(exit_code_for(IoError("x")) == 1);
    CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("report and series JSON")
{
    const auto r = dominance::predict_embedded(expr::parse("sin(z^2) + c"));
    const json j = report_to_json(r);
    CHECK(j["predicted_order"] == 2);
    CHECK(j["regime"] == "ToZero");
    CHECK(j["dominant_coefficient"] == "1");
    CHECK(j["series"]["coefficients"]["2"] == "1");
    CHECK(j["series"]["coefficients"]["6"] == "-1/6");

    const auto exact = series_to_json(dominance::FormalSeries::monomial(3, 2));
    CHECK(exact["truncation_order"].is_null());
}
