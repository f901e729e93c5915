#include <fstream>
#include <sstream>

#include "fracdom/error.hpp"
#include "fracdom/io.hpp"
#include "fracdom/vm.hpp"

namespace fracdom::io {

namespace {

template <class T>
T required(const json& j, const char* key)
{
    if (!j.contains(key)) {
        throw IoError(std::string("scene is missing \"") + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw IoError(std::string("scene field \"") + key + "\" has the wrong type");
    }
}

template <class T>
T optional_field(const json& j, const char* key, T fallback)
{
    return j.contains(key) ? required<T>(j, key) : fallback;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

json complex_to_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw IoError("complex value must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Complex parse_complex_pair(const std::string& text)
{
    const auto comma = text.find(',');
    try {
        std::size_t used = 0;
        const double re = std::stod(text.substr(0, comma), &used);
        if (used != text.substr(0, comma).size()) {
            throw DomainError("");
        }
        if (comma == std::string::npos) {
            return {re, 0.0};
        }
        const std::string rest = text.substr(comma + 1);
        const double im = std::stod(rest, &used);
        if (used != rest.size()) {
            throw DomainError("");
        }
        return {re, im};
    } catch (const std::exception&) {
        throw DomainError("\"" + text + "\" is not re,im");
    }
}

Scene scene_from_json(const json& j)
{
    if (!j.is_object()) {
        throw IoError("scene must be a JSON object");
    }
    Scene s;
    s.expr = required<std::string>(j, "expr");
    if (!j.contains("center")) {
        throw IoError("scene is missing \"center\"");
    }
    s.viewport.center = complex_from_json(j.at("center"));
    s.viewport.scale = required<double>(j, "scale");
    s.viewport.width = required<int>(j, "width");
    s.viewport.height = required<int>(j, "height");
    s.log_k = optional_field<double>(j, "log_k", s.log_k);
    s.max_iter = optional_field<int>(j, "max_iter", s.max_iter);
    s.palette_id = optional_field<std::string>(j, "palette", s.palette_id);
    return s;
}

Scene scene_from_json_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("scene JSON: ") + e.what());
    }
    return scene_from_json(j);
}

json scene_to_json(const Scene& s)
{
    // nlohmann writes doubles in shortest round-trip form, so load(save(s)) == s.
    return json{{"expr", s.expr},
                {"center", complex_to_json(s.viewport.center)},
                {"scale", s.viewport.scale},
                {"width", s.viewport.width},
                {"height", s.viewport.height},
                {"log_k", s.log_k},
                {"max_iter", s.max_iter},
                {"palette", s.palette_id}};
}

Scene load_scene(const std::filesystem::path& path)
{
    return scene_from_json_text(read_file(path));
}

void save_scene(const std::filesystem::path& path, const Scene& scene)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << scene_to_json(scene).dump(2) << "\n";
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

engine::RenderParams render_params(const Scene& scene)
{
    return {vm::compile(expr::parse(scene.expr)), scene.log_k, scene.max_iter, scene.palette_id};
}

std::string rational_text(const dominance::Rational& r)
{
    std::ostringstream out;
    out << r;
    return out.str();
}

json series_to_json(const dominance::FormalSeries& s)
{
    json coeffs = json::object();
    for (const auto& [d, a] : s.coefficients()) {
        coeffs[std::to_string(d)] = rational_text(a);
    }
    json j{{"text", s.to_string()}, {"coefficients", coeffs}};
    j["truncation_order"] = s.truncation_order() ? json(*s.truncation_order()) : json(nullptr);
    return j;
}

json report_to_json(const dominance::DominanceReport& r)
{
    json j{{"input", expr::format(r.input)},
           {"analyzed", expr::format(r.analyzed)},
           {"regime", dominance::regime_name(r.regime)},
           {"classification", dominance::classification_name(r.classification)},
           {"series", series_to_json(r.series)},
           {"note", r.note}};
    j["predicted_order"] = r.predicted_order ? json(*r.predicted_order) : json(nullptr);
    j["dominant_coefficient"] =
        r.dominant_coefficient ? json(rational_text(*r.dominant_coefficient)) : json(nullptr);
    if (r.view) {
        j["suggested_view"] = {{"center", complex_to_json(r.view->center)},
                               {"half_width", r.view->half_width}};
    } else {
        j["suggested_view"] = nullptr;
    }
    return j;
}

json theta_to_json(const dominance::ThetaBoundReport& r)
{
    json circles = json::array();
    for (const auto& c : r.circles) {
        circles.push_back({{"radius", c.radius}, {"k1", c.k1}, {"k2", c.k2}});
    }
    return json{{"regime", dominance::regime_name(r.regime)},
                {"point", complex_to_json(r.point)},
                {"m", r.m},
                {"k1", r.k1},
                {"k2", r.k2},
                {"samples", r.samples},
                {"disk_radius", r.disk_radius},
                {"circles", circles},
                {"holds", r.holds},
                {"tightening", r.tightening},
                {"note", r.note}};
}

json tg_to_json(const dominance::TgAnalysis& t)
{
    return json{{"expr", expr::format(t.exact)},
                {"approx", expr::format(t.approx)},
                {"predicted_order", t.predicted_order}};
}

json polynomial_to_json(const transforms::SparseLaurentPolynomial& p)
{
    json terms = json::array();
    for (const auto& [d, a] : p.terms()) {
        terms.push_back({{"degree", d}, {"coefficient", complex_to_json(a)}});
    }
    return json{{"center", complex_to_json(p.center())}, {"terms", terms}, {"expr", expr::format(p.to_map())}};
}

json error_to_json(const std::exception& e)
{
    json j{{"message", e.what()}};
    if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) {
        j["error"] = "SyntaxError";
        j["offset"] = s->offset();
        j["found"] = s->found();
        j["expected"] = s->expected();
    } else if (const auto* u = dynamic_cast<const UnknownFunction*>(&e)) {
        j["error"] = "UnknownFunction";
        j["offset"] = u->offset();
        j["name"] = u->name();
    } else if (const auto* ne = dynamic_cast<const NotExpandable*>(&e)) {
        j["error"] = "NotExpandable";
        j["construct"] = ne->construct();
    } else if (dynamic_cast<const TruncationError*>(&e) != nullptr) {
        j["error"] = "TruncationError";
    } else if (dynamic_cast<const DomainError*>(&e) != nullptr) {
        j["error"] = "DomainError";
    } else if (dynamic_cast<const IoError*>(&e) != nullptr) {
        j["error"] = "IoError";
    } else {
        j["error"] = "Error";
    }
    return j;
}

int exit_code_for(const std::exception& e) noexcept
{
    if (dynamic_cast<const DomainError*>(&e) != nullptr || dynamic_cast<const NotExpandable*>(&e) != nullptr) {
        return 2;
    }
    return 1;
}

}  // namespace fracdom::io
