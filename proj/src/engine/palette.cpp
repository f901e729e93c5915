#include <algorithm>
#include <fstream>
#include <sstream>

#include "fracdom/engine.hpp"
#include "fracdom/error.hpp"
#include "json.hpp"

namespace fracdom::engine {

using nlohmann::json;

int color_index(double x, int p)
{
    if (p < 1) {
        throw DomainError("palette size must be at least 1");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("color ratio must lie in [0, 1]");
    }
    if (x == 1.0) {
        return kInteriorIndex;
    }
    if (x == 0.0) {
        return 1;
    }
    const double idx = std::ceil(static_cast<double>(p) * x);
    return std::clamp(static_cast<int>(idx), 1, p);
}

int escaped_color_index(std::uint32_t m, int max_iter, int p) noexcept
{
    const auto num = static_cast<std::uint64_t>(p) * m;
    const auto den = static_cast<std::uint64_t>(max_iter);
    const auto idx = static_cast<int>((num + den - 1) / den);
    return std::clamp(idx, 1, p);
}

Image colorize(const EscapeGrid& grid, const Palette& palette)
{
    if (palette.colors.empty()) {
        throw DomainError("palette '" + palette.id + "' has no colors");
    }
    Image img{grid.width(), grid.height(), {}};
    img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    const int p = palette.size();
    std::size_t o = 0;
    for (const Cell& cell : grid.cells()) {
        const Rgb& col = cell.escaped
                             ? palette.colors[escaped_color_index(cell.m, grid.max_iter(), p) - 1]
                             : palette.interior;
        img.rgb[o++] = col.r;
        img.rgb[o++] = col.g;
        img.rgb[o++] = col.b;
    }
    return img;
}

namespace {

std::uint8_t channel(double v)
{
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

Palette ramp(std::string id, std::initializer_list<std::array<double, 3>> stops, int p)
{
    std::vector<std::array<double, 3>> s(stops);
    Palette pal{std::move(id), {}, {0, 0, 0}};
    pal.colors.reserve(p);
    for (int j = 0; j < p; ++j) {
        const double t = p == 1 ? 0.0 : static_cast<double>(j) / (p - 1);
        const double pos = t * (s.size() - 1);
        const auto lo = std::min(static_cast<std::size_t>(pos), s.size() - 2);
        const double f = pos - lo;
        pal.colors.push_back({channel(s[lo][0] + f * (s[lo + 1][0] - s[lo][0])),
                              channel(s[lo][1] + f * (s[lo + 1][1] - s[lo][1])),
                              channel(s[lo][2] + f * (s[lo + 1][2] - s[lo][2]))});
    }
    return pal;
}

Rgb rgb_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 3) {
        throw IoError("palette color must be an [r, g, b] array");
    }
    Rgb c;
    std::uint8_t* dst[3] = {&c.r, &c.g, &c.b};
    for (int k = 0; k < 3; ++k) {
        if (!j[k].is_number_integer() || j[k].get<int>() < 0 || j[k].get<int>() > 255) {
            throw IoError("palette channel must be an integer in [0, 255]");
        }
        *dst[k] = static_cast<std::uint8_t>(j[k].get<int>());
    }
    return c;
}

}  // namespace

Palette gray_palette()
{
    Palette pal{"gray256", {}, {0, 0, 0}};
    pal.colors.reserve(256);
    for (int j = 0; j < 256; ++j) {
        const auto v = static_cast<std::uint8_t>(j);
        pal.colors.push_back({v, v, v});
    }
    return pal;
}

std::vector<Palette> builtin_palettes()
{
    return {
        gray_palette(),
        ramp("fire", {{0, 0, 0}, {0.7, 0, 0}, {1, 0.6, 0}, {1, 1, 0.3}, {1, 1, 1}}, 256),
        ramp("ocean", {{0, 0, 0.15}, {0, 0.3, 0.6}, {0, 0.8, 0.9}, {0.9, 1, 1}}, 256),
        ramp("bands16", {{0.1, 0.1, 0.5}, {0.9, 0.9, 0.2}, {0.1, 0.6, 0.2}, {0.8, 0.2, 0.3}}, 16),
    };
}

Palette palette_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("palette JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("colors") ||
        !j["colors"].is_array()) {
        throw IoError("palette JSON needs a string \"id\" and a \"colors\" array");
    }
    Palette pal;
    pal.id = j["id"].get<std::string>();
    for (const auto& c : j["colors"]) {
        pal.colors.push_back(rgb_from_json(c));
    }
    if (pal.colors.empty()) {
        throw IoError("palette '" + pal.id + "' has no colors");
    }
    if (j.contains("interior")) {
        pal.interior = rgb_from_json(j["interior"]);
    }
    return pal;
}

std::string palette_to_json(const Palette& palette)
{
    json colors = json::array();
    for (const auto& c : palette.colors) {
        colors.push_back({c.r, c.g, c.b});
    }
    json j{{"id", palette.id},
           {"interior", {palette.interior.r, palette.interior.g, palette.interior.b}},
           {"colors", colors}};
    return j.dump();
}

Palette load_palette(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open palette file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return palette_from_json(ss.str());
}

PaletteRegistry::PaletteRegistry() : palettes_(builtin_palettes()) {}

void PaletteRegistry::load_directory(const std::filesystem::path& dir,
                                     std::vector<std::string>& warnings)
{
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        warnings.push_back("palette directory " + dir.string() + " does not exist");
        return;
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        try {
            Palette pal = load_palette(f);
            auto same = std::find_if(palettes_.begin(), palettes_.end(),
                                     [&](const Palette& p) { return p.id == pal.id; });
            if (same != palettes_.end()) {
                *same = std::move(pal);
            } else {
                palettes_.push_back(std::move(pal));
            }
        } catch (const Error& e) {
            warnings.push_back("skipping " + f.string() + ": " + e.what());
        }
    }
}

const Palette* PaletteRegistry::find(const std::string& id) const noexcept
{
    for (const auto& p : palettes_) {
        if (p.id == id) {
            return &p;
        }
    }
    return nullptr;
}

}  // namespace fracdom::engine
