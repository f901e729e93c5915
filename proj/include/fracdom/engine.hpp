#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fracdom/complex.hpp"
#include "fracdom/vm.hpp"

namespace fracdom::engine {

inline constexpr int kMaxIterations = 99999;
inline constexpr int kTileSize = 64;
inline constexpr double kMinUsefulScale = 1e-14;

// Plane window. Pixel (px, py), 0-indexed from the top-left, sits at
//   re = center.re + (px + 0.5 - width/2) * scale
//   im = center.im - (py + 0.5 - height/2) * scale
struct Viewport {
    Complex center{0.0, 0.0};
    double scale = 1.0;  // plane units per pixel
    int width = 1;
    int height = 1;

    Complex pixel_to_plane(int px, int py) const noexcept
    {
        return {center.real() + (px + 0.5 - width / 2.0) * scale,
                center.imag() - (py + 0.5 - height / 2.0) * scale};
    }

    // Fractional pixel coordinates of a plane point (inverse of pixel_to_plane).
    std::pair<double, double> plane_to_pixel(Complex p) const noexcept
    {
        return {(p.real() - center.real()) / scale + width / 2.0 - 0.5,
                (center.imag() - p.imag()) / scale + height / 2.0 - 0.5};
    }

    void validate() const;
    // Set when the scale is below what binary64 can resolve.
    std::optional<std::string> precision_warning() const;

    friend bool operator==(const Viewport&, const Viewport&) = default;
};

struct RenderParams {
    vm::Program program;
    double log_k = 0.6931471805599453;  // escape radius k = e^log_k
    int max_iter = 500;
    std::string palette_id = "gray256";

    double escape_radius() const noexcept { return std::exp(log_k); }
    void validate() const;
};

struct Cell {
    bool escaped = false;
    std::uint32_t m = 0;  // escape iteration, or N for interior cells
    double x = 1.0;       // m / N; exactly 1 for interior cells

    friend bool operator==(const Cell&, const Cell&) = default;
};

class EscapeGrid {
public:
    EscapeGrid(int width, int height, int max_iter);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int max_iter() const noexcept { return max_iter_; }

    const Cell& at(int px, int py) const { return cells_[index(px, py)]; }
    Cell& at(int px, int py) { return cells_[index(px, py)]; }
    const std::vector<Cell>& cells() const noexcept { return cells_; }

    bool interior(int px, int py) const { return !at(px, py).escaped; }
    double interior_fraction() const noexcept;
    std::vector<std::uint8_t> interior_mask() const;

    friend bool operator==(const EscapeGrid&, const EscapeGrid&) = default;

private:
    std::size_t index(int px, int py) const
    {
        return static_cast<std::size_t>(py) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(px);
    }

    int width_;
    int height_;
    int max_iter_;
    std::vector<Cell> cells_;
};

struct IterationResult {
    bool escaped;
    int m;
};

// z0 = c, then z <- program(z, c) until |z| > k (or z is non-finite) or N steps.
IterationResult iterate_point(vm::Executor& executor, Complex c, double k, int max_iter) noexcept;
IterationResult iterate_point(const vm::Program& program, Complex c, double k, int max_iter);

struct RenderOptions {
    unsigned workers = 0;  // 0: one per hardware thread
};

EscapeGrid render(const Viewport& viewport, const RenderParams& params, RenderOptions options = {});

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Palette {
    std::string id;
    std::vector<Rgb> colors;
    Rgb interior{0, 0, 0};

    int size() const noexcept { return static_cast<int>(colors.size()); }
    friend bool operator==(const Palette&, const Palette&) = default;
};

inline constexpr int kInteriorIndex = 0;

// ceil(p * x) clamped to [1, p] for x in (0, 1); kInteriorIndex for x = 1; 1 for x = 0.
int color_index(double x, int p);

// Palette index of an escaped cell, computed in integers: ceil(p * m / N).
int escaped_color_index(std::uint32_t m, int max_iter, int p) noexcept;

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

Image colorize(const EscapeGrid& grid, const Palette& palette);

// Built-in palettes, gray256 first.
std::vector<Palette> builtin_palettes();
Palette gray_palette();

Palette palette_from_json(const std::string& text);
std::string palette_to_json(const Palette& palette);
Palette load_palette(const std::filesystem::path& path);

// Builtins plus every *.json in a directory. Malformed files are skipped and
// reported through `warnings`.
class PaletteRegistry {
public:
    PaletteRegistry();
    void load_directory(const std::filesystem::path& dir, std::vector<std::string>& warnings);

    const Palette* find(const std::string& id) const noexcept;
    const std::vector<Palette>& all() const noexcept { return palettes_; }

private:
    std::vector<Palette> palettes_;
};

std::vector<std::uint8_t> encode_png(const Image& image);
void write_png(const std::filesystem::path& path, const Image& image);

// Little-endian u32 m per pixel, row-major, no header.
std::vector<std::uint8_t> dump_grid(const EscapeGrid& grid);

}  // namespace fracdom::engine
