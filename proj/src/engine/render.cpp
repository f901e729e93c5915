#include <atomic>
#include <thread>

#include "fracdom/engine.hpp"
#include "fracdom/error.hpp"

namespace fracdom::engine {

void Viewport::validate() const
{
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("viewport scale must be positive and finite");
    }
    if (width < 1 || height < 1) {
        throw DomainError("viewport dimensions must be at least 1x1");
    }
    if (!is_finite(center)) {
        throw DomainError("viewport center must be finite");
    }
}

std::optional<std::string> Viewport::precision_warning() const
{
    if (scale < kMinUsefulScale) {
        return "scale " + std::to_string(scale) +
               " is below the binary64 resolution limit (~1e-14 per pixel); the image will be "
               "blocky";
    }
    return std::nullopt;
}

void RenderParams::validate() const
{
    if (max_iter < 1 || max_iter > kMaxIterations) {
        throw DomainError("max_iter must be in [1, " + std::to_string(kMaxIterations) + "]");
    }
    if (std::isnan(log_k)) {
        throw DomainError("log_k must be a number");
    }
}

EscapeGrid::EscapeGrid(int width, int height, int max_iter)
    : width_(width),
      height_(height),
      max_iter_(max_iter),
      cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
             Cell{false, static_cast<std::uint32_t>(max_iter), 1.0})
{
}

double EscapeGrid::interior_fraction() const noexcept
{
    if (cells_.empty()) {
        return 0.0;
    }
    std::size_t inside = 0;
    for (const auto& cell : cells_) {
        inside += cell.escaped ? 0 : 1;
    }
    return static_cast<double>(inside) / static_cast<double>(cells_.size());
}

std::vector<std::uint8_t> EscapeGrid::interior_mask() const
{
    std::vector<std::uint8_t> mask(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        mask[i] = cells_[i].escaped ? 0 : 1;
    }
    return mask;
}

IterationResult iterate_point(vm::Executor& executor, Complex c, double k, int max_iter) noexcept
{
    const double k2 = k * k;
    Complex z = c;
    for (int m = 1; m <= max_iter; ++m) {
        z = executor(z, c);
        // Written so that NaN also counts as escaped.
        if (!(std::norm(z) <= k2)) {
            return {true, m};
        }
    }
    return {false, max_iter};
}

IterationResult iterate_point(const vm::Program& program, Complex c, double k, int max_iter)
{
    vm::Executor executor(program);
    return iterate_point(executor, c, k, max_iter);
}

EscapeGrid render(const Viewport& viewport, const RenderParams& params, RenderOptions options)
{
    viewport.validate();
    params.validate();

    EscapeGrid grid(viewport.width, viewport.height, params.max_iter);
    const double k = params.escape_radius();
    const int n = params.max_iter;
    const int tiles_x = (viewport.width + kTileSize - 1) / kTileSize;
    const int tiles_y = (viewport.height + kTileSize - 1) / kTileSize;
    const int tile_count = tiles_x * tiles_y;

    unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
    workers = std::clamp(workers, 1u, static_cast<unsigned>(std::max(tile_count, 1)));

    std::atomic<int> next_tile{0};
    auto work = [&] {
        vm::Executor executor(params.program);
        for (int t = next_tile.fetch_add(1); t < tile_count; t = next_tile.fetch_add(1)) {
            const int x0 = (t % tiles_x) * kTileSize;
            const int y0 = (t / tiles_x) * kTileSize;
            const int x1 = std::min(x0 + kTileSize, viewport.width);
            const int y1 = std::min(y0 + kTileSize, viewport.height);
            for (int py = y0; py < y1; ++py) {
                for (int px = x0; px < x1; ++px) {
                    const auto r = iterate_point(executor, viewport.pixel_to_plane(px, py), k, n);
                    Cell& cell = grid.at(px, py);
                    cell.escaped = r.escaped;
                    cell.m = static_cast<std::uint32_t>(r.m);
                    cell.x = r.escaped ? static_cast<double>(r.m) / n : 1.0;
                }
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    return grid;
}

}  // namespace fracdom::engine
