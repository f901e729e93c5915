#include <charconv>
#include <cstdio>
#include <thread>

#include "fracdom/dominance.hpp"
#include "fracdom/error.hpp"
#include "fracdom/io.hpp"
#include "fracdom/service.hpp"
#include "lru.hpp"

namespace fracdom::service {

namespace {

using nlohmann::json;

std::string shortest(double v)
{
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

template <class T>
T number_param(const Query& q, const char* key, T fallback)
{
    const auto it = q.find(key);
    if (it == q.end()) {
        return fallback;
    }
    const std::string& text = it->second;
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw DomainError(std::string("bad value for ") + key + ": \"" + text + "\"");
    }
    return value;
}

Response json_response(int status, const json& body)
{
    return {status, "application/json", body.dump(), ""};
}

Response error_response(int status, const std::exception& e)
{
    return json_response(status, io::error_to_json(e));
}

unsigned resolve_workers(unsigned w)
{
    return w != 0 ? w : std::max(1u, std::thread::hardware_concurrency());
}

class SlotGuard {
public:
    SlotGuard(std::counting_semaphore<>& sem, std::atomic<int>& active, std::atomic<int>& peak)
        : sem_(sem), active_(active)
    {
        sem_.acquire();
        const int now = ++active_;
        int seen = peak.load();
        while (now > seen && !peak.compare_exchange_weak(seen, now)) {
        }
    }
    ~SlotGuard()
    {
        --active_;
        sem_.release();
    }
    SlotGuard(const SlotGuard&) = delete;
    SlotGuard& operator=(const SlotGuard&) = delete;

private:
    std::counting_semaphore<>& sem_;
    std::atomic<int>& active_;
};

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string TileRequest::canonical() const
{
    return "expr=" + expr + "\ncx=" + shortest(center.real()) + "\ncy=" + shortest(center.imag()) +
           "\nscale=" + shortest(scale) + "\nwidth=" + std::to_string(width) +
           "\nheight=" + std::to_string(height) + "\nlogk=" + shortest(log_k) +
           "\nn=" + std::to_string(max_iter) + "\npal=" + palette_id;
}

std::string TileRequest::etag() const
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "\"%016llx\"", static_cast<unsigned long long>(fnv1a64(canonical())));
    return buf;
}

TileRequest parse_tile_query(const Query& q)
{
    TileRequest r;
    const auto e = q.find("expr");
    if (e == q.end() || e->second.empty()) {
        throw DomainError("missing expr");
    }
    r.expr = e->second;
    r.center = {number_param(q, "cx", r.center.real()), number_param(q, "cy", r.center.imag())};
    r.scale = number_param(q, "scale", r.scale);
    r.width = number_param(q, "width", r.width);
    r.height = number_param(q, "height", r.height);
    r.log_k = number_param(q, "logk", r.log_k);
    r.max_iter = number_param(q, "n", r.max_iter);
    if (const auto p = q.find("pal"); p != q.end()) {
        r.palette_id = p->second;
    }
    return r;
}

struct TileService::Caches {
    LruCache<std::string, std::shared_ptr<const vm::Program>> programs;
    LruCache<std::string, std::shared_ptr<const std::string>> tiles;

    Caches(std::size_t p, std::size_t t) : programs(p), tiles(t) {}
};

TileService::TileService(ServiceOptions options)
    : options_(std::move(options)),
      workers_(resolve_workers(options_.workers)),
      caches_(std::make_unique<Caches>(options_.program_cache_size, options_.tile_cache_size)),
      slots_(static_cast<std::ptrdiff_t>(workers_))
{
    if (!options_.palette_dir.empty()) {
        palettes_.load_directory(options_.palette_dir, warnings_);
    }
}

TileService::~TileService() = default;

Response TileService::tile(const Query& query, const std::string& if_none_match)
{
    TileRequest req;
    try {
        req = parse_tile_query(query);
    } catch (const Error& e) {
        return error_response(400, e);
    }
    if (req.width > kMaxTileDimension || req.height > kMaxTileDimension) {
        return json_response(413, {{"error", "DomainError"},
                                   {"message", "tile dimensions are limited to " +
                                                   std::to_string(kMaxTileDimension)}});
    }
    const std::string etag = req.etag();
    if (!if_none_match.empty() && if_none_match == etag) {
        return {304, "image/png", "", etag};
    }
    const std::string key = req.canonical();
    if (const auto hit = caches_->tiles.get(key)) {
        return {200, "image/png", **hit, etag};
    }

    try {
        std::shared_ptr<const vm::Program> program;
        if (const auto p = caches_->programs.get(req.expr)) {
            program = *p;
        } else {
            program = std::make_shared<const vm::Program>(vm::compile(expr::parse(req.expr)));
            caches_->programs.put(req.expr, program);
        }
        const engine::Palette* palette = palettes_.find(req.palette_id);
        if (palette == nullptr) {
            throw DomainError("unknown palette \"" + req.palette_id + "\"");
        }
        const engine::Viewport viewport{req.center, req.scale, req.width, req.height};
        const engine::RenderParams params{*program, req.log_k, req.max_iter, req.palette_id};
        viewport.validate();
        params.validate();

        std::shared_ptr<const std::string> png;
        {
            SlotGuard slot(slots_, active_, peak_);
            const auto grid = engine::render(viewport, params, {options_.render_threads});
            const auto bytes = engine::encode_png(engine::colorize(grid, *palette));
            png = std::make_shared<const std::string>(bytes.begin(), bytes.end());
            ++renders_;
        }
        caches_->tiles.put(key, png);
        return {200, "image/png", *png, etag};
    } catch (const Error& e) {
        return error_response(400, e);
    }
}

Response TileService::analyze(const std::string& body) const
{
    json request;
    try {
        request = json::parse(body);
    } catch (const json::parse_error& e) {
        return json_response(400, {{"error", "IoError"}, {"message", std::string("request JSON: ") + e.what()}});
    }
    if (!request.is_object() || !request.contains("expr") || !request["expr"].is_string()) {
        return json_response(400, {{"error", "IoError"}, {"message", "request needs a string \"expr\""}});
    }
    int order = dominance::kDefaultOrder;
    if (request.contains("order")) {
        if (!request["order"].is_number_integer()) {
            return json_response(400, {{"error", "IoError"}, {"message", "\"order\" must be an integer"}});
        }
        order = request["order"].get<int>();
    }
    try {
        const auto report = dominance::predict_embedded(expr::parse(request["expr"].get<std::string>()), order);
        return json_response(200, io::report_to_json(report));
    } catch (const NotExpandable& e) {
        return error_response(422, e);
    } catch (const Error& e) {
        return error_response(400, e);
    }
}

Response TileService::palettes() const
{
    json out = json::array();
    for (const auto& p : palettes_.all()) {
        json entry = json::parse(engine::palette_to_json(p));
        entry["p"] = p.size();
        out.push_back(std::move(entry));
    }
    return json_response(200, out);
}

}  // namespace fracdom::service
