#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "fracdom/engine.hpp"

namespace fracdom::service {

inline constexpr int kMaxTileDimension = 1024;

using Query = std::map<std::string, std::string>;

struct Response {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
    std::string etag;
};

// GET /api/tile parameters: expr, cx, cy, scale, width, height, logk, n, pal.
struct TileRequest {
    std::string expr;
    Complex center{0.0, 0.0};
    double scale = 4.0 / 256;
    int width = 256;
    int height = 256;
    double log_k = 0.6931471805599453;
    int max_iter = 500;
    std::string palette_id = "gray256";

    // Stable text form: every field, doubles in shortest round-trip notation.
    std::string canonical() const;
    // Quoted 64-bit FNV-1a of canonical().
    std::string etag() const;
};

// Throws DomainError on a missing expr or a malformed number.
TileRequest parse_tile_query(const Query& query);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

struct ServiceOptions {
    unsigned workers = 0;         // concurrent renders; 0 = hardware threads
    unsigned render_threads = 1;  // engine workers per render
    std::size_t program_cache_size = 64;
    std::size_t tile_cache_size = 256;
    std::filesystem::path palette_dir;
};

// Request handlers, independent of the transport. Safe to call from many threads.
class TileService {
public:
    explicit TileService(ServiceOptions options = {});
    ~TileService();

    Response tile(const Query& query, const std::string& if_none_match = "");
    Response analyze(const std::string& body) const;
    Response palettes() const;

    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    unsigned workers() const noexcept { return workers_; }
    // Highest number of renders observed running at once.
    int peak_concurrent_renders() const noexcept { return peak_.load(); }
    std::size_t renders_performed() const noexcept { return renders_.load(); }

private:
    struct Caches;

    ServiceOptions options_;
    unsigned workers_;
    engine::PaletteRegistry palettes_;
    std::vector<std::string> warnings_;
    std::unique_ptr<Caches> caches_;
    std::counting_semaphore<> slots_;
    std::atomic<int> active_{0};
    std::atomic<int> peak_{0};
    std::atomic<std::size_t> renders_{0};
};

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;  // 0 picks a free port
    std::filesystem::path static_dir;
};

// HTTP front end over a TileService.
class Server {
public:
    Server(TileService& service, ServerOptions options);
    ~Server();

    // Binds the socket and returns the port in use.
    int bind();
    // Serves until stop(). Call bind() first.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace fracdom::service
