#include "fracdom/error.hpp"
#include "fracdom/service.hpp"
#include "httplib.h"

namespace fracdom::service {

struct Server::Impl {
    TileService& service;
    ServerOptions options;
    httplib::Server http;
    int port = -1;

    Impl(TileService& s, ServerOptions o) : service(s), options(std::move(o)) {}
};

namespace {

void send(httplib::Response& res, const Response& r)
{
    res.status = r.status;
    if (!r.etag.empty()) {
        res.set_header("ETag", r.etag);
        res.set_header("Cache-Control", "public, max-age=3600");
    }
    if (r.status != 304) {
        res.set_content(r.body, r.content_type);
    }
}

}  // namespace

Server::Server(TileService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options)))
{
    auto& http = impl_->http;
    auto& svc = impl_->service;

    http.Get("/api/tile", [&svc](const httplib::Request& req, httplib::Response& res) {
        Query q;
        for (const auto& [k, v] : req.params) {
            q.emplace(k, v);
        }
        send(res, svc.tile(q, req.get_header_value("If-None-Match")));
    });
    http.Post("/api/analyze", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.analyze(req.body));
    });
    http.Get("/api/palettes", [&svc](const httplib::Request&, httplib::Response& res) {
        send(res, svc.palettes());
    });

    if (!impl_->options.static_dir.empty()) {
        if (!http.set_mount_point("/", impl_->options.static_dir.string())) {
            throw IoError("static directory " + impl_->options.static_dir.string() + " does not exist");
        }
    }
}

Server::~Server()
{
    stop();
}

int Server::bind()
{
    auto& o = impl_->options;
    if (o.port == 0) {
        impl_->port = impl_->http.bind_to_any_port(o.host);
    } else {
        impl_->port = impl_->http.bind_to_port(o.host, o.port) ? o.port : -1;
    }
    if (impl_->port < 0) {
        throw IoError("cannot bind " + o.host + ":" + std::to_string(o.port));
    }
    return impl_->port;
}

void Server::listen()
{
    if (impl_->port < 0) {
        throw IoError("listen() before bind()");
    }
    impl_->http.listen_after_bind();
}

void Server::stop()
{
    impl_->http.stop();
}

}  // namespace fracdom::service
