#include "pplot/service.hpp"

#include "httplib.h"

#include <cstdlib>
#include <iostream>

namespace pplot {

namespace {

std::optional<double> query_number(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) return std::nullopt;
    const auto text = req.get_param_value(key);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') return std::nullopt;
    return v;
}

void send(httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
}

HttpResponse bad_request(const std::string& message) {
    return {400, "application/json", nlohmann::json{{"error", "BadRequest"}, {"message", message}}.dump()};
}

}  // namespace

void mount_routes(httplib::Server& server, SessionService& service) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

    server.Post("/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
        std::string data;
        std::string spec;
        if (req.is_multipart_form_data()) {
            if (!req.has_file("data") || !req.has_file("spec")) {
                send(res, bad_request("multipart body needs 'data' and 'spec' parts"));
                return;
            }
            data = req.get_file_value("data").content;
            spec = req.get_file_value("spec").content;
        } else {
            nlohmann::json body;
            try {
                body = nlohmann::json::parse(req.body);
            } catch (const nlohmann::json::parse_error& e) {
                send(res, bad_request(std::string("malformed JSON: ") + e.what()));
                return;
            }
            if (!body.is_object() || !body.contains("data") || !body["data"].is_string() || !body.contains("spec")) {
                send(res, bad_request("JSON body needs 'data' (CSV text) and 'spec'"));
                return;
            }
            data = body["data"].get<std::string>();
            spec = body["spec"].is_string() ? body["spec"].get<std::string>() : body["spec"].dump();
        }
        send(res, service.handle_create(data, spec, query_number(req, "width"), query_number(req, "height")));
    });

    server.Get(R"(/sessions/([^/]+)/scene)", [&service](const httplib::Request& req, httplib::Response& res) {
        const std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
        send(res, service.handle_get_scene(req.matches[1], query_number(req, "width"), query_number(req, "height"),
                                           format));
    });

    server.Post(R"(/sessions/([^/]+)/events)", [&service](const httplib::Request& req, httplib::Response& res) {
        send(res, service.handle_event(req.matches[1], req.body));
    });

    server.Delete(R"(/sessions/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
        send(res, service.handle_delete(req.matches[1]));
    });

    server.Options(R"(/sessions.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });

    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"status":"ok"})", "application/json");
    });
}

int run_http_server(SessionService& service, const std::string& host, int port,
                    const std::optional<std::string>& static_dir) {
    httplib::Server server;
    mount_routes(server, service);
    if (static_dir && !server.set_mount_point("/", *static_dir)) {
        std::cerr << "pplot: static directory '" << *static_dir << "' does not exist\n";
        return 2;
    }
    std::cerr << "pplot: listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) {
        std::cerr << "pplot: cannot listen on " << host << ":" << port << "\n";
        return 1;
    }
    return 0;
}

}  // namespace pplot
