#include "clusterlens/service.hpp"

#include <charconv>
#include <cstdlib>
#include <mutex>
#include <random>
#include <sstream>
#include <vector>

#include "httplib.h"

#include "clusterlens/errors.hpp"
#include "clusterlens/histogram.hpp"
#include "clusterlens/json_io.hpp"

namespace clusterlens {

using nlohmann::json;

namespace {

std::string random_id() {
    static std::mutex mutex;
    static std::mt19937_64 engine{std::random_device{}()};
    std::lock_guard lock(mutex);
    std::ostringstream out;
    out << std::hex;
    for (int i = 0; i < 2; ++i) {
        out.width(16);
        out.fill('0');
        out << engine();
    }
    return out.str();
}

HttpResponse error_response(int status, const std::string& message) {
    return {status, canonical_dump({{"error", message}})};
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(sep, start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        out.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

const std::string* query_value(const HttpRequest& request, const std::string& key) {
    auto it = request.query.find(key);
    return it == request.query.end() ? nullptr : &it->second;
}

template <typename T>
T parse_param(const std::string& key, const std::string& text) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ArgumentError("query parameter '" + key + "' has invalid value '" + text + "'");
    }
    return value;
}

template <typename T>
T param_or(const HttpRequest& request, const std::string& key, T fallback) {
    const auto* value = query_value(request, key);
    return value ? parse_param<T>(key, *value) : fallback;
}

std::vector<std::string> list_param(const HttpRequest& request, const std::string& key) {
    std::vector<std::string> out;
    for (auto [it, end] = request.query.equal_range(key); it != end; ++it) {
        for (auto& item : split(it->second, ',')) {
            if (!item.empty()) {
                out.push_back(std::move(item));
            }
        }
    }
    return out;
}

HttpResponse route_session(Analysis& analysis, const std::vector<std::string>& parts, const HttpRequest& request) {
    // parts: ["session", id, resource, ...]
    if (parts.size() == 2) {
        return {200, analysis.summary_json()};
    }
    const std::string& resource = parts[2];
    const std::string mode = query_value(request, "mode") ? *query_value(request, "mode") : "auto";

    if (resource == "contrast" && parts.size() == 4) {
        return {200, analysis.contrast_json(parts[3], mode)};
    }
    if (resource == "pair" && parts.size() == 5) {
        return {200, analysis.pair_json(parts[3], parts[4], mode)};
    }
    if (resource == "matrix" && parts.size() == 3) {
        return {200, analysis.matrix_json()};
    }
    if (resource == "histograms" && parts.size() == 3) {
        const auto* cluster = query_value(request, "cluster");
        if (!cluster) {
            throw ArgumentError("histograms need a 'cluster' parameter");
        }
        const auto bins = param_or<std::size_t>(request, "bins", kDefaultBins);
        return {200, analysis.histograms_json(*cluster, list_param(request, "features"), bins)};
    }
    if (resource == "grid" && parts.size() == 3) {
        GridRequest grid;
        grid.width = param_or(request, "width", grid.width);
        grid.height = param_or(request, "height", grid.height);
        grid.cell_size = param_or(request, "cell_size", grid.cell_size);
        if (query_value(request, "x_min") || query_value(request, "x_max")) {
            grid.x_range = Range{param_or(request, "x_min", 0.0), param_or(request, "x_max", 0.0)};
        }
        if (query_value(request, "y_min") || query_value(request, "y_max")) {
            grid.y_range = Range{param_or(request, "y_min", 0.0), param_or(request, "y_max", 0.0)};
        }
        for (const auto& f : list_param(request, "selected")) {
            grid.selected.push_back(analysis.resolve_feature(f));
        }
        return {200, analysis.grid_json(grid)};
    }
    if (resource == "topics" && parts.size() == 3) {
        const auto terms = param_or<std::size_t>(request, "terms", 10);
        return {200, analysis.topics_json(terms)};
    }
    return error_response(404, "unknown route " + request.path);
}

}

SessionStore::SessionStore(std::chrono::seconds ttl, Clock clock) : ttl_(ttl), clock_(std::move(clock)) {}

void SessionStore::expire_locked(std::chrono::steady_clock::time_point now) {
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        if (now - it->second.last_used > ttl_) {
            expired_.insert(it->first);
            it = sessions_.erase(it);
        } else {
            ++it;
        }
    }
}

std::string SessionStore::create(Dataset dataset) {
    // Built outside the lock; the session is published only once complete.
    auto analysis = std::make_shared<Analysis>(std::move(dataset));
    std::unique_lock lock(mutex_);
    const auto now = clock_();
    expire_locked(now);
    std::string id;
    do {
        id = random_id();
    } while (sessions_.count(id) || expired_.count(id));
    sessions_.emplace(id, Entry{std::move(analysis), now});
    return id;
}

std::shared_ptr<Analysis> SessionStore::find(const std::string& id) {
    std::unique_lock lock(mutex_);
    const auto now = clock_();
    expire_locked(now);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        if (expired_.count(id)) {
            throw SessionExpired{};
        }
        return nullptr;
    }
    it->second.last_used = now;
    return it->second.analysis;
}

std::size_t SessionStore::size() const {
    std::shared_lock lock(mutex_);
    return sessions_.size();
}

Service::Service(std::chrono::seconds ttl, SessionStore::Clock clock) : sessions_(ttl, std::move(clock)) {}

HttpResponse Service::load(const HttpRequest& request) {
    if (request.body.empty()) {
        return error_response(400, "request body is empty");
    }
    json body;
    try {
        body = json::parse(request.body);
    } catch (const json::parse_error& e) {
        return error_response(400, std::string("request body is not valid JSON: ") + e.what());
    }
    if (!body.is_object() || !body.contains("data") || !body.at("data").is_string() || !body.contains("schema")) {
        return error_response(400, "request body needs string 'data' and object 'schema'");
    }
    char delimiter = ',';
    if (body.contains("format")) {
        const auto format = body.at("format").is_string() ? body.at("format").get<std::string>() : std::string();
        if (format == "tsv") {
            delimiter = '\t';
        } else if (format != "csv") {
            return error_response(400, "format must be 'csv' or 'tsv'");
        }
    }

    const auto schema = Schema::from_json(body.at("schema"));
    auto dataset = parse_dataset(body.at("data").get_ref<const std::string&>(), delimiter, schema);
    const std::size_t n = dataset.n();
    const std::size_t m = dataset.m();
    const auto names = dataset.cluster_names();
    const auto id = sessions_.create(std::move(dataset));
    return {200, canonical_dump({{"session", id}, {"n", n}, {"m", m}, {"clusters", names.size()}, {"cluster_names", names}})};
}

HttpResponse Service::handle(const HttpRequest& request) {
    try {
        std::vector<std::string> parts;
        for (auto& p : split(request.path, '/')) {
            if (!p.empty()) {
                parts.push_back(std::move(p));
            }
        }
        if (parts.empty() || parts[0] != "session") {
            return error_response(404, "unknown route " + request.path);
        }
        if (parts.size() == 1) {
            if (request.method != "POST") {
                return error_response(405, "use POST to create a session");
            }
            return load(request);
        }
        if (request.method != "GET") {
            return error_response(405, "session resources are read-only");
        }

        std::shared_ptr<Analysis> analysis;
        try {
            analysis = sessions_.find(parts[1]);
        } catch (const SessionStore::SessionExpired&) {
            return error_response(410, "session " + parts[1] + " has expired");
        }
        if (!analysis) {
            return error_response(404, "unknown session " + parts[1]);
        }
        return route_session(*analysis, parts, request);
    } catch (const ParseError& e) {
        return {400, canonical_dump({{"error", e.what()}, {"row", e.row()}, {"column", e.column()}})};
    } catch (const LookupError& e) {
        return error_response(404, e.what());
    } catch (const Error& e) {
        return error_response(400, e.what());
    }
}

void serve(Service& service, const std::string& host, int port) {
    httplib::Server server;
    auto adapt = [&service](const httplib::Request& req, httplib::Response& res) {
        HttpRequest request;
        request.method = req.method;
        request.path = req.path;
        request.body = req.body;
        for (const auto& [key, value] : req.params) {
            request.query.emplace(key, value);
        }
        const auto response = service.handle(request);
        res.status = response.status;
        res.set_content(response.body, response.content_type);
    };
    server.Get(R"(/.*)", adapt);
    server.Post(R"(/.*)", adapt);
    if (!server.listen(host, port)) {
        throw IoError("cannot listen on " + host + ":" + std::to_string(port));
    }
}

int port_from_env(int fallback) {
    const char* value = std::getenv("CLUSTERLENS_PORT");
    if (!value) {
        return fallback;
    }
    int port = 0;
    std::string_view text(value);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), port);
    if (ec != std::errc() || ptr != text.data() + text.size() || port <= 0 || port > 65535) {
        throw ArgumentError("CLUSTERLENS_PORT must be a port number");
    }
    return port;
}

}
