#ifndef CLUSTERLENS_SERVICE_HPP
#define CLUSTERLENS_SERVICE_HPP

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <shared_mutex>
#include <string>

#include "payloads.hpp"

/**
 * @file service.hpp
 * @brief HTTP/JSON service over loaded datasets.
 *
 * Routes:
 *
 * - `POST /session` with body `{"data": "<csv text>", "schema": {...}, "format": "csv"|"tsv"}`
 * - `GET /session/{id}` (summary)
 * - `GET /session/{id}/contrast/{cluster}?mode=signed|absolute|auto`
 * - `GET /session/{id}/pair/{a}/{b}?mode=...`
 * - `GET /session/{id}/matrix`
 * - `GET /session/{id}/histograms?cluster=...&features=a,b&bins=20`
 * - `GET /session/{id}/grid?selected=a,b&width=800&height=600&cell_size=20[&x_min&x_max&y_min&y_max]`
 * - `GET /session/{id}/topics?terms=10`
 *
 * Validation failures answer 400, unknown clusters/features/sessions 404 and expired sessions 410.
 */

namespace clusterlens {

struct HttpRequest {
    std::string method;
    std::string path;
    std::multimap<std::string, std::string> query;
    std::string body;
};

struct HttpResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/**
 * Sessions keyed by random ids. A session's analysis is fully built before it becomes visible,
 * so readers never observe a partially computed matrix. Idle sessions expire after `ttl`;
 * ids of expired sessions are remembered so requests against them can answer 410.
 */
class SessionStore {
public:
    using Clock = std::function<std::chrono::steady_clock::time_point()>;

    explicit SessionStore(std::chrono::seconds ttl = std::chrono::hours(1), Clock clock = std::chrono::steady_clock::now);

    std::string create(Dataset dataset);

    /// Returns nullptr for unknown ids; throws SessionExpired for expired ones.
    std::shared_ptr<Analysis> find(const std::string& id);

    std::size_t size() const;

    struct SessionExpired {};

private:
    struct Entry {
        std::shared_ptr<Analysis> analysis;
        std::chrono::steady_clock::time_point last_used;
    };

    void expire_locked(std::chrono::steady_clock::time_point now);

    std::chrono::seconds ttl_;
    Clock clock_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, Entry> sessions_;
    std::set<std::string> expired_;
};

class Service {
public:
    explicit Service(std::chrono::seconds ttl = std::chrono::hours(1), SessionStore::Clock clock = std::chrono::steady_clock::now);

    HttpResponse handle(const HttpRequest& request);

    SessionStore& sessions() { return sessions_; }

private:
    HttpResponse load(const HttpRequest& request);

    SessionStore sessions_;
};

/// Blocks serving `service` on host:port until the process is stopped.
void serve(Service& service, const std::string& host, int port);

/// Port from the `CLUSTERLENS_PORT` environment variable, or `fallback`.
int port_from_env(int fallback = 8080);

}

#endif
