#pragma once

#include "protokg/kg/cache.hpp"
#include "protokg/kg/local_store.hpp"
#include "protokg/kg/term.hpp"
#include "protokg/sparql/answers.hpp"

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace protokg::kg {

struct BackendConfig {
    std::string endpoint_url;               // empty for local stores
    std::filesystem::path cache_path;       // empty disables the cache file
    double timeout_s = 30.0;
    int retry_limit = 2;
    int min_delay_ms = 200;                 // politeness floor per endpoint
    int max_in_flight = 4;
    bool replay_only = false;               // never touch the network
};

// Uniform access to a knowledge graph: either a remote SPARQL 1.1 HTTP
// endpoint (JSON results) or an in-memory local store. Remote responses
// are cached before returning; in replay mode a cache miss raises
// CacheMissError instead of going to the network. Shareable across
// threads: cache writes and the politeness clock are serialized, and
// concurrent remote requests are bounded by max_in_flight.
class GraphBackend {
public:
    static GraphBackend remote(BackendConfig config);
    static GraphBackend local(LocalStore store, BackendConfig config = {});

    // ASK over a pattern with optional wildcards; at least one position
    // must be bound. The (query, result) pair is cached before return.
    bool ask(const AskPattern& pattern);

    // SELECT/ASK text -> deterministic set-semantics answer rows.
    // Endpoint rejections raise QueryRejectedError; transport failures
    // raise TransportError after retry_limit extra attempts.
    sparql::AnswerSet select(const std::string& query_text);

    std::string identity() const;
    bool is_local() const { return local_store_ != nullptr; }
    const LocalStore* local_store() const { return local_store_.get(); }
    const BackendConfig& config() const { return config_; }
    bool replay_only() const { return config_.replay_only; }
    void set_replay_only(bool replay) { config_.replay_only = replay; }

    // Raw response body for a query, from cache or the endpoint. Exposed
    // for cache tests; ask/select are built on it.
    std::string fetch(const std::string& query_text);

    struct Throttle; // politeness clock + in-flight limiter

private:
    GraphBackend() = default;

    std::string http_fetch(const std::string& query_text);
    void politeness_wait();

    BackendConfig config_;
    std::shared_ptr<const LocalStore> local_store_;
    std::shared_ptr<ResponseCache> cache_;
    std::shared_ptr<Throttle> throttle_;
};

// Render an ASK query for a wildcard pattern (wildcards become variables;
// predicate_not becomes a FILTER exclusion).
std::string render_ask_query(const AskPattern& pattern);

// Parse a SPARQL JSON results document (SELECT bindings or ASK boolean).
sparql::AnswerSet parse_sparql_json(const std::string& body);

// Inverse of parse_sparql_json, used when caching locally computed results.
std::string render_sparql_json(const sparql::AnswerSet& answers);

} // namespace protokg::kg
