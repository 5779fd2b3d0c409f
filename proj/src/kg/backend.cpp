#include "protokg/kg/backend.hpp"

#include "protokg/errors.hpp"
#include "protokg/kg/ref.hpp"
#include "protokg/net_guard.hpp"
#include "protokg/sparql/eval.hpp"
#include "protokg/util.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <condition_variable>
#include <set>
#include <thread>

namespace protokg::kg {

using nlohmann::json;

struct GraphBackend::Throttle {
    std::mutex politeness_mutex;
    std::chrono::steady_clock::time_point last_request{};
    std::mutex inflight_mutex;
    std::condition_variable inflight_cv;
    int inflight = 0;
};

namespace {

struct InflightGuard {
    GraphBackend::Throttle& t;
    int limit;
    InflightGuard(GraphBackend::Throttle& t, int limit) : t(t), limit(limit) {
        std::unique_lock lock(t.inflight_mutex);
        t.inflight_cv.wait(lock, [&] { return t.inflight < limit; });
        ++t.inflight;
    }
    ~InflightGuard() {
        {
            std::lock_guard lock(t.inflight_mutex);
            --t.inflight;
        }
        t.inflight_cv.notify_one();
    }
};

std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw UsageError("endpoint URL needs a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size() * 3);
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 15]);
        }
    }
    return out;
}

Term term_from_binding(const json& b) {
    const std::string type = b.at("type").get<std::string>();
    const std::string value = b.at("value").get<std::string>();
    if (type == "uri") return classify_iri(value);
    if (type == "bnode") return BlankNode{value};
    Literal lit;
    lit.lexical = value;
    if (b.contains("datatype")) lit.datatype = b["datatype"].get<std::string>();
    if (b.contains("xml:lang")) lit.language = b["xml:lang"].get<std::string>();
    return lit;
}

json binding_to_json(const Term& t) {
    json out;
    if (const auto* r = std::get_if<KgRef>(&t)) {
        out["type"] = "uri";
        out["value"] = r->normalized_iri;
    } else if (const auto* bl = std::get_if<BlankNode>(&t)) {
        out["type"] = "bnode";
        out["value"] = bl->label;
    } else {
        const auto& l = std::get<Literal>(t);
        out["type"] = "literal";
        out["value"] = l.lexical;
        if (!l.datatype.empty()) out["datatype"] = l.datatype;
        if (!l.language.empty()) out["xml:lang"] = l.language;
    }
    return out;
}

bool is_boolean_row(const sparql::AnswerSet& answers) {
    if (answers.rows.size() != 1) return false;
    const auto& b = answers.rows.front().bindings;
    if (b.size() != 1 || b.begin()->first != "boolean") return false;
    const auto* lit = std::get_if<Literal>(&b.begin()->second);
    return lit && lit->datatype == "http://www.w3.org/2001/XMLSchema#boolean";
}

sparql::AnswerSet boolean_answer(bool value) {
    sparql::AnswerSet answers;
    sparql::AnswerRow row;
    Literal lit;
    lit.lexical = value ? "true" : "false";
    lit.datatype = "http://www.w3.org/2001/XMLSchema#boolean";
    row.bindings["boolean"] = lit;
    answers.rows.push_back(std::move(row));
    return answers;
}

} // namespace

GraphBackend GraphBackend::remote(BackendConfig config) {
    if (config.endpoint_url.empty())
        throw UsageError("remote backend needs an endpoint URL");
    GraphBackend b;
    b.config_ = std::move(config);
    b.cache_ = std::make_shared<ResponseCache>(b.config_.cache_path);
    b.throttle_ = std::make_shared<Throttle>();
    return b;
}

GraphBackend GraphBackend::local(LocalStore store, BackendConfig config) {
    GraphBackend b;
    b.config_ = std::move(config);
    b.config_.endpoint_url.clear();
    b.local_store_ = std::make_shared<LocalStore>(std::move(store));
    b.cache_ = std::make_shared<ResponseCache>(b.config_.cache_path);
    b.throttle_ = std::make_shared<Throttle>();
    return b;
}

std::string GraphBackend::identity() const {
    if (local_store_) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "local:%016llx",
                      static_cast<unsigned long long>(local_store_->digest()));
        return buf;
    }
    return config_.endpoint_url;
}

void GraphBackend::politeness_wait() {
    using namespace std::chrono;
    std::lock_guard lock(throttle_->politeness_mutex);
    const auto min_gap = milliseconds(config_.min_delay_ms);
    const auto now = steady_clock::now();
    if (throttle_->last_request.time_since_epoch().count() != 0) {
        const auto elapsed = now - throttle_->last_request;
        if (elapsed < min_gap) std::this_thread::sleep_for(min_gap - elapsed);
    }
    throttle_->last_request = steady_clock::now();
}

std::string GraphBackend::http_fetch(const std::string& query_text) {
    net::check_allowed("SPARQL " + config_.endpoint_url);
    InflightGuard guard(*throttle_, std::max(1, config_.max_in_flight));
    politeness_wait();

    auto [origin, path] = split_url(config_.endpoint_url);
    httplib::Client client(origin);
    const auto timeout_sec = static_cast<time_t>(std::max(1.0, config_.timeout_s));
    client.set_connection_timeout(timeout_sec, 0);
    client.set_read_timeout(timeout_sec, 0);
    client.set_follow_location(true);

    httplib::Headers headers = {{"Accept", "application/sparql-results+json"}};
    httplib::Result res;
    const std::string encoded = "query=" + url_encode(query_text);
    if (encoded.size() < 1800) {
        res = client.Get(path + (path.find('?') == std::string::npos ? "?" : "&") + encoded,
                         headers);
    } else {
        res = client.Post(path, headers, encoded, "application/x-www-form-urlencoded");
    }
    if (!res) {
        throw TransportError("SPARQL endpoint unreachable: " + config_.endpoint_url +
                                 " (" + httplib::to_string(res.error()) + ")",
                             query_text);
    }
    if (res->status == 400) {
        throw QueryRejectedError("endpoint rejected query (HTTP 400): " +
                                 res->body.substr(0, 200));
    }
    if (res->status != 200) {
        throw TransportError("SPARQL endpoint HTTP " + std::to_string(res->status),
                             query_text);
    }
    return res->body;
}

std::string GraphBackend::fetch(const std::string& query_text) {
    const std::string key = ResponseCache::key_for(identity(), query_text);
    if (auto hit = cache_->lookup(key)) return *hit;

    if (local_store_) {
        auto answers = sparql::evaluate_local(query_text, *local_store_);
        const std::string body = render_sparql_json(answers);
        cache_->store(key, identity(), query_text, body);
        return body;
    }

    if (config_.replay_only)
        throw CacheMissError("no cached response for query: " + query_text, key);

    std::string last_error;
    for (int attempt = 0; attempt <= config_.retry_limit; ++attempt) {
        try {
            const std::string body = http_fetch(query_text);
            cache_->store(key, identity(), query_text, body);
            return body;
        } catch (const TransportError& e) {
            last_error = e.what();
        }
    }
    throw TransportError("retries exhausted: " + last_error, query_text);
}

bool GraphBackend::ask(const AskPattern& pattern) {
    if (!pattern.any_bound()) throw UsageError("ask pattern has no bound position");
    const std::string query = render_ask_query(pattern);

    if (local_store_) {
        const bool result = local_store_->ask(pattern);
        if (cache_->enabled()) {
            const std::string key = ResponseCache::key_for(identity(), query);
            cache_->store(key, identity(), query, render_sparql_json(boolean_answer(result)));
        }
        return result;
    }

    auto answers = parse_sparql_json(fetch(query));
    if (!is_boolean_row(answers))
        throw TransportError("malformed ASK response", query);
    return std::get<Literal>(answers.rows.front().bindings.begin()->second).lexical == "true";
}

sparql::AnswerSet GraphBackend::select(const std::string& query_text) {
    if (local_store_) {
        auto answers = sparql::evaluate_local(query_text, *local_store_);
        if (cache_->enabled()) {
            const std::string key = ResponseCache::key_for(identity(), query_text);
            if (!cache_->lookup(key))
                cache_->store(key, identity(), query_text, render_sparql_json(answers));
        }
        return answers;
    }
    try {
        return parse_sparql_json(fetch(query_text));
    } catch (const json::exception& e) {
        throw TransportError(std::string("unparseable endpoint response: ") + e.what(),
                             query_text);
    }
}

std::string render_ask_query(const AskPattern& pattern) {
    auto term_text = [](const std::optional<KgRef>& ref, const char* var) {
        return ref ? "<" + ref->normalized_iri + ">" : std::string(var);
    };
    std::string object_text =
        pattern.object ? to_ntriples(*pattern.object) : std::string("?o");
    std::string query = "ASK { " + term_text(pattern.subject, "?s") + " " +
                        term_text(pattern.predicate, "?p") + " " + object_text + " .";
    if (pattern.predicate_not && !pattern.predicate) {
        query += " FILTER ( ?p != <" + pattern.predicate_not->normalized_iri + "> )";
    }
    query += " }";
    return query;
}

sparql::AnswerSet parse_sparql_json(const std::string& body) {
    const json doc = json::parse(body);
    if (doc.contains("boolean")) return boolean_answer(doc["boolean"].get<bool>());

    sparql::AnswerSet answers;
    if (!doc.contains("results") || !doc["results"].contains("bindings"))
        throw ParseError("not a SPARQL results document");
    for (const auto& row : doc["results"]["bindings"]) {
        sparql::AnswerRow r;
        for (auto it = row.begin(); it != row.end(); ++it)
            r.bindings[it.key()] = term_from_binding(it.value());
        if (!r.bindings.empty()) answers.rows.push_back(std::move(r));
    }
    canonicalize(answers);
    return answers;
}

std::string render_sparql_json(const sparql::AnswerSet& answers) {
    if (is_boolean_row(answers)) {
        json doc;
        doc["head"] = json::object();
        doc["boolean"] =
            std::get<Literal>(answers.rows.front().bindings.begin()->second).lexical ==
            "true";
        return doc.dump();
    }
    json doc;
    std::set<std::string> vars;
    json bindings = json::array();
    for (const auto& row : answers.rows) {
        json r = json::object();
        for (const auto& [var, term] : row.bindings) {
            vars.insert(var);
            r[var] = binding_to_json(term);
        }
        bindings.push_back(std::move(r));
    }
    doc["head"]["vars"] = json(vars);
    doc["results"]["bindings"] = std::move(bindings);
    return doc.dump();
}

} // namespace protokg::kg
