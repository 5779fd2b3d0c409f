#include "protokg/config.hpp"

#include "protokg/errors.hpp"
#include "protokg/util.hpp"

namespace protokg {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return {};
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

GraphConfig graph_from_json(const json& j, const std::filesystem::path& base) {
    GraphConfig g;
    g.kind = j.value("kind", "local");
    g.triples_path = resolve(base, j.value("triples_path", ""));
    g.endpoint_url = j.value("endpoint_url", "");
    g.cache_path = resolve(base, j.value("cache_path", ""));
    g.graph_name = j.value("graph_name", "Wikidata");
    g.tag = kg::graph_tag_from_string(j.value("graph_tag", "wikidata"));
    g.timeout_s = j.value("timeout_s", 30.0);
    g.retry_limit = j.value("retry_limit", 2);
    g.min_delay_ms = j.value("min_delay_ms", 200);
    g.max_in_flight = j.value("max_in_flight", 4);
    g.type_predicate_iri = j.value("type_predicate", "");
    if (g.kind != "local" && g.kind != "remote")
        throw UsageError("graph kind must be local or remote, got " + g.kind);
    if (g.kind == "local" && g.triples_path.empty())
        throw UsageError("local graph needs triples_path");
    if (g.kind == "remote" && g.endpoint_url.empty())
        throw UsageError("remote graph needs endpoint_url");
    return g;
}

} // namespace

const GraphConfig& Config::active_graph() const {
    auto it = graphs.find(graph);
    if (it == graphs.end()) throw UsageError("config has no graph named '" + graph + "'");
    return it->second;
}

Config config_from_json(const json& doc, const std::filesystem::path& config_dir) {
    Config cfg;
    cfg.config_dir = config_dir;
    cfg.snapshot = doc;

    cfg.run_id = doc.value("run_id", "");
    if (doc.contains("graphs")) {
        for (auto it = doc["graphs"].begin(); it != doc["graphs"].end(); ++it)
            cfg.graphs[it.key()] = graph_from_json(it.value(), config_dir);
    }
    cfg.graph = doc.value("graph", cfg.graphs.empty() ? "local" : cfg.graphs.begin()->first);

    if (doc.contains("model")) {
        const json& m = doc["model"];
        cfg.model.kind = m.value("kind", "replay");
        cfg.model.backend_id = m.value("backend_id", "model");
        cfg.model.transcript_path = resolve(config_dir, m.value("transcript_path", ""));
        cfg.model.api_base = m.value("api_base", "");
        cfg.model.model_name = m.value("model_name", "");
        cfg.model.credential_env = m.value("credential_env", "PROTOKG_API_KEY");
        if (cfg.model.kind != "replay" && cfg.model.kind != "live")
            throw UsageError("model kind must be replay or live");
    }

    if (doc.contains("decoding")) {
        const json& d = doc["decoding"];
        cfg.decoding.temperature = d.value("temperature", 0.0);
        cfg.decoding.max_generation_length = d.value("max_generation_length", 2048);
        cfg.decoding.greedy = d.value("greedy", true);
    }

    if (doc.contains("benchmark")) {
        cfg.benchmark_path = resolve(config_dir, doc["benchmark"].value("path", ""));
        cfg.language = doc["benchmark"].value("language", "en");
    }

    if (doc.contains("sets")) {
        const json& s = doc["sets"];
        cfg.sets.entities_path = resolve(config_dir, s.value("entities_path", ""));
        cfg.sets.properties_path = resolve(config_dir, s.value("properties_path", ""));
        cfg.sets.mapping_path = resolve(config_dir, s.value("mapping_path", ""));
        cfg.sets.top_entities = s.value("top_entities", 200);
        cfg.sets.top_properties = s.value("top_properties", 100);
        cfg.sets.random_sample = s.value("random_sample", 1000);
        cfg.sets.configured = !cfg.sets.entities_path.empty();
    }

    if (doc.contains("thresholds")) {
        const json& t = doc["thresholds"];
        cfg.thresholds.activation = t.value("activation", 0.5);
        cfg.thresholds.correctness_f1 = t.value("correctness_f1", 1.0);
        cfg.thresholds.lexical_percentile = t.value("lexical_percentile", 50.0);
    }

    for (const auto& r : doc.value("regimes", std::vector<std::string>{"original"}))
        cfg.regimes.push_back(t2s::regime_from_string(r));
    for (const auto& f : doc.value("forms", std::vector<std::string>{"topological"}))
        cfg.forms.push_back(agreement::proto_form_from_string(f));

    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.snapshot_label = doc.value("snapshot_label", "");
    cfg.include_class_objects = doc.value("include_class_objects", true);
    cfg.trust_stored_answers = doc.value("trust_stored_answers", false);
    cfg.alias_matching = doc.value("alias_matching", true);
    cfg.case_fold_labels = doc.value("case_fold_labels", true);
    cfg.uri_direction =
        kat::uri_direction_from_string(doc.value("uri_direction", "id_to_label"));
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(util::read_file(path));
    } catch (const json::exception& e) {
        throw UsageError("bad config file " + path.string() + ": " + e.what());
    }
    return config_from_json(doc, path.parent_path());
}

} // namespace protokg
