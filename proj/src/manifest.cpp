#include "protokg/manifest.hpp"

#include "protokg/errors.hpp"
#include "protokg/util.hpp"

namespace protokg {

using nlohmann::json;

std::string file_digest(const std::filesystem::path& path) {
    return util::hash_hex(util::read_file(path));
}

void RunManifest::record_artifact(const std::string& key, const std::string& relative_path) {
    artifacts[key] = relative_path;
}

RunManifest make_manifest(const Config& config) {
    RunManifest m;
    m.created_at = util::now_iso8601();
    m.config_snapshot = config.snapshot;

    // keyed by filename so run ids survive relocation of the working tree
    auto add_digest = [&](const std::filesystem::path& p) {
        if (!p.empty() && std::filesystem::exists(p))
            m.input_digests[p.filename().string()] = file_digest(p);
    };
    add_digest(config.benchmark_path);
    add_digest(config.sets.entities_path);
    add_digest(config.sets.properties_path);
    add_digest(config.sets.mapping_path);
    add_digest(config.model.transcript_path);
    for (const auto& [name, graph] : config.graphs) add_digest(graph.triples_path);

    m.notes["decoding.temperature"] = std::to_string(config.decoding.temperature);
    m.notes["decoding.max_generation_length"] =
        std::to_string(config.decoding.max_generation_length);
    m.notes["decoding.greedy"] = config.decoding.greedy ? "true" : "false";
    m.notes["thresholds.activation"] = std::to_string(config.thresholds.activation);
    m.notes["thresholds.correctness_f1"] = std::to_string(config.thresholds.correctness_f1);
    m.notes["thresholds.lexical_percentile"] =
        std::to_string(config.thresholds.lexical_percentile);
    m.notes["seed"] = std::to_string(config.seed);
    m.notes["uri_direction"] = kat::to_string(config.uri_direction);
    m.notes["alias_matching"] = config.alias_matching ? "true" : "false";
    m.notes["include_class_objects"] = config.include_class_objects ? "true" : "false";
    m.notes["trust_stored_answers"] = config.trust_stored_answers ? "true" : "false";
    m.notes["sps_headline"] = "micro";
    m.notes["lexical_percentile_scope"] = "per item kind";
    m.notes["model_message_layout"] = "single user message";

    if (!config.run_id.empty()) {
        m.run_id = config.run_id;
    } else {
        std::string material = config.snapshot.dump();
        for (const auto& [path, digest] : m.input_digests) material += path + digest;
        m.run_id = "run-" + util::hash_hex(material);
    }
    return m;
}

void save_manifest(const std::filesystem::path& run_dir, const RunManifest& manifest) {
    json j;
    j["run_id"] = manifest.run_id;
    j["created_at"] = manifest.created_at;
    j["config"] = manifest.config_snapshot;
    j["input_digests"] = manifest.input_digests;
    j["artifacts"] = manifest.artifacts;
    j["endpoints"] = manifest.endpoints;
    j["notes"] = manifest.notes;
    util::write_file(run_dir / "manifest.json", j.dump(2) + "\n");
}

RunManifest load_manifest(const std::filesystem::path& run_dir) {
    const auto path = run_dir / "manifest.json";
    if (!std::filesystem::exists(path))
        throw UsageError("no manifest at " + path.string() +
                         "; run a build stage first");
    json j = json::parse(util::read_file(path));
    RunManifest m;
    m.run_id = j.value("run_id", "");
    m.created_at = j.value("created_at", "");
    m.config_snapshot = j.value("config", json::object());
    if (j.contains("input_digests"))
        m.input_digests = j["input_digests"].get<std::map<std::string, std::string>>();
    if (j.contains("artifacts"))
        m.artifacts = j["artifacts"].get<std::map<std::string, std::string>>();
    if (j.contains("endpoints"))
        m.endpoints = j["endpoints"].get<std::map<std::string, std::string>>();
    if (j.contains("notes"))
        m.notes = j["notes"].get<std::map<std::string, std::string>>();
    return m;
}

RunManifest load_or_make_manifest(const std::filesystem::path& run_dir, const Config& config) {
    if (std::filesystem::exists(run_dir / "manifest.json")) return load_manifest(run_dir);
    return make_manifest(config);
}

} // namespace protokg
