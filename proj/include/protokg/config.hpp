#pragma once

#include "protokg/agreement.hpp"
#include "protokg/kat/kat.hpp"
#include "protokg/kg/term.hpp"
#include "protokg/model/backend.hpp"
#include "protokg/t2s/prompts.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace protokg {

struct GraphConfig {
    std::string kind = "local"; // "local" | "remote"
    std::filesystem::path triples_path;
    std::string endpoint_url;
    std::filesystem::path cache_path;
    std::string graph_name = "Wikidata"; // display name in prompts
    kg::GraphTag tag = kg::GraphTag::Wikidata;
    double timeout_s = 30.0;
    int retry_limit = 2;
    int min_delay_ms = 200;
    int max_in_flight = 4;
    std::string type_predicate_iri;
};

struct ModelConfig {
    std::string kind = "replay"; // "replay" | "live"
    std::string backend_id = "model";
    std::filesystem::path transcript_path;
    std::string api_base;
    std::string model_name;
    std::string credential_env = "PROTOKG_API_KEY";
};

struct Thresholds {
    double activation = 0.5;
    double correctness_f1 = 1.0;
    double lexical_percentile = 50.0;
};

struct SetsConfig {
    std::filesystem::path entities_path;
    std::filesystem::path properties_path;
    std::filesystem::path mapping_path;
    int top_entities = 200;
    int top_properties = 100;
    int random_sample = 1000;
    bool configured = false;
};

struct Config {
    std::string run_id; // empty: derived from input digests
    std::map<std::string, GraphConfig> graphs;
    std::string graph = "local";
    ModelConfig model;
    model::DecodingConfig decoding;
    std::filesystem::path benchmark_path;
    std::string language = "en";
    SetsConfig sets;
    Thresholds thresholds;
    std::vector<t2s::PromptRegime> regimes;
    std::vector<agreement::ProtoForm> forms;
    std::uint64_t seed = 0;
    std::string snapshot_label; // pinned timestamp for reproducible builds
    bool include_class_objects = true;
    bool trust_stored_answers = false;
    bool alias_matching = true;
    bool case_fold_labels = true;
    kat::UriDirection uri_direction = kat::UriDirection::IdToLabel;

    std::filesystem::path config_dir;
    nlohmann::json snapshot; // verbatim config document

    const GraphConfig& active_graph() const;
};

// Relative paths are resolved against the config file's directory.
Config load_config(const std::filesystem::path& path);
Config config_from_json(const nlohmann::json& doc, const std::filesystem::path& config_dir);

} // namespace protokg
