#pragma once

#include "protokg/config.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace protokg {

// Everything a report needs to be reproduced: the config snapshot, input
// digests, backend identities with retrieval provenance, and where each
// stage wrote its artifacts. Reports cite the run id; the id is derived
// from the inputs so identical inputs name identical runs.
struct RunManifest {
    std::string run_id;
    std::string created_at;
    nlohmann::json config_snapshot;
    std::map<std::string, std::string> input_digests; // path -> hash
    std::map<std::string, std::string> artifacts;     // stage/key -> relative path
    std::map<std::string, std::string> endpoints;     // identity -> retrieved_at
    std::map<std::string, std::string> notes;         // resolved flags per run

    void record_artifact(const std::string& key, const std::string& relative_path);
};

RunManifest make_manifest(const Config& config);

void save_manifest(const std::filesystem::path& run_dir, const RunManifest& manifest);
RunManifest load_manifest(const std::filesystem::path& run_dir);
RunManifest load_or_make_manifest(const std::filesystem::path& run_dir, const Config& config);

std::string file_digest(const std::filesystem::path& path);

} // namespace protokg
