#pragma once

#include "protokg/config.hpp"
#include "protokg/kg/backend.hpp"
#include "protokg/manifest.hpp"
#include "protokg/model/backend.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace protokg::pipeline {

// Shared driver behind the CLI subcommands; tests and the acceptance
// suite call these directly. Stages communicate through files under the
// run directory and the manifest records every artifact.
struct RunContext {
    Config config;
    std::filesystem::path run_dir;
    bool replay = false;                           // forbid network
    std::optional<t2s::PromptRegime> only_regime;  // --regime override
};

kg::GraphBackend make_graph_backend(const Config& config, bool replay);
std::unique_ptr<model::ModelBackend> make_model_backend(const Config& config, bool replay);

void stage_build_sets(RunContext& ctx);
void stage_run_kat(RunContext& ctx);
void stage_compute_sps(RunContext& ctx);
void stage_run_t2s(RunContext& ctx);
void stage_analyze_agreement(RunContext& ctx);
void stage_report(RunContext& ctx);

// The set files a run may contain, in processing order.
const std::vector<std::string>& set_names();

} // namespace protokg::pipeline
