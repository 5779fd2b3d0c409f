#include "protokg/errors.hpp"
#include "protokg/net_guard.hpp"
#include "protokg/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitReplayMiss = 2;
constexpr int kExitTransport = 3;

struct CommonArgs {
    std::string config_path;
    std::string run_dir;
    bool replay = false;
    std::string graph;
    std::string regime;
    std::optional<double> threshold;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file")->required();
    cmd->add_option("--run-dir", args.run_dir, "run directory for stage outputs")
        ->required();
    cmd->add_flag("--replay", args.replay,
                  "offline mode: replay transcripts and caches, forbid network");
    cmd->add_option("--graph", args.graph, "graph section to use (wikidata|dbpedia|local)");
    cmd->add_option("--regime", args.regime, "restrict to one prompt regime");
    cmd->add_option("--threshold", args.threshold, "activation threshold override");
    cmd->add_option("--seed", args.seed, "sampling seed override");
}

protokg::pipeline::RunContext make_context(const CommonArgs& args) {
    protokg::pipeline::RunContext ctx;
    ctx.config = protokg::load_config(args.config_path);
    ctx.run_dir = args.run_dir;
    ctx.replay = args.replay;
    if (!args.graph.empty()) ctx.config.graph = args.graph;
    if (!args.regime.empty())
        ctx.only_regime = protokg::t2s::regime_from_string(args.regime);
    if (args.threshold) ctx.config.thresholds.activation = *args.threshold;
    if (args.seed) ctx.config.seed = *args.seed;
    if (args.replay) protokg::net::set_offline(true);
    return ctx;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Knowledge-graph protoknowledge measurement toolkit"};
    app.require_subcommand(1);

    struct Stage {
        const char* name;
        const char* help;
        std::function<void(protokg::pipeline::RunContext&)> run;
    };
    const Stage stages[] = {
        {"build-sets", "construct task test sets from the benchmark and item tables",
         protokg::pipeline::stage_build_sets},
        {"run-kat", "run knowledge-activation tasks against the model backend",
         protokg::pipeline::stage_run_kat},
        {"compute-sps", "aggregate completion records into SPS scores",
         protokg::pipeline::stage_compute_sps},
        {"run-t2s", "run the text-to-SPARQL benchmark per prompt regime",
         protokg::pipeline::stage_run_t2s},
        {"analyze-agreement", "pair SPARQL correctness with protoknowledge activation",
         protokg::pipeline::stage_analyze_agreement},
        {"report", "collate score tables from persisted records",
         protokg::pipeline::stage_report},
    };

    CommonArgs args[std::size(stages)];
    for (std::size_t i = 0; i < std::size(stages); ++i) {
        auto* cmd = app.add_subcommand(stages[i].name, stages[i].help);
        add_common(cmd, args[i]);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < std::size(stages); ++i) {
        auto* cmd = app.get_subcommand(stages[i].name);
        if (!cmd->parsed()) continue;
        try {
            auto ctx = make_context(args[i]);
            stages[i].run(ctx);
            return kExitOk;
        } catch (const protokg::ReplayMissError& e) {
            std::fprintf(stderr, "replay miss: %s\n", e.what());
            return kExitReplayMiss;
        } catch (const protokg::CacheMissError& e) {
            std::fprintf(stderr, "cache miss: %s\n", e.what());
            return kExitReplayMiss;
        } catch (const protokg::AccountingError& e) {
            std::fprintf(stderr, "accounting error: %s\n", e.what());
            return kExitReplayMiss;
        } catch (const protokg::TransportError& e) {
            std::fprintf(stderr, "transport error: %s\n", e.what());
            return kExitTransport;
        } catch (const protokg::Error& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kExitUsage;
        }
    }
    return kExitUsage;
}
