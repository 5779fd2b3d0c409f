#include "protokg/pipeline.hpp"

#include "protokg/agreement.hpp"
#include "protokg/errors.hpp"
#include "protokg/kat/runner.hpp"
#include "protokg/kg/ref.hpp"
#include "protokg/net_guard.hpp"
#include "protokg/popularity.hpp"
#include "protokg/qald.hpp"
#include "protokg/sps.hpp"
#include "protokg/t2s/runner.hpp"
#include "protokg/testset.hpp"
#include "protokg/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>

namespace protokg::pipeline {

using nlohmann::json;

const std::vector<std::string>& set_names() {
    static const std::vector<std::string> names = {
        "uri_top_entities", "uri_top_properties",  "uri_random",
        "lexical_probes",   "subsumption_direct",  "subsumption_inverse",
        "hierarchical_probes", "completion",
    };
    return names;
}

namespace {

bool has_form(const Config& cfg, agreement::ProtoForm form) {
    return std::find(cfg.forms.begin(), cfg.forms.end(), form) != cfg.forms.end();
}

std::string pinned_timestamp(const Config& cfg) {
    return cfg.snapshot_label.empty() ? util::now_iso8601() : cfg.snapshot_label;
}

std::filesystem::path sets_dir(const RunContext& ctx) { return ctx.run_dir / "sets"; }
std::filesystem::path kat_dir(const RunContext& ctx) { return ctx.run_dir / "kat"; }
std::filesystem::path sps_dir(const RunContext& ctx) { return ctx.run_dir / "sps"; }
std::filesystem::path t2s_dir(const RunContext& ctx) { return ctx.run_dir / "t2s"; }
std::filesystem::path agreement_dir(const RunContext& ctx) {
    return ctx.run_dir / "agreement";
}
std::filesystem::path report_dir(const RunContext& ctx) { return ctx.run_dir / "report"; }

qald::Benchmark load_bench(const Config& cfg) {
    if (cfg.benchmark_path.empty()) throw UsageError("config has no benchmark path");
    return qald::load_benchmark(cfg.benchmark_path, cfg.language);
}

std::vector<t2s::PromptRegime> regimes_for(const RunContext& ctx) {
    if (ctx.only_regime) return {*ctx.only_regime};
    return ctx.config.regimes;
}

std::map<std::string, sps::QuestionSps> load_per_question(const RunContext& ctx) {
    const auto path = sps_dir(ctx) / "per_question.tsv";
    if (!std::filesystem::exists(path))
        throw UsageError("missing " + path.string() + "; run compute-sps first");
    std::map<std::string, sps::QuestionSps> out;
    for (const auto& line : util::read_lines(path)) {
        if (line.empty() || line[0] == '#') continue;
        auto cols = util::split(line, '\t');
        if (cols.size() < 4 || cols[0] == "question_id") continue;
        sps::QuestionSps q;
        q.pairs_total = std::stoi(cols[1]);
        q.pairs_perfect = std::stoi(cols[2]);
        q.pairs_loose = std::stoi(cols[3]);
        out[cols[0]] = q;
    }
    return out;
}

} // namespace

kg::GraphBackend make_graph_backend(const Config& config, bool replay) {
    const GraphConfig& g = config.active_graph();
    kg::BackendConfig backend_config;
    backend_config.cache_path = g.cache_path;
    backend_config.timeout_s = g.timeout_s;
    backend_config.retry_limit = g.retry_limit;
    backend_config.min_delay_ms = g.min_delay_ms;
    backend_config.max_in_flight = g.max_in_flight;
    backend_config.replay_only = replay;
    if (g.kind == "local") {
        return kg::GraphBackend::local(kg::LocalStore::from_ntriples_file(g.triples_path),
                                       backend_config);
    }
    backend_config.endpoint_url = g.endpoint_url;
    return kg::GraphBackend::remote(backend_config);
}

std::unique_ptr<model::ModelBackend> make_model_backend(const Config& config, bool replay) {
    const ModelConfig& m = config.model;
    if (m.kind == "replay" || replay) {
        if (m.transcript_path.empty())
            throw UsageError("replay model backend needs transcript_path");
        if (!std::filesystem::exists(m.transcript_path))
            throw ReplayMissError("transcript not found: " + m.transcript_path.string(), "");
        return std::make_unique<model::ReplayBackend>(m.backend_id, m.transcript_path);
    }
    model::HttpModelConfig http;
    http.api_base = m.api_base;
    http.model_name = m.model_name;
    http.transcript_path = m.transcript_path;
    if (!m.credential_env.empty()) {
        if (const char* key = std::getenv(m.credential_env.c_str())) http.api_key = key;
    }
    return std::make_unique<model::HttpModelBackend>(m.backend_id, http);
}

void stage_build_sets(RunContext& ctx) {
    const Config& cfg = ctx.config;
    RunManifest manifest = load_or_make_manifest(ctx.run_dir, cfg);
    auto backend = make_graph_backend(cfg, ctx.replay);
    const std::string ts = pinned_timestamp(cfg);
    manifest.endpoints[backend.identity()] = ts;
    std::filesystem::create_directories(sets_dir(ctx));

    const auto bench = load_bench(cfg);
    sparql::ExtractOptions extract;
    extract.include_class_objects = cfg.include_class_objects;

    testset::CompletionBuildOptions completion_options;
    completion_options.extract = extract;
    completion_options.timestamp = ts;
    auto completion = testset::build_completion_set(bench, &backend, completion_options);
    testset::save_set(sets_dir(ctx) / "completion.json", completion);
    manifest.record_artifact("sets/completion", "sets/completion.json");

    if (has_form(cfg, agreement::ProtoForm::Lexical)) {
        testset::LexicalProbeOptions lex;
        lex.direction = cfg.uri_direction;
        lex.extract = extract;
        lex.timestamp = ts;
        testset::save_set(sets_dir(ctx) / "lexical_probes.json",
                          testset::build_lexical_probe_set(bench, backend, lex));
        manifest.record_artifact("sets/lexical_probes", "sets/lexical_probes.json");
    }

    if (has_form(cfg, agreement::ProtoForm::Hierarchical)) {
        testset::save_set(sets_dir(ctx) / "hierarchical_probes.json",
                          testset::build_hierarchical_probe_set(bench, ts));
        manifest.record_artifact("sets/hierarchical_probes", "sets/hierarchical_probes.json");
    }

    if (cfg.active_graph().tag == kg::GraphTag::Dbpedia) {
        testset::SubsumptionBuildOptions sub;
        sub.type_predicate_iri = cfg.active_graph().type_predicate_iri;
        sub.timestamp = ts;
        auto sets = testset::build_subsumption_sets(backend, sub);
        testset::save_set(sets_dir(ctx) / "subsumption_direct.json", sets.direct);
        testset::save_set(sets_dir(ctx) / "subsumption_inverse.json", sets.inverse);
        manifest.record_artifact("sets/subsumption_direct", "sets/subsumption_direct.json");
        manifest.record_artifact("sets/subsumption_inverse", "sets/subsumption_inverse.json");
    }

    if (cfg.sets.configured) {
        testset::UriSetSources sources;
        sources.entities_path = cfg.sets.entities_path;
        sources.properties_path = cfg.sets.properties_path;
        sources.mapping_path = cfg.sets.mapping_path;
        sources.top_entities = cfg.sets.top_entities;
        sources.top_properties = cfg.sets.top_properties;
        sources.random_sample = cfg.sets.random_sample;
        sources.seed = cfg.seed;
        sources.timestamp = ts;
        sources.direction = cfg.uri_direction;
        auto uri_sets = testset::build_uri_recognition_sets(sources);
        testset::save_set(sets_dir(ctx) / "uri_top_entities.json", uri_sets.top_entities);
        testset::save_set(sets_dir(ctx) / "uri_top_properties.json", uri_sets.top_properties);
        testset::save_set(sets_dir(ctx) / "uri_random.json", uri_sets.random_pairs);
        manifest.record_artifact("sets/uri_top_entities", "sets/uri_top_entities.json");
        manifest.record_artifact("sets/uri_top_properties", "sets/uri_top_properties.json");
        manifest.record_artifact("sets/uri_random", "sets/uri_random.json");
    }

    pop::PopularityOptions pop_options;
    pop_options.type_predicate_iri = cfg.active_graph().type_predicate_iri;
    pop_options.timestamp = ts;
    pop::save_table(sets_dir(ctx) / "popularity_items.tsv",
                    testset::build_item_popularity(bench, backend, pop_options, extract));
    manifest.record_artifact("sets/popularity_items", "sets/popularity_items.tsv");

    save_manifest(ctx.run_dir, manifest);
}

void stage_run_kat(RunContext& ctx) {
    RunManifest manifest = load_manifest(ctx.run_dir);
    if (!std::filesystem::exists(sets_dir(ctx)))
        throw UsageError("no sets directory; run build-sets first");

    auto model = make_model_backend(ctx.config, ctx.replay);
    auto graph = make_graph_backend(ctx.config, ctx.replay);
    std::filesystem::create_directories(kat_dir(ctx));

    kat::KatRunOptions options;
    options.score.alias_matching = ctx.config.alias_matching;
    options.score.case_fold = ctx.config.case_fold_labels;
    options.decoding = ctx.config.decoding;

    for (const auto& name : set_names()) {
        const auto set_path = sets_dir(ctx) / (name + ".json");
        if (!std::filesystem::exists(set_path)) continue;
        const auto set = testset::load_set(set_path);
        auto records = kat::run_instances(set.items, *model, &graph, options);
        kat::save_records(kat_dir(ctx) / ("records_" + name + ".jsonl"), records);
        manifest.record_artifact("kat/" + name, "kat/records_" + name + ".jsonl");
    }
    save_manifest(ctx.run_dir, manifest);
}

void stage_compute_sps(RunContext& ctx) {
    RunManifest manifest = load_manifest(ctx.run_dir);
    const auto set_path = sets_dir(ctx) / "completion.json";
    const auto records_path = kat_dir(ctx) / "records_completion.jsonl";
    if (!std::filesystem::exists(set_path))
        throw UsageError("missing completion set; run build-sets first");
    if (!std::filesystem::exists(records_path))
        throw UsageError("missing completion records; run run-kat first");

    const auto set = testset::load_set(set_path);
    const auto records = kat::load_records(records_path);
    const auto expected = sps::expected_pairs_from_instances(set.items);
    const auto score = sps::compute_sps(records, expected);

    std::filesystem::create_directories(sps_dir(ctx));
    json summary;
    summary["sv_object"] = {{"total", score.sv_object.total},
                            {"perfect", score.sv_object.perfect},
                            {"soft", score.sv_object.soft}};
    summary["vo_subject"] = {{"total", score.vo_subject.total},
                             {"perfect", score.vo_subject.perfect},
                             {"soft", score.vo_subject.soft}};
    summary["joint_perfect"] = score.joint_perfect;
    summary["joint_loose"] = score.joint_loose;
    summary["macro_joint_perfect"] = score.macro_joint_perfect;
    summary["macro_joint_loose"] = score.macro_joint_loose;
    summary["unverified"] = score.unverified;
    util::write_file(sps_dir(ctx) / "summary.json", summary.dump(2) + "\n");

    std::string tsv = "question_id\tpairs_total\tpairs_perfect\tpairs_loose\n";
    for (const auto& [qid, entry] : score.per_question) {
        tsv += qid + "\t" + std::to_string(entry.pairs_total) + "\t" +
               std::to_string(entry.pairs_perfect) + "\t" +
               std::to_string(entry.pairs_loose) + "\n";
    }
    util::write_file(sps_dir(ctx) / "per_question.tsv", tsv);
    manifest.record_artifact("sps/summary", "sps/summary.json");
    manifest.record_artifact("sps/per_question", "sps/per_question.tsv");
    save_manifest(ctx.run_dir, manifest);
}

void stage_run_t2s(RunContext& ctx) {
    RunManifest manifest = load_manifest(ctx.run_dir);
    const auto bench = load_bench(ctx.config);
    auto model = make_model_backend(ctx.config, ctx.replay);
    auto graph = make_graph_backend(ctx.config, ctx.replay);
    std::filesystem::create_directories(t2s_dir(ctx));

    t2s::T2sOptions options;
    options.correctness_threshold = ctx.config.thresholds.correctness_f1;
    options.trust_stored_answers = ctx.config.trust_stored_answers;
    options.decoding = ctx.config.decoding;
    options.graph_name = ctx.config.active_graph().graph_name;
    options.graph_tag = ctx.config.active_graph().tag;

    for (const auto regime : regimes_for(ctx)) {
        auto records = t2s::run_benchmark(bench, regime, *model, graph, options);
        const std::string name = "records_" + t2s::to_string(regime) + ".jsonl";
        t2s::save_records(t2s_dir(ctx) / name, records);
        manifest.record_artifact("t2s/" + t2s::to_string(regime), "t2s/" + name);
    }
    save_manifest(ctx.run_dir, manifest);
}

void stage_analyze_agreement(RunContext& ctx) {
    RunManifest manifest = load_manifest(ctx.run_dir);
    const Config& cfg = ctx.config;
    std::filesystem::create_directories(agreement_dir(ctx));

    // Per-question SPS for the topological form.
    std::map<std::string, sps::QuestionSps> per_question;
    if (has_form(cfg, agreement::ProtoForm::Topological))
        per_question = load_per_question(ctx);

    // Lexical inputs: probe records plus popularity percentile filters.
    std::map<std::string, std::vector<const kat::KatRecord*>> lexical_by_question;
    std::map<std::string, const kat::KatRecord*> lexical_by_item; // question|iri
    std::vector<kat::KatRecord> lexical_records;
    std::map<std::string, double> kind_thresholds;
    std::map<std::string, std::uint64_t> item_counts;
    if (has_form(cfg, agreement::ProtoForm::Lexical)) {
        const auto records_path = kat_dir(ctx) / "records_lexical_probes.jsonl";
        if (!std::filesystem::exists(records_path))
            throw UsageError("missing lexical probe records; run run-kat first");
        lexical_records = kat::load_records(records_path);
        for (const auto& rec : lexical_records) {
            lexical_by_question[rec.instance.question_id].push_back(&rec);
            lexical_by_item[rec.instance.question_id + "|" +
                            rec.instance.item.normalized_iri] = &rec;
        }
        const auto pop_path = sets_dir(ctx) / "popularity_items.tsv";
        if (!std::filesystem::exists(pop_path))
            throw UsageError("missing popularity table; run build-sets first");
        const auto table = pop::load_table(pop_path);
        // percentile computed separately for properties and non-properties
        std::map<std::string, std::vector<pop::PopularityRecord>> by_kind;
        for (const auto& rec : table) {
            const std::string group =
                rec.item.kind == kg::RefKind::Property ? "property" : "entity";
            by_kind[group].push_back(rec);
        }
        for (const auto& [group, recs] : by_kind) {
            kind_thresholds[group] = pop::threshold_value(
                recs, pop::SplitCriterion::percentile(cfg.thresholds.lexical_percentile));
        }
        for (const auto& rec : table) item_counts[rec.item.normalized_iri] = rec.count;
    }

    // Hierarchical probes: completion records restricted to hierarchical
    // predicates plus bound-subclass probes.
    std::map<std::string, std::vector<const kat::KatRecord*>> hierarchical_by_question;
    std::vector<kat::KatRecord> completion_records, hier_records;
    if (has_form(cfg, agreement::ProtoForm::Hierarchical)) {
        const auto completion_path = kat_dir(ctx) / "records_completion.jsonl";
        if (!std::filesystem::exists(completion_path))
            throw UsageError("missing completion records; run run-kat first");
        completion_records = kat::load_records(completion_path);
        for (const auto& rec : completion_records) {
            if (agreement::is_hierarchical_predicate(rec.instance.pair.property))
                hierarchical_by_question[rec.instance.question_id].push_back(&rec);
        }
        const auto hier_path = kat_dir(ctx) / "records_hierarchical_probes.jsonl";
        if (std::filesystem::exists(hier_path)) {
            hier_records = kat::load_records(hier_path);
            for (const auto& rec : hier_records)
                hierarchical_by_question[rec.instance.question_id].push_back(&rec);
        }
    }

    bool wrote_any = false;
    for (const auto regime : regimes_for(ctx)) {
        const auto t2s_path =
            t2s_dir(ctx) / ("records_" + t2s::to_string(regime) + ".jsonl");
        if (!std::filesystem::exists(t2s_path)) continue;
        const auto t2s_records = t2s::load_eval_records(t2s_path);

        for (const auto form : cfg.forms) {
            std::vector<agreement::AgreementRecord> records;
            for (const auto& eval : t2s_records) {
                if (eval.gold_failed) continue; // not scored, not counted
                agreement::AgreementRecord rec;
                rec.question_id = eval.question_id;
                rec.form = form;
                rec.regime = regime;
                rec.sparql_correct = eval.correct;

                switch (form) {
                    case agreement::ProtoForm::Lexical: {
                        std::vector<kg::KgRef> items;
                        for (const kat::KatRecord* probe :
                             lexical_by_question[eval.question_id])
                            items.push_back(probe->instance.item);
                        auto record_for =
                            [&](const kg::KgRef& item) -> const kat::KatRecord* {
                            auto it = lexical_by_item.find(eval.question_id + "|" +
                                                           item.normalized_iri);
                            return it == lexical_by_item.end() ? nullptr : it->second;
                        };
                        auto survives = [&](const kg::KgRef& item) {
                            const std::string group =
                                item.kind == kg::RefKind::Property ? "property" : "entity";
                            auto it = item_counts.find(item.normalized_iri);
                            if (it == item_counts.end()) return false;
                            return static_cast<double>(it->second) >=
                                   kind_thresholds.at(group);
                        };
                        rec.proto_activated =
                            agreement::activation_lexical(items, record_for, survives);
                        break;
                    }
                    case agreement::ProtoForm::Hierarchical:
                        rec.proto_activated = agreement::activation_hierarchical(
                            hierarchical_by_question[eval.question_id]);
                        break;
                    case agreement::ProtoForm::Topological: {
                        auto it = per_question.find(eval.question_id);
                        if (it == per_question.end()) {
                            rec.proto_activated = std::nullopt;
                        } else {
                            rec.proto_activated = agreement::activation_topological(
                                it->second, cfg.thresholds.activation);
                        }
                        break;
                    }
                }
                rec.category = agreement::categorize(rec.sparql_correct, rec.proto_activated);
                records.push_back(std::move(rec));
            }
            const std::string name = "records_" + agreement::to_string(form) + "_" +
                                     t2s::to_string(regime) + ".jsonl";
            agreement::save_records(agreement_dir(ctx) / name, records);
            manifest.record_artifact(
                "agreement/" + agreement::to_string(form) + "/" + t2s::to_string(regime),
                "agreement/" + name);
            wrote_any = true;
        }
    }
    if (!wrote_any)
        throw UsageError("no text-to-SPARQL records found; run run-t2s first");
    save_manifest(ctx.run_dir, manifest);
}

} // namespace protokg::pipeline
