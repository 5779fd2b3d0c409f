#include "protokg/agreement.hpp"
#include "protokg/errors.hpp"
#include "protokg/kat/runner.hpp"
#include "protokg/pipeline.hpp"
#include "protokg/popularity.hpp"
#include "protokg/t2s/runner.hpp"
#include "protokg/testset.hpp"
#include "protokg/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace protokg::pipeline {

using nlohmann::json;

namespace {

std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
    return buf;
}

std::string num(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

struct ReportWriter {
    std::string text;
    explicit ReportWriter(const std::string& run_id) { text = "# run: " + run_id + "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += '\t';
            text += cells[i];
        }
        text += '\n';
    }
};

} // namespace

void stage_report(RunContext& ctx) {
    RunManifest manifest = load_manifest(ctx.run_dir);
    const std::string run_id = manifest.run_id;
    const auto kat_path = ctx.run_dir / "kat";
    const auto sps_summary_path = ctx.run_dir / "sps" / "summary.json";
    const auto t2s_path = ctx.run_dir / "t2s";
    const auto agreement_path = ctx.run_dir / "agreement";

    bool produced = false;
    std::filesystem::create_directories(ctx.run_dir / "report");

    // Text-to-SPARQL mean F1 table.
    {
        ReportWriter w(run_id);
        w.row({"regime", "questions", "scored", "gold_failed", "correct", "mean_f1",
               "mean_f1_x100"});
        bool any = false;
        for (const char* regime : {"original", "no_label", "no_uri"}) {
            const auto path = t2s_path / ("records_" + std::string(regime) + ".jsonl");
            if (!std::filesystem::exists(path)) continue;
            any = true;
            const auto records = t2s::load_eval_records(path);
            int scored = 0, failed = 0, correct = 0;
            for (const auto& rec : records) {
                if (rec.gold_failed) {
                    ++failed;
                    continue;
                }
                ++scored;
                if (rec.correct) ++correct;
            }
            const double mean = t2s::mean_f1(records);
            w.row({regime, std::to_string(records.size()), std::to_string(scored),
                   std::to_string(failed), std::to_string(correct), num(mean), pct(mean)});
        }
        if (any) {
            util::write_file(ctx.run_dir / "report" / "f1_table.tsv", w.text);
            manifest.record_artifact("report/f1_table", "report/f1_table.tsv");
            produced = true;
        }
    }

    // SPS table in the shape of the per-task / joint columns.
    if (std::filesystem::exists(sps_summary_path)) {
        const json summary = json::parse(util::read_file(sps_summary_path));
        ReportWriter w(run_id);
        w.row({"task", "soft_pct", "perfect_pct", "total"});
        auto task_row = [&](const char* name, const json& t) {
            const int total = t.value("total", 0);
            const int perfect = t.value("perfect", 0);
            const int soft = t.value("soft", 0);
            const double p = total ? static_cast<double>(perfect) / total : 0.0;
            const double s = total ? static_cast<double>(soft) / total : 0.0;
            w.row({name, pct(s), pct(p), std::to_string(total)});
        };
        task_row("sv_object", summary["sv_object"]);
        task_row("vo_subject", summary["vo_subject"]);
        w.row({"joint_perfect_micro", "", pct(summary.value("joint_perfect", 0.0)), ""});
        w.row({"joint_loose_micro", "", pct(summary.value("joint_loose", 0.0)), ""});
        w.row({"joint_perfect_macro", "", pct(summary.value("macro_joint_perfect", 0.0)), ""});
        w.row({"joint_loose_macro", "", pct(summary.value("macro_joint_loose", 0.0)), ""});
        w.row({"unverified", "", "", std::to_string(summary.value("unverified", 0))});
        util::write_file(ctx.run_dir / "report" / "sps_table.tsv", w.text);
        manifest.record_artifact("report/sps_table", "report/sps_table.tsv");
        produced = true;
    }

    // Task accuracies, with LF/MF splits where the set carries popularity.
    if (std::filesystem::exists(kat_path)) {
        ReportWriter w(run_id);
        w.row({"set", "slice", "total", "perfect", "soft", "unverified", "accuracy_pct"});
        ReportWriter classes(run_id);
        classes.row({"set", "class", "hits", "support", "score_pct", "popularity"});
        bool any = false, any_classes = false;
        for (const auto& name : set_names()) {
            const auto records_path = kat_path / ("records_" + name + ".jsonl");
            if (!std::filesystem::exists(records_path)) continue;
            const auto records = kat::load_records(records_path);
            if (records.empty()) continue;
            any = true;
            const auto acc = kat::aggregate_accuracy(records);
            w.row({name, "all", std::to_string(acc.total), std::to_string(acc.perfect),
                   std::to_string(acc.soft), std::to_string(acc.unverified),
                   pct(acc.accuracy())});

            const auto set_path = ctx.run_dir / "sets" / (name + ".json");
            if (!std::filesystem::exists(set_path)) continue;
            const auto set = testset::load_set(set_path);

            if (!set.popularity.empty() &&
                set.kind == kat::KatKind::UriRecognition) {
                auto split = pop::split(set.popularity, pop::SplitCriterion::mean());
                std::set<std::string> lf;
                for (const auto& rec : split.lf) lf.insert(rec.item.normalized_iri);
                kat::Accuracy lf_acc, mf_acc;
                for (const auto& rec : records) {
                    auto& side =
                        lf.count(rec.instance.item.normalized_iri) ? lf_acc : mf_acc;
                    ++side.total;
                    if (rec.level == kat::MatchLevel::Perfect) ++side.perfect;
                }
                w.row({name, "lf", std::to_string(lf_acc.total),
                       std::to_string(lf_acc.perfect), "0", "0", pct(lf_acc.accuracy())});
                w.row({name, "mf", std::to_string(mf_acc.total),
                       std::to_string(mf_acc.perfect), "0", "0", pct(mf_acc.accuracy())});
            }

            if (set.kind == kat::KatKind::DirectSubsumption ||
                set.kind == kat::KatKind::InverseSubsumption ||
                name == "subsumption_direct" || name == "subsumption_inverse") {
                std::map<std::string, std::uint64_t> popularity;
                for (const auto& p : set.popularity)
                    popularity[p.item.normalized_iri] = p.count;
                for (const auto& rec : records) {
                    if (rec.instance.kind != kat::KatKind::DirectSubsumption &&
                        rec.instance.kind != kat::KatKind::InverseSubsumption)
                        continue;
                    any_classes = true;
                    const auto& iri = rec.instance.given_class.normalized_iri;
                    classes.row({name, iri, std::to_string(rec.hits),
                                 std::to_string(rec.gold_size), pct(rec.fraction),
                                 popularity.count(iri) ? std::to_string(popularity[iri])
                                                       : ""});
                }
            }
        }
        if (any) {
            util::write_file(ctx.run_dir / "report" / "kat_accuracy.tsv", w.text);
            manifest.record_artifact("report/kat_accuracy", "report/kat_accuracy.tsv");
            produced = true;
        }
        if (any_classes) {
            util::write_file(ctx.run_dir / "report" / "subsumption_classes.tsv",
                             classes.text);
            manifest.record_artifact("report/subsumption_classes",
                                     "report/subsumption_classes.tsv");
        }
    }

    // Agreement tables: PA ratios and agreement-vs-disagreement counts.
    if (std::filesystem::exists(agreement_path)) {
        ReportWriter pa(run_id);
        pa.row({"form", "regime", "positive_agreement", "correct_sparql", "pa_ratio",
                "pa_pct", "excluded"});
        ReportWriter counts(run_id);
        counts.row({"form", "regime", "agreement", "disagreement", "excluded", "pa_pct"});
        bool any = false;
        for (const char* form : {"lexical", "hierarchical", "topological"}) {
            for (const char* regime : {"original", "no_label", "no_uri"}) {
                const auto path = agreement_path / ("records_" + std::string(form) + "_" +
                                                    regime + ".jsonl");
                if (!std::filesystem::exists(path)) continue;
                const auto records = agreement::load_agreement_records(path);
                if (records.empty()) continue;
                any = true;
                const auto s = agreement::summarize(records);
                const auto [pa_n, pa_d] = s.pa_ratio();
                pa.row({form, regime, std::to_string(pa_n), std::to_string(pa_d),
                        std::to_string(pa_n) + "/" + std::to_string(pa_d),
                        pa_d ? pct(static_cast<double>(pa_n) / pa_d) : "",
                        std::to_string(s.excluded)});
                counts.row({form, regime, std::to_string(s.agreement_total()),
                            std::to_string(s.disagreement), std::to_string(s.excluded),
                            pa_d ? pct(static_cast<double>(pa_n) / pa_d) : ""});
            }
        }
        if (any) {
            util::write_file(ctx.run_dir / "report" / "pa_table.tsv", pa.text);
            util::write_file(ctx.run_dir / "report" / "agreement_counts.tsv", counts.text);
            manifest.record_artifact("report/pa_table", "report/pa_table.tsv");
            manifest.record_artifact("report/agreement_counts",
                                     "report/agreement_counts.tsv");
            produced = true;
        }
    }

    if (!produced)
        throw UsageError("nothing to report: no stage outputs under " +
                         ctx.run_dir.string());
    save_manifest(ctx.run_dir, manifest);
}

} // namespace protokg::pipeline
