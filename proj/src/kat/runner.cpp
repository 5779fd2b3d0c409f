#include "protokg/kat/runner.hpp"

#include "protokg/errors.hpp"
#include "protokg/kat/prompts.hpp"

namespace protokg::kat {

std::vector<KatRecord> run_instances(const std::vector<KatInstance>& instances,
                                     model::ModelBackend& model,
                                     kg::GraphBackend* graph,
                                     const KatRunOptions& options) {
    std::vector<KatRecord> records;
    records.reserve(instances.size());
    for (const auto& instance : instances) {
        KatRecord rec;
        rec.instance = instance;
        rec.call = model.complete(render_prompt(instance), options.decoding);
        rec.prediction = parse_output(instance, rec.call.response_text);
        switch (instance.kind) {
            case KatKind::UriRecognition:
                score_uri_recognition(rec, options.score);
                break;
            case KatKind::DirectSubsumption:
            case KatKind::InverseSubsumption:
                score_subsumption(rec);
                break;
            case KatKind::SvObject:
            case KatKind::VoSubject:
                if (!graph)
                    throw UsageError("completion tasks need a graph backend for ASK checks");
                score_completion(rec, *graph);
                break;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

Accuracy aggregate_accuracy(const std::vector<KatRecord>& records) {
    Accuracy acc;
    for (const auto& rec : records) {
        if (rec.unverified) {
            ++acc.unverified;
            continue;
        }
        ++acc.total;
        if (rec.level == MatchLevel::Perfect) ++acc.perfect;
        if (rec.level == MatchLevel::Soft) ++acc.soft;
    }
    return acc;
}

} // namespace protokg::kat
