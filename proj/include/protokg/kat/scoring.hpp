#pragma once

#include "protokg/kat/kat.hpp"
#include "protokg/kg/backend.hpp"

namespace protokg::kat {

struct ScoreOptions {
    bool alias_matching = true; // gold aliases count as perfect
    bool case_fold = true;      // label comparison is case-insensitive
};

// Best-effort extraction of a prediction from raw model output; never
// throws — an unusable response comes back with parse_failed set.
ParsedPrediction parse_output(const KatInstance& instance, const std::string& response);

// First normalizable IRI-like token in free text.
std::optional<kg::KgRef> find_first_ref(const std::string& text, kg::GraphTag graph,
                                        kg::RefKind hint);

MatchLevel score_uri_recognition(KatRecord& record, const ScoreOptions& options = {});

struct SubsumptionResult {
    MatchLevel level = MatchLevel::Incorrect;
    double fraction = 0.0; // direct: recall over gold; inverse: 0 or 1
    int hits = 0;
    int gold_size = 0;
};

// Pure comparison against preloaded gold class lists.
SubsumptionResult score_subsumption(KatRecord& record);

// ASK-verified triple completion: perfect when the gold pattern holds
// with the prediction filled in; soft when the prediction connects to the
// given entity through some other property in either orientation. The
// same-position wildcard excludes the gold property itself. Every probe
// issued lands in verification_detail; transport failures mark the record
// unverified instead of throwing.
MatchLevel score_completion(KatRecord& record, kg::GraphBackend& backend);

} // namespace protokg::kat
