#pragma once

#include "protokg/kat/kat.hpp"
#include "protokg/kat/scoring.hpp"
#include "protokg/kg/backend.hpp"
#include "protokg/model/backend.hpp"

#include <vector>

namespace protokg::kat {

struct KatRunOptions {
    ScoreOptions score;
    model::DecodingConfig decoding;
};

// Render, execute, parse, and score a batch of instances. Completion
// kinds need the graph backend for ASK verification (UsageError when
// missing). Parse failures never raise; every instance yields exactly one
// record, in input order.
std::vector<KatRecord> run_instances(const std::vector<KatInstance>& instances,
                                     model::ModelBackend& model,
                                     kg::GraphBackend* graph,
                                     const KatRunOptions& options = {});

struct Accuracy {
    int total = 0;
    int perfect = 0;
    int soft = 0;
    int unverified = 0;
    double accuracy() const {
        return total > 0 ? static_cast<double>(perfect) / total : 0.0;
    }
};

// (count perfect) / (count total), recomputable from raw records; records
// marked unverified stay out of the denominator.
Accuracy aggregate_accuracy(const std::vector<KatRecord>& records);

} // namespace protokg::kat
