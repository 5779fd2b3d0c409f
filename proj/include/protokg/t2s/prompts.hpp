#pragma once

#include "protokg/kg/term.hpp"

#include <string>
#include <vector>

namespace protokg::t2s {

// Input conditions for text-to-SPARQL: full URI+label context, URIs
// without labels, or the bare question.
enum class PromptRegime { Original, NoLabel, NoUri };

std::string to_string(PromptRegime r);
PromptRegime regime_from_string(const std::string& s);

struct LabeledRef {
    kg::KgRef ref;
    std::string label;
};

// Byte-stable rendering of the zero-shot translation prompt for a regime.
// The no-label regime only makes sense where identifiers are opaque;
// DBpedia (labels embedded in URIs) rejects it with UsageError.
std::string render_t2s_prompt(PromptRegime regime, const std::string& question,
                              const std::vector<LabeledRef>& entities,
                              const std::vector<LabeledRef>& relations,
                              const std::string& graph_name, kg::GraphTag graph);

} // namespace protokg::t2s
