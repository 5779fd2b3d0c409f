#include "protokg/t2s/prompts.hpp"

#include "protokg/errors.hpp"
#include "protokg/kg/ref.hpp"

namespace protokg::t2s {

std::string to_string(PromptRegime r) {
    switch (r) {
        case PromptRegime::Original: return "original";
        case PromptRegime::NoLabel: return "no_label";
        case PromptRegime::NoUri: return "no_uri";
    }
    return "original";
}

PromptRegime regime_from_string(const std::string& s) {
    if (s == "original") return PromptRegime::Original;
    if (s == "no_label") return PromptRegime::NoLabel;
    if (s == "no_uri") return PromptRegime::NoUri;
    throw UsageError("unknown prompt regime: " + s);
}

namespace {

std::string render_ref_list(const std::vector<LabeledRef>& items, bool with_labels) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        out += kg::compact_iri(items[i].ref.normalized_iri);
        if (with_labels) {
            out += " (";
            out += items[i].label;
            out += ")";
        }
    }
    return out;
}

} // namespace

std::string render_t2s_prompt(PromptRegime regime, const std::string& question,
                              const std::vector<LabeledRef>& entities,
                              const std::vector<LabeledRef>& relations,
                              const std::string& graph_name, kg::GraphTag graph) {
    if (regime == PromptRegime::NoLabel && graph == kg::GraphTag::Dbpedia)
        throw UsageError("the no-label regime is not defined for DBpedia runs");
    if (question.empty()) throw UsageError("prompt needs a question");
    if (graph_name.empty()) throw UsageError("prompt needs a graph name");

    std::string prompt;
    prompt += "You are an expert in SPARQL and " + graph_name + ".\n\n";
    prompt += "Your task is to translate natural language questions into precise SPARQL "
              "queries that retrieve the desired information from " +
              graph_name + ".\n\n";
    prompt += "Guidelines:\n";
    prompt += "1. Understand the input: Analyze the question and use the provided Entities "
              "and Relations to construct the query.\n";
    prompt += "2. Construct a valid SPARQL query: Use proper syntax and ensure the query "
              "retrieves accurate results from " +
              graph_name + ".\n";
    prompt += "3. Format the output: Enclose the SPARQL query within <SPARQL></SPARQL> "
              "tags. Do not output anything else.\n\n";
    prompt += "Question: " + question + "\n";
    if (regime != PromptRegime::NoUri) {
        const bool with_labels = regime == PromptRegime::Original;
        prompt += "\nEntities: " + render_ref_list(entities, with_labels) + "\n";
        prompt += "\nRelations: " + render_ref_list(relations, with_labels) + "\n";
    }
    prompt += "\nQuery:";
    return prompt;
}

} // namespace protokg::t2s
