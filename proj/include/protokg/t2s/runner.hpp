#pragma once

#include "protokg/kg/backend.hpp"
#include "protokg/model/backend.hpp"
#include "protokg/qald.hpp"
#include "protokg/sparql/answers.hpp"
#include "protokg/t2s/prompts.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace protokg::t2s {

// First <SPARQL>…</SPARQL> block; otherwise the longest substring
// starting at a query-form keyword; absent when neither exists.
std::optional<std::string> extract_predicted_query(const std::string& response_text);

struct SparqlEvalRecord {
    std::string question_id;
    std::string question_text;
    PromptRegime regime = PromptRegime::Original;
    std::string gold_query;
    std::string predicted_query_raw;
    std::optional<std::string> predicted_query_extracted;
    sparql::AnswerSet gold_answers;
    sparql::AnswerSet predicted_answers;
    double f1 = 0.0;
    bool correct = false;
    bool gold_failed = false; // gold query would not execute; not scored
};

struct T2sOptions {
    double correctness_threshold = 1.0; // correct ⇔ f1 >= threshold
    bool trust_stored_answers = false;  // use the benchmark's answer lists
    model::DecodingConfig decoding;
    std::string graph_name; // display name for prompts
    kg::GraphTag graph_tag = kg::GraphTag::Local;
};

// Score one question given the raw model output.
SparqlEvalRecord evaluate_question(const qald::Question& question,
                                   PromptRegime regime,
                                   const std::string& predicted_raw,
                                   kg::GraphBackend& backend,
                                   const T2sOptions& options);

// Entities (bound subjects/objects) and relations (bound predicates) of
// the gold query in first-appearance order, with labels resolved through
// the backend (rdfs:label).
struct PromptContext {
    std::vector<LabeledRef> entities;
    std::vector<LabeledRef> relations;
};
PromptContext gold_prompt_context(const std::string& gold_query, kg::GraphBackend& backend);

// Full benchmark run under one regime.
std::vector<SparqlEvalRecord> run_benchmark(const qald::Benchmark& benchmark,
                                            PromptRegime regime,
                                            model::ModelBackend& model,
                                            kg::GraphBackend& backend,
                                            const T2sOptions& options);

// Mean F1 over scored records (gold failures excluded), no reweighting.
double mean_f1(const std::vector<SparqlEvalRecord>& records);

void save_records(const std::filesystem::path& path,
                  const std::vector<SparqlEvalRecord>& records);
std::vector<SparqlEvalRecord> load_eval_records(const std::filesystem::path& path);

} // namespace protokg::t2s
