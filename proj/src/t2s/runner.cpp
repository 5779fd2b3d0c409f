#include "protokg/t2s/runner.hpp"

#include "protokg/errors.hpp"
#include "protokg/kg/ref.hpp"
#include "protokg/sparql/parser.hpp"
#include "protokg/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace protokg::t2s {

using nlohmann::json;

std::optional<std::string> extract_predicted_query(const std::string& response_text) {
    // tag-enclosed block first
    const std::string lowered = util::lower_ascii(response_text);
    const std::string open = "<sparql>";
    const std::string close = "</sparql>";
    auto begin = lowered.find(open);
    if (begin != std::string::npos) {
        auto end = lowered.find(close, begin + open.size());
        if (end != std::string::npos) {
            std::string inner =
                response_text.substr(begin + open.size(), end - begin - open.size());
            inner = util::trim(inner);
            if (!inner.empty()) return inner;
        }
    }

    // fallback: longest substring starting at a query-form keyword
    static const char* keywords[] = {"PREFIX", "SELECT", "ASK", "CONSTRUCT", "DESCRIBE",
                                     "BASE"};
    std::size_t best = std::string::npos;
    for (const char* kw : keywords) {
        const std::string needle = util::lower_ascii(kw);
        std::size_t at = 0;
        while ((at = lowered.find(needle, at)) != std::string::npos) {
            const bool left_ok =
                at == 0 || !std::isalnum(static_cast<unsigned char>(lowered[at - 1]));
            const std::size_t after = at + needle.size();
            const bool right_ok = after >= lowered.size() ||
                                  !std::isalnum(static_cast<unsigned char>(lowered[after]));
            if (left_ok && right_ok) {
                best = std::min(best, at);
                break;
            }
            ++at;
        }
    }
    if (best == std::string::npos) return std::nullopt;
    std::string tail = util::trim(response_text.substr(best));
    while (!tail.empty() && (tail.back() == '`' || tail.back() == '\'')) tail.pop_back();
    return tail.empty() ? std::nullopt : std::optional<std::string>(util::trim(tail));
}

PromptContext gold_prompt_context(const std::string& gold_query, kg::GraphBackend& backend) {
    PromptContext ctx;
    std::set<std::string> seen_entities, seen_relations;
    auto label_of = [&](const kg::KgRef& ref) -> std::string {
        auto answers = backend.select(
            "SELECT ?label WHERE { <" + ref.normalized_iri +
            "> <http://www.w3.org/2000/01/rdf-schema#label> ?label }");
        for (const auto& row : answers.rows) {
            const auto* lit = std::get_if<kg::Literal>(&row.bindings.begin()->second);
            if (!lit) continue;
            if (lit->language.empty() || util::starts_with_ci(lit->language, "en"))
                return lit->lexical;
        }
        return "";
    };

    for (const auto& tp : sparql::all_patterns(sparql::parse_query(gold_query))) {
        if (const auto* p = std::get_if<kg::KgRef>(&tp.predicate)) {
            if (seen_relations.insert(p->normalized_iri).second)
                ctx.relations.push_back({*p, label_of(*p)});
        }
        for (const auto* side : {&tp.subject, &tp.object}) {
            if (const auto* e = std::get_if<kg::KgRef>(side)) {
                if (seen_entities.insert(e->normalized_iri).second)
                    ctx.entities.push_back({*e, label_of(*e)});
            }
        }
    }
    return ctx;
}

SparqlEvalRecord evaluate_question(const qald::Question& question, PromptRegime regime,
                                   const std::string& predicted_raw,
                                   kg::GraphBackend& backend, const T2sOptions& options) {
    SparqlEvalRecord rec;
    rec.question_id = question.id;
    rec.question_text = question.text;
    rec.regime = regime;
    rec.gold_query = question.gold_sparql;
    rec.predicted_query_raw = predicted_raw;
    rec.predicted_query_extracted = extract_predicted_query(predicted_raw);

    if (options.trust_stored_answers && question.gold_answers) {
        rec.gold_answers = *question.gold_answers;
    } else {
        try {
            rec.gold_answers = backend.select(question.gold_sparql);
        } catch (const QueryRejectedError&) {
            rec.gold_failed = true;
        } catch (const TransportError&) {
            rec.gold_failed = true;
        }
    }
    if (rec.gold_failed) return rec;

    if (!rec.predicted_query_extracted) {
        rec.predicted_answers.is_query_invalid = true;
    } else {
        try {
            rec.predicted_answers = backend.select(*rec.predicted_query_extracted);
        } catch (const QueryRejectedError&) {
            rec.predicted_answers = {};
            rec.predicted_answers.is_query_invalid = true;
        }
    }
    rec.f1 = sparql::answer_f1(rec.gold_answers, rec.predicted_answers);
    rec.correct = rec.f1 >= options.correctness_threshold;
    return rec;
}

std::vector<SparqlEvalRecord> run_benchmark(const qald::Benchmark& benchmark,
                                            PromptRegime regime,
                                            model::ModelBackend& model,
                                            kg::GraphBackend& backend,
                                            const T2sOptions& options) {
    std::vector<SparqlEvalRecord> records;
    records.reserve(benchmark.questions.size());
    for (const auto& question : benchmark.questions) {
        PromptContext ctx;
        if (regime != PromptRegime::NoUri) {
            try {
                ctx = gold_prompt_context(question.gold_sparql, backend);
            } catch (const ParseError&) {
                // unparsable gold: evaluate_question flags it below
            }
        }
        const std::string prompt =
            render_t2s_prompt(regime, question.text, ctx.entities, ctx.relations,
                              options.graph_name, options.graph_tag);
        auto call = model.complete(prompt, options.decoding);
        records.push_back(
            evaluate_question(question, regime, call.response_text, backend, options));
    }
    return records;
}

double mean_f1(const std::vector<SparqlEvalRecord>& records) {
    double sum = 0.0;
    int counted = 0;
    for (const auto& rec : records) {
        if (rec.gold_failed) continue;
        sum += rec.f1;
        ++counted;
    }
    return counted ? sum / counted : 0.0;
}

void save_records(const std::filesystem::path& path,
                  const std::vector<SparqlEvalRecord>& records) {
    std::string text;
    for (const auto& rec : records) {
        json j;
        j["question_id"] = rec.question_id;
        j["question"] = rec.question_text;
        j["regime"] = to_string(rec.regime);
        j["gold_query"] = rec.gold_query;
        j["predicted_raw"] = rec.predicted_query_raw;
        if (rec.predicted_query_extracted) j["predicted_query"] = *rec.predicted_query_extracted;
        j["gold_answers"] = json::parse(kg::render_sparql_json(rec.gold_answers));
        j["predicted_answers"] = json::parse(kg::render_sparql_json(rec.predicted_answers));
        j["predicted_invalid"] = rec.predicted_answers.is_query_invalid;
        j["f1"] = rec.f1;
        j["correct"] = rec.correct;
        j["gold_failed"] = rec.gold_failed;
        text += j.dump();
        text += '\n';
    }
    util::write_file(path, text);
}

std::vector<SparqlEvalRecord> load_eval_records(const std::filesystem::path& path) {
    std::vector<SparqlEvalRecord> records;
    for (const auto& line : util::read_lines(path)) {
        if (util::trim(line).empty()) continue;
        json j = json::parse(line);
        SparqlEvalRecord rec;
        rec.question_id = j.value("question_id", "");
        rec.question_text = j.value("question", "");
        rec.regime = regime_from_string(j.value("regime", "original"));
        rec.gold_query = j.value("gold_query", "");
        rec.predicted_query_raw = j.value("predicted_raw", "");
        if (j.contains("predicted_query"))
            rec.predicted_query_extracted = j["predicted_query"].get<std::string>();
        rec.gold_answers = kg::parse_sparql_json(j.at("gold_answers").dump());
        rec.predicted_answers = kg::parse_sparql_json(j.at("predicted_answers").dump());
        rec.predicted_answers.is_query_invalid = j.value("predicted_invalid", false);
        rec.f1 = j.value("f1", 0.0);
        rec.correct = j.value("correct", false);
        rec.gold_failed = j.value("gold_failed", false);
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace protokg::t2s
