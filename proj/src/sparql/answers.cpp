#include "protokg/sparql/answers.hpp"

#include <algorithm>

namespace protokg::sparql {

std::string row_key(const AnswerRow& row) {
    std::string key;
    for (const auto& [var, term] : row.bindings) {
        key += var;
        key += '=';
        key += kg::comparison_key(term);
        key += '\x1e';
    }
    return key;
}

void canonicalize(AnswerSet& answers) {
    std::sort(answers.rows.begin(), answers.rows.end(),
              [](const AnswerRow& a, const AnswerRow& b) { return row_key(a) < row_key(b); });
    answers.rows.erase(std::unique(answers.rows.begin(), answers.rows.end(),
                                   [](const AnswerRow& a, const AnswerRow& b) {
                                       return row_key(a) == row_key(b);
                                   }),
                       answers.rows.end());
}

std::set<std::string> answer_value_keys(const AnswerSet& answers) {
    std::set<std::string> keys;
    for (const auto& row : answers.rows) {
        if (row.bindings.size() == 1) {
            keys.insert(kg::comparison_key(row.bindings.begin()->second));
        } else {
            std::vector<std::string> parts;
            parts.reserve(row.bindings.size());
            for (const auto& [var, term] : row.bindings)
                parts.push_back(kg::comparison_key(term));
            std::sort(parts.begin(), parts.end());
            std::string tuple;
            for (const auto& p : parts) {
                tuple += p;
                tuple += '\x1e';
            }
            keys.insert(tuple);
        }
    }
    return keys;
}

double answer_f1(const AnswerSet& gold, const AnswerSet& predicted) {
    if (gold.is_query_invalid || predicted.is_query_invalid) return 0.0;
    const auto g = answer_value_keys(gold);
    const auto p = answer_value_keys(predicted);
    if (g.empty() && p.empty()) return 1.0;
    if (g.empty() || p.empty()) return 0.0;
    std::size_t overlap = 0;
    for (const auto& k : p)
        if (g.count(k)) ++overlap;
    if (overlap == 0) return 0.0;
    const double precision = static_cast<double>(overlap) / static_cast<double>(p.size());
    const double recall = static_cast<double>(overlap) / static_cast<double>(g.size());
    return 2.0 * precision * recall / (precision + recall);
}

} // namespace protokg::sparql
