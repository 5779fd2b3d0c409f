#pragma once

#include "protokg/kg/term.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace protokg::sparql {

// One result row: variable name -> bound term. Ordered map keeps
// serialization deterministic.
struct AnswerRow {
    std::map<std::string, kg::Term> bindings;
};

// Deterministic set semantics: rows deduplicated and sorted by key.
struct AnswerSet {
    std::vector<AnswerRow> rows;
    bool is_query_invalid = false;
};

// Variable-aware row key (used for dedup within one query's results).
std::string row_key(const AnswerRow& row);

// Sort rows by key and drop duplicates.
void canonicalize(AnswerSet& answers);

// Position-blind value keys: a one-variable projection flattens to its
// values; multi-variable rows become value-sorted tuples (gold and
// predicted queries never share variable names).
std::set<std::string> answer_value_keys(const AnswerSet& answers);

// Answer-overlap F1. Empty vs empty scores 1; an invalid query scores 0
// regardless of the other side. Total over all inputs.
double answer_f1(const AnswerSet& gold, const AnswerSet& predicted);

} // namespace protokg::sparql
