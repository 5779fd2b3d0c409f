#pragma once

#include "protokg/kg/local_store.hpp"
#include "protokg/sparql/answers.hpp"
#include "protokg/sparql/ast.hpp"

#include <string>

namespace protokg::sparql {

// Evaluate a parsed query against the local store: basic graph patterns
// with joins, UNION, OPTIONAL, MINUS, VALUES, DISTINCT (always applied —
// select answers use set semantics), LIMIT/OFFSET, and a COUNT-only
// aggregate projection. Features beyond that (FILTER expressions, BIND,
// property paths, SERVICE) raise QueryRejectedError, mirroring an
// endpoint's query rejection. ASK queries yield one row binding
// "boolean".
AnswerSet evaluate_local(const ParsedQuery& query, const kg::LocalStore& store);

AnswerSet evaluate_local(const std::string& query_text, const kg::LocalStore& store);

} // namespace protokg::sparql
