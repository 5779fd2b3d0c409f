#pragma once

#include "protokg/sparql/ast.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace protokg::sparql {

// Parse a SELECT or ASK query into triple patterns plus form metadata.
// Covers the grammar subset QALD-style gold queries use: prologue,
// DISTINCT/REDUCED, basic graph patterns with ';'/',' lists, OPTIONAL,
// UNION, MINUS, FILTER (expressions skipped, EXISTS groups descended),
// BIND, VALUES, GRAPH/SERVICE, subselects, property paths (single-IRI
// paths become bound predicates, longer ones carry a path marker), and
// solution modifiers. Throws ParseError with line/column on bad input.
ParsedQuery parse_query(std::string_view query_text);

// Token-level re-rendering with caller-chosen inter-token text; used by
// reformatting-invariance tests. `spacer(i)` supplies the separator put
// before token i (must be whitespace and/or '#' comments).
std::string reformat_query(std::string_view query_text,
                           const std::function<std::string(std::size_t)>& spacer);

} // namespace protokg::sparql
