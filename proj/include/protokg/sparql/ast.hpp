#pragma once

#include "protokg/kg/term.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace protokg::sparql {

struct Variable {
    std::string name; // without the '?'/'$' sigil
    friend bool operator==(const Variable& a, const Variable& b) { return a.name == b.name; }
    friend bool operator<(const Variable& a, const Variable& b) { return a.name < b.name; }
};

// Property path longer than a single IRI; kept as raw text.
struct PropertyPath {
    std::string text;
};

using PatternTerm = std::variant<Variable, kg::KgRef, kg::Literal, PropertyPath>;

bool is_variable(const PatternTerm& t);
bool is_bound_ref(const PatternTerm& t);

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;
};

struct ParsedQuery;

// One node of a group graph pattern. A tagged struct rather than a
// recursive variant; `children` holds branch groups for union and the
// single inner group for group/optional/minus/graph/service/exists.
struct PatternNode {
    enum class Kind {
        Basic,    // triples
        Group,    // children[0]
        Union,    // children = branches
        Optional, // children[0]
        Minus,    // children[0]
        Filter,   // text; children[0] present for (NOT) EXISTS
        Bind,     // text + vars[0]
        Values,   // vars + rows
        Graph,    // children[0]; text = graph term
        Service,  // children[0]; text = service term
        SubSelect // sub
    };

    Kind kind = Kind::Group;
    std::vector<TriplePattern> triples;
    std::vector<PatternNode> children;
    std::string text;
    bool negated = false; // FILTER NOT EXISTS
    std::vector<Variable> vars;
    std::vector<std::vector<std::optional<PatternTerm>>> value_rows;
    std::shared_ptr<ParsedQuery> sub;
};

enum class QueryForm { Select, Ask };

struct AggregateProjection {
    Variable as;
    bool count_star = false;
    bool distinct = false;
    std::optional<Variable> count_var; // COUNT(?v)
    std::string raw;                   // full expression text
};

struct Projection {
    bool star = false;
    std::vector<Variable> vars;
    std::vector<AggregateProjection> aggregates;
};

struct ParsedQuery {
    QueryForm form = QueryForm::Select;
    bool distinct = false;
    Projection projection;
    PatternNode where; // Kind::Group
    std::optional<long> limit;
    std::optional<long> offset;
    std::map<std::string, std::string> prefixes;
    bool has_order_by = false;
    bool has_group_by = false; // GROUP BY / HAVING present
};

// Every triple pattern of every basic graph pattern anywhere in the query,
// including OPTIONAL/UNION branches, FILTER EXISTS groups, and subselects.
std::vector<TriplePattern> all_patterns(const ParsedQuery& q);
std::vector<TriplePattern> all_patterns(const PatternNode& n);

} // namespace protokg::sparql
