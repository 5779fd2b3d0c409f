#include "protokg/sparql/ast.hpp"

namespace protokg::sparql {

bool is_variable(const PatternTerm& t) {
    return std::holds_alternative<Variable>(t);
}

bool is_bound_ref(const PatternTerm& t) {
    return std::holds_alternative<kg::KgRef>(t);
}

namespace {

void collect(const PatternNode& n, std::vector<TriplePattern>& out) {
    for (const auto& tp : n.triples) out.push_back(tp);
    for (const auto& child : n.children) collect(child, out);
    if (n.sub) {
        auto inner = all_patterns(*n.sub);
        out.insert(out.end(), inner.begin(), inner.end());
    }
}

} // namespace

std::vector<TriplePattern> all_patterns(const PatternNode& n) {
    std::vector<TriplePattern> out;
    collect(n, out);
    return out;
}

std::vector<TriplePattern> all_patterns(const ParsedQuery& q) {
    return all_patterns(q.where);
}

} // namespace protokg::sparql
