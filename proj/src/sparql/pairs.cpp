#include "protokg/sparql/pairs.hpp"

#include "protokg/errors.hpp"
#include "protokg/sparql/parser.hpp"

#include <algorithm>

namespace protokg::sparql {

std::string to_string(PairPosition p) {
    return p == PairPosition::Subject ? "subject" : "object";
}

PairPosition pair_position_from_string(const std::string& s) {
    if (s == "subject") return PairPosition::Subject;
    if (s == "object") return PairPosition::Object;
    throw UsageError("unknown pair position: " + s);
}

std::vector<EntityPropertyPair> extract_pairs(const ParsedQuery& query,
                                              const ExtractOptions& options) {
    std::vector<EntityPropertyPair> pairs;
    for (const auto& tp : all_patterns(query)) {
        const auto* predicate = std::get_if<kg::KgRef>(&tp.predicate);
        if (!predicate) continue; // variable or multi-hop path
        if (const auto* subject = std::get_if<kg::KgRef>(&tp.subject)) {
            pairs.push_back({*subject, *predicate, PairPosition::Subject});
        }
        if (const auto* object = std::get_if<kg::KgRef>(&tp.object)) {
            if (options.include_class_objects || object->kind != kg::RefKind::Class)
                pairs.push_back({*object, *predicate, PairPosition::Object});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

std::vector<EntityPropertyPair> extract_pairs(const std::string& gold_query,
                                              const ExtractOptions& options) {
    return extract_pairs(parse_query(gold_query), options);
}

} // namespace protokg::sparql
