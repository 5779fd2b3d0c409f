#pragma once

#include "protokg/kg/term.hpp"
#include "protokg/sparql/ast.hpp"

#include <string>
#include <vector>

namespace protokg::sparql {

enum class PairPosition { Subject, Object };

std::string to_string(PairPosition p);
PairPosition pair_position_from_string(const std::string& s);

// One element of a gold query's entity-property pair set: a bound item,
// the bound predicate connecting it, and which side of the pattern the
// item sat on.
struct EntityPropertyPair {
    kg::KgRef entity;
    kg::KgRef property;
    PairPosition position = PairPosition::Subject;

    std::string key() const {
        return entity.normalized_iri + "\x1f" + property.normalized_iri + "\x1f" +
               to_string(position);
    }
    friend bool operator==(const EntityPropertyPair& a, const EntityPropertyPair& b) {
        return a.key() == b.key();
    }
    friend bool operator<(const EntityPropertyPair& a, const EntityPropertyPair& b) {
        return a.key() < b.key();
    }
};

struct ExtractOptions {
    // Class-valued objects (instance-of targets) count as entities unless
    // switched off.
    bool include_class_objects = true;
};

// Extract the pair set from a gold query: for every pattern with a bound
// single-IRI predicate, a bound IRI subject or object contributes one pair.
// Variables, literals, and multi-hop property paths contribute nothing.
// Result is deduplicated and sorted.
std::vector<EntityPropertyPair> extract_pairs(const std::string& gold_query,
                                              const ExtractOptions& options = {});

std::vector<EntityPropertyPair> extract_pairs(const ParsedQuery& query,
                                              const ExtractOptions& options = {});

} // namespace protokg::sparql
