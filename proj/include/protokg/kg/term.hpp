#pragma once

#include <optional>
#include <string>
#include <variant>

namespace protokg::kg {

enum class RefKind { Entity, Property, Class, Unknown };
enum class GraphTag { Wikidata, Dbpedia, Local };

std::string to_string(RefKind k);
std::string to_string(GraphTag g);
RefKind ref_kind_from_string(const std::string& s);
GraphTag graph_tag_from_string(const std::string& s);

// A normalized knowledge-graph identifier with namespace provenance.
struct KgRef {
    std::string raw_text;       // as received, untouched
    std::string normalized_iri; // absolute, no angle brackets or whitespace
    RefKind kind = RefKind::Unknown;
    GraphTag graph = GraphTag::Local;

    friend bool operator==(const KgRef& a, const KgRef& b) {
        return a.normalized_iri == b.normalized_iri;
    }
    friend bool operator<(const KgRef& a, const KgRef& b) {
        return a.normalized_iri < b.normalized_iri;
    }
};

struct Literal {
    std::string lexical;
    std::string datatype; // IRI; empty for plain literals
    std::string language; // empty when absent
};

struct BlankNode {
    std::string label;
};

using Term = std::variant<KgRef, Literal, BlankNode>;

// An RDF triple. Subject and predicate are never literals.
struct Triple {
    KgRef subject;
    KgRef predicate;
    Term object;
};

// Canonical per-value key used everywhere set semantics or value equality
// is needed. Numeric literals compare by value (typed xsd numerics, and
// plain literals whose whole lexical form is a number); everything else
// compares lexically with language/datatype.
std::string comparison_key(const Term& t);
bool term_equal(const Term& a, const Term& b);

// N-Triples-style rendering of a term, for queries and cache records.
std::string to_ntriples(const Term& t);

} // namespace protokg::kg
