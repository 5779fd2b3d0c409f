#pragma once

#include "protokg/kg/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace protokg::kg {

// Well-known prefix table (wd:, wdt:, p:, dbo:, dbr:, dbp:, rdf:, rdfs:,
// plus xsd:/skos: needed by datatypes and alias triples).
const std::map<std::string, std::string>& known_prefixes();

// Normalize a raw identifier as emitted by models or benchmark files:
// strips angle brackets / backticks / stray quotes / trailing punctuation,
// expands known prefixes, and expands bare Wikidata ids (Q405; P31 when the
// caller hints a property position). Throws ParseError when no IRI-like
// token is recoverable. Idempotent on its own normalized_iri output.
KgRef normalize_ref(const std::string& raw, GraphTag graph,
                    RefKind hint = RefKind::Unknown);

// normalize_ref without the throw.
std::optional<KgRef> try_normalize_ref(const std::string& raw, GraphTag graph,
                                       RefKind hint = RefKind::Unknown);

// Classify an exact absolute IRI (no cleanup applied); for callers that
// already hold well-formed IRIs, e.g. the SPARQL parser and file loaders.
KgRef classify_iri(const std::string& iri, RefKind hint = RefKind::Unknown);

// Compact form for prompts and reports: "wd:Q405", "dbo:Person", else the
// full IRI.
std::string compact_iri(const std::string& iri);

// Terminal identifier, e.g. "Q405" for the Wikidata entity IRI.
std::string terminal_id(const std::string& iri);

} // namespace protokg::kg
