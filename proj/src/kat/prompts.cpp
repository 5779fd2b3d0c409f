#include "protokg/kat/prompts.hpp"

#include "protokg/errors.hpp"
#include "protokg/kg/ref.hpp"

#include <initializer_list>
#include <utility>

namespace protokg::kat {

namespace {

// clang-format off
constexpr const char* kUriIdToLabel =
    "Return the label of the entity with the following Wikidata ID: {ID}.\n"
    "Important: Answer only a string according to your knowledge of Wikidata.\n"
    "Important: The string must satisfy the triple: <http://www.wikidata.org/*/{ID}, rdfs:label, [YOUR ANSWER STRING]>.\n"
    "Important: Do not answer other stuff apart from the English label.";

constexpr const char* kUriLabelToId =
    "Return the Wikidata ID of the entity with the following label: {LABEL}.\n"
    "Important: Answer only an identifier according to your knowledge of Wikidata.\n"
    "Important: The identifier must satisfy the triple: <http://www.wikidata.org/*/[YOUR ANSWER ID], rdfs:label, {LABEL}>.\n"
    "Important: Do not answer other stuff apart from the Wikidata ID.";

constexpr const char* kDirectSubsumption =
    "Using your knowledge of DBpedia ontology, return only a list of URIs that are direct subclasses of {CLASS}.\n"
    "Important: URIs must be connected to {CLASS} by the property rdfs:subClassOf.\n"
    "Important: URIs must satisfy the triple: <[URI]>,rdfs:subClassOf,{CLASS}>.";

constexpr const char* kInverseSubsumption =
    "Using your knowledge of DBpedia ontology, provide the URI of the superclass for the resource {SUBCLASS}.\n"
    "Important: Your response must contain only the URI.\n"
    "Important: The URI must satisfy the triple: <{SUBCLASS}, rdfs:subClassOf, [YOUR ANSWER URI]>.";

constexpr const char* kSvObject =
    "Considering your knowledge of {KG} triples, can you fill the masked [MASKED_OBJECT] with an existing URI inside {KG}?\n"
    "TRIPLE: {'{S}','{V}',[MASKED_OBJECT]}\n"
    "Important: Answer only the URI! Do not invent URIs.";

constexpr const char* kVoSubject =
    "Considering your knowledge of {KG} triples, can you fill the masked [MASKED_SUBJECT] with an existing URI inside {KG}?\n"
    "TRIPLE: {[MASKED_SUBJECT],'{V}','{O}'}\n"
    "Important: Answer only the URI! Do not invent URIs.";
// clang-format on

std::string substitute(std::string text,
                       std::initializer_list<std::pair<const char*, std::string>> values) {
    for (const auto& [placeholder, value] : values) {
        if (value.empty())
            throw UsageError(std::string("prompt placeholder has no value: ") + placeholder);
        const std::string token = placeholder;
        std::size_t pos = 0;
        while ((pos = text.find(token, pos)) != std::string::npos) {
            text.replace(pos, token.size(), value);
            pos += value.size();
        }
    }
    return text;
}

} // namespace

std::string kg_display_name(kg::GraphTag tag) {
    switch (tag) {
        case kg::GraphTag::Wikidata: return "Wikidata";
        case kg::GraphTag::Dbpedia: return "DBpedia";
        case kg::GraphTag::Local: return "DBpedia";
    }
    return "DBpedia";
}

std::string render_prompt(const KatInstance& instance) {
    switch (instance.kind) {
        case KatKind::UriRecognition: {
            if (instance.direction == UriDirection::IdToLabel) {
                return substitute(kUriIdToLabel,
                                  {{"{ID}", kg::terminal_id(instance.item.normalized_iri)}});
            }
            return substitute(kUriLabelToId, {{"{LABEL}", instance.gold_label}});
        }
        case KatKind::DirectSubsumption:
            return substitute(kDirectSubsumption,
                              {{"{CLASS}", instance.given_class.normalized_iri}});
        case KatKind::InverseSubsumption:
            return substitute(kInverseSubsumption,
                              {{"{SUBCLASS}", instance.given_class.normalized_iri}});
        case KatKind::SvObject: {
            auto graph = instance.pair.entity.graph != kg::GraphTag::Local
                             ? instance.pair.entity.graph
                             : instance.pair.property.graph;
            return substitute(kSvObject,
                              {{"{KG}", kg_display_name(graph)},
                               {"{S}", instance.pair.entity.normalized_iri},
                               {"{V}", instance.pair.property.normalized_iri}});
        }
        case KatKind::VoSubject: {
            auto graph = instance.pair.entity.graph != kg::GraphTag::Local
                             ? instance.pair.entity.graph
                             : instance.pair.property.graph;
            return substitute(kVoSubject,
                              {{"{KG}", kg_display_name(graph)},
                               {"{V}", instance.pair.property.normalized_iri},
                               {"{O}", instance.pair.entity.normalized_iri}});
        }
    }
    throw UsageError("unknown task kind");
}

} // namespace protokg::kat
