#pragma once

#include "protokg/kat/kat.hpp"
#include "protokg/kg/backend.hpp"
#include "protokg/popularity.hpp"
#include "protokg/qald.hpp"
#include "protokg/sparql/pairs.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace protokg::testset {

struct PairTestSet {
    kat::KatKind kind = kat::KatKind::UriRecognition;
    std::vector<kat::KatInstance> items;
    std::string provenance;
    std::string retrieved_at;
    std::uint64_t seed = 0;
    std::vector<pop::PopularityRecord> popularity; // per given item, when known
    std::vector<std::string> build_log;            // dropped/skipped inputs
};

void save_set(const std::filesystem::path& path, const PairTestSet& set);
PairTestSet load_set(const std::filesystem::path& path);

// Item tables: "id<TAB>label<TAB>count[<TAB>alias;alias...]" rows,
// '#' comments allowed. Mapping dumps: one mapping per line,
// "freebase_id<TAB>wikidata_id<TAB>label".
struct UriSetSources {
    std::filesystem::path entities_path;
    std::filesystem::path properties_path;
    std::filesystem::path mapping_path;
    int top_entities = 200;
    int top_properties = 100;
    int random_sample = 1000;
    std::uint64_t seed = 0;
    std::string timestamp; // pinned provenance timestamp
    kat::UriDirection direction = kat::UriDirection::IdToLabel;
};

struct UriRecognitionSets {
    PairTestSet top_entities;
    PairTestSet top_properties;
    PairTestSet random_pairs;
};

// The three (label, ID) pair sets: most common entities, most common
// properties, and a seeded uniform sample from the mapping dump. Rows
// without a label are dropped and logged.
UriRecognitionSets build_uri_recognition_sets(const UriSetSources& sources);

struct SubsumptionBuildOptions {
    std::string type_predicate_iri; // for class popularity
    std::string timestamp;
};

struct SubsumptionSets {
    PairTestSet direct;
    PairTestSet inverse;
};

// Root classes = classes that appear as a superclass but have none
// themselves. Direct: (root -> full direct-subclass list). Inverse: every
// subclass of a root paired with its unique superclass; subclasses with
// several direct superclasses are excluded and logged. Class popularity
// (instance counts) is attached.
SubsumptionSets build_subsumption_sets(kg::GraphBackend& backend,
                                       const SubsumptionBuildOptions& options = {});

struct CompletionBuildOptions {
    bool verify_against_graph = true; // drop pairs whose gold pattern has no match
    sparql::ExtractOptions extract;
    std::string timestamp;
};

// One sv_object instance per subject-position pair and one vo_subject
// instance per object-position pair of every gold query, tagged with the
// question id. Unparsable gold queries are skipped and logged.
PairTestSet build_completion_set(const qald::Benchmark& benchmark,
                                 kg::GraphBackend* backend,
                                 const CompletionBuildOptions& options = {});

struct LexicalProbeOptions {
    kat::UriDirection direction = kat::UriDirection::IdToLabel;
    sparql::ExtractOptions extract;
    std::string timestamp;
};

// URI-recognition probes for every distinct item (entity or property) of
// every question's pair set; labels come from rdfs:label, aliases from
// skos:altLabel. Items without labels are dropped and logged.
PairTestSet build_lexical_probe_set(const qald::Benchmark& benchmark,
                                    kg::GraphBackend& backend,
                                    const LexicalProbeOptions& options = {});

// Inverse-subsumption probes for fully bound subclass patterns in gold
// queries (subject and object classes both known).
PairTestSet build_hierarchical_probe_set(const qald::Benchmark& benchmark,
                                         const std::string& timestamp = {});

// Popularity of every distinct pair item across the benchmark.
std::vector<pop::PopularityRecord> build_item_popularity(
    const qald::Benchmark& benchmark, kg::GraphBackend& backend,
    const pop::PopularityOptions& options = {},
    const sparql::ExtractOptions& extract = {});

} // namespace protokg::testset
