#pragma once

#include "protokg/errors.hpp"
#include "protokg/kg/backend.hpp"
#include "protokg/kg/term.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace protokg::pop {

// Number of graph triples referencing an item, with retrieval provenance.
struct PopularityRecord {
    kg::KgRef item;
    std::uint64_t count = 0;
    std::string retrieved_at;
};

// Raised when an endpoint served only some of the per-position counts.
class PartialPopularityError : public Error {
public:
    PartialPopularityError(const std::string& what,
                           std::vector<std::pair<std::string, std::uint64_t>> succeeded)
        : Error(what), succeeded(std::move(succeeded)) {}
    std::vector<std::pair<std::string, std::uint64_t>> succeeded;
};

struct PopularityOptions {
    // Predicate used for class popularity (instance counting); defaults
    // per graph provenance: rdf:type, or the direct instance-of property
    // on Wikidata.
    std::string type_predicate_iri;
    // Pinned timestamp for reproducible builds; wall clock when empty.
    std::string timestamp;
};

// Entities count triples in subject or object position, properties in
// predicate position, classes their instances under the type predicate.
PopularityRecord popularity(kg::GraphBackend& backend, const kg::KgRef& item,
                            const PopularityOptions& options = {});

enum class SplitKind { Mean, Median, Percentile };

struct SplitCriterion {
    SplitKind kind = SplitKind::Mean;
    double k = 50.0; // percentile rank

    static SplitCriterion mean() { return {SplitKind::Mean, 0}; }
    static SplitCriterion median() { return {SplitKind::Median, 0}; }
    static SplitCriterion percentile(double k) { return {SplitKind::Percentile, k}; }
};

struct Split {
    std::vector<PopularityRecord> lf; // less frequent
    std::vector<PopularityRecord> mf; // more frequent
    double threshold = 0.0;
};

// Mean/median put strictly-above-threshold items in MF (ties stay LF);
// percentile(k) keeps items at or above the k-th percentile (nearest
// rank) in MF. Input order is preserved within each side.
Split split(const std::vector<PopularityRecord>& records, const SplitCriterion& criterion);

double threshold_value(const std::vector<PopularityRecord>& records,
                       const SplitCriterion& criterion);

// Pinned popularity tables: "iri<TAB>count<TAB>retrieved_at" lines.
void save_table(const std::filesystem::path& path,
                const std::vector<PopularityRecord>& records);
std::vector<PopularityRecord> load_table(const std::filesystem::path& path);

} // namespace protokg::pop
