#include "protokg/popularity.hpp"

#include "protokg/kg/ref.hpp"
#include "protokg/util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace protokg::pop {

namespace {

std::uint64_t count_query(kg::GraphBackend& backend, const std::string& where) {
    const std::string query = "SELECT (COUNT(*) AS ?c) WHERE { " + where + " }";
    auto answers = backend.select(query);
    if (answers.rows.empty()) return 0;
    const auto& term = answers.rows.front().bindings.begin()->second;
    const auto* lit = std::get_if<kg::Literal>(&term);
    if (!lit) return 0;
    auto v = util::parse_number(lit->lexical);
    return v ? static_cast<std::uint64_t>(*v) : 0;
}

std::string default_type_predicate(const kg::KgRef& item) {
    if (item.graph == kg::GraphTag::Wikidata)
        return "http://www.wikidata.org/prop/direct/P31";
    return "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
}

} // namespace

PopularityRecord popularity(kg::GraphBackend& backend, const kg::KgRef& item,
                            const PopularityOptions& options) {
    PopularityRecord rec;
    rec.item = item;
    rec.retrieved_at = options.timestamp.empty() ? util::now_iso8601() : options.timestamp;
    const std::string iri = "<" + item.normalized_iri + ">";

    switch (item.kind) {
        case kg::RefKind::Property:
            rec.count = count_query(backend, "?s " + iri + " ?o .");
            return rec;
        case kg::RefKind::Class: {
            const std::string type_pred = options.type_predicate_iri.empty()
                                              ? default_type_predicate(item)
                                              : options.type_predicate_iri;
            rec.count = count_query(backend, "?s <" + type_pred + "> " + iri + " .");
            return rec;
        }
        default: {
            // Entities: referencing triples in either position. Remote
            // endpoints answer two per-position aggregates (so a partial
            // failure can report which side succeeded); a self-referential
            // triple would count twice here but once in a local scan.
            std::uint64_t subject_count = 0;
            try {
                subject_count = count_query(backend, iri + " ?p ?o .");
            } catch (const TransportError& e) {
                throw PartialPopularityError(
                    "popularity aggregate failed in subject position: " +
                        std::string(e.what()),
                    {});
            }
            try {
                rec.count = subject_count + count_query(backend, "?s ?p " + iri + " .");
            } catch (const TransportError& e) {
                throw PartialPopularityError(
                    "popularity aggregate failed in object position: " +
                        std::string(e.what()),
                    {{"subject", subject_count}});
            }
            return rec;
        }
    }
}

double threshold_value(const std::vector<PopularityRecord>& records,
                       const SplitCriterion& criterion) {
    if (records.empty()) throw UsageError("split over empty popularity list");
    std::vector<double> counts;
    counts.reserve(records.size());
    for (const auto& r : records) counts.push_back(static_cast<double>(r.count));

    switch (criterion.kind) {
        case SplitKind::Mean:
            return std::accumulate(counts.begin(), counts.end(), 0.0) /
                   static_cast<double>(counts.size());
        case SplitKind::Median: {
            std::sort(counts.begin(), counts.end());
            const std::size_t n = counts.size();
            if (n % 2 == 1) return counts[n / 2];
            return (counts[n / 2 - 1] + counts[n / 2]) / 2.0;
        }
        case SplitKind::Percentile: {
            std::sort(counts.begin(), counts.end());
            const double k = std::clamp(criterion.k, 0.0, 100.0);
            // nearest rank, 1-based
            auto rank = static_cast<std::size_t>(
                std::ceil(k / 100.0 * static_cast<double>(counts.size())));
            rank = std::clamp<std::size_t>(rank, 1, counts.size());
            return counts[rank - 1];
        }
    }
    throw UsageError("unknown split criterion");
}

Split split(const std::vector<PopularityRecord>& records, const SplitCriterion& criterion) {
    Split out;
    out.threshold = threshold_value(records, criterion);
    for (const auto& r : records) {
        const auto count = static_cast<double>(r.count);
        const bool mf = criterion.kind == SplitKind::Percentile ? count >= out.threshold
                                                                : count > out.threshold;
        (mf ? out.mf : out.lf).push_back(r);
    }
    return out;
}

void save_table(const std::filesystem::path& path,
                const std::vector<PopularityRecord>& records) {
    std::string text;
    for (const auto& r : records) {
        text += r.item.normalized_iri;
        text += '\t';
        text += std::to_string(r.count);
        text += '\t';
        text += r.retrieved_at;
        text += '\n';
    }
    util::write_file(path, text);
}

std::vector<PopularityRecord> load_table(const std::filesystem::path& path) {
    std::vector<PopularityRecord> records;
    for (const auto& line : util::read_lines(path)) {
        if (util::trim(line).empty() || line[0] == '#') continue;
        auto cols = util::split(line, '\t');
        if (cols.size() < 2) throw ParseError("bad popularity table line: " + line);
        PopularityRecord r;
        r.item = kg::classify_iri(cols[0]);
        auto v = util::parse_number(cols[1]);
        if (!v) throw ParseError("bad popularity count: " + cols[1]);
        r.count = static_cast<std::uint64_t>(*v);
        if (cols.size() > 2) r.retrieved_at = cols[2];
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace protokg::pop
