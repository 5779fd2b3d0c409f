#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace protokg::oracle {

bool ask_scan(const kg::LocalStore& store, const kg::AskPattern& pattern) {
    for (const auto& t : store.triples()) {
        if (pattern.subject && t.subject.normalized_iri != pattern.subject->normalized_iri)
            continue;
        if (pattern.predicate &&
            t.predicate.normalized_iri != pattern.predicate->normalized_iri)
            continue;
        if (pattern.object && !kg::term_equal(t.object, *pattern.object)) continue;
        if (pattern.predicate_not &&
            t.predicate.normalized_iri == pattern.predicate_not->normalized_iri)
            continue;
        return true;
    }
    return false;
}

kat::MatchLevel classify_completion(const kg::LocalStore& store,
                                    const sparql::EntityPropertyPair& pair,
                                    const kg::KgRef& prediction) {
    const bool subject_side = pair.position == sparql::PairPosition::Subject;
    const std::string& given = pair.entity.normalized_iri;
    const std::string& property = pair.property.normalized_iri;
    const std::string& x = prediction.normalized_iri;
    const std::string x_key = kg::comparison_key(kg::Term{prediction});
    const std::string given_key = kg::comparison_key(kg::Term{pair.entity});

    bool perfect = false, soft = false;
    for (const auto& t : store.triples()) {
        const std::string object_key = kg::comparison_key(t.object);
        if (subject_side) {
            // expected triple (given, property, x)
            if (t.subject.normalized_iri == given && object_key == x_key) {
                if (t.predicate.normalized_iri == property)
                    perfect = true;
                else
                    soft = true;
            }
            if (t.subject.normalized_iri == x && object_key == given_key) soft = true;
        } else {
            // expected triple (x, property, given)
            if (t.subject.normalized_iri == x && object_key == given_key) {
                if (t.predicate.normalized_iri == property)
                    perfect = true;
                else
                    soft = true;
            }
            if (t.subject.normalized_iri == given && object_key == x_key) soft = true;
        }
    }
    if (perfect) return kat::MatchLevel::Perfect;
    if (soft) return kat::MatchLevel::Soft;
    return kat::MatchLevel::Incorrect;
}

double percentile_by_counting(std::vector<std::uint64_t> counts, double k) {
    const std::size_t n = counts.size();
    auto rank = static_cast<std::size_t>(std::ceil(k / 100.0 * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    // find the value with exactly `rank` values <= it, smallest such value
    std::sort(counts.begin(), counts.end());
    return static_cast<double>(counts[rank - 1]);
}

double f1_over_sets(const std::set<std::string>& gold, const std::set<std::string>& pred) {
    if (gold.empty() && pred.empty()) return 1.0;
    if (gold.empty() || pred.empty()) return 0.0;
    int overlap = 0;
    for (const auto& g : gold)
        if (pred.count(g)) ++overlap;
    if (overlap == 0) return 0.0;
    const double precision = static_cast<double>(overlap) / pred.size();
    const double recall = static_cast<double>(overlap) / gold.size();
    return 2 * precision * recall / (precision + recall);
}

SpsRecount recount_sps(const std::vector<kat::KatRecord>& records) {
    SpsRecount r;
    for (const auto& rec : records) {
        if (rec.unverified) continue;
        const bool sv = rec.instance.kind == kat::KatKind::SvObject;
        const bool perfect = rec.level == kat::MatchLevel::Perfect;
        const bool soft = rec.level == kat::MatchLevel::Soft;
        auto& q = r.per_question[rec.instance.question_id];
        ++q.pairs_total;
        ++r.joint_total;
        if (sv) ++r.sv_total; else ++r.vo_total;
        if (perfect) {
            ++q.pairs_perfect;
            ++q.pairs_loose;
            ++r.joint_perfect;
            ++r.joint_loose;
            if (sv) ++r.sv_perfect; else ++r.vo_perfect;
        } else if (soft) {
            ++q.pairs_loose;
            ++r.joint_loose;
            if (sv) ++r.sv_soft; else ++r.vo_soft;
        }
    }
    return r;
}

} // namespace protokg::oracle
