#pragma once

// Independent reference implementations used as oracles. Everything here
// recomputes results by exhaustive scanning, separate from the library's
// indexed/aggregated code paths.

#include "protokg/kat/kat.hpp"
#include "protokg/kg/local_store.hpp"
#include "protokg/sparql/pairs.hpp"
#include "protokg/sps.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace protokg::oracle {

// Linear scan over the raw triple vector, no indexes.
bool ask_scan(const kg::LocalStore& store, const kg::AskPattern& pattern);

// Exhaustive match-level classification for a completion prediction.
kat::MatchLevel classify_completion(const kg::LocalStore& store,
                                    const sparql::EntityPropertyPair& pair,
                                    const kg::KgRef& prediction);

// Nearest-rank percentile by counting, no sorting of the library's kind.
double percentile_by_counting(std::vector<std::uint64_t> counts, double k);

// Plain precision/recall F1 over string sets.
double f1_over_sets(const std::set<std::string>& gold, const std::set<std::string>& pred);

// Recount of SPS aggregates straight from record levels.
struct SpsRecount {
    int sv_total = 0, sv_perfect = 0, sv_soft = 0;
    int vo_total = 0, vo_perfect = 0, vo_soft = 0;
    int joint_total = 0, joint_perfect = 0, joint_loose = 0;
    std::map<std::string, sps::QuestionSps> per_question;
};
SpsRecount recount_sps(const std::vector<kat::KatRecord>& records);

} // namespace protokg::oracle
