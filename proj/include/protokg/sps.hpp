#pragma once

#include "protokg/kat/kat.hpp"
#include "protokg/sparql/pairs.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace protokg::sps {

struct QuestionSps {
    int pairs_total = 0;
    int pairs_perfect = 0;
    int pairs_loose = 0; // perfect or soft
};

struct TaskRates {
    int total = 0;
    int perfect = 0;
    int soft = 0;
    double perfect_rate() const { return total ? static_cast<double>(perfect) / total : 0.0; }
    double soft_rate() const { return total ? static_cast<double>(soft) / total : 0.0; }
};

struct SpsScore {
    TaskRates sv_object;
    TaskRates vo_subject;
    double joint_perfect = 0.0; // micro, the headline
    double joint_loose = 0.0;
    double macro_joint_perfect = 0.0; // mean of per-question fractions
    double macro_joint_loose = 0.0;
    std::map<std::string, QuestionSps> per_question;
    int unverified = 0;
};

// The expected pair set per question (what the gold queries contributed).
using ExpectedPairs = std::map<std::string, std::vector<sparql::EntityPropertyPair>>;

ExpectedPairs expected_pairs_from_instances(const std::vector<kat::KatInstance>& instances);

// Fold completion records into the score. Each expected pair must be
// covered by exactly the position-appropriate completion record; a hole
// raises AccountingError naming the pair. Unverified records drop out of
// every rate and are counted separately.
SpsScore compute_sps(const std::vector<kat::KatRecord>& records,
                     const ExpectedPairs& expected);

// Strictly-greater activation rule; pairs_total of zero has no defined
// activation (the caller excludes the question and reports it apart).
std::optional<bool> activation_flag(const QuestionSps& entry, double threshold = 0.5);

} // namespace protokg::sps
