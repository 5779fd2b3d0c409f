#include "protokg/sps.hpp"

#include "protokg/errors.hpp"

#include <set>

namespace protokg::sps {

ExpectedPairs expected_pairs_from_instances(const std::vector<kat::KatInstance>& instances) {
    ExpectedPairs expected;
    for (const auto& inst : instances) {
        if (inst.kind != kat::KatKind::SvObject && inst.kind != kat::KatKind::VoSubject)
            continue;
        expected[inst.question_id].push_back(inst.pair);
    }
    return expected;
}

SpsScore compute_sps(const std::vector<kat::KatRecord>& records,
                     const ExpectedPairs& expected) {
    // index records by (question, pair key)
    std::map<std::string, const kat::KatRecord*> by_pair;
    for (const auto& rec : records) {
        const auto& inst = rec.instance;
        if (inst.kind != kat::KatKind::SvObject && inst.kind != kat::KatKind::VoSubject)
            throw UsageError("compute_sps expects completion-kind records only");
        if (inst.question_id.empty())
            throw UsageError("completion record without a question id: " + inst.id);
        by_pair[inst.question_id + "\x1d" + inst.pair.key()] = &rec;
    }

    SpsScore score;
    int joint_total = 0, joint_perfect = 0, joint_loose = 0;
    double macro_perfect_sum = 0.0, macro_loose_sum = 0.0;
    int macro_questions = 0;
    std::set<std::string> consumed;

    for (const auto& [question_id, pairs] : expected) {
        QuestionSps q;
        for (const auto& pair : pairs) {
            auto it = by_pair.find(question_id + "\x1d" + pair.key());
            consumed.insert(question_id + "\x1d" + pair.key());
            if (it == by_pair.end()) {
                throw AccountingError("no completion record for pair " + pair.key() +
                                      " of question " + question_id);
            }
            const kat::KatRecord& rec = *it->second;
            const bool expected_kind = pair.position == sparql::PairPosition::Subject
                                           ? rec.instance.kind == kat::KatKind::SvObject
                                           : rec.instance.kind == kat::KatKind::VoSubject;
            if (!expected_kind)
                throw AccountingError("pair " + pair.key() +
                                      " recorded under the wrong completion task");
            if (rec.unverified) {
                ++score.unverified;
                continue;
            }

            auto& task = pair.position == sparql::PairPosition::Subject ? score.sv_object
                                                                        : score.vo_subject;
            ++task.total;
            ++q.pairs_total;
            ++joint_total;
            if (rec.level == kat::MatchLevel::Perfect) {
                ++task.perfect;
                ++q.pairs_perfect;
                ++q.pairs_loose;
                ++joint_perfect;
                ++joint_loose;
            } else if (rec.level == kat::MatchLevel::Soft) {
                ++task.soft;
                ++q.pairs_loose;
                ++joint_loose;
            }
        }
        score.per_question[question_id] = q;
        if (q.pairs_total > 0) {
            ++macro_questions;
            macro_perfect_sum += static_cast<double>(q.pairs_perfect) / q.pairs_total;
            macro_loose_sum += static_cast<double>(q.pairs_loose) / q.pairs_total;
        }
    }

    for (const auto& [key, rec] : by_pair) {
        if (!consumed.count(key))
            throw AccountingError("completion record has no expected pair: " +
                                  rec->instance.id);
    }

    if (joint_total > 0) {
        score.joint_perfect = static_cast<double>(joint_perfect) / joint_total;
        score.joint_loose = static_cast<double>(joint_loose) / joint_total;
    }
    if (macro_questions > 0) {
        score.macro_joint_perfect = macro_perfect_sum / macro_questions;
        score.macro_joint_loose = macro_loose_sum / macro_questions;
    }
    return score;
}

std::optional<bool> activation_flag(const QuestionSps& entry, double threshold) {
    if (entry.pairs_total <= 0) return std::nullopt;
    return static_cast<double>(entry.pairs_perfect) / entry.pairs_total > threshold;
}

} // namespace protokg::sps
