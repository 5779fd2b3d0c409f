#pragma once

#include "protokg/kat/kat.hpp"
#include "protokg/sps.hpp"
#include "protokg/t2s/prompts.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace protokg::agreement {

enum class ProtoForm { Lexical, Hierarchical, Topological };
enum class Category { PositiveAgreement, NegativeAgreement, Disagreement, Excluded };

std::string to_string(ProtoForm f);
ProtoForm proto_form_from_string(const std::string& s);
std::string to_string(Category c);
Category category_from_string(const std::string& s);

struct AgreementRecord {
    std::string question_id;
    ProtoForm form = ProtoForm::Topological;
    t2s::PromptRegime regime = t2s::PromptRegime::Original;
    bool sparql_correct = false;
    std::optional<bool> proto_activated; // empty: no probe-able content
    Category category = Category::Excluded;
};

Category categorize(bool sparql_correct, std::optional<bool> proto_activated);

struct ActivationOptions {
    // all-items-correct unless a fraction threshold in [0,1] is set
    std::optional<double> fraction_threshold;
};

// Lexical activation: URI-recognition outcomes of the question's items
// that survive the popularity filter; a missing record for a surviving
// item is an accounting error. No survivor -> activation undefined.
std::optional<bool> activation_lexical(
    const std::vector<kg::KgRef>& question_items,
    const std::function<const kat::KatRecord*(const kg::KgRef&)>& record_for,
    const std::function<bool(const kg::KgRef&)>& survives_filter,
    const ActivationOptions& options = {});

// Hierarchical activation: every probe (completion records restricted to
// hierarchical predicates, plus subsumption probes derived from fully
// bound subclass patterns) must score perfect. No probes -> undefined.
std::optional<bool> activation_hierarchical(const std::vector<const kat::KatRecord*>& probes,
                                            const ActivationOptions& options = {});

// Topological activation delegates to the SPS activation flag.
std::optional<bool> activation_topological(const sps::QuestionSps& entry,
                                           double threshold = 0.5);

// Predicates treated as hierarchical facts.
const std::set<std::string>& hierarchical_predicates();
bool is_hierarchical_predicate(const kg::KgRef& property);

struct AgreementSummary {
    int positive_agreement = 0;
    int negative_agreement = 0;
    int disagreement = 0;
    int excluded = 0;
    int correct_sparql = 0; // among non-excluded
    int agreement_total() const { return positive_agreement + negative_agreement; }
    std::pair<int, int> pa_ratio() const { return {positive_agreement, correct_sparql}; }
};

AgreementSummary summarize(const std::vector<AgreementRecord>& records);

void save_records(const std::filesystem::path& path,
                  const std::vector<AgreementRecord>& records);
std::vector<AgreementRecord> load_agreement_records(const std::filesystem::path& path);

} // namespace protokg::agreement
