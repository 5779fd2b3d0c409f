#include "protokg/agreement.hpp"

#include "protokg/errors.hpp"
#include "protokg/util.hpp"

#include <nlohmann/json.hpp>

namespace protokg::agreement {

using nlohmann::json;

std::string to_string(ProtoForm f) {
    switch (f) {
        case ProtoForm::Lexical: return "lexical";
        case ProtoForm::Hierarchical: return "hierarchical";
        case ProtoForm::Topological: return "topological";
    }
    return "topological";
}

ProtoForm proto_form_from_string(const std::string& s) {
    if (s == "lexical") return ProtoForm::Lexical;
    if (s == "hierarchical") return ProtoForm::Hierarchical;
    if (s == "topological") return ProtoForm::Topological;
    throw UsageError("unknown protoknowledge form: " + s);
}

std::string to_string(Category c) {
    switch (c) {
        case Category::PositiveAgreement: return "positive_agreement";
        case Category::NegativeAgreement: return "negative_agreement";
        case Category::Disagreement: return "disagreement";
        case Category::Excluded: return "excluded";
    }
    return "excluded";
}

Category category_from_string(const std::string& s) {
    if (s == "positive_agreement") return Category::PositiveAgreement;
    if (s == "negative_agreement") return Category::NegativeAgreement;
    if (s == "disagreement") return Category::Disagreement;
    if (s == "excluded") return Category::Excluded;
    throw UsageError("unknown agreement category: " + s);
}

Category categorize(bool sparql_correct, std::optional<bool> proto_activated) {
    if (!proto_activated) return Category::Excluded;
    if (sparql_correct && *proto_activated) return Category::PositiveAgreement;
    if (!sparql_correct && !*proto_activated) return Category::NegativeAgreement;
    return Category::Disagreement;
}

namespace {

std::optional<bool> all_or_fraction(int perfect, int total, const ActivationOptions& options) {
    if (total == 0) return std::nullopt;
    if (options.fraction_threshold)
        return static_cast<double>(perfect) / total >= *options.fraction_threshold;
    return perfect == total;
}

} // namespace

std::optional<bool> activation_lexical(
    const std::vector<kg::KgRef>& question_items,
    const std::function<const kat::KatRecord*(const kg::KgRef&)>& record_for,
    const std::function<bool(const kg::KgRef&)>& survives_filter,
    const ActivationOptions& options) {
    int total = 0;
    int perfect = 0;
    for (const auto& item : question_items) {
        if (!survives_filter(item)) continue;
        const kat::KatRecord* rec = record_for(item);
        if (!rec)
            throw AccountingError("no URI-recognition record for surviving item " +
                                  item.normalized_iri);
        ++total;
        if (rec->level == kat::MatchLevel::Perfect) ++perfect;
    }
    return all_or_fraction(perfect, total, options);
}

std::optional<bool> activation_hierarchical(const std::vector<const kat::KatRecord*>& probes,
                                            const ActivationOptions& options) {
    int total = 0;
    int perfect = 0;
    for (const kat::KatRecord* rec : probes) {
        if (!rec) throw AccountingError("null hierarchical probe record");
        if (rec->unverified) continue;
        ++total;
        if (rec->level == kat::MatchLevel::Perfect) ++perfect;
    }
    return all_or_fraction(perfect, total, options);
}

std::optional<bool> activation_topological(const sps::QuestionSps& entry, double threshold) {
    return sps::activation_flag(entry, threshold);
}

const std::set<std::string>& hierarchical_predicates() {
    static const std::set<std::string> predicates = {
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#type",
        "http://www.w3.org/2000/01/rdf-schema#subClassOf",
        "http://www.w3.org/2000/01/rdf-schema#subPropertyOf",
        "http://www.wikidata.org/prop/direct/P31",  // instance of
        "http://www.wikidata.org/prop/direct/P279", // subclass of
    };
    return predicates;
}

bool is_hierarchical_predicate(const kg::KgRef& property) {
    return hierarchical_predicates().count(property.normalized_iri) > 0;
}

AgreementSummary summarize(const std::vector<AgreementRecord>& records) {
    AgreementSummary s;
    for (const auto& rec : records) {
        switch (rec.category) {
            case Category::PositiveAgreement: ++s.positive_agreement; break;
            case Category::NegativeAgreement: ++s.negative_agreement; break;
            case Category::Disagreement: ++s.disagreement; break;
            case Category::Excluded: ++s.excluded; break;
        }
        if (rec.category != Category::Excluded && rec.sparql_correct) ++s.correct_sparql;
    }
    return s;
}

void save_records(const std::filesystem::path& path,
                  const std::vector<AgreementRecord>& records) {
    std::string text;
    for (const auto& rec : records) {
        json j;
        j["question_id"] = rec.question_id;
        j["form"] = to_string(rec.form);
        j["regime"] = t2s::to_string(rec.regime);
        j["sparql_correct"] = rec.sparql_correct;
        if (rec.proto_activated) j["proto_activated"] = *rec.proto_activated;
        j["category"] = to_string(rec.category);
        text += j.dump();
        text += '\n';
    }
    util::write_file(path, text);
}

std::vector<AgreementRecord> load_agreement_records(const std::filesystem::path& path) {
    std::vector<AgreementRecord> records;
    for (const auto& line : util::read_lines(path)) {
        if (util::trim(line).empty()) continue;
        json j = json::parse(line);
        AgreementRecord rec;
        rec.question_id = j.value("question_id", "");
        rec.form = proto_form_from_string(j.value("form", "topological"));
        rec.regime = t2s::regime_from_string(j.value("regime", "original"));
        rec.sparql_correct = j.value("sparql_correct", false);
        if (j.contains("proto_activated"))
            rec.proto_activated = j["proto_activated"].get<bool>();
        rec.category = category_from_string(j.at("category").get<std::string>());
        records.push_back(rec);
    }
    return records;
}

} // namespace protokg::agreement
