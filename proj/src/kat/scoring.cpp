#include "protokg/kat/scoring.hpp"

#include "protokg/errors.hpp"
#include "protokg/kg/ref.hpp"
#include "protokg/util.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace protokg::kat {

namespace {

std::string strip_wrapping(std::string s) {
    s = util::trim(s);
    bool changed = true;
    while (changed && s.size() >= 2) {
        changed = false;
        const char f = s.front();
        const char b = s.back();
        if ((f == '"' && b == '"') || (f == '\'' && b == '\'') || (f == '`' && b == '`')) {
            s = util::trim(s.substr(1, s.size() - 2));
            changed = true;
        }
    }
    return s;
}

// Drop "1." / "2)" / "-" / "*" list markers from a candidate line.
std::string strip_enumeration(std::string s) {
    s = util::trim(s);
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')')) {
        s = util::trim(s.substr(i + 1));
    } else if (!s.empty() && (s[0] == '-' || s[0] == '*')) {
        s = util::trim(s.substr(1));
    }
    return s;
}

std::vector<std::string> whitespace_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string label_key(const std::string& label, bool case_fold) {
    const std::string collapsed = util::collapse_whitespace(label);
    return case_fold ? util::lower_ascii(collapsed) : collapsed;
}

} // namespace

std::optional<kg::KgRef> find_first_ref(const std::string& text, kg::GraphTag graph,
                                        kg::RefKind hint) {
    for (const auto& token : whitespace_tokens(text)) {
        if (auto ref = kg::try_normalize_ref(token, graph, hint)) return ref;
    }
    return std::nullopt;
}

ParsedPrediction parse_output(const KatInstance& instance, const std::string& response) {
    ParsedPrediction out;
    switch (instance.kind) {
        case KatKind::UriRecognition: {
            if (instance.direction == UriDirection::IdToLabel) {
                out.label = strip_wrapping(response);
                out.parse_failed = out.label.empty();
                return out;
            }
            out.ref = find_first_ref(response, instance.item.graph, kg::RefKind::Entity);
            out.parse_failed = !out.ref.has_value();
            return out;
        }
        case KatKind::DirectSubsumption:
        case KatKind::InverseSubsumption: {
            std::set<std::string> seen;
            for (const auto& line : util::split(response, '\n')) {
                for (const auto& piece : util::split(line, ',')) {
                    const std::string candidate = strip_enumeration(piece);
                    if (candidate.empty()) continue;
                    auto ref = kg::try_normalize_ref(candidate, instance.given_class.graph,
                                                     kg::RefKind::Class);
                    if (ref && seen.insert(ref->normalized_iri).second)
                        out.refs.push_back(*ref);
                }
            }
            if (!out.refs.empty()) out.ref = out.refs.front();
            out.parse_failed = out.refs.empty();
            return out;
        }
        case KatKind::SvObject:
        case KatKind::VoSubject: {
            const auto graph = instance.pair.entity.graph;
            out.ref = find_first_ref(response, graph, kg::RefKind::Entity);
            out.parse_failed = !out.ref.has_value();
            return out;
        }
    }
    out.parse_failed = true;
    return out;
}

MatchLevel score_uri_recognition(KatRecord& record, const ScoreOptions& options) {
    const KatInstance& inst = record.instance;
    record.gold_size = 1;
    record.level = MatchLevel::Incorrect;

    if (inst.direction == UriDirection::IdToLabel) {
        if (inst.gold_label.empty()) throw UsageError("uri-recognition gold label missing");
        if (!record.prediction.parse_failed) {
            const std::string predicted = label_key(record.prediction.label, options.case_fold);
            std::vector<std::string> golds = {label_key(inst.gold_label, options.case_fold)};
            if (options.alias_matching)
                for (const auto& alias : inst.aliases)
                    golds.push_back(label_key(alias, options.case_fold));
            if (std::find(golds.begin(), golds.end(), predicted) != golds.end())
                record.level = MatchLevel::Perfect;
        }
    } else if (record.prediction.ref) {
        const kg::KgRef& predicted = *record.prediction.ref;
        bool equal = predicted.normalized_iri == inst.item.normalized_iri;
        if (!equal && predicted.graph == kg::GraphTag::Wikidata &&
            inst.item.graph == kg::GraphTag::Wikidata) {
            // namespace drift (wd: vs wdt:) still names the same identifier
            equal = kg::terminal_id(predicted.normalized_iri) ==
                    kg::terminal_id(inst.item.normalized_iri);
        }
        if (equal) record.level = MatchLevel::Perfect;
    }
    record.hits = record.level == MatchLevel::Perfect ? 1 : 0;
    record.fraction = record.hits;
    return record.level;
}

SubsumptionResult score_subsumption(KatRecord& record) {
    const KatInstance& inst = record.instance;
    if (inst.gold_classes.empty()) throw UsageError("subsumption instance has no gold classes");

    SubsumptionResult result;
    result.gold_size = static_cast<int>(inst.gold_classes.size());

    if (inst.kind == KatKind::InverseSubsumption) {
        const kg::KgRef& gold = inst.gold_classes.front();
        result.gold_size = 1;
        if (record.prediction.ref &&
            record.prediction.ref->normalized_iri == gold.normalized_iri) {
            result.level = MatchLevel::Perfect;
            result.hits = 1;
        }
        result.fraction = result.hits;
    } else {
        std::set<std::string> gold;
        for (const auto& g : inst.gold_classes) gold.insert(g.normalized_iri);
        std::set<std::string> predicted;
        for (const auto& p : record.prediction.refs) predicted.insert(p.normalized_iri);
        for (const auto& iri : predicted)
            if (gold.count(iri)) ++result.hits;
        result.fraction = static_cast<double>(result.hits) / static_cast<double>(gold.size());
        result.level = result.hits == static_cast<int>(gold.size()) ? MatchLevel::Perfect
                                                                    : MatchLevel::Incorrect;
    }

    record.level = result.level;
    record.fraction = result.fraction;
    record.hits = result.hits;
    record.gold_size = result.gold_size;
    return result;
}

MatchLevel score_completion(KatRecord& record, kg::GraphBackend& backend) {
    const KatInstance& inst = record.instance;
    if (inst.kind != KatKind::SvObject && inst.kind != KatKind::VoSubject)
        throw UsageError("score_completion on a non-completion record");

    record.level = MatchLevel::Incorrect;
    record.gold_size = 1;
    if (!record.prediction.ref) return record.level;
    const kg::KgRef x = *record.prediction.ref;
    const kg::KgRef& given = inst.pair.entity;
    const kg::KgRef& property = inst.pair.property;

    auto probe = [&](const kg::AskPattern& pattern) {
        const bool outcome = backend.ask(pattern);
        record.verification_detail.push_back({kg::render_ask_query(pattern), outcome});
        return outcome;
    };

    kg::AskPattern perfect, same_position, reversed;
    if (inst.kind == KatKind::SvObject) {
        perfect = {given, property, kg::Term{x}, std::nullopt};
        same_position = {given, std::nullopt, kg::Term{x}, property};
        reversed = {x, std::nullopt, kg::Term{given}, std::nullopt};
    } else {
        perfect = {x, property, kg::Term{given}, std::nullopt};
        same_position = {x, std::nullopt, kg::Term{given}, property};
        reversed = {given, std::nullopt, kg::Term{x}, std::nullopt};
    }

    try {
        if (probe(perfect)) {
            record.level = MatchLevel::Perfect;
            record.hits = 1;
        } else if (probe(same_position) || probe(reversed)) {
            record.level = MatchLevel::Soft;
        }
    } catch (const TransportError&) {
        record.unverified = true;
        record.level = MatchLevel::Incorrect;
    }
    record.fraction = record.level == MatchLevel::Perfect ? 1.0 : 0.0;
    return record.level;
}

} // namespace protokg::kat
