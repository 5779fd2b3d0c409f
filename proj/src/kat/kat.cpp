#include "protokg/kat/kat.hpp"

#include "protokg/errors.hpp"
#include "protokg/kat/serde.hpp"
#include "protokg/kg/ref.hpp"
#include "protokg/util.hpp"

#include <nlohmann/json.hpp>

namespace protokg::kat {

using nlohmann::json;

std::string to_string(KatKind k) {
    switch (k) {
        case KatKind::UriRecognition: return "uri_recognition";
        case KatKind::DirectSubsumption: return "direct_subsumption";
        case KatKind::InverseSubsumption: return "inverse_subsumption";
        case KatKind::SvObject: return "sv_object";
        case KatKind::VoSubject: return "vo_subject";
    }
    return "uri_recognition";
}

KatKind kat_kind_from_string(const std::string& s) {
    if (s == "uri_recognition") return KatKind::UriRecognition;
    if (s == "direct_subsumption") return KatKind::DirectSubsumption;
    if (s == "inverse_subsumption") return KatKind::InverseSubsumption;
    if (s == "sv_object") return KatKind::SvObject;
    if (s == "vo_subject") return KatKind::VoSubject;
    throw UsageError("unknown task kind: " + s);
}

std::string to_string(MatchLevel level) {
    switch (level) {
        case MatchLevel::Perfect: return "perfect";
        case MatchLevel::Soft: return "soft";
        case MatchLevel::Incorrect: return "incorrect";
    }
    return "incorrect";
}

MatchLevel match_level_from_string(const std::string& s) {
    if (s == "perfect") return MatchLevel::Perfect;
    if (s == "soft") return MatchLevel::Soft;
    if (s == "incorrect") return MatchLevel::Incorrect;
    throw UsageError("unknown match level: " + s);
}

std::string to_string(UriDirection d) {
    return d == UriDirection::IdToLabel ? "id_to_label" : "label_to_id";
}

UriDirection uri_direction_from_string(const std::string& s) {
    if (s == "id_to_label") return UriDirection::IdToLabel;
    if (s == "label_to_id") return UriDirection::LabelToId;
    throw UsageError("unknown uri-recognition direction: " + s);
}

namespace {

json ref_to_json(const kg::KgRef& r) {
    json j;
    j["raw"] = r.raw_text;
    j["iri"] = r.normalized_iri;
    j["kind"] = kg::to_string(r.kind);
    j["graph"] = kg::to_string(r.graph);
    return j;
}

kg::KgRef ref_from_json(const json& j) {
    kg::KgRef r;
    r.raw_text = j.value("raw", "");
    r.normalized_iri = j.at("iri").get<std::string>();
    r.kind = kg::ref_kind_from_string(j.value("kind", "unknown"));
    r.graph = kg::graph_tag_from_string(j.value("graph", "local"));
    return r;
}

json pair_to_json(const sparql::EntityPropertyPair& p) {
    json j;
    j["entity"] = ref_to_json(p.entity);
    j["property"] = ref_to_json(p.property);
    j["position"] = sparql::to_string(p.position);
    return j;
}

sparql::EntityPropertyPair pair_from_json(const json& j) {
    sparql::EntityPropertyPair p;
    p.entity = ref_from_json(j.at("entity"));
    p.property = ref_from_json(j.at("property"));
    p.position = sparql::pair_position_from_string(j.at("position").get<std::string>());
    return p;
}

} // namespace

json instance_to_json(const KatInstance& inst) {
    json j;
    j["id"] = inst.id;
    j["kind"] = to_string(inst.kind);
    if (!inst.question_id.empty()) j["question_id"] = inst.question_id;
    switch (inst.kind) {
        case KatKind::UriRecognition:
            j["item"] = ref_to_json(inst.item);
            j["gold_label"] = inst.gold_label;
            if (!inst.aliases.empty()) j["aliases"] = inst.aliases;
            j["direction"] = to_string(inst.direction);
            break;
        case KatKind::DirectSubsumption:
        case KatKind::InverseSubsumption: {
            j["given_class"] = ref_to_json(inst.given_class);
            json golds = json::array();
            for (const auto& g : inst.gold_classes) golds.push_back(ref_to_json(g));
            j["gold_classes"] = std::move(golds);
            break;
        }
        case KatKind::SvObject:
        case KatKind::VoSubject:
            j["pair"] = pair_to_json(inst.pair);
            break;
    }
    return j;
}

KatInstance instance_from_json(const json& j) {
    KatInstance inst;
    inst.id = j.at("id").get<std::string>();
    inst.kind = kat_kind_from_string(j.at("kind").get<std::string>());
    inst.question_id = j.value("question_id", "");
    switch (inst.kind) {
        case KatKind::UriRecognition:
            inst.item = ref_from_json(j.at("item"));
            inst.gold_label = j.value("gold_label", "");
            if (j.contains("aliases"))
                inst.aliases = j["aliases"].get<std::vector<std::string>>();
            inst.direction =
                uri_direction_from_string(j.value("direction", "id_to_label"));
            break;
        case KatKind::DirectSubsumption:
        case KatKind::InverseSubsumption:
            inst.given_class = ref_from_json(j.at("given_class"));
            for (const auto& g : j.at("gold_classes"))
                inst.gold_classes.push_back(ref_from_json(g));
            break;
        case KatKind::SvObject:
        case KatKind::VoSubject:
            inst.pair = pair_from_json(j.at("pair"));
            break;
    }
    return inst;
}

void save_records(const std::filesystem::path& path, const std::vector<KatRecord>& records) {
    std::string text;
    for (const auto& rec : records) {
        json j;
        j["instance"] = instance_to_json(rec.instance);
        json call;
        call["backend_id"] = rec.call.backend_id;
        call["prompt"] = rec.call.prompt;
        call["response"] = rec.call.response_text;
        call["config"] = json{{"temperature", rec.call.config.temperature},
                              {"max_generation_length", rec.call.config.max_generation_length},
                              {"greedy", rec.call.config.greedy}};
        j["call"] = std::move(call);
        json pred;
        if (!rec.prediction.label.empty()) pred["label"] = rec.prediction.label;
        if (rec.prediction.ref) pred["ref"] = ref_to_json(*rec.prediction.ref);
        if (!rec.prediction.refs.empty()) {
            json refs = json::array();
            for (const auto& r : rec.prediction.refs) refs.push_back(ref_to_json(r));
            pred["refs"] = std::move(refs);
        }
        pred["parse_failed"] = rec.prediction.parse_failed;
        j["prediction"] = std::move(pred);
        j["level"] = to_string(rec.level);
        j["fraction"] = rec.fraction;
        j["hits"] = rec.hits;
        j["gold_size"] = rec.gold_size;
        j["unverified"] = rec.unverified;
        json probes = json::array();
        for (const auto& p : rec.verification_detail)
            probes.push_back(json{{"query", p.query}, {"outcome", p.outcome}});
        j["verification_detail"] = std::move(probes);
        text += j.dump();
        text += '\n';
    }
    util::write_file(path, text);
}

std::vector<KatRecord> load_records(const std::filesystem::path& path) {
    std::vector<KatRecord> records;
    for (const auto& line : util::read_lines(path)) {
        if (util::trim(line).empty()) continue;
        json j = json::parse(line);
        KatRecord rec;
        rec.instance = instance_from_json(j.at("instance"));
        const json& call = j.at("call");
        rec.call.backend_id = call.value("backend_id", "");
        rec.call.prompt = call.value("prompt", "");
        rec.call.response_text = call.value("response", "");
        if (call.contains("config")) {
            rec.call.config.temperature = call["config"].value("temperature", 0.0);
            rec.call.config.max_generation_length =
                call["config"].value("max_generation_length", 2048);
            rec.call.config.greedy = call["config"].value("greedy", true);
        }
        const json& pred = j.at("prediction");
        rec.prediction.label = pred.value("label", "");
        if (pred.contains("ref")) rec.prediction.ref = ref_from_json(pred["ref"]);
        if (pred.contains("refs"))
            for (const auto& r : pred["refs"]) rec.prediction.refs.push_back(ref_from_json(r));
        rec.prediction.parse_failed = pred.value("parse_failed", false);
        rec.level = match_level_from_string(j.at("level").get<std::string>());
        rec.fraction = j.value("fraction", 0.0);
        rec.hits = j.value("hits", 0);
        rec.gold_size = j.value("gold_size", 0);
        rec.unverified = j.value("unverified", false);
        if (j.contains("verification_detail"))
            for (const auto& p : j["verification_detail"])
                rec.verification_detail.push_back(
                    {p.value("query", ""), p.value("outcome", false)});
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace protokg::kat
