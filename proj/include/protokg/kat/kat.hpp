#pragma once

#include "protokg/kg/term.hpp"
#include "protokg/model/backend.hpp"
#include "protokg/sparql/pairs.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace protokg::kat {

// The five knowledge-activation tasks. Triple completion deliberately has
// no "both ends given, guess the property" variant.
enum class KatKind {
    UriRecognition,
    DirectSubsumption,
    InverseSubsumption,
    SvObject, // S and V given, predict O
    VoSubject // V and O given, predict S
};

enum class MatchLevel { Perfect, Soft, Incorrect };

enum class UriDirection { IdToLabel, LabelToId };

std::string to_string(KatKind k);
KatKind kat_kind_from_string(const std::string& s);
std::string to_string(MatchLevel level);
MatchLevel match_level_from_string(const std::string& s);
std::string to_string(UriDirection d);
UriDirection uri_direction_from_string(const std::string& s);

// One probing instance. Which fields are meaningful depends on kind:
// uri-recognition uses item/gold_label/aliases/direction, subsumption
// uses given_class/gold_classes (inverse: exactly one gold), completion
// uses pair.
struct KatInstance {
    std::string id;
    KatKind kind = KatKind::UriRecognition;
    std::string question_id; // benchmark provenance, may be empty

    kg::KgRef item;
    std::string gold_label;
    std::vector<std::string> aliases;
    UriDirection direction = UriDirection::IdToLabel;

    kg::KgRef given_class;
    std::vector<kg::KgRef> gold_classes;

    sparql::EntityPropertyPair pair;
};

struct ParsedPrediction {
    std::string label;                // uri-recognition, id->label
    std::optional<kg::KgRef> ref;     // completion / inverse / label->id
    std::vector<kg::KgRef> refs;      // direct subsumption
    bool parse_failed = false;
};

struct AskProbe {
    std::string query;
    bool outcome = false;
};

struct KatRecord {
    KatInstance instance;
    model::ModelCall call;
    ParsedPrediction prediction;
    MatchLevel level = MatchLevel::Incorrect;
    double fraction = 0.0; // direct subsumption: recall over the gold list
    int hits = 0;
    int gold_size = 0;
    bool unverified = false; // transport failure during ASK verification
    std::vector<AskProbe> verification_detail;
};

void save_records(const std::filesystem::path& path, const std::vector<KatRecord>& records);
std::vector<KatRecord> load_records(const std::filesystem::path& path);

} // namespace protokg::kat
