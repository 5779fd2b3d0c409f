#pragma once

#include "protokg/sparql/answers.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace protokg::qald {

struct Question {
    std::string id;
    std::string text; // in the requested language
    std::string language;
    std::string gold_sparql;
    std::optional<sparql::AnswerSet> gold_answers; // as stored in the file
};

struct Benchmark {
    std::string name;
    std::vector<Question> questions;
};

// QALD-format JSON: {"questions": [{"id", "question": [{"language",
// "string"}], "query": {"sparql"}, "answers": [...]}]}. Questions lacking
// a string in the requested language fall back to their first entry.
Benchmark load_benchmark(const std::filesystem::path& path,
                         const std::string& language = "en");

} // namespace protokg::qald
