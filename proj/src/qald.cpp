#include "protokg/qald.hpp"

#include "protokg/errors.hpp"
#include "protokg/kg/backend.hpp"
#include "protokg/util.hpp"

#include <nlohmann/json.hpp>

namespace protokg::qald {

using nlohmann::json;

Benchmark load_benchmark(const std::filesystem::path& path, const std::string& language) {
    json doc;
    try {
        doc = json::parse(util::read_file(path));
    } catch (const json::exception& e) {
        throw ParseError("bad benchmark file " + path.string() + ": " + e.what());
    }

    Benchmark bench;
    if (doc.contains("dataset") && doc["dataset"].contains("id"))
        bench.name = doc["dataset"]["id"].get<std::string>();
    else
        bench.name = path.stem().string();

    if (!doc.contains("questions"))
        throw ParseError("benchmark file has no questions array: " + path.string());

    for (const auto& q : doc["questions"]) {
        Question out;
        if (q.contains("id")) {
            out.id = q["id"].is_string() ? q["id"].get<std::string>()
                                         : std::to_string(q["id"].get<long>());
        } else {
            out.id = std::to_string(bench.questions.size() + 1);
        }
        if (q.contains("question")) {
            for (const auto& variant : q["question"]) {
                const std::string lang = variant.value("language", "");
                if (lang == language || out.text.empty()) {
                    out.text = variant.value("string", "");
                    out.language = lang;
                }
                if (lang == language) break;
            }
        }
        if (q.contains("query") && q["query"].contains("sparql"))
            out.gold_sparql = q["query"]["sparql"].get<std::string>();
        if (q.contains("answers") && q["answers"].is_array() && !q["answers"].empty()) {
            out.gold_answers = kg::parse_sparql_json(q["answers"][0].dump());
        }
        bench.questions.push_back(std::move(out));
    }
    return bench;
}

} // namespace protokg::qald
