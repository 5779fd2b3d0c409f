#include "protokg/kg/cache.hpp"

#include "protokg/util.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>

namespace protokg::kg {

using nlohmann::json;

ResponseCache::ResponseCache(std::filesystem::path path) : path_(std::move(path)) {
    if (path_.empty() || !std::filesystem::exists(path_)) return;
    for (const auto& line : util::read_lines(path_)) {
        if (util::trim(line).empty()) continue;
        json rec = json::parse(line);
        entries_[rec.at("key").get<std::string>()] = rec.at("body").get<std::string>();
    }
}

std::string ResponseCache::key_for(const std::string& backend_identity,
                                   const std::string& query_text) {
    return util::hash_hex(backend_identity + "\n" + util::trim(query_text));
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::store(const std::string& key, const std::string& backend_identity,
                          const std::string& query_text, const std::string& body) {
    std::lock_guard lock(mutex_);
    entries_[key] = body;
    if (path_.empty()) return;
    json rec;
    rec["key"] = key;
    rec["backend"] = backend_identity;
    rec["query"] = query_text;
    rec["retrieved_at"] = util::now_iso8601();
    rec["body"] = body;
    util::append_line(path_, rec.dump());
}

std::size_t ResponseCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

} // namespace protokg::kg
