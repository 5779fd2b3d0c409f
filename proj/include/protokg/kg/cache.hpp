#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace protokg::kg {

// Append-only response cache, one JSON record per line:
//   {"key": <hash>, "backend": ..., "query": ..., "retrieved_at": ..., "body": ...}
// Key = hash(backend identity + canonical query text). Reloading applies
// last-write-wins on key collisions. Writes are serialized internally.
class ResponseCache {
public:
    ResponseCache() = default;
    explicit ResponseCache(std::filesystem::path path);

    static std::string key_for(const std::string& backend_identity,
                               const std::string& query_text);

    std::optional<std::string> lookup(const std::string& key) const;

    void store(const std::string& key, const std::string& backend_identity,
               const std::string& query_text, const std::string& body);

    bool enabled() const { return !path_.empty(); }
    std::size_t size() const;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::map<std::string, std::string> entries_;
};

} // namespace protokg::kg
