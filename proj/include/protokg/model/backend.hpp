#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace protokg::model {

struct DecodingConfig {
    double temperature = 0.0;
    int max_generation_length = 2048;
    bool greedy = true;

    std::string key() const;
    friend bool operator==(const DecodingConfig& a, const DecodingConfig& b) {
        return a.key() == b.key();
    }
};

struct ModelCall {
    std::string backend_id;
    std::string prompt;
    DecodingConfig config;
    std::string response_text; // verbatim, untrimmed
    double latency_s = 0.0;
    std::string timestamp;
};

// Transcript record; the file doubles as the replay fixture format:
// one JSON object per line with backend_id, prompt_hash, the full prompt,
// the decoding config, and the verbatim response.
struct TranscriptRecord {
    std::string backend_id;
    std::string prompt_hash;
    std::string prompt;
    DecodingConfig config;
    std::string response;
};

std::string prompt_hash(const std::string& prompt);

void append_transcript(const std::filesystem::path& path, const TranscriptRecord& rec);
std::vector<TranscriptRecord> load_transcript(const std::filesystem::path& path);

class ModelBackend {
public:
    virtual ~ModelBackend() = default;
    virtual ModelCall complete(const std::string& prompt, const DecodingConfig& config) = 0;
    virtual const std::string& id() const = 0;
};

// Replays a recorded transcript; total over its records. A lookup that
// matches no record raises ReplayMissError naming the prompt hash — it
// never reaches for the network. Hash hits additionally verify the stored
// prompt bytes.
class ReplayBackend final : public ModelBackend {
public:
    ReplayBackend(std::string backend_id, const std::filesystem::path& transcript_path);
    ReplayBackend(std::string backend_id, std::vector<TranscriptRecord> records);

    ModelCall complete(const std::string& prompt, const DecodingConfig& config) override;
    const std::string& id() const override { return id_; }
    std::size_t size() const { return records_.size(); }

private:
    std::string id_;
    std::map<std::string, TranscriptRecord> records_; // key: hash|config
};

struct HttpModelConfig {
    std::string api_base;   // e.g. http://host:port/v1
    std::string model_name;
    std::string api_key;    // empty: no Authorization header
    std::filesystem::path transcript_path; // appended on every call
    double timeout_s = 120.0;
    int retry_limit = 2;
    int max_in_flight = 2;
};

// Chat-style HTTP completion client. The whole prompt goes out as a
// single user message; every call is appended to the transcript log so
// live runs are replayable.
class HttpModelBackend final : public ModelBackend {
public:
    HttpModelBackend(std::string backend_id, HttpModelConfig config);

    ModelCall complete(const std::string& prompt, const DecodingConfig& config) override;
    const std::string& id() const override { return id_; }

private:
    std::string id_;
    HttpModelConfig config_;
    std::mutex transcript_mutex_;
    std::shared_ptr<std::mutex> inflight_mutex_;
};

// Test/fixture backend: responses come from a callback; calls are logged
// to a transcript like the live backend's.
class CallbackBackend final : public ModelBackend {
public:
    CallbackBackend(std::string backend_id,
                    std::function<std::string(const std::string&)> responder,
                    std::filesystem::path transcript_path = {});

    ModelCall complete(const std::string& prompt, const DecodingConfig& config) override;
    const std::string& id() const override { return id_; }

private:
    std::string id_;
    std::function<std::string(const std::string&)> responder_;
    std::filesystem::path transcript_path_;
    std::mutex transcript_mutex_;
};

} // namespace protokg::model
