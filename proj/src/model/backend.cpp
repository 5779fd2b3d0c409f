#include "protokg/model/backend.hpp"

#include "protokg/errors.hpp"
#include "protokg/net_guard.hpp"
#include "protokg/util.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>

namespace protokg::model {

using nlohmann::json;

std::string DecodingConfig::key() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "t%.6g|n%d|g%d", temperature, max_generation_length,
                  greedy ? 1 : 0);
    return buf;
}

std::string prompt_hash(const std::string& prompt) { return util::hash_hex(prompt); }

namespace {

json config_to_json(const DecodingConfig& c) {
    json j;
    j["temperature"] = c.temperature;
    j["max_generation_length"] = c.max_generation_length;
    j["greedy"] = c.greedy;
    return j;
}

DecodingConfig config_from_json(const json& j) {
    DecodingConfig c;
    c.temperature = j.value("temperature", 0.0);
    c.max_generation_length = j.value("max_generation_length", 2048);
    c.greedy = j.value("greedy", true);
    return c;
}

std::string record_key(const std::string& hash, const DecodingConfig& config) {
    return hash + "|" + config.key();
}

} // namespace

void append_transcript(const std::filesystem::path& path, const TranscriptRecord& rec) {
    json j;
    j["backend_id"] = rec.backend_id;
    j["prompt_hash"] = rec.prompt_hash;
    j["prompt"] = rec.prompt;
    j["config"] = config_to_json(rec.config);
    j["response"] = rec.response;
    util::append_line(path, j.dump());
}

std::vector<TranscriptRecord> load_transcript(const std::filesystem::path& path) {
    std::vector<TranscriptRecord> records;
    for (const auto& line : util::read_lines(path)) {
        if (util::trim(line).empty()) continue;
        json j = json::parse(line);
        TranscriptRecord rec;
        rec.backend_id = j.value("backend_id", "");
        rec.prompt = j.at("prompt").get<std::string>();
        rec.prompt_hash = j.value("prompt_hash", prompt_hash(rec.prompt));
        rec.config = config_from_json(j.value("config", json::object()));
        rec.response = j.at("response").get<std::string>();
        records.push_back(std::move(rec));
    }
    return records;
}

ReplayBackend::ReplayBackend(std::string backend_id,
                             const std::filesystem::path& transcript_path)
    : ReplayBackend(std::move(backend_id), load_transcript(transcript_path)) {}

ReplayBackend::ReplayBackend(std::string backend_id, std::vector<TranscriptRecord> records)
    : id_(std::move(backend_id)) {
    for (auto& rec : records) {
        // last-write-wins, consistent with the response cache
        records_[record_key(rec.prompt_hash, rec.config)] = std::move(rec);
    }
}

ModelCall ReplayBackend::complete(const std::string& prompt, const DecodingConfig& config) {
    if (prompt.empty()) throw UsageError("empty prompt");
    const std::string hash = prompt_hash(prompt);
    auto it = records_.find(record_key(hash, config));
    if (it == records_.end() || it->second.prompt != prompt) {
        throw ReplayMissError("replay miss for prompt hash " + hash, hash);
    }
    ModelCall call;
    call.backend_id = id_;
    call.prompt = prompt;
    call.config = config;
    call.response_text = it->second.response;
    call.timestamp = util::now_iso8601();
    return call;
}

HttpModelBackend::HttpModelBackend(std::string backend_id, HttpModelConfig config)
    : id_(std::move(backend_id)), config_(std::move(config)),
      inflight_mutex_(std::make_shared<std::mutex>()) {
    if (config_.api_base.empty()) throw UsageError("live model backend needs api_base");
}

ModelCall HttpModelBackend::complete(const std::string& prompt,
                                     const DecodingConfig& config) {
    if (prompt.empty()) throw UsageError("empty prompt");

    json body;
    body["model"] = config_.model_name;
    body["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});
    body["temperature"] = config.temperature;
    body["max_tokens"] = config.max_generation_length;

    auto scheme_end = config_.api_base.find("://");
    if (scheme_end == std::string::npos)
        throw UsageError("api_base needs a scheme: " + config_.api_base);
    auto path_start = config_.api_base.find('/', scheme_end + 3);
    const std::string origin = path_start == std::string::npos
                                   ? config_.api_base
                                   : config_.api_base.substr(0, path_start);
    const std::string prefix =
        path_start == std::string::npos ? "" : config_.api_base.substr(path_start);

    httplib::Headers headers;
    if (!config_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + config_.api_key);

    const auto started = std::chrono::steady_clock::now();
    std::string response_text;
    std::string last_error;
    bool ok = false;
    for (int attempt = 0; attempt <= config_.retry_limit && !ok; ++attempt) {
        net::check_allowed("model " + config_.api_base);
        std::lock_guard inflight(*inflight_mutex_);
        httplib::Client client(origin);
        const auto timeout_sec = static_cast<time_t>(std::max(1.0, config_.timeout_s));
        client.set_read_timeout(timeout_sec, 0);
        client.set_connection_timeout(timeout_sec, 0);
        auto res = client.Post(prefix + "/chat/completions", headers, body.dump(),
                               "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        try {
            json doc = json::parse(res->body);
            response_text =
                doc.at("choices").at(0).at("message").at("content").get<std::string>();
            ok = true;
        } catch (const json::exception& e) {
            last_error = std::string("bad completion payload: ") + e.what();
        }
    }
    if (!ok) throw TransportError("model call failed: " + last_error);

    ModelCall call;
    call.backend_id = id_;
    call.prompt = prompt;
    call.config = config;
    call.response_text = response_text;
    call.latency_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   started)
                         .count();
    call.timestamp = util::now_iso8601();

    if (!config_.transcript_path.empty()) {
        std::lock_guard lock(transcript_mutex_);
        append_transcript(config_.transcript_path,
                          {id_, prompt_hash(prompt), prompt, config, response_text});
    }
    return call;
}

CallbackBackend::CallbackBackend(std::string backend_id,
                                 std::function<std::string(const std::string&)> responder,
                                 std::filesystem::path transcript_path)
    : id_(std::move(backend_id)), responder_(std::move(responder)),
      transcript_path_(std::move(transcript_path)) {}

ModelCall CallbackBackend::complete(const std::string& prompt,
                                    const DecodingConfig& config) {
    if (prompt.empty()) throw UsageError("empty prompt");
    ModelCall call;
    call.backend_id = id_;
    call.prompt = prompt;
    call.config = config;
    call.response_text = responder_(prompt);
    call.timestamp = util::now_iso8601();
    if (!transcript_path_.empty()) {
        std::lock_guard lock(transcript_mutex_);
        append_transcript(transcript_path_,
                          {id_, prompt_hash(prompt), prompt, config, call.response_text});
    }
    return call;
}

} // namespace protokg::model
