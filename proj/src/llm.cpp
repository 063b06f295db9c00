#include "apigen/llm.hpp"

#include "apigen/util.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <thread>

using nlohmann::json;

namespace apigen::generation {

LlmBackend parse_llm_backend(const std::string& name) {
    if (name == "http") return LlmBackend::http;
    if (name == "mock") return LlmBackend::mock;
    throw Error("unknown llm backend \"" + name + "\" (expected http or mock)");
}

const char* llm_backend_name(LlmBackend b) {
    return b == LlmBackend::http ? "http" : "mock";
}

void validate(const LlmConfig& c) {
    if (c.model.empty()) throw Error("llm model id must not be empty");
    if (c.temperature < 0.0) throw Error("llm temperature must be >= 0");
    if (!(c.top_p > 0.0 && c.top_p <= 1.0)) throw Error("llm top_p must be in (0, 1]");
    if (c.n_samples < 1) throw Error("llm n_samples must be >= 1");
    if (c.max_tokens < 1) throw Error("llm max_tokens must be >= 1");
    if (c.max_retries < 0) throw Error("llm max_retries must be >= 0");
}

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

/// Canonical string for the parameters that shape sampling; its hash keys
/// the cache directory so changed settings never replay stale responses.
std::string canonical_config(const LlmConfig& c) {
    return "temperature=" + format_real(c.temperature) + ";top_p=" + format_real(c.top_p) +
           ";max_tokens=" + std::to_string(c.max_tokens) + ";n=" + std::to_string(c.n_samples);
}

struct SplitUrl {
    std::string host_part;
    std::string base_path;
};

SplitUrl split_url(const std::string& endpoint) {
    auto scheme_end = endpoint.find("://");
    std::size_t path_at = scheme_end == std::string::npos
                              ? endpoint.find('/')
                              : endpoint.find('/', scheme_end + 3);
    if (path_at == std::string::npos) return {endpoint, ""};
    std::string path = endpoint.substr(path_at);
    while (!path.empty() && path.back() == '/') path.pop_back();
    return {endpoint.substr(0, path_at), path};
}

} // namespace

LlmClient::LlmClient(LlmConfig config, std::filesystem::path cache_dir)
    : config_(std::move(config)), cache_dir_(std::move(cache_dir)) {
    validate(config_);
    config_hash_ = util::fnv1a64_hex(canonical_config(config_));
}

std::filesystem::path LlmClient::cache_path(const std::string& prompt) const {
    return cache_dir_ / "llm" / config_.model / config_hash_ /
           (util::fnv1a64_hex(prompt) + ".json");
}

CompletionResult LlmClient::complete(const std::string& prompt) {
    const auto path = cache_path(prompt);
    std::string body;
    CompletionResult result;
    if (std::filesystem::exists(path)) {
        body = util::read_file(path);
        result.from_cache = true;
    } else {
        if (config_.backend == LlmBackend::mock)
            throw Error("mock llm backend has no cached response for this prompt (expected " +
                        path.string() + ")");
        body = fetch(prompt);
        util::atomic_write_file(path, body);
    }

    json j;
    try {
        j = json::parse(body);
    } catch (const json::exception& e) {
        throw Error("malformed llm response in " + path.string() + ": " + e.what());
    }
    if (!j.contains("choices") || !j["choices"].is_array())
        throw Error("llm response lacks a choices array");
    for (const auto& choice : j["choices"]) {
        result.samples.push_back(choice.at("message").at("content").get<std::string>());
        std::string finish = choice.value("finish_reason", "");
        result.truncated.push_back(finish == "length");
    }
    if (static_cast<int>(result.samples.size()) != config_.n_samples)
        throw Error("llm returned " + std::to_string(result.samples.size()) +
                    " samples, expected " + std::to_string(config_.n_samples));
    return result;
}

std::string LlmClient::fetch(const std::string& prompt) const {
    if (config_.endpoint.empty()) throw Error("llm endpoint is not configured");

    json payload;
    payload["model"] = config_.model;
    payload["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});
    payload["temperature"] = config_.temperature;
    payload["top_p"] = config_.top_p;
    payload["max_tokens"] = config_.max_tokens;
    payload["n"] = config_.n_samples;
    const std::string body = payload.dump();

    auto [host, base] = split_url(config_.endpoint);
    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            auto delay = config_.initial_backoff_ms * (1 << (attempt - 1));
            std::this_thread::sleep_for(std::chrono::milliseconds(delay));
        }
        httplib::Client cli(host);
        cli.set_connection_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
        cli.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
        httplib::Headers headers;
        if (const char* key = std::getenv("APIGEN_LLM_KEY"))
            headers.emplace("Authorization", std::string("Bearer ") + key);

        auto res = cli.Post(base + "/chat/completions", headers, body, "application/json");
        ++requests_;
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500 || res->status == 429) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw Error("llm endpoint " + config_.endpoint + " returned HTTP " +
                        std::to_string(res->status));
        return res->body;
    }
    throw Error("llm endpoint " + config_.endpoint + " unreachable after " +
                std::to_string(config_.max_retries + 1) + " attempts (" + last_error + ")");
}

} // namespace apigen::generation
