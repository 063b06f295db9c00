#pragma once

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

namespace apigen::generation {

enum class LlmBackend { http, mock };

LlmBackend parse_llm_backend(const std::string& name);
const char* llm_backend_name(LlmBackend b);

struct LlmConfig {
    std::string model = "gpt-3.5-turbo";
    double temperature = 0.15;
    int max_tokens = 512;
    double top_p = 0.95;
    int n_samples = 5;
    std::string endpoint;
    LlmBackend backend = LlmBackend::http;
    int timeout_ms = 60000;
    int max_retries = 3;
    int initial_backoff_ms = 200;
};

/// Throws Error when a field is outside its contract
/// (temperature >= 0, 0 < top_p <= 1, n_samples >= 1, ...).
void validate(const LlmConfig& config);

struct CompletionResult {
    std::vector<std::string> samples; // exactly n_samples entries
    std::vector<bool> truncated;      // per sample: stopped at the token limit
    bool from_cache = false;
};

/// Chat-completions client with an on-disk response cache. A prompt is
/// cached under (model, sampling-config hash, prompt hash); re-running with
/// identical inputs replays the cached response without network traffic.
/// The mock backend only ever replays — a cache miss is an error — which is
/// what the offline tests and the hermetic pipeline runs rely on.
class LlmClient {
  public:
    LlmClient(LlmConfig config, std::filesystem::path cache_dir);

    CompletionResult complete(const std::string& prompt);

    std::filesystem::path cache_path(const std::string& prompt) const;
    /// Hash over the sampling parameters that change what the model returns.
    const std::string& config_hash() const { return config_hash_; }
    const LlmConfig& config() const { return config_; }
    std::size_t requests_made() const { return requests_.load(); }

  private:
    std::string fetch(const std::string& prompt) const; // raw response body

    LlmConfig config_;
    std::filesystem::path cache_dir_;
    std::string config_hash_;
    mutable std::atomic<std::size_t> requests_{0};
};

} // namespace apigen::generation
