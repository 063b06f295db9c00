#pragma once

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

namespace apigen::retrieval {

struct EmbeddingVector {
    std::size_t dims = 0;
    std::vector<float> values;
};

/// dot(u,v) / (|u||v|), clamped into [-1, 1]. Throws Error on dimension
/// mismatch or a zero-norm input. Runs on the dispatched kernels.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

struct EmbeddingBackendConfig {
    std::string id;       // cache namespace, e.g. "sbert"
    std::string endpoint; // base url, e.g. "http://localhost:8080"
    std::size_t expected_dims = 0; // 0 = accept whatever the service declares
    int max_retries = 3;
    int initial_backoff_ms = 200;
    int timeout_ms = 30000;
};

/// Client for the one-endpoint embedding protocol:
///   POST {endpoint}/embed  {"texts": [...]}  ->  {"dims": d, "vectors": [[...]...]}
/// Vectors come back in request order. Results are cached on disk keyed by
/// (backend id, content hash); cache writes are atomic. The bearer token,
/// when needed, comes from APIGEN_EMBED_KEY.
class EmbeddingClient {
public:
    EmbeddingClient(EmbeddingBackendConfig config, std::filesystem::path cache_dir);

    /// One vector per input text, cache first, one POST for the misses.
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts);
    EmbeddingVector embed_one(const std::string& text);

    /// Cache file for a text; exposed so tests and offline runs can seed it.
    std::filesystem::path cache_path(const std::string& text) const;
    const EmbeddingBackendConfig& config() const { return config_; }

    /// Network calls performed so far (cache hits do not count).
    std::size_t requests_made() const { return requests_.load(); }

private:
    std::vector<EmbeddingVector> fetch(const std::vector<std::string>& texts);

    EmbeddingBackendConfig config_;
    std::filesystem::path cache_dir_;
    std::atomic<std::size_t> requests_{0};
};

} // namespace apigen::retrieval
