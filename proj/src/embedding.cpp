#include "apigen/embedding.hpp"

#include "apigen/kernels/simd.hpp"
#include "apigen/util.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

using nlohmann::json;

namespace apigen::retrieval {

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
    if (u.dims != v.dims || u.values.size() != v.values.size())
        throw Error("cosine: dimension mismatch (" + std::to_string(u.dims) + " vs " +
                    std::to_string(v.dims) + ")");
    const double nu = std::sqrt(static_cast<double>(kernels::norm_sqr(u.values)));
    const double nv = std::sqrt(static_cast<double>(kernels::norm_sqr(v.values)));
    if (nu == 0.0 || nv == 0.0) throw Error("cosine: zero-norm vector");
    double c = static_cast<double>(kernels::dot(u.values, v.values)) / (nu * nv);
    return std::min(1.0, std::max(-1.0, c));
}

namespace {

struct SplitUrl {
    std::string host_part; // scheme://host[:port]
    std::string base_path; // may be empty
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

EmbeddingClient::EmbeddingClient(EmbeddingBackendConfig config, std::filesystem::path cache_dir)
    : config_(std::move(config)), cache_dir_(std::move(cache_dir)) {
    if (config_.id.empty()) throw Error("embedding backend id must not be empty");
}

std::filesystem::path EmbeddingClient::cache_path(const std::string& text) const {
    return cache_dir_ / "embeddings" / config_.id / (util::fnv1a64_hex(text) + ".json");
}

EmbeddingVector EmbeddingClient::embed_one(const std::string& text) {
    return embed({text}).front();
}

std::vector<EmbeddingVector> EmbeddingClient::embed(const std::vector<std::string>& texts) {
    std::vector<EmbeddingVector> out(texts.size());
    std::vector<std::size_t> misses;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        auto path = cache_path(texts[i]);
        if (std::filesystem::exists(path)) {
            json j = json::parse(util::read_file(path));
            out[i].dims = j.at("dims").get<std::size_t>();
            out[i].values = j.at("vector").get<std::vector<float>>();
        } else {
            misses.push_back(i);
        }
    }
    if (!misses.empty()) {
        std::vector<std::string> batch;
        batch.reserve(misses.size());
        for (auto i : misses) batch.push_back(texts[i]);
        auto fetched = fetch(batch);
        for (std::size_t m = 0; m < misses.size(); ++m) {
            out[misses[m]] = fetched[m];
            json j;
            j["dims"] = fetched[m].dims;
            j["vector"] = fetched[m].values;
            util::atomic_write_file(cache_path(texts[misses[m]]), j.dump());
        }
    }
    for (const auto& v : out) {
        for (float x : v.values)
            if (!std::isfinite(x)) throw Error("embedding contains a non-finite value");
    }
    return out;
}

std::vector<EmbeddingVector> EmbeddingClient::fetch(const std::vector<std::string>& texts) {
    if (config_.endpoint.empty())
        throw Error("embedding backend \"" + config_.id + "\" has no endpoint configured");

    auto [host, base] = split_url(config_.endpoint);
    json body;
    body["texts"] = texts;
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            auto delay = config_.initial_backoff_ms * (1 << (attempt - 1));
            std::this_thread::sleep_for(std::chrono::milliseconds(delay));
        }
        httplib::Client cli(host);
        cli.set_connection_timeout(0, config_.timeout_ms * 1000);
        cli.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
        httplib::Headers headers;
        if (const char* key = std::getenv("APIGEN_EMBED_KEY"))
            headers.emplace("Authorization", std::string("Bearer ") + key);

        auto res = cli.Post(base + "/embed", headers, payload, "application/json");
        ++requests_;
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error: HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw Error("embedding service " + config_.endpoint + " returned HTTP " +
                        std::to_string(res->status));

        json j = json::parse(res->body);
        const std::size_t dims = j.at("dims").get<std::size_t>();
        if (config_.expected_dims != 0 && dims != config_.expected_dims)
            throw Error("embedding service declared dims " + std::to_string(dims) +
                        " but backend \"" + config_.id + "\" expects " +
                        std::to_string(config_.expected_dims));
        const auto& vectors = j.at("vectors");
        if (vectors.size() != texts.size())
            throw Error("embedding service returned " + std::to_string(vectors.size()) +
                        " vectors for " + std::to_string(texts.size()) + " texts");
        std::vector<EmbeddingVector> out;
        out.reserve(vectors.size());
        for (const auto& vec : vectors) {
            EmbeddingVector e;
            e.dims = dims;
            e.values = vec.get<std::vector<float>>();
            if (e.values.size() != dims)
                throw Error("embedding vector length " + std::to_string(e.values.size()) +
                            " does not match declared dims " + std::to_string(dims));
            out.push_back(std::move(e));
        }
        return out;
    }
    throw Error("embedding service " + config_.endpoint + " unreachable after " +
                std::to_string(config_.max_retries + 1) + " attempts (" + last_error + ")");
}

} // namespace apigen::retrieval
