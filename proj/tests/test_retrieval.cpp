#include "apigen/retrieval.hpp"
#include "apigen/tokenize.hpp"
#include "apigen/util.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>

using namespace apigen;
using namespace apigen::retrieval;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::vector<corpus::Post> small_corpus() {
    return {
        {"p1", "How do I convert a String to an int in Java", {"java.lang.Integer.parseInt"}},
        {"p2", "append an element to a list", {"java.util.List.add"}},
        {"p3", "read all bytes from a file", {"java.nio.file.Files.readAllBytes"}},
        {"p4", "convert an int to a String", {"java.lang.String.valueOf"}},
    };
}

struct TempDir {
    fs::path path;
    TempDir(const char* tag) : path(fs::temp_directory_path() / tag) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

/// Offline embedding client: every vector is pre-seeded into the cache, so
/// no endpoint is required and no network traffic can happen.
std::shared_ptr<EmbeddingClient> seeded_client(const fs::path& cache_dir,
                                               const std::vector<std::pair<std::string, std::vector<float>>>& rows) {
    EmbeddingBackendConfig cfg;
    cfg.id = "seeded";
    auto client = std::make_shared<EmbeddingClient>(cfg, cache_dir);
    for (const auto& [textv, vec] : rows) {
        json j;
        j["dims"] = vec.size();
        j["vector"] = vec;
        util::atomic_write_file(client->cache_path(textv), j.dump());
    }
    return client;
}

} // namespace

TEST_SUITE("retrieval") {

TEST_CASE("strategy names round-trip and unknown names throw") {
    CHECK(parse_strategy("bm25") == Strategy::bm25);
    CHECK(parse_strategy("dense_sentence") == Strategy::dense_sentence);
    CHECK(parse_strategy("dense_code") == Strategy::dense_code);
    CHECK_THROWS_AS(parse_strategy("tfidf"), apigen::Error);
    for (auto s : {Strategy::bm25, Strategy::dense_sentence, Strategy::dense_code})
        CHECK(parse_strategy(strategy_name(s)) == s);
}

TEST_CASE("bm25 retriever puts the identical question at rank 1") {
    Retriever r(small_corpus(), Bm25Params{});
    auto hits = r.retrieve("How do I convert a String to an int in Java", 4);
    REQUIRE(!hits.empty());
    CHECK(hits[0].post_id == "p1");
    CHECK(hits[0].rank == 1);
    for (std::size_t i = 1; i < hits.size(); ++i) {
        CHECK(hits[i].rank == static_cast<int>(i) + 1);
        CHECK(hits[i].score <= hits[i - 1].score);
    }
}

TEST_CASE("bm25 ranking agrees with scoring every document directly") {
    auto posts = small_corpus();
    Retriever r(posts, Bm25Params{});
    const std::string query = "convert int to String";

    // reference: score all docs through the index the same way, stable-sort
    std::vector<TokenStream> docs;
    for (const auto& p : posts) docs.push_back({p.id, tokenize(p.question)});
    auto index = Bm25Index::build(docs, Bm25Params{});
    auto qtoks = tokenize(query);
    std::vector<std::pair<std::string, double>> want;
    for (const auto& p : posts) want.emplace_back(p.id, index.score(qtoks, p.id));
    std::stable_sort(want.begin(), want.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    auto got = r.retrieve(query, static_cast<int>(posts.size()));
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].post_id == want[i].first);
        CHECK(got[i].score == doctest::Approx(want[i].second).epsilon(1e-12));
    }
}

TEST_CASE("ties keep corpus order") {
    std::vector<corpus::Post> posts = {
        {"a", "alpha beta", {"X.y"}},
        {"b", "alpha beta", {"X.y"}}, // identical text, identical score
        {"c", "unrelated words entirely", {"X.y"}},
    };
    Retriever r(posts, Bm25Params{});
    auto hits = r.retrieve("alpha beta", 3);
    REQUIRE(hits.size() == 3);
    CHECK(hits[0].post_id == "a");
    CHECK(hits[1].post_id == "b");
    CHECK(hits[0].score == doctest::Approx(hits[1].score));
}

TEST_CASE("n larger than the corpus returns everything plus a warning") {
    Retriever r(small_corpus(), Bm25Params{});
    std::string warning;
    auto hits = r.retrieve("convert", 10, &warning);
    CHECK(hits.size() == 4);
    CHECK(warning.find("requested 10 examples") != std::string::npos);
    CHECK(warning.find("only 4") != std::string::npos);

    warning.clear();
    r.retrieve("convert", 2, &warning);
    CHECK(warning.empty());

    CHECK_THROWS_AS(r.retrieve("convert", 0), apigen::Error);
}

TEST_CASE("dense retriever ranks by cosine over cached embeddings") {
    TempDir cache("apigen_retrieval_dense");
    auto posts = small_corpus();
    // hand-placed geometry: p1 nearly parallel to the query, p4 opposite,
    // p2 orthogonal, p3 in between
    auto client = seeded_client(cache.path, {
        {posts[0].question, {1.0f, 0.1f}},
        {posts[1].question, {0.0f, 1.0f}},
        {posts[2].question, {0.5f, 0.5f}},
        {posts[3].question, {-1.0f, 0.0f}},
        {"find similar", {1.0f, 0.0f}},
    });
    Retriever r(posts, Strategy::dense_sentence, client);
    CHECK(r.strategy() == Strategy::dense_sentence);

    auto hits = r.retrieve("find similar", 4);
    REQUIRE(hits.size() == 4);
    CHECK(hits[0].post_id == "p1");
    CHECK(hits[1].post_id == "p3");
    CHECK(hits[2].post_id == "p2");
    CHECK(hits[3].post_id == "p4");
    CHECK(hits[0].score == doctest::Approx(1.0 / std::sqrt(1.01)).epsilon(1e-6));
    CHECK(hits[2].score == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(hits[3].score == doctest::Approx(-1.0).epsilon(1e-6));

    // top-2 is a prefix of the full ranking
    auto top2 = r.retrieve("find similar", 2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0].post_id == hits[0].post_id);
    CHECK(top2[1].post_id == hits[1].post_id);
}

TEST_CASE("empty corpora are rejected") {
    CHECK_THROWS_AS(Retriever({}, Bm25Params{}), apigen::Error);
}

} // TEST_SUITE
