#include "apigen/config.hpp"
#include "apigen/util.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>

using namespace apigen;
using namespace apigen::config;
using nlohmann::json;

namespace {
namespace fs = std::filesystem;
}

TEST_SUITE("config") {

TEST_CASE("defaults reproduce the audited experimental settings") {
    PipelineConfig c;
    CHECK(c.llm.temperature == doctest::Approx(0.15));
    CHECK(c.llm.max_tokens == 512);
    CHECK(c.llm.top_p == doctest::Approx(0.95));
    CHECK(c.llm.n_samples == 5);
    CHECK(c.n_examples == 3);
    CHECK(c.strategy == "dense_sentence");
    CHECK(c.reasoning_enabled);
    CHECK(c.most_similar_last);
    CHECK_FALSE(c.refine_with_llm);
    CHECK(c.bm25.k1 == doctest::Approx(1.2));
    CHECK(c.bm25.b == doctest::Approx(0.75));
    CHECK(c.embedding_sentence.id == "sentence");
    CHECK(c.embedding_code.id == "code");
    CHECK(c.jobs >= 1);
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("a freshly generated config file serializes those settings") {
    auto dir = fs::temp_directory_path() / "apigen_config_fresh";
    fs::create_directories(dir);
    auto path = dir / "config.json";
    save_config(PipelineConfig{}, path);

    auto j = json::parse(util::read_file(path));
    CHECK(j.at("llm").at("temperature").get<double>() == doctest::Approx(0.15));
    CHECK(j.at("llm").at("max_tokens").get<int>() == 512);
    CHECK(j.at("llm").at("top_p").get<double>() == doctest::Approx(0.95));
    CHECK(j.at("llm").at("n_samples").get<int>() == 5);
    CHECK(j.at("n_examples").get<int>() == 3);
    CHECK(j.at("strategy").get<std::string>() == "dense_sentence");
    fs::remove_all(dir);
}

TEST_CASE("round trip preserves every field") {
    PipelineConfig c;
    c.corpus_path = "elsewhere/posts.jsonl";
    c.strategy = "bm25";
    c.n_examples = 7;
    c.reasoning_enabled = false;
    c.refine_with_llm = true;
    c.llm.model = "local-model";
    c.llm.backend = generation::LlmBackend::mock;
    c.llm.n_samples = 2;
    c.bm25.k1 = 0.9;
    c.bm25.b = 0.4;
    c.embedding_sentence.endpoint = "http://embed.example";
    c.embedding_sentence.expected_dims = 384;
    c.jobs = 2;

    auto j = to_json(c);
    auto back = config_from_json(j);
    CHECK(back.corpus_path == c.corpus_path);
    CHECK(back.strategy == "bm25");
    CHECK(back.n_examples == 7);
    CHECK_FALSE(back.reasoning_enabled);
    CHECK(back.refine_with_llm);
    CHECK(back.llm.model == "local-model");
    CHECK(back.llm.backend == generation::LlmBackend::mock);
    CHECK(back.llm.n_samples == 2);
    CHECK(back.bm25.k1 == doctest::Approx(0.9));
    CHECK(back.bm25.b == doctest::Approx(0.4));
    CHECK(back.embedding_sentence.endpoint == "http://embed.example");
    CHECK(back.embedding_sentence.expected_dims == 384);
    CHECK(back.jobs == 2);
}

TEST_CASE("partial config files inherit the defaults") {
    auto dir = fs::temp_directory_path() / "apigen_config_partial";
    fs::create_directories(dir);
    auto path = dir / "partial.json";
    util::atomic_write_file(path, R"({"strategy": "bm25", "llm": {"n_samples": 1}})" "\n");

    auto c = load_config(path);
    CHECK(c.strategy == "bm25");
    CHECK(c.llm.n_samples == 1);
    CHECK(c.llm.temperature == doctest::Approx(0.15)); // untouched default
    CHECK(c.n_examples == 3);
    fs::remove_all(dir);
}

TEST_CASE("validation rejects out-of-contract values") {
    PipelineConfig c;
    c.n_examples = -1;
    CHECK_THROWS_AS(validate(c), apigen::Error);

    c = PipelineConfig{};
    c.strategy = "psychic";
    CHECK_THROWS_AS(validate(c), apigen::Error);

    c = PipelineConfig{};
    c.bm25.b = 1.5;
    CHECK_THROWS_AS(validate(c), apigen::Error);

    c = PipelineConfig{};
    c.jobs = 0;
    CHECK_THROWS_AS(validate(c), apigen::Error);

    c = PipelineConfig{};
    c.cache_dir.clear();
    CHECK_THROWS_AS(validate(c), apigen::Error);

    c = PipelineConfig{};
    c.llm.top_p = 2.0;
    CHECK_THROWS_AS(validate(c), apigen::Error);
}

TEST_CASE("load_config rejects malformed and invalid files") {
    auto dir = fs::temp_directory_path() / "apigen_config_bad";
    fs::create_directories(dir);
    auto path = dir / "bad.json";
    util::atomic_write_file(path, "not json at all");
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("not valid JSON"), apigen::Error);

    util::atomic_write_file(path, R"({"n_examples": -5})");
    CHECK_THROWS_AS(load_config(path), apigen::Error);
    fs::remove_all(dir);
}

} // TEST_SUITE
