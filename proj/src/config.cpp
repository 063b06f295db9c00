#include "apigen/config.hpp"

#include "apigen/retrieval.hpp"
#include "apigen/util.hpp"

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace apigen::config {

namespace {

json embedding_to_json(const retrieval::EmbeddingBackendConfig& e) {
    return json{{"id", e.id},
                {"endpoint", e.endpoint},
                {"expected_dims", e.expected_dims},
                {"max_retries", e.max_retries},
                {"initial_backoff_ms", e.initial_backoff_ms},
                {"timeout_ms", e.timeout_ms}};
}

void embedding_from_json(const json& j, retrieval::EmbeddingBackendConfig& e) {
    e.id = j.value("id", e.id);
    e.endpoint = j.value("endpoint", e.endpoint);
    e.expected_dims = j.value("expected_dims", e.expected_dims);
    e.max_retries = j.value("max_retries", e.max_retries);
    e.initial_backoff_ms = j.value("initial_backoff_ms", e.initial_backoff_ms);
    e.timeout_ms = j.value("timeout_ms", e.timeout_ms);
}

} // namespace

json to_json(const PipelineConfig& c) {
    json j;
    j["corpus_path"] = c.corpus_path;
    j["dictionary_path"] = c.dictionary_path;
    j["verb_lexicon_path"] = c.verb_lexicon_path;
    j["category_lexicon_path"] = c.category_lexicon_path;
    j["reason_template_path"] = c.reason_template_path;
    j["refine_prompt_path"] = c.refine_prompt_path;
    j["cache_dir"] = c.cache_dir;
    j["strategy"] = c.strategy;
    j["n_examples"] = c.n_examples;
    j["reasoning_enabled"] = c.reasoning_enabled;
    j["most_similar_last"] = c.most_similar_last;
    j["refine_with_llm"] = c.refine_with_llm;
    j["llm"] = json{{"model", c.llm.model},
                    {"temperature", c.llm.temperature},
                    {"max_tokens", c.llm.max_tokens},
                    {"top_p", c.llm.top_p},
                    {"n_samples", c.llm.n_samples},
                    {"endpoint", c.llm.endpoint},
                    {"backend", generation::llm_backend_name(c.llm.backend)},
                    {"timeout_ms", c.llm.timeout_ms},
                    {"max_retries", c.llm.max_retries},
                    {"initial_backoff_ms", c.llm.initial_backoff_ms}};
    j["bm25"] = json{{"k1", c.bm25.k1}, {"b", c.bm25.b}};
    j["embedding_sentence"] = embedding_to_json(c.embedding_sentence);
    j["embedding_code"] = embedding_to_json(c.embedding_code);
    j["jobs"] = c.jobs;
    return j;
}

PipelineConfig config_from_json(const json& j) {
    PipelineConfig c;
    c.corpus_path = j.value("corpus_path", c.corpus_path);
    c.dictionary_path = j.value("dictionary_path", c.dictionary_path);
    c.verb_lexicon_path = j.value("verb_lexicon_path", c.verb_lexicon_path);
    c.category_lexicon_path = j.value("category_lexicon_path", c.category_lexicon_path);
    c.reason_template_path = j.value("reason_template_path", c.reason_template_path);
    c.refine_prompt_path = j.value("refine_prompt_path", c.refine_prompt_path);
    c.cache_dir = j.value("cache_dir", c.cache_dir);
    c.strategy = j.value("strategy", c.strategy);
    c.n_examples = j.value("n_examples", c.n_examples);
    c.reasoning_enabled = j.value("reasoning_enabled", c.reasoning_enabled);
    c.most_similar_last = j.value("most_similar_last", c.most_similar_last);
    c.refine_with_llm = j.value("refine_with_llm", c.refine_with_llm);
    if (j.contains("llm")) {
        const json& l = j.at("llm");
        c.llm.model = l.value("model", c.llm.model);
        c.llm.temperature = l.value("temperature", c.llm.temperature);
        c.llm.max_tokens = l.value("max_tokens", c.llm.max_tokens);
        c.llm.top_p = l.value("top_p", c.llm.top_p);
        c.llm.n_samples = l.value("n_samples", c.llm.n_samples);
        c.llm.endpoint = l.value("endpoint", c.llm.endpoint);
        if (l.contains("backend"))
            c.llm.backend = generation::parse_llm_backend(l.at("backend").get<std::string>());
        c.llm.timeout_ms = l.value("timeout_ms", c.llm.timeout_ms);
        c.llm.max_retries = l.value("max_retries", c.llm.max_retries);
        c.llm.initial_backoff_ms = l.value("initial_backoff_ms", c.llm.initial_backoff_ms);
    }
    if (j.contains("bm25")) {
        c.bm25.k1 = j.at("bm25").value("k1", c.bm25.k1);
        c.bm25.b = j.at("bm25").value("b", c.bm25.b);
    }
    if (j.contains("embedding_sentence")) embedding_from_json(j.at("embedding_sentence"), c.embedding_sentence);
    if (j.contains("embedding_code")) embedding_from_json(j.at("embedding_code"), c.embedding_code);
    c.jobs = j.value("jobs", c.jobs);
    return c;
}

void validate(const PipelineConfig& c) {
    if (c.n_examples < 0) throw Error("n_examples must be >= 0");
    retrieval::parse_strategy(c.strategy); // throws on unknown names
    generation::validate(c.llm);
    if (c.bm25.k1 < 0.0) throw Error("bm25.k1 must be >= 0");
    if (c.bm25.b < 0.0 || c.bm25.b > 1.0) throw Error("bm25.b must be in [0, 1]");
    if (c.jobs < 1) throw Error("jobs must be >= 1");
    if (c.cache_dir.empty()) throw Error("cache_dir must not be empty");
}

PipelineConfig load_config(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(util::read_file(path));
    } catch (const json::exception& e) {
        throw Error("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    auto c = config_from_json(j);
    validate(c);
    return c;
}

void save_config(const PipelineConfig& config, const std::filesystem::path& path) {
    util::atomic_write_file(path, to_json(config).dump(2) + "\n");
}

} // namespace apigen::config
