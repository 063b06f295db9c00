#pragma once

#include "apigen/bm25.hpp"
#include "apigen/embedding.hpp"
#include "apigen/llm.hpp"

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace apigen::config {

/// Everything a pipeline run needs, with defaults reproducing the audited
/// experimental settings (temperature 0.15, max_tokens 512, top_p 0.95,
/// n_samples 5, n_examples 3, strategy dense_sentence). A config file may
/// set any subset of keys; the rest keep these defaults.
struct PipelineConfig {
    std::string corpus_path = "data/posts.jsonl";
    std::string dictionary_path = "data/dictionary.jsonl";
    std::string verb_lexicon_path = "data/verbs.txt";
    std::string category_lexicon_path = "data/categories.tsv";
    std::string reason_template_path = "data/reason_template_v1.txt";
    std::string refine_prompt_path = "data/refine_prompt_v1.txt";
    std::string cache_dir = "cache";

    std::string strategy = "dense_sentence";
    int n_examples = 3;
    bool reasoning_enabled = true;
    /// Demonstration order: most similar post closest to the query block.
    bool most_similar_last = true;
    /// Question refinement via the LLM (heuristic when false).
    bool refine_with_llm = false;

    generation::LlmConfig llm;
    retrieval::Bm25Params bm25;
    retrieval::EmbeddingBackendConfig embedding_sentence{.id = "sentence"};
    retrieval::EmbeddingBackendConfig embedding_code{.id = "code"};

    int jobs = 4; // bounded worker pool for multi-query runs
};

nlohmann::json to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const nlohmann::json& j);

/// Throws Error on out-of-contract values (n_examples < 0, unknown
/// strategy, llm invariants, jobs < 1).
void validate(const PipelineConfig& config);

PipelineConfig load_config(const std::filesystem::path& path);
void save_config(const PipelineConfig& config, const std::filesystem::path& path);

} // namespace apigen::config
