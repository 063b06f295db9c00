#pragma once

#include "apigen/config.hpp"
#include "apigen/corpus.hpp"
#include "apigen/generation.hpp"
#include "apigen/intent.hpp"
#include "apigen/retrieval.hpp"

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace apigen::pipeline {

/// All artifacts a run needs, loaded once and shared across queries.
/// Loading is lazy about networks: the embedding client is only constructed
/// (and the corpus embedded) for dense strategies, the LLM client never
/// talks to anything until a completion is requested.
struct Context {
    config::PipelineConfig config;
    std::vector<corpus::Post> posts;
    std::unordered_map<std::string, const corpus::Post*> posts_by_id;
    corpus::ApiDictionary dict;
    text::VerbLexicon verbs;
    reasoning::ReasonTemplate reason_template;
    intent::RefineTemplate refine_prompt;
    std::unique_ptr<retrieval::Retriever> retriever;
    std::shared_ptr<retrieval::EmbeddingClient> embedder; // dense strategies only
    std::shared_ptr<generation::LlmClient> llm;
    std::shared_ptr<generation::LlmClient> refiner_llm;   // n=1 client when refine_with_llm
};

Context load_context(config::PipelineConfig config);

struct QueryOutcome {
    std::string query_id;
    std::string question;
    std::vector<retrieval::RetrievalResult> retrieved;
    std::string prompt;
    generation::Recommendation recommendation; // empty in dry runs
    bool dry_run = false;
    std::vector<std::string> warnings;
};

/// retrieval -> demonstrations -> prompt -> completion -> aggregation for
/// one query; a dry run stops after rendering the prompt.
QueryOutcome run_query(const Context& ctx, const corpus::Query& query, bool dry_run);

/// Bounded-concurrency map over queries (ctx.config.jobs workers); results
/// come back in input order regardless of completion order.
std::vector<QueryOutcome> run_queries(const Context& ctx, const std::vector<corpus::Query>& queries,
                                      bool dry_run);

/// Run-file record for the evaluator: {"query_id", "ranked_apis", "reasons"}.
std::string outcome_to_jsonl(const QueryOutcome& outcome);

} // namespace apigen::pipeline
