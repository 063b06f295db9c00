#include "apigen/pipeline.hpp"

#include "apigen/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

using nlohmann::json;

namespace apigen::pipeline {

Context load_context(config::PipelineConfig config) {
    config::validate(config);
    Context ctx;
    ctx.config = std::move(config);
    const auto& cfg = ctx.config;

    ctx.posts = corpus::load_posts(cfg.corpus_path);
    for (const auto& p : ctx.posts) ctx.posts_by_id.emplace(p.id, &p);
    ctx.dict = corpus::load_dictionary(cfg.dictionary_path);
    ctx.verbs = text::VerbLexicon::load(cfg.verb_lexicon_path);
    ctx.reason_template = reasoning::ReasonTemplate::load(cfg.reason_template_path);
    ctx.refine_prompt = intent::RefineTemplate::load(cfg.refine_prompt_path);

    auto strategy = retrieval::parse_strategy(cfg.strategy);
    if (strategy == retrieval::Strategy::bm25) {
        ctx.retriever = std::make_unique<retrieval::Retriever>(ctx.posts, cfg.bm25);
    } else {
        const auto& backend = strategy == retrieval::Strategy::dense_sentence
                                  ? cfg.embedding_sentence
                                  : cfg.embedding_code;
        ctx.embedder = std::make_shared<retrieval::EmbeddingClient>(backend, cfg.cache_dir);
        ctx.retriever = std::make_unique<retrieval::Retriever>(ctx.posts, strategy, ctx.embedder);
    }

    ctx.llm = std::make_shared<generation::LlmClient>(cfg.llm, cfg.cache_dir);
    if (cfg.refine_with_llm) {
        auto refine_cfg = cfg.llm;
        refine_cfg.n_samples = 1; // refinement wants one deterministic rewrite
        ctx.refiner_llm = std::make_shared<generation::LlmClient>(refine_cfg, cfg.cache_dir);
    }
    return ctx;
}

namespace {

intent::IntentResult extract_intent(const Context& ctx, const std::string& question) {
    if (ctx.refiner_llm) {
        intent::RefinerFn refiner = [&ctx](const std::string& prompt) -> std::optional<std::string> {
            auto result = ctx.refiner_llm->complete(prompt);
            if (result.samples.empty()) return std::nullopt;
            return result.samples.front();
        };
        return intent::extract(question, ctx.verbs, ctx.refine_prompt, refiner);
    }
    return intent::extract(question, ctx.verbs);
}

std::vector<generation::Demonstration> demonstrations_for(const Context& ctx,
                                                          const std::vector<corpus::Post>& posts) {
    std::vector<generation::Demonstration> demos;
    demos.reserve(posts.size());
    for (const auto& post : posts) {
        generation::Demonstration d;
        d.question = post.question;
        d.answer_apis = post.answer_apis;
        if (ctx.config.reasoning_enabled && !post.answer_apis.empty()) {
            auto extracted = extract_intent(ctx, post.question);
            d.reasoning = reasoning::build_reason(extracted.intent, post.answer_apis.front(),
                                                  ctx.dict, ctx.reason_template);
        }
        demos.push_back(std::move(d));
    }
    return demos;
}

} // namespace

QueryOutcome run_query(const Context& ctx, const corpus::Query& query, bool dry_run) {
    QueryOutcome out;
    out.query_id = query.id;
    out.question = query.question;
    out.dry_run = dry_run;

    std::vector<corpus::Post> ordered_posts;
    if (ctx.config.n_examples > 0) {
        std::string warning;
        out.retrieved = ctx.retriever->retrieve(query.question, ctx.config.n_examples, &warning);
        if (!warning.empty()) out.warnings.push_back(warning);
        for (const auto& r : out.retrieved) {
            auto it = ctx.posts_by_id.find(r.post_id);
            if (it == ctx.posts_by_id.end())
                throw Error("retriever returned unknown post id \"" + r.post_id + "\"");
            ordered_posts.push_back(*it->second);
        }
        // Rank 1 is the most similar post; placing it last puts it next to
        // the query block.
        if (ctx.config.most_similar_last)
            std::reverse(ordered_posts.begin(), ordered_posts.end());
    }

    auto demos = demonstrations_for(ctx, ordered_posts);
    out.prompt = generation::render_prompt(demos, query.question, ctx.config.reasoning_enabled);
    if (dry_run) return out;

    auto completion = ctx.llm->complete(out.prompt);
    for (std::size_t i = 0; i < completion.truncated.size(); ++i)
        if (completion.truncated[i])
            out.warnings.push_back("sample " + std::to_string(i + 1) +
                                   " stopped at the token limit");
    out.recommendation = generation::recommend_from_samples(query.id,
                                                            std::move(completion.samples));
    return out;
}

std::vector<QueryOutcome> run_queries(const Context& ctx,
                                      const std::vector<corpus::Query>& queries, bool dry_run) {
    std::vector<QueryOutcome> outcomes(queries.size());
    util::parallel_for(queries.size(), static_cast<std::size_t>(ctx.config.jobs),
                       [&](std::size_t i) { outcomes[i] = run_query(ctx, queries[i], dry_run); });
    return outcomes;
}

std::string outcome_to_jsonl(const QueryOutcome& outcome) {
    json j;
    j["query_id"] = outcome.query_id;
    j["ranked_apis"] = outcome.recommendation.ranked_apis;
    json reasons = json::object();
    for (const auto& [api, reason] : outcome.recommendation.reasons) reasons[api] = reason;
    j["reasons"] = reasons;
    return j.dump();
}

} // namespace apigen::pipeline
