#pragma once

#include "apigen/corpus.hpp"
#include "apigen/reasoning.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace apigen::generation {

struct Demonstration {
    std::string question;
    std::optional<reasoning::ReasoningText> reasoning; // absent when the ablation disables it
    std::vector<std::string> answer_apis;
};

struct PromptBundle {
    std::vector<Demonstration> demonstrations; // in final prompt order
    std::string query;
    bool reasoning_enabled = true;
    std::string rendered;
};

/// One demonstration per retrieved post, in the given order: the post's
/// question, a reason for its first answer API (degraded per the reasoning
/// module when the dictionary misses), and its answer list. With
/// reasoning_enabled=false the reasoning part is omitted entirely.
std::vector<Demonstration> build_demonstrations(const std::vector<corpus::Post>& posts,
                                                const corpus::ApiDictionary& dict,
                                                const text::VerbLexicon& verbs,
                                                const reasoning::ReasonTemplate& tmpl,
                                                bool reasoning_enabled);

/// Layout, per demonstration:
///   Question: {q}\nReason: {r}\nAnswer: {a, b}\n\n
/// then "Question: {query}\nReason:" — or, with reasoning disabled, no
/// Reason lines and a final "Answer:". Byte-exact golden-tested.
std::string render_prompt(const std::vector<Demonstration>& demonstrations,
                          const std::string& query, bool reasoning_enabled);

PromptBundle make_bundle(std::vector<Demonstration> demonstrations, std::string query,
                         bool reasoning_enabled);

struct ParsedSample {
    std::vector<std::string> apis;              // canonical, first occurrence order
    std::map<std::string, std::string> reasons; // canonical fqn -> containing sentence
};

/// Extract API mentions — (identifier ".")+ identifier, optional "()" —
/// in first-occurrence order, deduplicated on the canonical form, each with
/// the sentence that contains it.
ParsedSample parse_sample(const std::string& text);

/// Merge sampled rankings: descending frequency across samples, ties broken
/// by the earliest (sample index, position) of first appearance.
std::vector<std::string> aggregate(const std::vector<ParsedSample>& samples);

struct Recommendation {
    std::string query_id;
    std::vector<std::string> ranked_apis;       // canonical, deduplicated
    std::map<std::string, std::string> reasons; // canonical fqn -> explanation
    std::vector<std::string> raw_samples;
};

/// parse + aggregate over the raw sample texts; reasons keep the first
/// sentence seen for each API in sample order.
Recommendation recommend_from_samples(std::string query_id,
                                      std::vector<std::string> raw_samples);

} // namespace apigen::generation
