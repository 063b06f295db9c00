#pragma once

#include "apigen/text.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace apigen::intent {

enum class RefinedBy { llm, heuristic, none };

struct RefinedQuestion {
    std::string original;
    std::string refined;       // never empty
    bool verb_inserted = false; // true only when refined starts with a lexicon verb
    RefinedBy refined_by = RefinedBy::none;
};

enum class ConstituencyForm { VB_NP_X, VB_NP_PP_X, VB_S, UNPARSED };

const char* form_name(ConstituencyForm f);

/// A role's surface text plus its byte span in the refined question.
struct TokenSpan {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct SyntacticRoles {
    std::optional<TokenSpan> verb;     // present whenever form != UNPARSED
    std::optional<TokenSpan> dobj;     // NP head
    std::optional<TokenSpan> dmod;     // NP determiner + modifiers (needs dobj)
    std::optional<TokenSpan> pobj;     // first PP head
    std::optional<TokenSpan> pmod;     // first PP determiner + modifiers (needs pobj)
    std::optional<TokenSpan> trailing; // trailing PP or clause
};

struct Intent {
    std::string action; // empty only for the fallback intent
    std::optional<std::string> object;
    std::optional<std::string> target;
    std::optional<std::string> condition;
};

/// The question-refinement prompt, stored as a versioned file whose bytes
/// are the template verbatim; {question} is the only placeholder.
struct RefineTemplate {
    std::string version; // file stem, e.g. "refine_prompt_v1"
    std::string body;

    static RefineTemplate load(const std::filesystem::path& path);
    std::string render(const std::string& question) const;
};

/// Callback bridging to an LLM: takes the rendered refinement prompt and
/// returns the model's text, or nullopt on failure.
using RefinerFn = std::function<std::optional<std::string>(const std::string& prompt)>;

/// Heuristic refinement: keep the first sentence, strip interrogative
/// scaffolding ("how do i", "how to", "how can i", "what is the way to",
/// trailing "?"), and when no token is a lexicon verb prepend "convert"
/// (if an "X to Y" pattern is present) or "handle".
RefinedQuestion refine(const std::string& question, const text::VerbLexicon& verbs);

/// LLM-backed refinement; any failure (callback nullopt, empty or
/// whitespace-only reply) falls back to the heuristic with
/// refined_by=heuristic.
RefinedQuestion refine(const std::string& question, const text::VerbLexicon& verbs,
                       const RefineTemplate& prompt, const RefinerFn& llm);

/// Shallow deterministic chunking: first lexicon verb, one noun chunk,
/// preposition-led chunks, clause starters; the chunk sequence is mapped
/// onto the three constituency rows, anything else is UNPARSED.
std::pair<ConstituencyForm, SyntacticRoles> classify(const std::string& refined,
                                                     const text::VerbLexicon& verbs);

/// Table-driven role substitution. Throws Error for UNPARSED.
Intent deconstruct(ConstituencyForm form, const SyntacticRoles& roles,
                   const std::string& refined);

/// Intent used when classification fails: empty action, the whole refined
/// question as condition.
Intent fallback_intent(const std::string& refined);

struct IntentResult {
    RefinedQuestion refined;
    ConstituencyForm form = ConstituencyForm::UNPARSED;
    SyntacticRoles roles;
    Intent intent;
    bool used_fallback = false;
};

/// refine + classify + deconstruct; never throws on unparseable input
/// (the fallback intent is substituted and flagged).
IntentResult extract(const std::string& question, const text::VerbLexicon& verbs);
IntentResult extract(const std::string& question, const text::VerbLexicon& verbs,
                     const RefineTemplate& prompt, const RefinerFn& llm);

} // namespace apigen::intent
