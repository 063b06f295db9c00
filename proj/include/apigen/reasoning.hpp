#pragma once

#include "apigen/corpus.hpp"
#include "apigen/intent.hpp"
#include "apigen/util.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace apigen::reasoning {

/// Factual knowledge about one API, copied verbatim from its dictionary entry.
struct Knowledge {
    corpus::ApiEntry entry;
    std::string description;
    std::string category;
};

class KnowledgeError : public Error {
  public:
    KnowledgeError(std::string api_name, bool ambiguous)
        : Error(ambiguous ? "API name \"" + api_name + "\" is ambiguous in the dictionary"
                          : "API \"" + api_name + "\" not found in the dictionary"),
          api_name_(std::move(api_name)), ambiguous_(ambiguous) {}
    const std::string& api_name() const { return api_name_; }
    bool ambiguous() const { return ambiguous_; }

  private:
    std::string api_name_;
    bool ambiguous_;
};

/// Dictionary lookup wrapped as knowledge. Throws KnowledgeError when the
/// name is missing or suffix-ambiguous; callers degrade to a reduced reason.
Knowledge detect_knowledge(const std::string& api_name, const corpus::ApiDictionary& dict);

struct EntityLink {
    std::string slot;  // "object", "target", or "condition"
    std::string span;  // substring of the description; empty when unmatched
    std::size_t begin = 0;
    std::size_t end = 0;
    bool matched = false;
};

struct Alignment {
    bool action_matches_category = false;
    std::vector<EntityLink> entity_links; // at most one per intent slot
};

/// Fine-grained intent/knowledge matching: the action's lemma against the
/// category label's slash-separated verbs, and each present intent slot
/// against the best token-overlap window of the description (Jaccard over
/// content-token stems; matched iff overlap > 0).
Alignment match_intent_knowledge(const intent::Intent& intent, const Knowledge& knowledge);

/// Reasoning template file: '#' comment lines (the first names the version),
/// then [full] / [reduced] / [fallback] sections, one rendering each.
struct ReasonTemplate {
    std::string version;
    std::string full;     // knowledge found, intent parsed
    std::string reduced;  // knowledge missing, intent parsed
    std::string fallback; // intent fell back (empty action)

    static ReasonTemplate load(const std::filesystem::path& path);
};

struct ReasoningText {
    std::string text; // non-empty; names the API exactly once
    std::string template_version;
};

/// Deterministic template fill. Section choice: empty intent action ->
/// fallback; with knowledge -> full; without -> reduced. `api_name` is the
/// display name when there is no dictionary entry to take the fqn from.
ReasoningText render_reason(const intent::Intent& intent,
                            const std::optional<Knowledge>& knowledge,
                            const Alignment& alignment, const std::string& api_name,
                            const ReasonTemplate& tmpl);

/// detect + match + render with the documented degradation: lookup failures
/// produce the reduced (or fallback) rendering instead of an error.
ReasoningText build_reason(const intent::Intent& intent, const std::string& api_name,
                           const corpus::ApiDictionary& dict, const ReasonTemplate& tmpl);

/// The "{intent}" placeholder text: action, object, "to achieve" target,
/// condition — whichever are present, space-joined.
std::string intent_phrase(const intent::Intent& intent);

} // namespace apigen::reasoning
