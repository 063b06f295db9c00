#include "apigen/reasoning.hpp"

#include "apigen/text.hpp"
#include "apigen/tokenize.hpp"

#include <algorithm>
#include <sstream>

namespace apigen::reasoning {

Knowledge detect_knowledge(const std::string& api_name, const corpus::ApiDictionary& dict) {
    auto outcome = corpus::lookup(api_name, dict);
    if (!outcome) throw KnowledgeError(api_name, outcome.ambiguous);
    Knowledge k;
    k.entry = *outcome.entry;
    k.description = outcome.entry->description;
    k.category = outcome.entry->category;
    return k;
}

namespace {

bool action_in_category(const std::string& action, const std::string& category) {
    std::vector<std::string> labels;
    std::string cur;
    for (char c : category) {
        if (c == '/') {
            labels.push_back(text::trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    labels.push_back(text::trim(cur));
    for (const auto& cand : text::lemma_candidates(action))
        if (std::find(labels.begin(), labels.end(), cand) != labels.end()) return true;
    return false;
}

struct ContentToken {
    std::string stem;
    std::size_t begin, end;
};

std::vector<ContentToken> content_tokens(const std::string& s) {
    std::vector<ContentToken> out;
    for (const auto& t : retrieval::tokenize_with_spans(s)) {
        if (text::is_stopword(t.token)) continue;
        out.push_back({text::stem(t.token), t.begin, t.end});
    }
    return out;
}

std::vector<std::string> slot_stems(const std::string& s) {
    std::vector<std::string> out;
    for (const auto& t : retrieval::tokenize(s)) {
        if (text::is_stopword(t)) continue;
        auto st = text::stem(t);
        if (std::find(out.begin(), out.end(), st) == out.end()) out.push_back(st);
    }
    return out;
}

/// Best description window for one slot by Jaccard over stems, where two
/// stems count as shared when stems_overlap holds. Ties prefer the earliest
/// start, then the shortest window.
EntityLink link_slot(const std::string& slot, const std::string& slot_text,
                     const std::string& description,
                     const std::vector<ContentToken>& desc_tokens) {
    EntityLink link;
    link.slot = slot;
    auto stems = slot_stems(slot_text);
    if (stems.empty() || desc_tokens.empty()) return link;

    double best = 0.0;
    std::size_t best_start = 0, best_len = 0;
    const std::size_t max_len = std::min(desc_tokens.size(), stems.size() + 2);
    for (std::size_t len = 1; len <= max_len; ++len) {
        for (std::size_t start = 0; start + len <= desc_tokens.size(); ++start) {
            std::size_t shared = 0;
            for (const auto& s : stems) {
                for (std::size_t w = start; w < start + len; ++w) {
                    if (text::stems_overlap(s, desc_tokens[w].stem)) {
                        ++shared;
                        break;
                    }
                }
            }
            if (shared == 0) continue;
            double jac = static_cast<double>(shared) /
                         static_cast<double>(stems.size() + len - shared);
            bool better = best == 0.0 || jac > best ||
                          (jac == best && (start < best_start ||
                                           (start == best_start && len < best_len)));
            if (better) {
                best = jac;
                best_start = start;
                best_len = len;
            }
        }
    }
    if (best > 0.0) {
        link.matched = true;
        link.begin = desc_tokens[best_start].begin;
        link.end = desc_tokens[best_start + best_len - 1].end;
        link.span = description.substr(link.begin, link.end - link.begin);
    }
    return link;
}

} // namespace

Alignment match_intent_knowledge(const intent::Intent& intent, const Knowledge& knowledge) {
    Alignment a;
    if (!intent.action.empty())
        a.action_matches_category = action_in_category(text::to_lower(intent.action),
                                                       knowledge.category);
    auto desc_tokens = content_tokens(knowledge.description);
    if (intent.object)
        a.entity_links.push_back(link_slot("object", *intent.object, knowledge.description,
                                           desc_tokens));
    if (intent.target)
        a.entity_links.push_back(link_slot("target", *intent.target, knowledge.description,
                                           desc_tokens));
    if (intent.condition)
        a.entity_links.push_back(link_slot("condition", *intent.condition,
                                           knowledge.description, desc_tokens));
    return a;
}

ReasonTemplate ReasonTemplate::load(const std::filesystem::path& path) {
    ReasonTemplate t;
    std::string* section = nullptr;
    util::for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        auto trimmed = text::trim(line);
        if (trimmed.empty()) return;
        if (trimmed[0] == '#') {
            // "# reasoning template, version v1" -> "v1"
            if (t.version.empty() && trimmed.find("version") != std::string::npos) {
                auto words = text::split_words(trimmed);
                if (!words.empty()) t.version = words.back();
            }
            return;
        }
        if (trimmed == "[full]") { section = &t.full; return; }
        if (trimmed == "[reduced]") { section = &t.reduced; return; }
        if (trimmed == "[fallback]") { section = &t.fallback; return; }
        if (!section)
            throw ParseError("template text before any section header", lineno);
        if (!section->empty()) *section += '\n';
        *section += trimmed;
    });
    if (t.version.empty()) t.version = path.stem().string();
    if (t.full.empty() || t.reduced.empty() || t.fallback.empty())
        throw Error("reasoning template " + path.string() +
                    " must define [full], [reduced], and [fallback] sections");
    return t;
}

std::string intent_phrase(const intent::Intent& intent) {
    std::string out = intent.action;
    auto append = [&out](const std::string& part) {
        if (part.empty()) return;
        if (!out.empty()) out += ' ';
        out += part;
    };
    if (intent.object) append(*intent.object);
    if (intent.target) append("to achieve " + *intent.target);
    if (intent.condition) append(*intent.condition);
    return out;
}

namespace {

std::string matched_slot_phrase(const Alignment& alignment) {
    std::vector<std::string> names;
    for (const char* slot : {"object", "target", "condition"}) {
        for (const auto& link : alignment.entity_links)
            if (link.matched && link.slot == slot) names.push_back(std::string("the ") + slot);
    }
    if (names.empty()) return "no intent slot";
    if (names.size() == 1) return names[0];
    if (names.size() == 2) return names[0] + " and " + names[1];
    return names[0] + ", " + names[1] + ", and " + names[2];
}

std::string fill(std::string tmpl, const std::vector<std::pair<std::string, std::string>>& vars) {
    for (const auto& [key, value] : vars) {
        const std::string token = "{" + key + "}";
        for (std::size_t at = tmpl.find(token); at != std::string::npos;
             at = tmpl.find(token, at)) {
            tmpl.replace(at, token.size(), value);
            at += value.size();
        }
    }
    return tmpl;
}

} // namespace

ReasoningText render_reason(const intent::Intent& intent,
                            const std::optional<Knowledge>& knowledge,
                            const Alignment& alignment, const std::string& api_name,
                            const ReasonTemplate& tmpl) {
    const std::string display = knowledge ? knowledge->entry.fqn : api_name;
    ReasoningText out;
    out.template_version = tmpl.version;
    if (intent.action.empty()) {
        out.text = fill(tmpl.fallback, {{"condition", intent.condition.value_or("")},
                                        {"fqn", display}});
    } else if (knowledge) {
        out.text = fill(tmpl.full,
                        {{"intent", intent_phrase(intent)},
                         {"fqn", display},
                         {"description", knowledge->description},
                         {"category", knowledge->category},
                         {"category_match",
                          alignment.action_matches_category ? "matches" : "does not match"},
                         {"action", intent.action},
                         {"matched_slots", matched_slot_phrase(alignment)}});
    } else {
        out.text = fill(tmpl.reduced, {{"intent", intent_phrase(intent)}, {"fqn", display}});
    }
    if (out.text.empty()) throw Error("rendered reasoning text is empty");
    return out;
}

ReasoningText build_reason(const intent::Intent& intent, const std::string& api_name,
                           const corpus::ApiDictionary& dict, const ReasonTemplate& tmpl) {
    try {
        Knowledge k = detect_knowledge(api_name, dict);
        Alignment a = match_intent_knowledge(intent, k);
        return render_reason(intent, k, a, api_name, tmpl);
    } catch (const KnowledgeError&) {
        return render_reason(intent, std::nullopt, Alignment{}, api_name, tmpl);
    }
}

} // namespace apigen::reasoning
