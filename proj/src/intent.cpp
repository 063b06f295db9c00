#include "apigen/intent.hpp"

#include "apigen/util.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace apigen::intent {

const char* form_name(ConstituencyForm f) {
    switch (f) {
    case ConstituencyForm::VB_NP_X: return "VB+NP+(PP/S)";
    case ConstituencyForm::VB_NP_PP_X: return "VB+NP+PP+(PP/S)";
    case ConstituencyForm::VB_S: return "VB+S";
    case ConstituencyForm::UNPARSED: return "UNPARSED";
    }
    return "?";
}

RefineTemplate RefineTemplate::load(const std::filesystem::path& path) {
    RefineTemplate t;
    t.version = path.stem().string();
    t.body = util::read_file(path);
    if (t.body.find("{question}") == std::string::npos)
        throw Error("refinement template " + path.string() + " lacks a {question} placeholder");
    return t;
}

std::string RefineTemplate::render(const std::string& question) const {
    std::string out = body;
    const std::string key = "{question}";
    for (std::size_t at = out.find(key); at != std::string::npos; at = out.find(key, at))
        out.replace(at, key.size(), question), at += question.size();
    return out;
}

namespace {

struct Word {
    std::string text;
    std::string lower;
    std::size_t begin = 0;
    std::size_t end = 0;
};

std::vector<Word> words_with_spans(const std::string& s) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t b = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > b) {
            Word w;
            w.text = s.substr(b, i - b);
            w.lower = text::to_lower(w.text);
            w.begin = b;
            w.end = i;
            out.push_back(std::move(w));
        }
    }
    return out;
}

bool is_preposition(const std::string& lower) {
    static const std::unordered_set<std::string> preps = {
        "in", "on", "at", "to", "from", "into", "onto", "of", "for", "with",
        "without", "over", "under", "by", "via", "as", "per", "through",
        "during", "between", "among", "within", "inside", "outside",
        "before", "after", "against", "about", "across", "along", "around",
        "behind", "below", "beneath", "beside", "near", "toward", "towards", "upon"};
    return preps.count(lower) > 0;
}

bool is_clause_starter(const std::string& lower) {
    static const std::unordered_set<std::string> starters = {
        "if", "when", "whether", "while", "because", "so",
        "that", "where", "unless", "until"};
    return starters.count(lower) > 0;
}

/// Cut at the first sentence terminator: '?'/'!' immediately, '.' only
/// when followed by whitespace or end (so "2.5" and "java.util" survive).
std::string first_sentence(const std::string& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '?' || c == '!') return s.substr(0, i);
        if (c == '.' &&
            (i + 1 == s.size() || std::isspace(static_cast<unsigned char>(s[i + 1]))))
            return s.substr(0, i);
    }
    return s;
}

bool ci_prefix(const std::string& s, const std::string& prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
    // must end the string or sit on a word boundary
    return s.size() == prefix.size() ||
           std::isspace(static_cast<unsigned char>(s[prefix.size()]));
}

std::string strip_scaffolding(const std::string& s) {
    static const std::array<std::string, 4> scaffolds = {
        "what is the way to", "how can i", "how do i", "how to"};
    for (const auto& sc : scaffolds)
        if (ci_prefix(s, sc)) return text::trim(s.substr(sc.size()));
    return s;
}

bool has_lexicon_verb(const std::vector<Word>& words, const text::VerbLexicon& verbs) {
    return std::any_of(words.begin(), words.end(),
                       [&](const Word& w) { return verbs.contains(w.text); });
}

bool has_x_to_y(const std::vector<Word>& words) {
    for (std::size_t i = 1; i + 1 < words.size(); ++i)
        if (words[i].lower == "to") return true;
    return false;
}

TokenSpan cover(const std::string& s, const Word& first, const Word& last) {
    return {s.substr(first.begin, last.end - first.begin), first.begin, last.end};
}

} // namespace

RefinedQuestion refine(const std::string& question, const text::VerbLexicon& verbs) {
    std::string collapsed = text::collapse_ws(question);
    if (collapsed.empty()) throw Error("cannot refine an empty question");
    std::string sentence = text::trim(first_sentence(collapsed));
    if (sentence.empty()) sentence = collapsed;
    std::string stripped = strip_scaffolding(sentence);
    if (stripped.empty()) stripped = sentence;

    RefinedQuestion out;
    out.original = question;
    auto words = words_with_spans(stripped);
    if (!has_lexicon_verb(words, verbs)) {
        out.refined = (has_x_to_y(words) ? std::string("convert ") : std::string("handle ")) +
                      stripped;
        out.verb_inserted = true;
    } else {
        out.refined = stripped;
    }
    out.refined_by = out.refined == question ? RefinedBy::none : RefinedBy::heuristic;
    return out;
}

RefinedQuestion refine(const std::string& question, const text::VerbLexicon& verbs,
                       const RefineTemplate& prompt, const RefinerFn& llm) {
    if (llm) {
        std::optional<std::string> raw;
        try {
            raw = llm(prompt.render(text::collapse_ws(question)));
        } catch (const std::exception&) {
            raw.reset();
        }
        if (raw) {
            // Keep the first non-empty line of the reply; trailing '?' is
            // scaffolding we never want in a refined question.
            std::string line;
            for (auto& candidate : util::split_lines(*raw)) {
                line = text::collapse_ws(candidate);
                if (!line.empty()) break;
            }
            while (!line.empty() && (line.back() == '?' || line.back() == '.')) line.pop_back();
            line = text::trim(line);
            if (!line.empty()) {
                RefinedQuestion out;
                out.original = question;
                out.refined = line;
                out.refined_by = RefinedBy::llm;
                auto orig_words = words_with_spans(text::collapse_ws(question));
                auto new_words = words_with_spans(line);
                out.verb_inserted = !new_words.empty() &&
                                    verbs.contains(new_words.front().text) &&
                                    !has_lexicon_verb(orig_words, verbs);
                return out;
            }
        }
    }
    auto out = refine(question, verbs);
    out.refined_by = RefinedBy::heuristic;
    return out;
}

std::pair<ConstituencyForm, SyntacticRoles> classify(const std::string& refined,
                                                     const text::VerbLexicon& verbs) {
    SyntacticRoles roles;
    auto words = words_with_spans(refined);
    if (words.empty()) throw Error("cannot classify an empty question");

    std::size_t vi = words.size();
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (verbs.contains(words[i].text)) {
            vi = i;
            break;
        }
    }
    if (vi == words.size()) return {ConstituencyForm::UNPARSED, roles};
    roles.verb = TokenSpan{words[vi].text, words[vi].begin, words[vi].end};
    if (vi + 1 == words.size()) return {ConstituencyForm::UNPARSED, roles}; // bare verb

    std::size_t j = vi + 1;
    if (is_clause_starter(words[j].lower)) {
        roles.trailing = cover(refined, words[j], words.back());
        return {ConstituencyForm::VB_S, roles};
    }
    if (is_preposition(words[j].lower))
        return {ConstituencyForm::UNPARSED, roles}; // verb straight into a PP: no NP row

    // Noun chunk: everything up to the first preposition or clause starter.
    std::size_t np_end = j;
    while (np_end < words.size() && !is_preposition(words[np_end].lower) &&
           !is_clause_starter(words[np_end].lower))
        ++np_end;
    roles.dobj = TokenSpan{words[np_end - 1].text, words[np_end - 1].begin, words[np_end - 1].end};
    if (np_end - j >= 2) roles.dmod = cover(refined, words[j], words[np_end - 2]);
    if (np_end == words.size()) return {ConstituencyForm::UNPARSED, roles}; // VB+NP alone

    // Post-NP chunks: PPs delimited by the next preposition/clause starter;
    // a clause swallows the rest of the sentence.
    struct Chunk {
        bool clause;
        std::size_t first, last; // word indices, inclusive
    };
    std::vector<Chunk> chunks;
    std::size_t p = np_end;
    while (p < words.size()) {
        if (is_clause_starter(words[p].lower)) {
            chunks.push_back({true, p, words.size() - 1});
            break;
        }
        std::size_t q = p + 1;
        while (q < words.size() && !is_preposition(words[q].lower) &&
               !is_clause_starter(words[q].lower))
            ++q;
        chunks.push_back({false, p, q - 1});
        p = q;
    }

    if (chunks.size() == 1) {
        roles.trailing = cover(refined, words[chunks[0].first], words[chunks[0].last]);
        return {ConstituencyForm::VB_NP_X, roles};
    }
    // Two or more chunks: the first is necessarily a PP (a clause would have
    // consumed everything), and it supplies pobj/pmod.
    const Chunk& pp = chunks.front();
    if (pp.last > pp.first) {
        roles.pobj = TokenSpan{words[pp.last].text, words[pp.last].begin, words[pp.last].end};
        if (pp.last - pp.first >= 2) roles.pmod = cover(refined, words[pp.first + 1], words[pp.last - 1]);
    }
    roles.trailing = cover(refined, words[chunks[1].first], words.back());
    return {ConstituencyForm::VB_NP_PP_X, roles};
}

namespace {

/// Modifier-first surface phrase: the covering substring from the modifier's
/// start to the head's end ("a" + "String" -> "a String").
std::optional<std::string> phrase(const std::string& refined,
                                  const std::optional<TokenSpan>& mod,
                                  const std::optional<TokenSpan>& head) {
    if (!head) return std::nullopt;
    if (!mod) return head->text;
    return refined.substr(mod->begin, head->end - mod->begin);
}

} // namespace

Intent deconstruct(ConstituencyForm form, const SyntacticRoles& roles,
                   const std::string& refined) {
    if (form == ConstituencyForm::UNPARSED)
        throw Error("cannot deconstruct an UNPARSED question");
    if (!roles.verb || roles.verb->text.empty())
        throw Error("deconstruct needs a verb role for form " + std::string(form_name(form)));

    Intent intent;
    intent.action = roles.verb->text;
    switch (form) {
    case ConstituencyForm::VB_NP_X:
        intent.target = phrase(refined, roles.dmod, roles.dobj);
        if (roles.trailing) intent.condition = roles.trailing->text;
        break;
    case ConstituencyForm::VB_NP_PP_X:
        intent.object = phrase(refined, roles.dmod, roles.dobj);
        intent.target = phrase(refined, roles.pmod, roles.pobj);
        if (roles.trailing) intent.condition = roles.trailing->text;
        break;
    case ConstituencyForm::VB_S:
        if (roles.trailing) intent.condition = roles.trailing->text;
        break;
    case ConstituencyForm::UNPARSED:
        break; // unreachable
    }
    return intent;
}

Intent fallback_intent(const std::string& refined) {
    Intent intent;
    intent.action.clear();
    intent.condition = refined;
    return intent;
}

namespace {

IntentResult finish(RefinedQuestion refined, const text::VerbLexicon& verbs) {
    IntentResult r;
    r.refined = std::move(refined);
    std::tie(r.form, r.roles) = classify(r.refined.refined, verbs);
    if (r.form == ConstituencyForm::UNPARSED) {
        r.intent = fallback_intent(r.refined.refined);
        r.used_fallback = true;
    } else {
        r.intent = deconstruct(r.form, r.roles, r.refined.refined);
    }
    return r;
}

} // namespace

IntentResult extract(const std::string& question, const text::VerbLexicon& verbs) {
    return finish(refine(question, verbs), verbs);
}

IntentResult extract(const std::string& question, const text::VerbLexicon& verbs,
                     const RefineTemplate& prompt, const RefinerFn& llm) {
    return finish(refine(question, verbs, prompt, llm), verbs);
}

} // namespace apigen::intent
