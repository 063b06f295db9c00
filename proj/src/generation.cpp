#include "apigen/generation.hpp"

#include "apigen/evaluation.hpp"
#include "apigen/text.hpp"
#include "apigen/util.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <unordered_map>
#include <unordered_set>

namespace apigen::generation {

std::vector<Demonstration> build_demonstrations(const std::vector<corpus::Post>& posts,
                                                const corpus::ApiDictionary& dict,
                                                const text::VerbLexicon& verbs,
                                                const reasoning::ReasonTemplate& tmpl,
                                                bool reasoning_enabled) {
    std::vector<Demonstration> demos;
    demos.reserve(posts.size());
    for (const auto& post : posts) {
        Demonstration d;
        d.question = post.question;
        d.answer_apis = post.answer_apis;
        if (reasoning_enabled && !post.answer_apis.empty()) {
            auto extracted = intent::extract(post.question, verbs);
            d.reasoning = reasoning::build_reason(extracted.intent, post.answer_apis.front(),
                                                  dict, tmpl);
        }
        demos.push_back(std::move(d));
    }
    return demos;
}

std::string render_prompt(const std::vector<Demonstration>& demonstrations,
                          const std::string& query, bool reasoning_enabled) {
    std::string out;
    for (const auto& d : demonstrations) {
        out += "Question: " + d.question + "\n";
        if (reasoning_enabled)
            out += "Reason: " + (d.reasoning ? d.reasoning->text : std::string()) + "\n";
        out += "Answer: ";
        for (std::size_t i = 0; i < d.answer_apis.size(); ++i) {
            if (i > 0) out += ", ";
            out += d.answer_apis[i];
        }
        out += "\n\n";
    }
    out += "Question: " + query + "\n";
    out += reasoning_enabled ? "Reason:" : "Answer:";
    return out;
}

PromptBundle make_bundle(std::vector<Demonstration> demonstrations, std::string query,
                         bool reasoning_enabled) {
    PromptBundle b;
    b.demonstrations = std::move(demonstrations);
    b.query = std::move(query);
    b.reasoning_enabled = reasoning_enabled;
    b.rendered = render_prompt(b.demonstrations, b.query, reasoning_enabled);
    return b;
}

namespace {

/// Trimmed sentence containing [begin, end): bounded by newlines or by
/// '.', '?', '!' followed by whitespace — so the dots inside a dotted API
/// name never split its own sentence.
std::string sentence_around(const std::string& text, std::size_t begin, std::size_t end) {
    std::size_t s = 0;
    for (std::size_t i = begin; i > 0; --i) {
        char c = text[i - 1];
        if (c == '\n') {
            s = i;
            break;
        }
        if ((c == '.' || c == '?' || c == '!') && i < text.size() &&
            std::isspace(static_cast<unsigned char>(text[i]))) {
            s = i;
            break;
        }
    }
    std::size_t e = text.size();
    for (std::size_t i = end; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n') {
            e = i;
            break;
        }
        if ((c == '.' || c == '?' || c == '!') &&
            (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
            e = i + 1;
            break;
        }
    }
    return text::collapse_ws(text.substr(s, e - s));
}

bool is_prose_abbreviation(const std::string& canonical) {
    static const std::unordered_set<std::string> noise = {"e.g", "i.e"};
    return noise.count(canonical) > 0;
}

} // namespace

ParsedSample parse_sample(const std::string& text) {
    static const std::regex pattern(
        R"(([A-Za-z_$][A-Za-z0-9_$]*\.)+[A-Za-z_$][A-Za-z0-9_$]*(\(\))?)");
    ParsedSample out;
    std::unordered_set<std::string> seen;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), pattern);
         it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        std::string canonical = evaluation::normalize_api(m.str());
        if (is_prose_abbreviation(canonical) || !seen.insert(canonical).second) continue;
        out.apis.push_back(canonical);
        out.reasons[canonical] = sentence_around(text, static_cast<std::size_t>(m.position()),
                                                 static_cast<std::size_t>(m.position()) +
                                                     m.str().size());
    }
    return out;
}

std::vector<std::string> aggregate(const std::vector<ParsedSample>& samples) {
    struct Tally {
        std::size_t freq = 0;
        std::size_t first_sample = 0;
        std::size_t first_pos = 0;
    };
    std::unordered_map<std::string, Tally> tallies;
    std::vector<std::string> order; // first-appearance order overall
    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (std::size_t p = 0; p < samples[s].apis.size(); ++p) {
            const auto& api = samples[s].apis[p];
            auto [it, inserted] = tallies.try_emplace(api, Tally{0, s, p});
            ++it->second.freq;
            if (inserted) order.push_back(api);
        }
    }
    std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        const Tally& ta = tallies.at(a);
        const Tally& tb = tallies.at(b);
        if (ta.freq != tb.freq) return ta.freq > tb.freq;
        if (ta.first_sample != tb.first_sample) return ta.first_sample < tb.first_sample;
        return ta.first_pos < tb.first_pos;
    });
    return order;
}

Recommendation recommend_from_samples(std::string query_id,
                                      std::vector<std::string> raw_samples) {
    Recommendation rec;
    rec.query_id = std::move(query_id);
    rec.raw_samples = std::move(raw_samples);
    std::vector<ParsedSample> parsed;
    parsed.reserve(rec.raw_samples.size());
    for (const auto& s : rec.raw_samples) parsed.push_back(parse_sample(s));
    rec.ranked_apis = aggregate(parsed);
    for (const auto& ps : parsed)
        for (const auto& api : ps.apis)
            if (!rec.reasons.count(api)) rec.reasons[api] = ps.reasons.at(api);
    return rec;
}

} // namespace apigen::generation
