#include "apigen/text.hpp"

#include "apigen/util.hpp"

#include <algorithm>
#include <cctype>

namespace apigen::text {

namespace {

const std::unordered_map<std::string, std::string>& irregular_verbs() {
    static const std::unordered_map<std::string, std::string> table = {
        {"got", "get"},        {"gotten", "get"},     {"made", "make"},
        {"built", "build"},    {"wrote", "write"},    {"written", "write"},
        {"found", "find"},     {"sent", "send"},      {"took", "take"},
        {"taken", "take"},     {"gave", "give"},      {"given", "give"},
        {"ran", "run"},        {"threw", "throw"},    {"thrown", "throw"},
        {"drew", "draw"},      {"drawn", "draw"},     {"chose", "choose"},
        {"chosen", "choose"},  {"hid", "hide"},       {"hidden", "hide"},
        {"held", "hold"},      {"kept", "keep"},      {"left", "leave"},
        {"lost", "lose"},      {"meant", "mean"},     {"paid", "pay"},
        {"said", "say"},       {"saw", "see"},        {"seen", "see"},
        {"sold", "sell"},      {"showed", "show"},    {"shown", "show"},
        {"slept", "sleep"},    {"spent", "spend"},    {"stood", "stand"},
        {"stuck", "stick"},    {"understood", "understand"},
        {"froze", "freeze"},   {"frozen", "freeze"},  {"wound", "wind"},
    };
    return table;
}

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

void push_unique(std::vector<std::string>& out, std::string s) {
    if (s.empty()) return;
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
}

} // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string collapse_ws(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = true; // swallows leading whitespace
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(c);
            in_space = false;
        }
    }
    if (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

std::vector<std::string> lemma_candidates(std::string_view word) {
    std::string w = to_lower(word);
    // strip simple punctuation glued onto a word ("int?", "java.")
    while (!w.empty() && !std::isalnum(static_cast<unsigned char>(w.back())) && w.back() != '-')
        w.pop_back();

    std::vector<std::string> out;
    if (w.empty()) return out;
    out.push_back(w);

    auto irr = irregular_verbs().find(w);
    if (irr != irregular_verbs().end()) push_unique(out, irr->second);

    auto ends = [&](std::string_view suf) {
        return w.size() > suf.size() && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
    };
    auto base = [&](std::size_t n) { return w.substr(0, w.size() - n); };

    if (ends("ies")) push_unique(out, base(3) + "y"); // copies -> copy
    if (ends("s") && !ends("ss")) push_unique(out, base(1));
    if (ends("es")) push_unique(out, base(2));
    if (ends("d")) push_unique(out, base(1)); // parsed -> parse
    if (ends("ed")) {
        std::string b = base(2);
        push_unique(out, b);
        if (b.size() >= 2 && b[b.size() - 1] == b[b.size() - 2]) push_unique(out, b.substr(0, b.size() - 1));
    }
    if (ends("ing")) {
        std::string b = base(3);
        push_unique(out, b);
        push_unique(out, b + "e"); // parsing -> parse
        if (b.size() >= 2 && b[b.size() - 1] == b[b.size() - 2]) push_unique(out, b.substr(0, b.size() - 1));
    }
    return out;
}

std::string lemmatize(std::string_view word, const std::function<bool(const std::string&)>& known) {
    auto cands = lemma_candidates(word);
    for (const auto& c : cands)
        if (known(c)) return c;
    return cands.empty() ? to_lower(word) : cands.front();
}

std::string stem(std::string_view word) {
    std::string w = to_lower(word);
    auto irr = irregular_verbs().find(w);
    if (irr != irregular_verbs().end()) return irr->second;

    auto ends = [&](std::string_view suf) {
        return w.size() > suf.size() + 1 && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends("ing")) {
        w.resize(w.size() - 3);
        if (w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] && !is_vowel(w.back()))
            w.pop_back();
        return w;
    }
    if (ends("ied")) {
        w.resize(w.size() - 3);
        w += 'y';
        return w;
    }
    if (ends("ed")) {
        w.resize(w.size() - 2);
        if (w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] && !is_vowel(w.back()))
            w.pop_back();
        return w;
    }
    if (ends("ies")) {
        w.resize(w.size() - 3);
        w += 'y';
        return w;
    }
    // try plain "s" before "es": parses -> parse, creates -> create
    if (ends("s") && w[w.size() - 2] != 's' && w[w.size() - 2] != 'u') {
        w.pop_back();
        return w;
    }
    if (ends("es")) {
        w.resize(w.size() - 2);
        return w;
    }
    return w;
}

bool stems_overlap(std::string_view a, std::string_view b) {
    if (a.empty() || b.empty()) return false;
    if (a == b) return true;
    const auto& shorter = a.size() <= b.size() ? a : b;
    const auto& longer = a.size() <= b.size() ? b : a;
    return shorter.size() >= 3 && longer.substr(0, shorter.size()) == shorter;
}

bool is_stopword(const std::string& lower_word) {
    static const std::unordered_set<std::string> stops = {
        "a", "an", "the", "to", "in", "of", "on", "for", "with", "by", "at",
        "as", "is", "are", "be", "this", "that", "it", "its", "and", "or",
        "from", "into", "via",
    };
    return stops.count(lower_word) > 0;
}

VerbLexicon VerbLexicon::load(const std::filesystem::path& path) {
    VerbLexicon lex;
    util::for_each_line(path, [&](std::size_t, std::string_view line) {
        auto w = trim(line);
        if (w.empty() || w[0] == '#') return;
        lex.verbs_.insert(to_lower(w));
    });
    if (lex.verbs_.empty()) throw Error("verb lexicon is empty: " + path.string());
    return lex;
}

VerbLexicon VerbLexicon::from_words(const std::vector<std::string>& words) {
    VerbLexicon lex;
    for (const auto& w : words) lex.verbs_.insert(to_lower(w));
    return lex;
}

bool VerbLexicon::contains(std::string_view word) const {
    return verb_lemma(word).has_value();
}

std::optional<std::string> VerbLexicon::verb_lemma(std::string_view word) const {
    for (const auto& c : lemma_candidates(word))
        if (verbs_.count(c)) return c;
    return std::nullopt;
}

CategoryLexicon CategoryLexicon::load(const std::filesystem::path& path) {
    CategoryLexicon lex;
    std::string version;
    util::for_each_line(path, [&](std::size_t no, std::string_view line) {
        auto t = trim(line);
        if (t.empty()) return;
        if (t[0] == '#') {
            auto pos = t.find("version:");
            if (pos != std::string::npos) version = trim(t.substr(pos + 8));
            return;
        }
        auto tab = t.find('\t');
        if (tab == std::string::npos)
            throw ParseError("category lexicon line missing tab separator", no);
        auto lemma = to_lower(trim(t.substr(0, tab)));
        auto category = trim(t.substr(tab + 1));
        if (lemma.empty() || category.empty())
            throw ParseError("category lexicon line has empty field", no);
        lex.map_[lemma] = category;
    });
    if (lex.map_.empty()) throw Error("category lexicon is empty: " + path.string());
    lex.version_ = version.empty() ? util::fnv1a64_hex(util::read_file(path)) : version;
    return lex;
}

CategoryLexicon CategoryLexicon::from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                                            std::string version) {
    CategoryLexicon lex;
    for (const auto& [lemma, cat] : pairs) lex.map_[to_lower(lemma)] = cat;
    lex.version_ = std::move(version);
    return lex;
}

std::optional<std::string> CategoryLexicon::category_for_lemma(const std::string& lemma) const {
    auto it = map_.find(lemma);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

bool CategoryLexicon::has_lemma(const std::string& lemma) const {
    return map_.count(lemma) > 0;
}

std::vector<std::string> CategoryLexicon::categories() const {
    std::vector<std::string> out;
    for (const auto& [_, cat] : map_)
        if (std::find(out.begin(), out.end(), cat) == out.end()) out.push_back(cat);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace apigen::text
