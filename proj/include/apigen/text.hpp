#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace apigen::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

/// Collapse every whitespace run to a single space and trim the ends.
std::string collapse_ws(std::string_view s);

/// Whitespace-separated words, original casing preserved.
std::vector<std::string> split_words(std::string_view s);

/// Candidate base forms for an inflected word, most specific first:
/// the irregular table, then suffix stripping ("s", "es", "ed"/"d",
/// "ing") with final-e restoration and doubled-consonant undo.
/// All candidates are lowercase; the word itself is always first.
std::vector<std::string> lemma_candidates(std::string_view word);

/// First candidate accepted by `known`, or the lowercase word unchanged.
std::string lemmatize(std::string_view word, const std::function<bool(const std::string&)>& known);

/// Stem for overlap matching: first lemma candidate that differs from the
/// raw lowercase form under plain suffix stripping (no dictionary).
/// Deterministic and total.
std::string stem(std::string_view word);

/// Two stems overlap when equal or one is a prefix of the other (>= 3 chars).
bool stems_overlap(std::string_view a, std::string_view b);

bool is_stopword(const std::string& lower_word);

/// Loaded from a one-verb-per-line file. Membership checks run lemma
/// candidates against the set, so "converts"/"converting" count.
class VerbLexicon {
public:
    static VerbLexicon load(const std::filesystem::path& path);
    static VerbLexicon from_words(const std::vector<std::string>& words);

    bool contains(std::string_view word) const;
    /// Lemma of `word` if it is a known verb, otherwise nullopt.
    std::optional<std::string> verb_lemma(std::string_view word) const;
    std::size_t size() const { return verbs_.size(); }

private:
    std::unordered_set<std::string> verbs_;
};

/// lemma<TAB>category lines; '#' lines are comments. A "# version: <v>"
/// comment names the lexicon version, else a content hash is used.
class CategoryLexicon {
public:
    static CategoryLexicon load(const std::filesystem::path& path);
    static CategoryLexicon from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                                      std::string version = "inline");

    std::optional<std::string> category_for_lemma(const std::string& lemma) const;
    bool has_lemma(const std::string& lemma) const;
    const std::string& version() const { return version_; }
    bool empty() const { return map_.empty(); }

    /// Every category value in the lexicon (no sentinel).
    std::vector<std::string> categories() const;

private:
    std::unordered_map<std::string, std::string> map_;
    std::string version_;
};

} // namespace apigen::text
