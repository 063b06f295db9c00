#pragma once

#include "apigen/text.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace apigen::corpus {

enum class PostSource { stackoverflow, tutorial, other };

/// One Q&A example: a programming question and its ground-truth APIs.
struct Post {
    std::string id;
    std::string question;
    std::vector<std::string> answer_apis;
    PostSource source = PostSource::other;
};

struct ApiEntry {
    std::string fqn;        // package.Class.method, original casing
    std::string class_fqn;  // package.Class
    std::string method_name;
    std::string description; // first-sentence functional description
    std::string category;
    bool deprecated = false;
};

/// Immutable after build; keyed by the normalized fqn.
class ApiDictionary {
public:
    void add(ApiEntry entry); // throws on duplicate normalized fqn
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::map<std::string, ApiEntry>& entries() const { return entries_; }

    const std::string& lexicon_version() const { return lexicon_version_; }
    void set_lexicon_version(std::string v) { lexicon_version_ = std::move(v); }

private:
    std::map<std::string, ApiEntry> entries_; // normalized fqn -> entry
    std::string lexicon_version_ = "unknown";
};

/// Line-delimited posts file: {id, question, answer_apis, source}.
/// Errors carry the offending line number; a duplicated id names both lines.
std::vector<Post> load_posts(const std::filesystem::path& path);

/// Query records share the posts schema but answers are optional.
struct Query {
    std::string id;
    std::string question;
};
std::vector<Query> load_queries(const std::filesystem::path& path);

const char* source_name(PostSource s);

/// First lexicon verb found scanning the description left to right decides
/// the category; no hit (or empty input) is "other". Total and deterministic.
std::string categorize(const std::string& description, const text::CategoryLexicon& lexicon);

struct DictionaryBuildStats {
    std::size_t files_parsed = 0;
    std::size_t deprecated_excluded = 0;
    std::size_t overloads_merged = 0;
    std::vector<std::string> warnings; // unparseable files, skipped
};

/// Build the dictionary from a tree of per-class reference-doc HTML pages.
/// Files are visited in sorted path order so rebuilds are byte-identical.
/// Deprecated rows (description starting "Deprecated.") are excluded.
/// Throws Error when the tree yields zero entries.
ApiDictionary build_dictionary(const std::filesystem::path& html_root,
                               const text::CategoryLexicon& lexicon,
                               DictionaryBuildStats* stats = nullptr);

struct LookupOutcome {
    const ApiEntry* entry = nullptr; // null when not found
    bool ambiguous = false;          // several entries share the suffix
    explicit operator bool() const { return entry != nullptr; }
};

/// Normalize the name, then match: exact fqn first, else a unique
/// Class.method dotted-suffix. Deprecated entries are never returned.
LookupOutcome lookup(const std::string& api_name, const ApiDictionary& dict);

/// Dictionary cache file: one record per line with fields fqn, class_fqn,
/// method_name, description, category, deprecated.
void save_dictionary(const ApiDictionary& dict, const std::filesystem::path& path);
ApiDictionary load_dictionary(const std::filesystem::path& path);

} // namespace apigen::corpus
