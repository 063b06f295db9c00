#include "apigen/corpus.hpp"

#include "apigen/evaluation.hpp"
#include "apigen/html.hpp"
#include "apigen/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

using nlohmann::json;

namespace apigen::corpus {

namespace {

PostSource parse_source(const std::string& s, std::size_t line) {
    if (s == "stackoverflow") return PostSource::stackoverflow;
    if (s == "tutorial") return PostSource::tutorial;
    if (s == "other") return PostSource::other;
    throw ParseError("unknown post source \"" + s + "\"", line);
}

json parse_record(std::string_view line, std::size_t no) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed record: ") + e.what(), no);
    }
}

} // namespace

const char* source_name(PostSource s) {
    switch (s) {
        case PostSource::stackoverflow: return "stackoverflow";
        case PostSource::tutorial: return "tutorial";
        case PostSource::other: return "other";
    }
    return "other";
}

std::vector<Post> load_posts(const std::filesystem::path& path) {
    std::vector<Post> posts;
    std::map<std::string, std::size_t> id_lines;
    util::for_each_line(path, [&](std::size_t no, std::string_view line) {
        if (text::trim(line).empty()) return;
        json j = parse_record(line, no);
        if (!j.contains("id")) throw ParseError("post record missing \"id\"", no);
        if (!j.contains("question")) throw ParseError("post record missing \"question\"", no);
        if (!j.contains("answer_apis")) throw ParseError("post record missing \"answer_apis\"", no);

        Post p;
        p.id = j.at("id").get<std::string>();
        p.question = text::trim(j.at("question").get<std::string>());
        if (p.question.empty()) throw ParseError("post question is empty", no);
        for (const auto& a : j.at("answer_apis")) p.answer_apis.push_back(a.get<std::string>());
        if (p.answer_apis.empty()) throw ParseError("post has no answer_apis", no);
        if (j.contains("source")) p.source = parse_source(j.at("source").get<std::string>(), no);

        auto [it, inserted] = id_lines.emplace(p.id, no);
        if (!inserted)
            throw ParseError("duplicate post id \"" + p.id + "\" (first seen on line " +
                                 std::to_string(it->second) + ")",
                             no);
        posts.push_back(std::move(p));
    });
    return posts;
}

std::vector<Query> load_queries(const std::filesystem::path& path) {
    std::vector<Query> out;
    std::map<std::string, std::size_t> id_lines;
    util::for_each_line(path, [&](std::size_t no, std::string_view line) {
        if (text::trim(line).empty()) return;
        json j = parse_record(line, no);
        if (!j.contains("id")) throw ParseError("query record missing \"id\"", no);
        if (!j.contains("question")) throw ParseError("query record missing \"question\"", no);
        Query q{j.at("id").get<std::string>(), text::trim(j.at("question").get<std::string>())};
        if (q.question.empty()) throw ParseError("query question is empty", no);
        auto [it, inserted] = id_lines.emplace(q.id, no);
        if (!inserted)
            throw ParseError("duplicate query id \"" + q.id + "\" (first seen on line " +
                                 std::to_string(it->second) + ")",
                             no);
        out.push_back(std::move(q));
    });
    return out;
}

std::string categorize(const std::string& description, const text::CategoryLexicon& lexicon) {
    for (const auto& word : text::split_words(description)) {
        for (const auto& cand : text::lemma_candidates(word)) {
            auto cat = lexicon.category_for_lemma(cand);
            if (cat) return *cat;
        }
    }
    return "other";
}

void ApiDictionary::add(ApiEntry entry) {
    auto key = evaluation::normalize_api(entry.fqn);
    auto [it, inserted] = entries_.emplace(key, std::move(entry));
    if (!inserted) throw Error("duplicate dictionary fqn: " + key);
}

ApiDictionary build_dictionary(const std::filesystem::path& html_root,
                               const text::CategoryLexicon& lexicon,
                               DictionaryBuildStats* stats) {
    if (!std::filesystem::is_directory(html_root))
        throw Error("not a directory: " + html_root.string());

    std::vector<std::filesystem::path> pages;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(html_root)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension();
        if (ext == ".html" || ext == ".htm") pages.push_back(entry.path());
    }
    std::sort(pages.begin(), pages.end());

    DictionaryBuildStats local;
    DictionaryBuildStats& st = stats ? *stats : local;
    ApiDictionary dict;
    dict.set_lexicon_version(lexicon.version());

    for (const auto& page : pages) {
        html::ClassDoc doc;
        try {
            doc = html::parse_class_page(util::read_file(page));
        } catch (const std::exception& e) {
            st.warnings.push_back(page.string() + ": " + e.what());
            continue;
        }
        if (doc.class_name.empty() || doc.rows.empty()) {
            if (doc.rows.empty())
                st.warnings.push_back(page.string() + ": no method-summary rows");
            else
                st.warnings.push_back(page.string() + ": class name not found");
            continue;
        }
        ++st.files_parsed;

        std::string package = doc.package;
        if (package.empty()) {
            // fall back to the directory path relative to the root
            auto rel = std::filesystem::relative(page.parent_path(), html_root);
            std::string p = rel.generic_string();
            std::replace(p.begin(), p.end(), '/', '.');
            if (p != ".") package = p;
        }
        const std::string class_fqn = package.empty() ? doc.class_name
                                                      : package + "." + doc.class_name;

        for (const auto& row : doc.rows) {
            if (row.description.rfind("Deprecated.", 0) == 0) {
                ++st.deprecated_excluded;
                continue;
            }
            ApiEntry e;
            e.fqn = class_fqn + "." + row.name;
            e.class_fqn = class_fqn;
            e.method_name = row.name;
            e.description = html::first_sentence(row.description);
            e.category = categorize(e.description, lexicon);
            e.deprecated = false;
            try {
                dict.add(std::move(e));
            } catch (const Error&) {
                ++st.overloads_merged; // overload rows share a fqn; first one wins
            }
        }
    }

    if (dict.empty()) throw Error("dictionary build produced zero entries under " + html_root.string());
    return dict;
}

LookupOutcome lookup(const std::string& api_name, const ApiDictionary& dict) {
    std::string canon;
    try {
        canon = evaluation::normalize_api(api_name);
    } catch (const Error&) {
        return {};
    }

    auto usable = [](const ApiEntry& e) { return !e.deprecated; };

    auto it = dict.entries().find(canon);
    if (it != dict.entries().end())
        return usable(it->second) ? LookupOutcome{&it->second, false} : LookupOutcome{};

    // unique Class.method suffix match
    if (std::count(canon.begin(), canon.end(), '.') < 1) return {};
    const std::string suffix = "." + canon;
    const ApiEntry* found = nullptr;
    for (const auto& [key, entry] : dict.entries()) {
        if (key.size() <= suffix.size()) continue;
        if (key.compare(key.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
        if (!usable(entry)) continue;
        if (found) return {nullptr, true}; // ambiguous
        found = &entry;
    }
    return {found, false};
}

void save_dictionary(const ApiDictionary& dict, const std::filesystem::path& path) {
    std::ostringstream out;
    for (const auto& [_, e] : dict.entries()) {
        json j;
        j["fqn"] = e.fqn;
        j["class_fqn"] = e.class_fqn;
        j["method_name"] = e.method_name;
        j["description"] = e.description;
        j["category"] = e.category;
        j["deprecated"] = e.deprecated;
        out << j.dump() << "\n";
    }
    util::atomic_write_file(path, out.str());
}

ApiDictionary load_dictionary(const std::filesystem::path& path) {
    ApiDictionary dict;
    util::for_each_line(path, [&](std::size_t no, std::string_view line) {
        if (text::trim(line).empty()) return;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad dictionary record: ") + e.what(), no);
        }
        ApiEntry e;
        e.fqn = j.at("fqn").get<std::string>();
        e.class_fqn = j.at("class_fqn").get<std::string>();
        e.method_name = j.at("method_name").get<std::string>();
        e.description = j.at("description").get<std::string>();
        e.category = j.at("category").get<std::string>();
        e.deprecated = j.value("deprecated", false);
        if (!e.deprecated && e.description.empty())
            throw ParseError("non-deprecated entry with empty description: " + e.fqn, no);
        dict.add(std::move(e));
    });
    if (dict.empty()) throw Error("dictionary file has zero entries: " + path.string());
    return dict;
}

} // namespace apigen::corpus
