#include "apigen/corpus.hpp"
#include "apigen/util.hpp"

#include <doctest.h>

#include <filesystem>
#include <string>

using namespace apigen;
using namespace apigen::corpus;

#ifndef APIGEN_DATA_DIR
#error "APIGEN_DATA_DIR must be defined by the build"
#endif
#ifndef APIGEN_FIXTURES_DIR
#error "APIGEN_FIXTURES_DIR must be defined by the build"
#endif

namespace {

namespace fs = std::filesystem;

const std::string kFixtures = APIGEN_FIXTURES_DIR;

text::CategoryLexicon shipped_categories() {
    return text::CategoryLexicon::load(std::string(APIGEN_DATA_DIR) + "/categories.tsv");
}

struct TempDir {
    fs::path path;
    TempDir(const char* tag) : path(fs::temp_directory_path() / tag) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_SUITE("corpus") {

TEST_CASE("load_posts parses records and validates them") {
    TempDir dir("apigen_corpus_posts");
    auto path = dir.path / "posts.jsonl";
    util::atomic_write_file(
        path,
        R"({"id":"p1","question":"How do I parse an int?","answer_apis":["java.lang.Integer.parseInt"],"source":"stackoverflow"})"
        "\n"
        "\n" // blank lines are skipped
        R"({"id":"p2","question":"append to a list","answer_apis":["java.util.List.add","java.util.ArrayList.add"]})"
        "\n");
    auto posts = load_posts(path);
    REQUIRE(posts.size() == 2);
    CHECK(posts[0].id == "p1");
    CHECK(posts[0].question == "How do I parse an int?");
    CHECK(posts[0].answer_apis == std::vector<std::string>{"java.lang.Integer.parseInt"});
    CHECK(posts[0].source == PostSource::stackoverflow);
    CHECK(posts[1].source == PostSource::other); // default
    CHECK(posts[1].answer_apis.size() == 2);
}

TEST_CASE("load_posts rejects duplicates and incomplete records") {
    TempDir dir("apigen_corpus_badposts");
    auto path = dir.path / "posts.jsonl";

    util::atomic_write_file(path,
                            R"({"id":"p1","question":"q","answer_apis":["A.b"]})" "\n"
                            R"({"id":"p1","question":"q2","answer_apis":["A.c"]})" "\n");
    CHECK_THROWS_WITH_AS(load_posts(path), doctest::Contains("duplicate post id"),
                         apigen::ParseError);

    util::atomic_write_file(path, R"({"id":"p1","question":"q","answer_apis":[]})" "\n");
    CHECK_THROWS_AS(load_posts(path), apigen::ParseError);

    util::atomic_write_file(path, R"({"id":"p1","answer_apis":["A.b"]})" "\n");
    CHECK_THROWS_AS(load_posts(path), apigen::ParseError);

    util::atomic_write_file(path, "not json\n");
    CHECK_THROWS_AS(load_posts(path), apigen::ParseError);
}

TEST_CASE("load_queries accepts records without answers") {
    TempDir dir("apigen_corpus_queries");
    auto path = dir.path / "queries.jsonl";
    util::atomic_write_file(path,
                            R"({"id":"q1","question":"convert string to int"})" "\n"
                            R"({"id":"q2","question":"  padded  "})" "\n");
    auto queries = load_queries(path);
    REQUIRE(queries.size() == 2);
    CHECK(queries[0].id == "q1");
    CHECK(queries[1].question == "padded");
}

TEST_CASE("categorize picks the first lexicon verb, else other") {
    auto lex = shipped_categories();
    CHECK(categorize("Parses the string argument", lex) == "convert/transform/parse");
    CHECK(categorize("Returns the element at the position", lex) == "get/read/return");
    CHECK(categorize("Appends the specified element", lex) == "write/set/update");
    CHECK(categorize("Nothing verb-like here", lex) == "other");
    CHECK(categorize("", lex) == "other");
    // left-to-right: the first hit wins even when two verbs appear
    CHECK(categorize("Creates and returns a copy", lex) == "create/build/construct");
}

TEST_CASE("build_dictionary harvests the fixture javadoc tree") {
    auto lex = shipped_categories();
    DictionaryBuildStats stats;
    auto dict = build_dictionary(kFixtures + "/javadoc", lex, &stats);

    CHECK(dict.size() == 5);
    CHECK(dict.lexicon_version() == "v1");
    CHECK(stats.files_parsed == 3);
    CHECK(stats.deprecated_excluded == 1);
    CHECK(stats.overloads_merged == 1); // second parseInt row
    REQUIRE(stats.warnings.size() == 1);
    CHECK(stats.warnings[0].find("overview-summary.html") != std::string::npos);

    auto hit = lookup("java.lang.Integer.parseInt", dict);
    REQUIRE(hit);
    CHECK(hit.entry->fqn == "java.lang.Integer.parseInt");
    CHECK(hit.entry->class_fqn == "java.lang.Integer");
    CHECK(hit.entry->method_name == "parseInt");
    // first sentence only, period excluded; the first overload row wins
    CHECK(hit.entry->description == "Parses the string argument as a signed decimal integer");
    CHECK(hit.entry->category == "convert/transform/parse");

    auto vo = lookup("java.lang.Integer.valueOf", dict);
    REQUIRE(vo);
    CHECK(vo.entry->category == "get/read/return");

    auto add = lookup("java.util.List.add", dict);
    REQUIRE(add);
    CHECK(add.entry->category == "write/set/update");

    // the deprecated row never becomes an entry
    CHECK_FALSE(lookup("java.lang.Integer.fromOctalString", dict));
}

TEST_CASE("lookup matches exact, parenthesized and unique-suffix names") {
    auto lex = shipped_categories();
    auto dict = build_dictionary(kFixtures + "/javadoc", lex, nullptr);

    CHECK(lookup("java.lang.Integer.parseInt()", dict).entry ==
          lookup("java.lang.Integer.parseInt", dict).entry);
    CHECK(lookup("Integer.parseInt(String)", dict).entry ==
          lookup("java.lang.Integer.parseInt", dict).entry);
    CHECK(lookup("integer.PARSEINT", dict)); // case-insensitive via normalization

    auto ambiguous = lookup("List.add", dict); // java.util and java.awt both match
    CHECK_FALSE(ambiguous);
    CHECK(ambiguous.ambiguous);

    auto unique = lookup("List.get", dict);
    REQUIRE(unique);
    CHECK(unique.entry->fqn == "java.util.List.get");

    CHECK_FALSE(lookup("parseInt", dict)); // bare method names never suffix-match
    CHECK_FALSE(lookup("No.SuchMethod", dict));
    CHECK_FALSE(lookup("", dict));
}

TEST_CASE("package falls back to the directory when the page has no subtitle") {
    TempDir dir("apigen_corpus_pkgfallback");
    fs::create_directories(dir.path / "org" / "demo");
    util::atomic_write_file(dir.path / "org" / "demo" / "Widget.html",
                            "<h2 class=\"title\">Class Widget</h2>"
                            "<a name=\"method.summary\"></a>"
                            "<span class=\"memberNameLink\"><a href=\"#spin--\">spin</a></span>"
                            "<div class=\"block\">Spins the widget once.</div>");
    auto dict = build_dictionary(dir.path, text::CategoryLexicon::from_pairs({{"spin", "spin"}}),
                                 nullptr);
    REQUIRE(dict.size() == 1);
    CHECK(dict.entries().begin()->second.fqn == "org.demo.Widget.spin");
    CHECK(dict.entries().begin()->second.class_fqn == "org.demo.Widget");
}

TEST_CASE("build_dictionary rejects trees that produce nothing") {
    TempDir dir("apigen_corpus_emptytree");
    util::atomic_write_file(dir.path / "notes.html", "<p>nothing here</p>");
    CHECK_THROWS_AS(build_dictionary(dir.path, shipped_categories(), nullptr), apigen::Error);
    CHECK_THROWS_AS(build_dictionary(dir.path / "missing", shipped_categories(), nullptr),
                    apigen::Error);
}

TEST_CASE("dictionary save/load round-trips every field") {
    TempDir dir("apigen_corpus_roundtrip");
    auto lex = shipped_categories();
    auto dict = build_dictionary(kFixtures + "/javadoc", lex, nullptr);
    auto path = dir.path / "dict.jsonl";
    save_dictionary(dict, path);
    auto loaded = load_dictionary(path);

    REQUIRE(loaded.size() == dict.size());
    for (const auto& [key, e] : dict.entries()) {
        auto it = loaded.entries().find(key);
        REQUIRE(it != loaded.entries().end());
        CHECK(it->second.fqn == e.fqn);
        CHECK(it->second.class_fqn == e.class_fqn);
        CHECK(it->second.method_name == e.method_name);
        CHECK(it->second.description == e.description);
        CHECK(it->second.category == e.category);
        CHECK(it->second.deprecated == e.deprecated);
    }
    // the cache file does not carry the lexicon version; loaders re-derive it
    CHECK(loaded.lexicon_version() == "unknown");
}

TEST_CASE("ApiDictionary::add rejects duplicate normalized fqns") {
    ApiDictionary dict;
    dict.add({"a.B.c", "a.B", "c", "Does things", "other", false});
    CHECK_THROWS_AS(dict.add({"A.b.C", "A.b", "C", "Clashes", "other", false}), apigen::Error);
}

} // TEST_SUITE
