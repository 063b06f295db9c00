#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace apigen::html {

/// Drop tags, decode the common entities, collapse whitespace.
std::string to_text(std::string_view html);

std::string decode_entities(std::string_view s);

/// Text up to the first period followed by whitespace or end of input;
/// the period itself is not included.
std::string first_sentence(std::string_view s);

struct MethodRow {
    std::string name;        // bare method name
    std::string description; // full block text (not yet sentence-trimmed)
};

struct ClassDoc {
    std::string package;     // may be empty when the page carries no subtitle
    std::string class_name;  // may be empty when the page carries no title
    std::vector<MethodRow> rows;
};

/// Pull the method-summary rows out of one reference-documentation class
/// page: anchors inside memberNameLink spans name the method, the sibling
/// block div holds the description. Package/class come from the page's
/// subTitle/title elements when present.
ClassDoc parse_class_page(std::string_view html);

} // namespace apigen::html
