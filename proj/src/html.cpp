#include "apigen/html.hpp"

#include "apigen/text.hpp"

#include <cctype>
#include <cstdlib>

namespace apigen::html {

namespace {

std::string_view find_between(std::string_view hay, std::string_view open, std::string_view close,
                              std::size_t& pos) {
    auto a = hay.find(open, pos);
    if (a == std::string_view::npos) {
        pos = std::string_view::npos;
        return {};
    }
    a += open.size();
    auto b = hay.find(close, a);
    if (b == std::string_view::npos) {
        pos = std::string_view::npos;
        return {};
    }
    pos = b + close.size();
    return hay.substr(a, b - a);
}

/// content of the first tag whose opening contains `marker`, e.g.
/// tag_content(html, "<div", "class=\"block\"", "</div>")
std::string_view tag_content(std::string_view hay, std::string_view tag_open,
                             std::string_view marker, std::string_view tag_close,
                             std::size_t from = 0) {
    std::size_t pos = from;
    while (pos != std::string_view::npos && pos < hay.size()) {
        auto a = hay.find(tag_open, pos);
        if (a == std::string_view::npos) return {};
        auto gt = hay.find('>', a);
        if (gt == std::string_view::npos) return {};
        auto opening = hay.substr(a, gt - a);
        if (opening.find(marker) != std::string_view::npos) {
            auto b = hay.find(tag_close, gt + 1);
            if (b == std::string_view::npos) return {};
            return hay.substr(gt + 1, b - gt - 1);
        }
        pos = gt + 1;
    }
    return {};
}

} // namespace

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        auto semi = s.find(';', i);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        auto ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") out.push_back('&');
        else if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "quot") out.push_back('"');
        else if (ent == "apos") out.push_back('\'');
        else if (ent == "nbsp") out.push_back(' ');
        else if (!ent.empty() && ent[0] == '#') {
            bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
            long code = std::strtol(std::string(ent.substr(hex ? 2 : 1)).c_str(), nullptr,
                                    hex ? 16 : 10);
            if (code > 0 && code < 128) out.push_back(static_cast<char>(code));
            else out.push_back(' ');
        } else {
            // unknown entity, keep verbatim
            out.append(s.substr(i, semi - i + 1));
        }
        i = semi + 1;
    }
    return out;
}

std::string to_text(std::string_view html) {
    std::string no_tags;
    no_tags.reserve(html.size());
    bool in_tag = false;
    for (char c : html) {
        if (c == '<') {
            in_tag = true;
            no_tags.push_back(' ');
        } else if (c == '>') {
            in_tag = false;
        } else if (!in_tag) {
            no_tags.push_back(c);
        }
    }
    return text::collapse_ws(decode_entities(no_tags));
}

std::string first_sentence(std::string_view s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '.') continue;
        if (i + 1 == s.size() || std::isspace(static_cast<unsigned char>(s[i + 1])))
            return text::trim(s.substr(0, i));
    }
    return text::trim(s);
}

ClassDoc parse_class_page(std::string_view html) {
    ClassDoc doc;
    doc.package = to_text(tag_content(html, "<div", "class=\"subTitle\"", "</div>"));
    auto title = to_text(tag_content(html, "<h2", "class=\"title\"", "</h2>"));
    // "Class Integer" / "Interface List" / "Enum Thread.State"
    auto words = text::split_words(title);
    if (words.size() >= 2) doc.class_name = words.back();

    // limit the scan to the method-summary section when markers exist
    std::size_t begin = html.find("method.summary");
    if (begin == std::string_view::npos) begin = 0;
    std::size_t end = html.find("method.detail", begin);
    auto section = html.substr(begin, end == std::string_view::npos ? html.size() - begin
                                                                    : end - begin);

    std::size_t pos = 0;
    while (pos != std::string_view::npos && pos < section.size()) {
        auto span_at = section.find("memberNameLink", pos);
        if (span_at == std::string_view::npos) break;
        std::size_t p = span_at;
        auto anchor = find_between(section, "<a", "</a>", p);
        if (p == std::string_view::npos) break;
        auto gt = anchor.find('>');
        std::string name = gt == std::string_view::npos
                               ? std::string()
                               : text::trim(to_text(anchor.substr(gt + 1)));
        std::size_t next_member = section.find("memberNameLink", p);
        auto cell = section.substr(p, next_member == std::string_view::npos ? section.size() - p
                                                                            : next_member - p);
        std::string description = to_text(tag_content(cell, "<div", "class=\"block\"", "</div>"));
        if (!name.empty()) doc.rows.push_back({std::move(name), std::move(description)});
        pos = next_member;
    }
    return doc;
}

} // namespace apigen::html
