#include "apigen/tokenize.hpp"

#include <cctype>
#include <functional>

namespace apigen::retrieval {

namespace {

bool alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool lower_or_digit(char c) {
    return std::islower(static_cast<unsigned char>(c)) != 0 ||
           std::isdigit(static_cast<unsigned char>(c)) != 0;
}

std::string lowered(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

/// camelCase boundaries inside an alphanumeric run:
/// aB -> a|B, ABc -> A|Bc (an upper run keeps its last letter for the
/// following lowercase word)
void split_camel(std::string_view run, std::size_t base,
                 const std::function<void(std::string_view, std::size_t)>& emit) {
    std::size_t start = 0;
    for (std::size_t i = 1; i < run.size(); ++i) {
        bool boundary = false;
        if (upper(run[i]) && lower_or_digit(run[i - 1])) boundary = true;
        else if (i + 1 < run.size() && upper(run[i - 1]) && upper(run[i]) && lower_or_digit(run[i + 1]))
            boundary = true;
        if (boundary) {
            emit(run.substr(start, i - start), base + start);
            start = i;
        }
    }
    emit(run.substr(start), base + start);
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& t : tokenize_with_spans(text)) out.push_back(t.token);
    return out;
}

std::vector<SpannedToken> tokenize_with_spans(std::string_view text) {
    std::vector<SpannedToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !alnum(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && alnum(text[i])) ++i;
        if (i > start) {
            split_camel(text.substr(start, i - start), start,
                        [&](std::string_view piece, std::size_t at) {
                            if (!piece.empty())
                                out.push_back({lowered(piece), at, at + piece.size()});
                        });
        }
    }
    return out;
}

} // namespace apigen::retrieval
