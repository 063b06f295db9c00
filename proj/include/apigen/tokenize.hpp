#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace apigen::retrieval {

struct TokenStream {
    std::string doc_id;
    std::vector<std::string> tokens; // lowercase, no empties
};

/// Lowercase terms: split on non-alphanumeric and at camelCase boundaries.
std::vector<std::string> tokenize(std::string_view text);

struct SpannedToken {
    std::string token;  // lowercase
    std::size_t begin;  // byte offsets into the source text
    std::size_t end;
};

/// Same token rules, with byte spans; camelCase sub-tokens carry their own
/// sub-span. Used by the alignment matcher to report description spans.
std::vector<SpannedToken> tokenize_with_spans(std::string_view text);

} // namespace apigen::retrieval
