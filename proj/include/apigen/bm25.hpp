#pragma once

#include "apigen/tokenize.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace apigen::retrieval {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

/// Okapi BM-25 statistics over a fixed document set. Immutable after build.
class Bm25Index {
public:
    /// Throws Error when `docs` is empty.
    static Bm25Index build(const std::vector<TokenStream>& docs, Bm25Params params = {});

    /// Sum over the query token list of
    ///   IDF(t) * f(t,d)*(k1+1) / (f(t,d) + k1*(1 - b + b*|d|/avgdl))
    /// with IDF(t) = ln((N - df + 0.5)/(df + 0.5) + 1).
    /// Throws Error for an unknown doc id.
    double score(const std::vector<std::string>& query_tokens, const std::string& doc_id) const;

    std::size_t doc_count() const { return docs_.size(); }
    double avg_doc_length() const { return avgdl_; }
    std::size_t doc_frequency(const std::string& term) const;
    const Bm25Params& params() const { return params_; }
    /// Doc ids in insertion order.
    const std::vector<std::string>& doc_ids() const { return doc_order_; }

private:
    struct DocStats {
        std::size_t length = 0;
        std::unordered_map<std::string, std::size_t> tf;
    };
    std::unordered_map<std::string, DocStats> docs_;
    std::vector<std::string> doc_order_;
    std::unordered_map<std::string, std::size_t> df_;
    double avgdl_ = 0.0;
    Bm25Params params_;
};

} // namespace apigen::retrieval
