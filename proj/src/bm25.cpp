#include "apigen/bm25.hpp"

#include "apigen/util.hpp"

#include <cmath>
#include <unordered_set>

namespace apigen::retrieval {

Bm25Index Bm25Index::build(const std::vector<TokenStream>& docs, Bm25Params params) {
    if (docs.empty()) throw Error("cannot index an empty corpus");
    Bm25Index index;
    index.params_ = params;

    std::size_t total_len = 0;
    for (const auto& doc : docs) {
        DocStats stats;
        stats.length = doc.tokens.size();
        total_len += stats.length;
        for (const auto& t : doc.tokens) ++stats.tf[t];
        for (const auto& [term, _] : stats.tf) ++index.df_[term];
        if (index.docs_.count(doc.doc_id))
            throw Error("duplicate doc id in corpus: " + doc.doc_id);
        index.docs_.emplace(doc.doc_id, std::move(stats));
        index.doc_order_.push_back(doc.doc_id);
    }
    index.avgdl_ = static_cast<double>(total_len) / static_cast<double>(docs.size());
    return index;
}

double Bm25Index::score(const std::vector<std::string>& query_tokens,
                        const std::string& doc_id) const {
    auto it = docs_.find(doc_id);
    if (it == docs_.end()) throw Error("unknown doc id: " + doc_id);
    const DocStats& doc = it->second;

    const double N = static_cast<double>(docs_.size());
    const double k1 = params_.k1;
    const double b = params_.b;
    const double len_norm = k1 * (1.0 - b + b * static_cast<double>(doc.length) / avgdl_);

    double score = 0.0;
    for (const auto& t : query_tokens) {
        auto tf_it = doc.tf.find(t);
        if (tf_it == doc.tf.end()) continue;
        const double f = static_cast<double>(tf_it->second);
        auto df_it = df_.find(t);
        const double df = df_it == df_.end() ? 0.0 : static_cast<double>(df_it->second);
        const double idf = std::log((N - df + 0.5) / (df + 0.5) + 1.0);
        score += idf * f * (k1 + 1.0) / (f + len_norm);
    }
    return score;
}

std::size_t Bm25Index::doc_frequency(const std::string& term) const {
    auto it = df_.find(term);
    return it == df_.end() ? 0 : it->second;
}

} // namespace apigen::retrieval
