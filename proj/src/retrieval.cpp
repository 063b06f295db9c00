#include "apigen/retrieval.hpp"

#include "apigen/kernels/simd.hpp"
#include "apigen/tokenize.hpp"
#include "apigen/util.hpp"

#include <algorithm>
#include <numeric>

namespace apigen::retrieval {

Strategy parse_strategy(const std::string& name) {
    if (name == "bm25") return Strategy::bm25;
    if (name == "dense_sentence") return Strategy::dense_sentence;
    if (name == "dense_code") return Strategy::dense_code;
    throw Error("unknown retrieval strategy \"" + name +
                "\" (expected bm25, dense_sentence, or dense_code)");
}

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::bm25: return "bm25";
    case Strategy::dense_sentence: return "dense_sentence";
    case Strategy::dense_code: return "dense_code";
    }
    return "?";
}

Retriever::Retriever(const std::vector<corpus::Post>& posts, Bm25Params params)
    : strategy_(Strategy::bm25) {
    if (posts.empty()) throw Error("retriever needs a non-empty corpus");
    std::vector<TokenStream> docs;
    docs.reserve(posts.size());
    for (const auto& p : posts) {
        ids_.push_back(p.id);
        docs.push_back({p.id, tokenize(p.question)});
    }
    index_.emplace(Bm25Index::build(docs, params));
}

Retriever::Retriever(const std::vector<corpus::Post>& posts, Strategy strategy,
                     std::shared_ptr<EmbeddingClient> client)
    : strategy_(strategy), client_(std::move(client)) {
    if (strategy_ == Strategy::bm25)
        throw Error("bm25 retriever does not take an embedding client");
    if (!client_) throw Error("dense retriever needs an embedding client");
    if (posts.empty()) throw Error("retriever needs a non-empty corpus");

    std::vector<std::string> questions;
    questions.reserve(posts.size());
    for (const auto& p : posts) {
        ids_.push_back(p.id);
        questions.push_back(p.question);
    }
    auto vecs = client_->embed(questions);
    dims_ = vecs.front().dims;
    matrix_.reserve(vecs.size() * dims_);
    for (const auto& v : vecs) {
        if (v.dims != dims_)
            throw Error("corpus embeddings disagree on dimensionality (" +
                        std::to_string(v.dims) + " vs " + std::to_string(dims_) + ")");
        matrix_.insert(matrix_.end(), v.values.begin(), v.values.end());
    }
}

std::vector<RetrievalResult> Retriever::retrieve(const std::string& question, int n,
                                                 std::string* warning) const {
    if (n < 1) throw Error("retrieve: n must be at least 1, got " + std::to_string(n));
    std::size_t want = static_cast<std::size_t>(n);
    if (want > ids_.size()) {
        if (warning)
            *warning = "requested " + std::to_string(n) + " examples but the corpus has only " +
                       std::to_string(ids_.size()) + "; returning the full ranking";
        want = ids_.size();
    }

    std::vector<double> scores(ids_.size());
    if (strategy_ == Strategy::bm25) {
        auto tokens = tokenize(question);
        for (std::size_t i = 0; i < ids_.size(); ++i)
            scores[i] = index_->score(tokens, ids_[i]);
    } else {
        auto q = client_->embed_one(question);
        if (q.dims != dims_)
            throw Error("query embedding dims " + std::to_string(q.dims) +
                        " do not match corpus dims " + std::to_string(dims_));
        std::vector<float> sims(ids_.size());
        kernels::cosine_batch(q.values, matrix_.data(), ids_.size(), dims_, sims.data());
        for (std::size_t i = 0; i < ids_.size(); ++i) scores[i] = sims[i];
    }

    // Stable sort keeps corpus order on exact ties.
    std::vector<std::size_t> order(ids_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<RetrievalResult> out;
    out.reserve(want);
    for (std::size_t r = 0; r < want; ++r)
        out.push_back({ids_[order[r]], scores[order[r]], static_cast<int>(r) + 1});
    return out;
}

} // namespace apigen::retrieval
