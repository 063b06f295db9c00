#pragma once

#include "apigen/bm25.hpp"
#include "apigen/corpus.hpp"
#include "apigen/embedding.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace apigen::retrieval {

/// How similar posts are found for a query. The strategies are exclusive:
/// a retriever is built for exactly one of them.
enum class Strategy { bm25, dense_sentence, dense_code };

Strategy parse_strategy(const std::string& name);
const char* strategy_name(Strategy s);

struct RetrievalResult {
    std::string post_id;
    double score = 0.0;
    int rank = 0; // 1-based
};

/// Ranks corpus posts against a query question. BM-25 retrievers score the
/// tokenized question text; dense retrievers embed every post question once
/// (batched, cache-backed) and scan cosine similarities.
class Retriever {
  public:
    /// BM-25 retriever over the given posts.
    Retriever(const std::vector<corpus::Post>& posts, Bm25Params params);

    /// Dense retriever; `strategy` selects which embedding space the client
    /// represents (sentence vs code), which only affects bookkeeping here —
    /// the client's backend id already isolates the caches.
    Retriever(const std::vector<corpus::Post>& posts, Strategy strategy,
              std::shared_ptr<EmbeddingClient> client);

    /// Top-n posts, best first, ranks 1..n. Scores are non-increasing and
    /// ties keep corpus order. n < 1 is an error; n > corpus size returns
    /// the full ranking and records a warning if `warning` is non-null.
    std::vector<RetrievalResult> retrieve(const std::string& question, int n,
                                          std::string* warning = nullptr) const;

    Strategy strategy() const { return strategy_; }
    std::size_t corpus_size() const { return ids_.size(); }

  private:
    Strategy strategy_;
    std::vector<std::string> ids_;

    // bm25 mode
    std::optional<Bm25Index> index_;

    // dense mode
    std::shared_ptr<EmbeddingClient> client_;
    std::size_t dims_ = 0;
    std::vector<float> matrix_; // corpus embeddings, row-major ids_ order
};

} // namespace apigen::retrieval
