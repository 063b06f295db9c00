#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace oracle {
namespace {

std::vector<std::string> segments(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '.') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string drop_last_segment(const std::string& s) {
    auto parts = segments(s);
    if (parts.size() == 1) return s;
    std::string out;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (i) out += '.';
        out += parts[i];
    }
    return out;
}

bool ends_with_dotted(const std::string& full, const std::string& suffix) {
    auto f = segments(full);
    auto s = segments(suffix);
    if (s.size() >= f.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (f[f.size() - s.size() + i] != s[i]) return false;
    return true;
}

// The documented prediction/truth-set matching: exact equality; else a
// bare dotted name (>= 2 segments) that is the dotted suffix of exactly one
// longer truth; at class level additionally class-form equality or a unique
// class-form suffix.
bool exact_match(const std::string& pred, const std::vector<std::string>& truths) {
    for (const auto& t : truths)
        if (t == pred) return true;
    if (segments(pred).size() < 2) return false;
    int hits = 0;
    for (const auto& t : truths)
        if (ends_with_dotted(t, pred)) ++hits;
    return hits == 1;
}

bool class_match(const std::string& pred, const std::vector<std::string>& truths) {
    const std::string pc = drop_last_segment(pred);
    for (const auto& t : truths)
        if (drop_last_segment(t) == pc) return true;
    int hits = 0;
    for (const auto& t : truths)
        if (ends_with_dotted(drop_last_segment(t), pc)) ++hits;
    return hits == 1;
}

int relevance(const std::string& pred, const std::vector<std::string>& truths) {
    if (exact_match(pred, truths)) return 2;
    if (class_match(pred, truths)) return 1;
    return 0;
}

bool is_correct(const std::string& pred, const std::vector<std::string>& truths,
                bool class_level) {
    if (exact_match(pred, truths)) return true;
    return class_level && class_match(pred, truths);
}

/// rel(i) for average precision: position i is newly relevant when it can
/// be charged to a truth no earlier position consumed. Priority: unused
/// exact equal; unique dotted-suffix target if unused; then (class level)
/// first unused class-equal; unique class-suffix target if unused.
bool consume(const std::string& pred, const std::vector<std::string>& truths,
             std::vector<bool>& used, bool class_level) {
    for (std::size_t j = 0; j < truths.size(); ++j)
        if (!used[j] && truths[j] == pred) {
            used[j] = true;
            return true;
        }
    if (segments(pred).size() >= 2) {
        std::vector<std::size_t> hits;
        for (std::size_t j = 0; j < truths.size(); ++j)
            if (ends_with_dotted(truths[j], pred)) hits.push_back(j);
        if (hits.size() == 1 && !used[hits[0]]) {
            used[hits[0]] = true;
            return true;
        }
    }
    if (!class_level) return false;
    const std::string pc = drop_last_segment(pred);
    for (std::size_t j = 0; j < truths.size(); ++j)
        if (!used[j] && drop_last_segment(truths[j]) == pc) {
            used[j] = true;
            return true;
        }
    std::vector<std::size_t> hits;
    for (std::size_t j = 0; j < truths.size(); ++j)
        if (ends_with_dotted(drop_last_segment(truths[j]), pc)) hits.push_back(j);
    if (hits.size() == 1 && !used[hits[0]]) {
        used[hits[0]] = true;
        return true;
    }
    return false;
}

} // namespace

double success_rate_at_k(const std::vector<Instance>& qs, int k, bool class_level) {
    double hits = 0;
    for (const auto& q : qs) {
        for (int i = 0; i < k && i < static_cast<int>(q.preds.size()); ++i) {
            if (is_correct(q.preds[i], q.truths, class_level)) {
                hits += 1;
                break;
            }
        }
    }
    return hits / static_cast<double>(qs.size());
}

double map_at_k(const std::vector<Instance>& qs, int k, bool class_level) {
    double total = 0;
    for (const auto& q : qs) {
        std::vector<bool> used(q.truths.size(), false);
        std::vector<int> rel;
        for (int i = 0; i < k && i < static_cast<int>(q.preds.size()); ++i)
            rel.push_back(consume(q.preds[i], q.truths, used, class_level) ? 1 : 0);
        double avep = 0;
        int seen_correct = 0;
        for (std::size_t i = 0; i < rel.size(); ++i) {
            seen_correct += rel[i];
            double precision = static_cast<double>(seen_correct) / static_cast<double>(i + 1);
            avep += precision * rel[i];
        }
        double m = std::min<double>(k, static_cast<double>(q.truths.size()));
        total += avep / m;
    }
    return total / static_cast<double>(qs.size());
}

double mrr(const std::vector<Instance>& qs, bool class_level) {
    double total = 0;
    for (const auto& q : qs) {
        for (std::size_t i = 0; i < q.preds.size(); ++i) {
            if (is_correct(q.preds[i], q.truths, class_level)) {
                total += 1.0 / static_cast<double>(i + 1);
                break;
            }
        }
    }
    return total / static_cast<double>(qs.size());
}

double ndcg_at_k(const std::vector<Instance>& qs, int k) {
    double total = 0;
    for (const auto& q : qs) {
        std::vector<int> rel;
        for (int i = 0; i < k && i < static_cast<int>(q.preds.size()); ++i)
            rel.push_back(relevance(q.preds[i], q.truths));
        double dcg = 0;
        for (std::size_t t = 0; t < rel.size(); ++t)
            dcg += rel[t] / std::log2(static_cast<double>(t + 2));
        std::vector<int> ideal = rel;
        std::sort(ideal.rbegin(), ideal.rend());
        double idcg = 0;
        for (std::size_t t = 0; t < ideal.size(); ++t)
            idcg += ideal[t] / std::log2(static_cast<double>(t + 2));
        if (idcg > 0) total += dcg / idcg;
    }
    return total / static_cast<double>(qs.size());
}

double bm25_score(const std::vector<std::vector<std::string>>& docs, std::size_t doc_idx,
                  const std::vector<std::string>& query, double k1, double b) {
    const double n_docs = static_cast<double>(docs.size());
    double avgdl = 0;
    for (const auto& d : docs) avgdl += static_cast<double>(d.size());
    avgdl /= n_docs;

    const auto& doc = docs[doc_idx];
    double score = 0;
    for (const auto& term : query) {
        double df = 0;
        for (const auto& d : docs)
            if (std::find(d.begin(), d.end(), term) != d.end()) df += 1;
        double tf = static_cast<double>(std::count(doc.begin(), doc.end(), term));
        double idf = std::log((n_docs - df + 0.5) / (df + 0.5) + 1.0);
        double denom = tf + k1 * (1.0 - b + b * static_cast<double>(doc.size()) / avgdl);
        if (denom > 0) score += idf * tf * (k1 + 1.0) / denom;
    }
    return score;
}

std::vector<Instance> random_instances(std::mt19937& rng, std::size_t max_queries,
                                       std::size_t max_preds) {
    static const std::vector<std::string> vocab = {
        "java.lang.integer.parseint", "java.lang.integer.valueof",
        "java.lang.string.valueof",   "java.lang.string.format",
        "java.util.arrays.aslist",    "java.util.arrays.sort",
        "java.util.list.add",         "java.util.map.get",
        "java.io.file.exists",        "java.nio.files.readalllines",
        // bare forms exercising the suffix rules
        "integer.parseint", "string.valueof", "arrays.aslist", "file.exists"};

    std::uniform_int_distribution<std::size_t> n_queries(1, max_queries);
    std::uniform_int_distribution<std::size_t> n_preds(0, max_preds);
    std::uniform_int_distribution<std::size_t> n_truths(1, 4);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);

    std::vector<Instance> out(n_queries(rng));
    for (auto& q : out) {
        std::set<std::string> truth_set;
        const std::size_t want_truths = n_truths(rng);
        while (truth_set.size() < want_truths) truth_set.insert(vocab[pick(rng)]);
        q.truths.assign(truth_set.begin(), truth_set.end());
        std::set<std::string> pred_set;
        const std::size_t want_preds = n_preds(rng);
        while (pred_set.size() < want_preds) pred_set.insert(vocab[pick(rng)]);
        // insertion into a vector in randomized order, not set order
        std::vector<std::string> preds(pred_set.begin(), pred_set.end());
        std::shuffle(preds.begin(), preds.end(), rng);
        q.preds = std::move(preds);
    }
    return out;
}

} // namespace oracle
