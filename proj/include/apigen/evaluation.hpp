#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace apigen::evaluation {

/// Canonical form of an API mention: trimmed, any parenthesized argument
/// list stripped, whitespace collapsed then removed around dots, lowercased.
/// Throws Error if nothing is left.
std::string normalize_api(const std::string& name);

/// Canonical form minus the final ".segment"; a name without dots is its
/// own class form.
std::string class_form(const std::string& canonical);

enum class MatchLevel { exact_method, class_only, none };
enum class Level { method, class_level };

/// Compare one canonical prediction against a canonical truth set.
/// A bare Class.method prediction (fewer segments than a truth) matches a
/// truth whose dotted suffix equals it, but only when that truth is unique.
MatchLevel match(const std::string& pred, const std::vector<std::string>& truth_set);

struct QueryRun {
    std::string query_id;
    std::vector<std::string> predictions; // canonical, deduplicated
};

struct QueryTruth {
    std::string query_id;
    std::vector<std::string> apis; // canonical, non-empty
};

// Metric operations. `runs` and `truths` are parallel (same query order).
// All of them throw Error when runs is empty.
double success_rate_at_k(const std::vector<QueryRun>& runs, const std::vector<QueryTruth>& truths,
                         int k, Level level);
double map_at_k(const std::vector<QueryRun>& runs, const std::vector<QueryTruth>& truths,
                int k, Level level);
double mrr(const std::vector<QueryRun>& runs, const std::vector<QueryTruth>& truths, Level level);
/// Graded relevance per position (2 exact, 1 class-only, 0 none); ideal DCG
/// re-orders the achieved relevance values. Level-independent by definition.
double ndcg_at_k(const std::vector<QueryRun>& runs, const std::vector<QueryTruth>& truths, int k);

struct KMetrics {
    double success_rate = 0.0;
    double map = 0.0;
    double ndcg = 0.0;
};

struct EvalReport {
    Level level = Level::method;
    std::size_t n_queries = 0;
    std::map<int, KMetrics> at_k; // keyed by k
    double mrr = 0.0;
};

const char* level_name(Level level);

/// Score a run against ground truth at the requested levels and cutoffs.
/// Throws Error listing run ids that have no truth record.
std::vector<EvalReport> evaluate(const std::vector<QueryRun>& runs,
                                 const std::vector<QueryTruth>& truths,
                                 const std::vector<Level>& levels,
                                 const std::vector<int>& ks);

/// Line-delimited record files: run lines {query_id, ranked_apis},
/// truth lines {query_id, apis}. Names are canonicalized on load;
/// run predictions are deduplicated keeping the first occurrence.
std::vector<QueryRun> load_runs(const std::filesystem::path& path);
std::vector<QueryTruth> load_truths(const std::filesystem::path& path);

std::string report_to_json(const EvalReport& report);
/// Plain-text table over all reports. The header states the AveP
/// conventions in use (m = min(k, truth count); precision summed to k).
std::string reports_to_table(const std::vector<EvalReport>& reports);

} // namespace apigen::evaluation
