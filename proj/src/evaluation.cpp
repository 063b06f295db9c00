#include "apigen/evaluation.hpp"

#include "apigen/text.hpp"
#include "apigen/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

using nlohmann::json;

namespace apigen::evaluation {

std::string normalize_api(const std::string& name) {
    std::string s = text::trim(name);
    auto paren = s.find('(');
    if (paren != std::string::npos) s = s.substr(0, paren);
    s = text::collapse_ws(s);
    // an FQN has no legitimate space next to a dot
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == ' ') {
            bool next_dot = i + 1 < s.size() && s[i + 1] == '.';
            bool prev_dot = !out.empty() && out.back() == '.';
            if (next_dot || prev_dot) continue;
        }
        out.push_back(s[i]);
    }
    out = text::to_lower(text::trim(out));
    if (out.empty()) throw Error("API name is empty after normalization: \"" + name + "\"");
    return out;
}

std::string class_form(const std::string& canonical) {
    auto dot = canonical.rfind('.');
    if (dot == std::string::npos) return canonical;
    return canonical.substr(0, dot);
}

namespace {

std::size_t segment_count(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '.')) + 1;
}

/// true when `full` ends with "." + `suffix` or equals it.
bool dotted_suffix(const std::string& full, const std::string& suffix) {
    if (full == suffix) return true;
    if (full.size() <= suffix.size() + 1) return false;
    return full.compare(full.size() - suffix.size(), suffix.size(), suffix) == 0 &&
           full[full.size() - suffix.size() - 1] == '.';
}

bool matches_method(const std::string& pred, const std::vector<std::string>& truth_set) {
    for (const auto& t : truth_set)
        if (pred == t) return true;
    // bare Class.method against longer truths: unique dotted-suffix match
    if (segment_count(pred) >= 2) {
        int hits = 0;
        for (const auto& t : truth_set)
            if (segment_count(t) > segment_count(pred) && dotted_suffix(t, pred)) ++hits;
        if (hits == 1) return true;
    }
    return false;
}

bool matches_class(const std::string& pred, const std::vector<std::string>& truth_set) {
    const std::string pc = class_form(pred);
    int suffix_hits = 0;
    for (const auto& t : truth_set) {
        const std::string tc = class_form(t);
        if (pc == tc) return true;
        if (segment_count(pc) < segment_count(tc) && dotted_suffix(tc, pc)) ++suffix_hits;
    }
    return suffix_hits == 1;
}

bool correct_at(MatchLevel m, Level level) {
    if (level == Level::method) return m == MatchLevel::exact_method;
    return m != MatchLevel::none;
}

/// Credit `pred` against one not-yet-used truth, mirroring match()'s
/// whole-set rules. Marks the consumed truth and reports success.
bool credit_truth(const std::string& pred, const std::vector<std::string>& truths,
                  std::vector<bool>& used, Level level) {
    for (std::size_t j = 0; j < truths.size(); ++j) {
        if (!used[j] && truths[j] == pred) {
            used[j] = true;
            return true;
        }
    }
    if (segment_count(pred) >= 2) {
        std::vector<std::size_t> hits;
        for (std::size_t j = 0; j < truths.size(); ++j)
            if (segment_count(truths[j]) > segment_count(pred) && dotted_suffix(truths[j], pred))
                hits.push_back(j);
        if (hits.size() == 1 && !used[hits[0]]) {
            used[hits[0]] = true;
            return true;
        }
    }
    if (level == Level::method) return false;

    const std::string pc = class_form(pred);
    for (std::size_t j = 0; j < truths.size(); ++j) {
        if (!used[j] && class_form(truths[j]) == pc) {
            used[j] = true;
            return true;
        }
    }
    std::vector<std::size_t> chits;
    for (std::size_t j = 0; j < truths.size(); ++j) {
        const std::string tc = class_form(truths[j]);
        if (segment_count(pc) < segment_count(tc) && dotted_suffix(tc, pc)) chits.push_back(j);
    }
    if (chits.size() == 1 && !used[chits[0]]) {
        used[chits[0]] = true;
        return true;
    }
    return false;
}

void require_nonempty(const std::vector<QueryRun>& runs) {
    if (runs.empty()) throw Error("metric over zero queries is undefined");
}

void require_parallel(const std::vector<QueryRun>& runs, const std::vector<QueryTruth>& truths) {
    if (runs.size() != truths.size())
        throw Error("runs and truths differ in length");
}

} // namespace

MatchLevel match(const std::string& pred, const std::vector<std::string>& truth_set) {
    if (matches_method(pred, truth_set)) return MatchLevel::exact_method;
    if (matches_class(pred, truth_set)) return MatchLevel::class_only;
    return MatchLevel::none;
}

double success_rate_at_k(const std::vector<QueryRun>& runs, const std::vector<QueryTruth>& truths,
                         int k, Level level) {
    require_nonempty(runs);
    require_parallel(runs, truths);
    double hits = 0;
    for (std::size_t q = 0; q < runs.size(); ++q) {
        const auto& preds = runs[q].predictions;
        const auto limit = std::min<std::size_t>(static_cast<std::size_t>(k), preds.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (correct_at(match(preds[i], truths[q].apis), level)) {
                hits += 1;
                break;
            }
        }
    }
    return hits / static_cast<double>(runs.size());
}

double map_at_k(const std::vector<QueryRun>& runs, const std::vector<QueryTruth>& truths,
                int k, Level level) {
    require_nonempty(runs);
    require_parallel(runs, truths);
    double sum = 0;
    for (std::size_t q = 0; q < runs.size(); ++q) {
        const auto& preds = runs[q].predictions;
        const auto& truth = truths[q].apis;
        const auto limit = std::min<std::size_t>(static_cast<std::size_t>(k), preds.size());
        // a truth is credited at most once; rel(i)=1 only when position i
        // matches a not-yet-credited truth
        std::vector<bool> used(truth.size(), false);
        double avep = 0;
        int correct = 0;
        for (std::size_t i = 0; i < limit; ++i) {
            if (credit_truth(preds[i], truth, used, level)) {
                ++correct;
                avep += static_cast<double>(correct) / static_cast<double>(i + 1);
            }
        }
        const double m = static_cast<double>(std::min<std::size_t>(static_cast<std::size_t>(k), truth.size()));
        if (m > 0) sum += avep / m;
    }
    return sum / static_cast<double>(runs.size());
}

double mrr(const std::vector<QueryRun>& runs, const std::vector<QueryTruth>& truths, Level level) {
    require_nonempty(runs);
    require_parallel(runs, truths);
    double sum = 0;
    for (std::size_t q = 0; q < runs.size(); ++q) {
        const auto& preds = runs[q].predictions;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            if (correct_at(match(preds[i], truths[q].apis), level)) {
                sum += 1.0 / static_cast<double>(i + 1);
                break;
            }
        }
        // no correct result: firstpos is infinite, contribution 0
    }
    return sum / static_cast<double>(runs.size());
}

double ndcg_at_k(const std::vector<QueryRun>& runs, const std::vector<QueryTruth>& truths, int k) {
    require_nonempty(runs);
    require_parallel(runs, truths);
    double sum = 0;
    for (std::size_t q = 0; q < runs.size(); ++q) {
        const auto& preds = runs[q].predictions;
        const auto limit = std::min<std::size_t>(static_cast<std::size_t>(k), preds.size());
        std::vector<int> rel(limit, 0);
        for (std::size_t i = 0; i < limit; ++i) {
            switch (match(preds[i], truths[q].apis)) {
                case MatchLevel::exact_method: rel[i] = 2; break;
                case MatchLevel::class_only: rel[i] = 1; break;
                case MatchLevel::none: rel[i] = 0; break;
            }
        }
        double dcg = 0;
        for (std::size_t t = 0; t < rel.size(); ++t)
            dcg += static_cast<double>(rel[t]) / std::log2(static_cast<double>(t) + 2.0);
        auto ideal = rel;
        std::sort(ideal.begin(), ideal.end(), std::greater<int>());
        double idcg = 0;
        for (std::size_t t = 0; t < ideal.size(); ++t)
            idcg += static_cast<double>(ideal[t]) / std::log2(static_cast<double>(t) + 2.0);
        if (idcg > 0) sum += dcg / idcg;
    }
    return sum / static_cast<double>(runs.size());
}

const char* level_name(Level level) {
    return level == Level::method ? "method" : "class";
}

std::vector<EvalReport> evaluate(const std::vector<QueryRun>& runs,
                                 const std::vector<QueryTruth>& truths,
                                 const std::vector<Level>& levels,
                                 const std::vector<int>& ks) {
    require_nonempty(runs);

    std::map<std::string, const QueryTruth*> by_id;
    for (const auto& t : truths) by_id[t.query_id] = &t;
    std::vector<std::string> missing;
    for (const auto& r : runs)
        if (!by_id.count(r.query_id)) missing.push_back(r.query_id);
    if (!missing.empty()) {
        std::string msg = "run ids without ground truth:";
        for (const auto& id : missing) msg += " " + id;
        throw Error(msg);
    }

    std::vector<QueryTruth> aligned;
    aligned.reserve(runs.size());
    for (const auto& r : runs) aligned.push_back(*by_id.at(r.query_id));

    std::vector<EvalReport> reports;
    for (Level level : levels) {
        EvalReport rep;
        rep.level = level;
        rep.n_queries = runs.size();
        rep.mrr = mrr(runs, aligned, level);
        for (int k : ks) {
            KMetrics km;
            km.success_rate = success_rate_at_k(runs, aligned, k, level);
            km.map = map_at_k(runs, aligned, k, level);
            km.ndcg = ndcg_at_k(runs, aligned, k);
            rep.at_k[k] = km;
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::vector<QueryRun> load_runs(const std::filesystem::path& path) {
    std::vector<QueryRun> out;
    util::for_each_line(path, [&](std::size_t no, std::string_view line) {
        if (text::trim(line).empty()) return;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad run record: ") + e.what(), no);
        }
        if (!j.contains("query_id") || !j.contains("ranked_apis"))
            throw ParseError("run record needs query_id and ranked_apis", no);
        QueryRun run;
        run.query_id = j.at("query_id").get<std::string>();
        std::set<std::string> seen;
        for (const auto& item : j.at("ranked_apis")) {
            auto canon = normalize_api(item.get<std::string>());
            if (seen.insert(canon).second) run.predictions.push_back(std::move(canon));
        }
        out.push_back(std::move(run));
    });
    return out;
}

std::vector<QueryTruth> load_truths(const std::filesystem::path& path) {
    std::vector<QueryTruth> out;
    util::for_each_line(path, [&](std::size_t no, std::string_view line) {
        if (text::trim(line).empty()) return;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad truth record: ") + e.what(), no);
        }
        if (!j.contains("query_id") || !j.contains("apis"))
            throw ParseError("truth record needs query_id and apis", no);
        QueryTruth t;
        t.query_id = j.at("query_id").get<std::string>();
        std::set<std::string> seen;
        for (const auto& item : j.at("apis")) {
            auto canon = normalize_api(item.get<std::string>());
            if (seen.insert(canon).second) t.apis.push_back(std::move(canon));
        }
        if (t.apis.empty()) throw ParseError("truth record has empty api set", no);
        out.push_back(std::move(t));
    });
    return out;
}

std::string report_to_json(const EvalReport& report) {
    json j;
    j["level"] = level_name(report.level);
    j["n_queries"] = report.n_queries;
    j["mrr"] = report.mrr;
    json ks = json::object();
    for (const auto& [k, m] : report.at_k) {
        json e;
        e["success_rate"] = m.success_rate;
        e["map"] = m.map;
        e["ndcg"] = m.ndcg;
        ks[std::to_string(k)] = e;
    }
    j["at_k"] = ks;
    return j.dump();
}

std::string reports_to_table(const std::vector<EvalReport>& reports) {
    std::ostringstream out;
    out << "# note: AveP@k uses m = min(k, truth count); precision is summed over ranks 1..k\n";
    out << "# note: a query with no correct result contributes 0 to MRR\n";
    char buf[160];
    for (const auto& rep : reports) {
        out << "level=" << level_name(rep.level) << " queries=" << rep.n_queries << "\n";
        std::snprintf(buf, sizeof(buf), "  %-6s %12s %12s %12s\n", "k", "success_rate", "map", "ndcg");
        out << buf;
        for (const auto& [k, m] : rep.at_k) {
            std::snprintf(buf, sizeof(buf), "  %-6d %12.4f %12.4f %12.4f\n", k, m.success_rate,
                          m.map, m.ndcg);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "  mrr    %12.4f\n", rep.mrr);
        out << buf;
    }
    return out.str();
}

} // namespace apigen::evaluation
