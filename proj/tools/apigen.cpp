#include "apigen/config.hpp"
#include "apigen/corpus.hpp"
#include "apigen/evaluation.hpp"
#include "apigen/pipeline.hpp"
#include "apigen/util.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace apigen;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::string> strategy;
    std::optional<int> n_examples;
    bool no_reasoning = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "pipeline config file (JSON)");
    cmd->add_option("--strategy", opts.strategy, "override retrieval strategy");
    cmd->add_option("--n-examples", opts.n_examples, "override demonstration count");
    cmd->add_flag("--no-reasoning", opts.no_reasoning, "drop reasoning lines from demonstrations");
}

config::PipelineConfig resolve_config(const CommonOpts& opts) {
    auto cfg = opts.config_path.empty() ? config::PipelineConfig{}
                                        : config::load_config(opts.config_path);
    if (opts.strategy) cfg.strategy = *opts.strategy;
    if (opts.n_examples) cfg.n_examples = *opts.n_examples;
    if (opts.no_reasoning) cfg.reasoning_enabled = false;
    config::validate(cfg);
    return cfg;
}

std::vector<corpus::Query> resolve_queries(const std::string& single,
                                           const std::string& queries_path) {
    if (!single.empty() && !queries_path.empty())
        throw Error("--query and --queries are mutually exclusive");
    if (!single.empty()) return {{"q1", single}};
    if (!queries_path.empty()) return corpus::load_queries(queries_path);
    throw Error("one of --query or --queries is required");
}

void write_or_print(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    util::atomic_write_file(out_path, content);
}

int cmd_build_dict(const std::string& html_root, const std::string& out_path,
                   const CommonOpts& opts) {
    auto cfg = resolve_config(opts);
    auto lexicon = text::CategoryLexicon::load(cfg.category_lexicon_path);
    corpus::DictionaryBuildStats stats;
    auto dict = corpus::build_dictionary(html_root, lexicon, &stats);
    corpus::save_dictionary(dict, out_path.empty() ? cfg.dictionary_path : out_path);
    std::cout << "dictionary: " << dict.size() << " entries ("
              << stats.deprecated_excluded << " deprecated excluded, "
              << stats.overloads_merged << " overloads merged, "
              << stats.files_parsed << " files)\n";
    for (const auto& w : stats.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
}

int cmd_index(const CommonOpts& opts) {
    auto cfg = resolve_config(opts);
    auto ctx = pipeline::load_context(cfg); // dense strategies embed the corpus here
    std::cout << "indexed " << ctx.posts.size() << " posts with strategy " << cfg.strategy
              << "\n";
    if (ctx.embedder)
        std::cout << "embedding cache warmed (" << ctx.embedder->requests_made()
                  << " service calls)\n";
    return 0;
}

int cmd_recommend(const CommonOpts& opts, const std::string& query,
                  const std::string& queries_path, const std::string& out_path, bool dry_run) {
    auto cfg = resolve_config(opts);
    auto queries = resolve_queries(query, queries_path);
    auto ctx = pipeline::load_context(cfg);
    auto outcomes = pipeline::run_queries(ctx, queries, dry_run);

    std::string body;
    for (const auto& oc : outcomes) {
        for (const auto& w : oc.warnings)
            std::cerr << "warning [" << oc.query_id << "]: " << w << "\n";
        if (dry_run) {
            body += "# query " + oc.query_id + "\n" + oc.prompt + "\n";
        } else {
            body += pipeline::outcome_to_jsonl(oc) + "\n";
        }
    }
    write_or_print(out_path, body);
    return 0;
}

std::vector<evaluation::Level> parse_levels(const std::string& level) {
    if (level == "method") return {evaluation::Level::method};
    if (level == "class") return {evaluation::Level::class_level};
    if (level == "both") return {evaluation::Level::method, evaluation::Level::class_level};
    throw Error("unknown --level \"" + level + "\" (expected method, class, or both)");
}

int cmd_evaluate(const std::string& run_path, const std::string& truth_path,
                 const std::string& level, std::vector<int> ks, const std::string& out_path) {
    auto runs = evaluation::load_runs(run_path);
    auto truths = evaluation::load_truths(truth_path);
    if (ks.empty()) ks = {1, 3, 5};
    auto reports = evaluation::evaluate(runs, truths, parse_levels(level), ks);
    std::cout << evaluation::reports_to_table(reports);
    if (!out_path.empty()) {
        std::string body;
        for (const auto& r : reports) body += evaluation::report_to_json(r) + "\n";
        util::atomic_write_file(out_path, body);
    }
    return 0;
}

int cmd_ablate(const std::string& config_path, const std::string& queries_path,
               const std::string& truth_path, const std::string& out_dir,
               std::vector<std::string> strategies, std::vector<int> ns,
               const std::string& reasoning) {
    auto base = config_path.empty() ? config::PipelineConfig{}
                                    : config::load_config(config_path);
    auto queries = corpus::load_queries(queries_path);
    std::vector<evaluation::QueryTruth> truths;
    if (!truth_path.empty()) truths = evaluation::load_truths(truth_path);

    if (strategies.empty()) strategies = {base.strategy};
    if (ns.empty()) ns = {base.n_examples};
    std::vector<bool> reasoning_values;
    if (reasoning == "on") reasoning_values = {true};
    else if (reasoning == "off") reasoning_values = {false};
    else if (reasoning == "both") reasoning_values = {true, false};
    else if (reasoning == "config") reasoning_values = {base.reasoning_enabled};
    else throw Error("unknown --reasoning \"" + reasoning + "\" (on, off, both, or config)");

    std::filesystem::create_directories(out_dir);
    bool any_failed = false;
    for (const auto& strategy : strategies) {
        for (int n : ns) {
            for (bool reason : reasoning_values) {
                std::string cell = strategy + "_n" + std::to_string(n) +
                                   (reason ? "_reasoning" : "_plain");
                try {
                    auto cfg = base;
                    cfg.strategy = strategy;
                    cfg.n_examples = n;
                    cfg.reasoning_enabled = reason;
                    config::validate(cfg);
                    auto ctx = pipeline::load_context(cfg);
                    auto outcomes = pipeline::run_queries(ctx, queries, false);

                    std::string runs_body;
                    std::vector<evaluation::QueryRun> runs;
                    for (const auto& oc : outcomes) {
                        runs_body += pipeline::outcome_to_jsonl(oc) + "\n";
                        runs.push_back({oc.query_id, oc.recommendation.ranked_apis});
                    }
                    auto runs_path = std::filesystem::path(out_dir) / (cell + ".runs.jsonl");
                    util::atomic_write_file(runs_path, runs_body);

                    if (!truths.empty()) {
                        auto reports = evaluation::evaluate(
                            runs, truths,
                            {evaluation::Level::method, evaluation::Level::class_level},
                            {1, 3, 5});
                        std::string report_body;
                        for (const auto& r : reports)
                            report_body += evaluation::report_to_json(r) + "\n";
                        util::atomic_write_file(
                            std::filesystem::path(out_dir) / (cell + ".report.jsonl"),
                            report_body);
                    }
                    std::cout << "cell " << cell << ": ok (" << outcomes.size()
                              << " queries)\n";
                } catch (const std::exception& e) {
                    any_failed = true;
                    std::cout << "cell " << cell << ": FAILED (" << e.what() << ")\n";
                }
            }
        }
    }
    return any_failed ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"APIGen: retrieval-augmented generative API recommendation"};
    app.require_subcommand(1);

    CommonOpts build_opts;
    std::string html_root, build_out;
    auto* build = app.add_subcommand("build-dict",
                                     "build the API knowledge dictionary from reference docs");
    build->add_option("--html", html_root, "root of the javadoc-style HTML tree")->required();
    build->add_option("--out", build_out, "dictionary output file");
    add_common(build, build_opts);

    CommonOpts index_opts;
    auto* index = app.add_subcommand("index", "build the retrieval index / warm caches");
    add_common(index, index_opts);

    CommonOpts rec_opts;
    std::string query, queries_path, rec_out;
    bool dry_run = false;
    auto* rec = app.add_subcommand("recommend", "recommend APIs for queries");
    rec->add_option("--query", query, "a single question");
    rec->add_option("--queries", queries_path, "query file (JSONL: id, question)");
    rec->add_option("--out", rec_out, "write results here instead of stdout");
    rec->add_flag("--dry-run", dry_run, "print the rendered prompt, skip the LLM");
    add_common(rec, rec_opts);

    std::string run_path, truth_path, level = "both", eval_out;
    std::vector<int> ks;
    auto* eval = app.add_subcommand("evaluate", "score a run against ground truth");
    eval->add_option("--run", run_path, "run file (JSONL)")->required();
    eval->add_option("--truth", truth_path, "ground-truth file (JSONL)")->required();
    eval->add_option("--level", level, "method, class, or both");
    eval->add_option("--k", ks, "cutoffs (default 1 3 5)");
    eval->add_option("--out", eval_out, "write machine-readable reports here");

    std::string ab_config, ab_queries, ab_truth, ab_out = "ablation";
    std::vector<std::string> ab_strategies;
    std::vector<int> ab_ns;
    std::string ab_reasoning = "config";
    auto* ab = app.add_subcommand("ablate", "sweep strategy / example-count / reasoning cells");
    ab->add_option("--config", ab_config, "pipeline config file (JSON)");
    ab->add_option("--queries", ab_queries, "query file (JSONL)")->required();
    ab->add_option("--truth", ab_truth, "optional ground truth for per-cell reports");
    ab->add_option("--out-dir", ab_out, "directory for per-cell runs and reports");
    ab->add_option("--strategy", ab_strategies, "strategies to sweep (repeatable)");
    ab->add_option("--n-examples", ab_ns, "example counts to sweep (repeatable)");
    ab->add_option("--reasoning", ab_reasoning, "on, off, both, or config");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build_dict(html_root, build_out, build_opts);
        if (index->parsed()) return cmd_index(index_opts);
        if (rec->parsed())
            return cmd_recommend(rec_opts, query, queries_path, rec_out, dry_run);
        if (eval->parsed()) return cmd_evaluate(run_path, truth_path, level, ks, eval_out);
        if (ab->parsed())
            return cmd_ablate(ab_config, ab_queries, ab_truth, ab_out, ab_strategies, ab_ns,
                              ab_reasoning);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
