// Command-line front end: corpus/index lifecycle plus the recommend,
// aggregate, and eval entry points.
//
// Exit codes: 0 ok, 2 usage/config/parse problem, 3 unknown entity,
// 4 capability limit (e.g. exact aggregation over the size cap).

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "paperrec/paperrec.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnknownEntity = 3;
constexpr int kExitCapability = 4;

struct BuildArgs {
    std::string corpus_path;
    std::string index_dir;
    std::size_t rare_threshold = paperrec::kDefaultRareThreshold;
    bool force = false;
};

struct RecommendArgs {
    std::string index_dir;
    std::string paper;
    std::string algo;
    std::size_t top_n = 50;
};

struct AggregateArgs {
    std::string index_dir;
    std::string paper;
    std::string method = "borda";
    std::size_t top_n = 50;
    std::size_t beam_width = 32;
    std::size_t exact_cap = paperrec::kDefaultExactCap;
    std::string weights_path;
};

struct EvalArgs {
    std::string index_dir;
    std::string queries_path;
    std::string out_dir;
    std::size_t top_n = 50;
    std::size_t reps = 3;
    std::size_t threads = 1;
    std::size_t beam_width = 32;
    bool sweep = false;
};

struct FixtureArgs {
    std::string name = "cit";
    std::string out_path;
};

int run_fixture(const FixtureArgs& args) {
    paperrec::Corpus corpus = paperrec::fixture(args.name);
    std::string hash = paperrec::save_corpus(corpus, args.out_path);
    std::cout << "wrote " << corpus.size() << " papers to " << args.out_path << " (hash " << hash
              << ")\n";
    return kExitOk;
}

int run_build(const BuildArgs& args) {
    paperrec::LoadReport report;
    paperrec::Corpus corpus = paperrec::load_corpus(args.corpus_path, &report);
    paperrec::Engine engine = paperrec::make_engine(std::move(corpus), args.rare_threshold);
    std::string hash = paperrec::save_engine(engine, args.index_dir, args.force);
    std::cout << "indexed " << engine.corpus.size() << " papers -> " << args.index_dir
              << " (hash " << hash << ")\n";
    if (report.self_citations_dropped || report.unresolved_dropped)
        std::cerr << "dropped " << report.self_citations_dropped << " self-citations, "
                  << report.unresolved_dropped << " unresolved citations\n";
    return kExitOk;
}

int run_recommend(const RecommendArgs& args) {
    paperrec::Engine engine = paperrec::load_engine(args.index_dir);
    paperrec::Ranking r = paperrec::recommend(engine, args.algo, args.paper, args.top_n);
    paperrec::write_ranking(std::cout, r);
    return kExitOk;
}

// One weight per base algorithm, lines "algo = value"; unknown names are
// rejected, absent ones default to 0. The validated vector follows the
// canonical algorithm order.
std::vector<double> load_weights(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw paperrec::validation_error("cannot open weights file: " + path);
    std::map<std::string, double> by_algo;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line.substr(0, line.find('#'));
        auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
        std::string compact;
        for (char c : trimmed)
            if (!is_space(c))
                compact += c;
        if (compact.empty())
            continue;
        std::size_t eq = compact.find('=');
        if (eq == std::string::npos)
            throw paperrec::validation_error("weights file line " + std::to_string(line_no) +
                                             ": expected algo=value");
        std::string algo = compact.substr(0, eq);
        const auto& algos = paperrec::base_algorithms();
        if (std::find(algos.begin(), algos.end(), algo) == algos.end())
            throw paperrec::validation_error("weights file line " + std::to_string(line_no) +
                                             ": unknown algorithm '" + algo + "'");
        try {
            by_algo[algo] = std::stod(compact.substr(eq + 1));
        } catch (const std::exception&) {
            throw paperrec::validation_error("weights file line " + std::to_string(line_no) +
                                             ": bad number");
        }
    }
    std::vector<double> weights;
    for (const std::string& algo : paperrec::base_algorithms())
        weights.push_back(by_algo.count(algo) ? by_algo[algo] : 0.0);
    return weights;
}

int run_aggregate(const AggregateArgs& args) {
    paperrec::Engine engine = paperrec::load_engine(args.index_dir);
    std::vector<paperrec::Ranking> inputs =
        paperrec::recommend_all(engine, args.paper, args.top_n);
    paperrec::AggregateParams params;
    params.top_n = args.top_n;
    params.beam_width = args.beam_width;
    params.exact_cap = args.exact_cap;
    if (!args.weights_path.empty())
        params.weights = load_weights(args.weights_path);
    paperrec::AggregateResult res = paperrec::aggregate(inputs, args.method, params);
    paperrec::write_aggregate(std::cout, res);
    return kExitOk;
}

std::vector<paperrec::PaperId> load_queries(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw paperrec::validation_error("cannot open queries file: " + path);
    std::vector<paperrec::PaperId> queries;
    std::string line;
    while (std::getline(in, line)) {
        std::string id = line.substr(0, line.find('#'));
        while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back())))
            id.pop_back();
        std::size_t start = 0;
        while (start < id.size() && std::isspace(static_cast<unsigned char>(id[start])))
            ++start;
        id = id.substr(start);
        if (!id.empty())
            queries.push_back(id);
    }
    if (queries.empty())
        throw paperrec::validation_error("queries file is empty: " + path);
    return queries;
}

int run_eval(const EvalArgs& args) {
    paperrec::Engine engine = paperrec::load_engine(args.index_dir);
    std::vector<paperrec::PaperId> queries = load_queries(args.queries_path);
    for (const paperrec::PaperId& q : queries)
        if (!engine.corpus.contains(q))
            throw paperrec::unknown_id_error("unknown paper id in queries file: " + q);

    const auto& algos = paperrec::base_algorithms();
    paperrec::EvalInputs inputs;
    inputs.algorithms = algos;
    inputs.queries = queries;
    inputs.results.assign(queries.size(), {});
    inputs.call_seconds.assign(queries.size(), {});

    // Queries are independent; workers pull the next index and write into
    // their own slot, so the output order never depends on scheduling.
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        try {
            while (true) {
                std::size_t q = next.fetch_add(1);
                if (q >= queries.size())
                    return;
                std::vector<paperrec::Ranking> row;
                std::vector<double> seconds;
                row.reserve(algos.size());
                seconds.reserve(algos.size());
                for (const std::string& algo : algos) {
                    auto t0 = std::chrono::steady_clock::now();
                    row.push_back(paperrec::recommend(engine, algo, queries[q], args.top_n));
                    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
                    seconds.push_back(dt.count());
                }
                inputs.results[q] = std::move(row);
                inputs.call_seconds[q] = std::move(seconds);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    };
    std::size_t n_threads = std::max<std::size_t>(1, args.threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);

    paperrec::EvalReport report = paperrec::build_report(inputs);

    // Aggregator timing pools the per-query timings; single-threaded on
    // purpose so the methods stay comparable.
    paperrec::AggregateParams params;
    params.top_n = args.top_n;
    params.beam_width = args.beam_width;
    std::vector<std::string> methods = {"borda", "mergesort", "beam"};
    std::map<std::string, std::vector<double>> pooled;
    for (std::size_t q = 0; q < queries.size(); ++q) {
        bool any = false;
        for (const paperrec::Ranking& r : inputs.results[q])
            any = any || !r.empty();
        if (!any)
            continue;
        auto table = paperrec::time_aggregators(inputs.results[q], methods,
                                                std::max<std::size_t>(3, args.reps), params);
        for (const auto& [method, stats] : table)
            pooled[method].push_back(stats.mean_seconds);
    }
    for (const auto& [method, seconds] : pooled)
        report.aggregator_runtime[method] = paperrec::runtime_stats(seconds);

    std::filesystem::create_directories(args.out_dir);
    std::filesystem::path out_dir(args.out_dir);
    {
        std::ofstream txt(out_dir / "report.txt", std::ios::trunc);
        if (!txt)
            throw paperrec::validation_error("cannot write report.txt");
        paperrec::write_report_text(report, txt);
    }
    {
        std::ofstream js(out_dir / "report.json", std::ios::trunc);
        if (!js)
            throw paperrec::validation_error("cannot write report.json");
        js << paperrec::report_to_json(report).dump(1, '\t') << '\n';
    }
    std::cout << "wrote " << (out_dir / "report.txt").string() << " and "
              << (out_dir / "report.json").string() << '\n';

    if (args.sweep) {
        std::vector<std::size_t> sizes = {25, 50, 100, 200};
        auto rows = paperrec::run_sweep(sizes, algos.size(), methods,
                                        std::max<std::size_t>(3, args.reps), 42, params);
        std::ofstream csv(out_dir / "sweep.csv", std::ios::trunc);
        if (!csv)
            throw paperrec::validation_error("cannot write sweep.csv");
        paperrec::write_sweep_csv(rows, csv);
        std::cout << "wrote " << (out_dir / "sweep.csv").string() << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paper-to-paper recommendation engine"};
    app.require_subcommand(1);

    FixtureArgs fixture_args;
    CLI::App* fixture = app.add_subcommand("fixture", "write a built-in demo corpus");
    fixture->add_option("--name", fixture_args.name, "fixture name: cit, txt, or auth")
        ->capture_default_str();
    fixture->add_option("--out", fixture_args.out_path, "output corpus path (JSONL)")
        ->required();

    BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build", "build all indices from a corpus");
    build->set_config("--config");
    build->add_option("--corpus", build_args.corpus_path, "corpus file (JSONL)")->required();
    build->add_option("--index", build_args.index_dir, "index output directory")->required();
    build->add_option("--rare-threshold", build_args.rare_threshold,
                      "max document frequency for candidate terms")
        ->capture_default_str();
    build->add_flag("--force", build_args.force, "overwrite an existing index");

    RecommendArgs rec_args;
    CLI::App* rec = app.add_subcommand("recommend", "rank papers related to one paper");
    rec->set_config("--config");
    rec->add_option("--index", rec_args.index_dir, "index directory")->required();
    rec->add_option("--paper", rec_args.paper, "query paper id")->required();
    rec->add_option("--algo", rec_args.algo, "one of: b-ccs, b-bc, b-ibcf, b-ccp, b-as, b-sts, b-ca")
        ->required();
    rec->add_option("--top-n", rec_args.top_n, "max items")->capture_default_str();

    AggregateArgs agg_args;
    CLI::App* agg = app.add_subcommand("aggregate", "fuse all base recommenders for one paper");
    agg->set_config("--config");
    agg->add_option("--index", agg_args.index_dir, "index directory")->required();
    agg->add_option("--paper", agg_args.paper, "query paper id")->required();
    agg->add_option("--method", agg_args.method, "one of: borda, mergesort, beam, exact")
        ->capture_default_str();
    agg->add_option("--top-n", agg_args.top_n, "max items")->capture_default_str();
    agg->add_option("--beam-width", agg_args.beam_width, "beam search width")
        ->capture_default_str();
    agg->add_option("--exact-cap", agg_args.exact_cap, "max items for the exact method")
        ->capture_default_str();
    agg->add_option("--weights", agg_args.weights_path,
                    "per-algorithm weights file (lines: algo = value, sum 1)");

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "coverage/overlap/runtime report");
    eval->set_config("--config");
    eval->add_option("--index", eval_args.index_dir, "index directory")->required();
    eval->add_option("--queries", eval_args.queries_path, "file with one paper id per line")
        ->required();
    eval->add_option("--out", eval_args.out_dir, "report output directory")->required();
    eval->add_option("--top-n", eval_args.top_n, "max items per list")->capture_default_str();
    eval->add_option("--reps", eval_args.reps, "timing repetitions per method (min 3)")
        ->capture_default_str();
    eval->add_option("--threads", eval_args.threads, "worker threads across queries")
        ->capture_default_str();
    eval->add_option("--beam-width", eval_args.beam_width, "beam search width")
        ->capture_default_str();
    eval->add_flag("--sweep", eval_args.sweep, "also write a runtime-vs-size sweep CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (fixture->parsed())
            return run_fixture(fixture_args);
        if (build->parsed())
            return run_build(build_args);
        if (rec->parsed())
            return run_recommend(rec_args);
        if (agg->parsed())
            return run_aggregate(agg_args);
        if (eval->parsed())
            return run_eval(eval_args);
    } catch (const paperrec::unknown_id_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnknownEntity;
    } catch (const paperrec::capacity_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCapability;
    } catch (const paperrec::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
