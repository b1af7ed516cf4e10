#pragma once

// Production-selection metrics: coverage, pairwise list overlap, effective
// aggregation size, and wall-clock comparisons of the aggregation methods.
// Pure functions over rankings plus small timing harnesses; report assembly
// takes precomputed per-query results so it stays decoupled from the engine.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paperrec/aggregate.hpp"
#include "paperrec/core.hpp"

namespace paperrec {

// Fraction of queries with a non-empty recommendation list.
inline double coverage(const std::vector<Ranking>& results) {
    if (results.empty())
        throw validation_error("coverage: no queries");
    std::size_t answered = 0;
    for (const Ranking& r : results)
        if (!r.empty())
            ++answered;
    return static_cast<double>(answered) / static_cast<double>(results.size());
}

// Shared items as a percentage of the longer list; 0 when both are empty.
inline double pairwise_overlap(const Ranking& a, const Ranking& b) {
    std::size_t longer = std::max(a.size(), b.size());
    if (longer == 0)
        return 0.0;
    std::set<PaperId> in_a;
    for (const ScoredItem& s : a.items)
        in_a.insert(s.id);
    std::size_t shared = 0;
    for (const ScoredItem& s : b.items)
        shared += in_a.count(s.id);
    return 100.0 * static_cast<double>(shared) / static_cast<double>(longer);
}

// E is the size of the union of the lists — the aggregation problem size.
// p = NK/E measures how much the lists agree: p = K means all K lists are
// identical, p = 1 means they are mutually exclusive.
struct EffectiveSize {
    std::size_t e = 0;
    double p = 0.0;

    bool operator==(const EffectiveSize&) const = default;
};

inline EffectiveSize effective_size(const std::vector<Ranking>& inputs) {
    std::set<PaperId> all;
    std::size_t n = 0;
    std::size_t k = 0;
    for (const Ranking& r : inputs) {
        if (r.empty())
            continue;
        ++k;
        n = std::max(n, r.size());
        for (const ScoredItem& s : r.items)
            all.insert(s.id);
    }
    if (k == 0)
        throw validation_error("effective_size: all input rankings empty");
    EffectiveSize es;
    es.e = all.size();
    es.p = static_cast<double>(n * k) / static_cast<double>(es.e);
    return es;
}

struct RuntimeStats {
    double mean_seconds = 0.0;
    double stddev_seconds = 0.0;
    std::size_t repetitions = 0;
};

inline RuntimeStats runtime_stats(const std::vector<double>& seconds) {
    RuntimeStats st;
    st.repetitions = seconds.size();
    if (seconds.empty())
        return st;
    double sum = 0.0;
    for (double s : seconds)
        sum += s;
    st.mean_seconds = sum / static_cast<double>(seconds.size());
    if (seconds.size() > 1) {
        double sq = 0.0;
        for (double s : seconds)
            sq += (s - st.mean_seconds) * (s - st.mean_seconds);
        st.stddev_seconds = std::sqrt(sq / static_cast<double>(seconds.size() - 1));
    }
    return st;
}

// Times the full per-query aggregation (padding, precedence matrix, method)
// for each method on identical inputs. Runs strictly single-threaded so the
// methods stay comparable.
inline std::map<std::string, RuntimeStats> time_aggregators(
    const std::vector<Ranking>& inputs, const std::vector<std::string>& methods,
    std::size_t repetitions, const AggregateParams& params = {}) {
    if (repetitions < 3)
        throw validation_error("time_aggregators: need at least 3 repetitions");
    std::map<std::string, RuntimeStats> table;
    for (const std::string& method : methods) {
        std::vector<double> seconds;
        seconds.reserve(repetitions);
        for (std::size_t rep = 0; rep < repetitions; ++rep) {
            auto t0 = std::chrono::steady_clock::now();
            AggregateResult res = aggregate(inputs, method, params);
            std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            (void)res;
            seconds.push_back(dt.count());
        }
        table[method] = runtime_stats(seconds);
    }
    return table;
}

// K complete pseudo-random rankings over E synthetic items; the workload for
// runtime sweeps.
inline std::vector<Ranking> synthetic_instance(std::size_t e, std::size_t k,
                                               std::uint64_t seed) {
    if (e == 0 || k == 0)
        throw validation_error("synthetic_instance: e and k must be positive");
    std::vector<PaperId> ids;
    ids.reserve(e);
    for (std::size_t i = 0; i < e; ++i) {
        std::ostringstream name;
        name << 's' << std::setw(5) << std::setfill('0') << i;
        ids.push_back(name.str());
    }
    std::mt19937_64 rng(seed);
    std::vector<Ranking> out;
    out.reserve(k);
    for (std::size_t r = 0; r < k; ++r) {
        std::shuffle(ids.begin(), ids.end(), rng);
        Ranking rk;
        rk.query = "synthetic";
        rk.algorithm = "synthetic-" + std::to_string(r);
        rk.limit = e;
        for (std::size_t pos = 0; pos < e; ++pos)
            rk.items.push_back({ids[pos], static_cast<double>(e - pos)});
        out.push_back(std::move(rk));
    }
    return out;
}

struct SweepRow {
    std::size_t e = 0;
    std::string method;
    RuntimeStats stats;
};

// Runtime-vs-size sweep over synthetic instances; one row per (size, method).
inline std::vector<SweepRow> run_sweep(const std::vector<std::size_t>& sizes, std::size_t k,
                                       const std::vector<std::string>& methods,
                                       std::size_t repetitions, std::uint64_t seed,
                                       const AggregateParams& params = {}) {
    std::vector<SweepRow> rows;
    for (std::size_t e : sizes) {
        std::vector<Ranking> inputs = synthetic_instance(e, k, seed + e);
        auto table = time_aggregators(inputs, methods, repetitions, params);
        for (const std::string& method : methods)
            rows.push_back({e, method, table.at(method)});
    }
    return rows;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "e,method,mean_seconds,stddev_seconds,repetitions\n";
    for (const SweepRow& row : rows) {
        out << row.e << ',' << row.method << ',' << std::setprecision(9) << std::fixed
            << row.stats.mean_seconds << ',' << row.stats.stddev_seconds << ','
            << row.stats.repetitions << '\n';
        out.unsetf(std::ios::floatfield);
    }
}

// Everything cmd_eval computed, ready for rendering. results[q][a] is the
// ranking of algorithms[a] for queries[q]; call_seconds mirrors it.
struct EvalInputs {
    std::vector<std::string> algorithms;
    std::vector<PaperId> queries;
    std::vector<std::vector<Ranking>> results;
    std::vector<std::vector<double>> call_seconds;
};

struct EvalReport {
    std::vector<std::string> algorithms;
    std::vector<PaperId> queries;
    std::map<std::string, double> coverage;
    std::vector<std::vector<double>> mean_overlap;  // percent, [algo][algo]
    std::vector<std::size_t> effective_sizes;       // per query; 0 if no list
    std::vector<double> overlap_factors;            // per query p; 0 if no list
    std::map<std::string, RuntimeStats> base_runtime;
    std::map<std::string, RuntimeStats> aggregator_runtime;  // may be empty
};

inline EvalReport build_report(const EvalInputs& in) {
    std::size_t na = in.algorithms.size();
    std::size_t nq = in.queries.size();
    if (na == 0 || nq == 0)
        throw validation_error("build_report: need at least one algorithm and one query");
    if (in.results.size() != nq)
        throw validation_error("build_report: results/queries size mismatch");
    for (const auto& row : in.results)
        if (row.size() != na)
            throw validation_error("build_report: results row width mismatch");

    EvalReport rep;
    rep.algorithms = in.algorithms;
    rep.queries = in.queries;

    for (std::size_t a = 0; a < na; ++a) {
        std::vector<Ranking> column;
        column.reserve(nq);
        for (std::size_t q = 0; q < nq; ++q)
            column.push_back(in.results[q][a]);
        rep.coverage[in.algorithms[a]] = coverage(column);
    }

    rep.mean_overlap.assign(na, std::vector<double>(na, 0.0));
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            double sum = 0.0;
            for (std::size_t q = 0; q < nq; ++q)
                sum += pairwise_overlap(in.results[q][i], in.results[q][j]);
            rep.mean_overlap[i][j] = sum / static_cast<double>(nq);
        }
    }

    rep.effective_sizes.reserve(nq);
    rep.overlap_factors.reserve(nq);
    for (std::size_t q = 0; q < nq; ++q) {
        bool any = false;
        for (const Ranking& r : in.results[q])
            any = any || !r.empty();
        if (!any) {
            rep.effective_sizes.push_back(0);
            rep.overlap_factors.push_back(0.0);
            continue;
        }
        EffectiveSize es = effective_size(in.results[q]);
        rep.effective_sizes.push_back(es.e);
        rep.overlap_factors.push_back(es.p);
    }

    if (!in.call_seconds.empty()) {
        if (in.call_seconds.size() != nq)
            throw validation_error("build_report: call_seconds size mismatch");
        for (std::size_t a = 0; a < na; ++a) {
            std::vector<double> seconds;
            seconds.reserve(nq);
            for (std::size_t q = 0; q < nq; ++q) {
                if (in.call_seconds[q].size() != na)
                    throw validation_error("build_report: call_seconds row width mismatch");
                seconds.push_back(in.call_seconds[q][a]);
            }
            rep.base_runtime[in.algorithms[a]] = runtime_stats(seconds);
        }
    }
    return rep;
}

inline void write_report_text(const EvalReport& rep, std::ostream& out) {
    out << "queries: " << rep.queries.size() << "\n";
    out << "coverage\n";
    for (const std::string& a : rep.algorithms)
        out << "  " << std::left << std::setw(10) << a << std::right << std::fixed
            << std::setprecision(4) << rep.coverage.at(a) << "\n";

    out << "mean pairwise overlap (%)\n  " << std::setw(10) << ' ';
    for (const std::string& a : rep.algorithms)
        out << std::setw(9) << a;
    out << "\n";
    for (std::size_t i = 0; i < rep.algorithms.size(); ++i) {
        out << "  " << std::left << std::setw(10) << rep.algorithms[i] << std::right;
        for (std::size_t j = 0; j < rep.algorithms.size(); ++j)
            out << std::setw(9) << std::setprecision(1) << rep.mean_overlap[i][j];
        out << "\n";
    }

    out << "effective size\n";
    for (std::size_t q = 0; q < rep.queries.size(); ++q)
        out << "  " << std::left << std::setw(10) << rep.queries[q] << std::right << std::setw(6)
            << rep.effective_sizes[q] << "  p=" << std::setprecision(3) << rep.overlap_factors[q]
            << "\n";

    if (!rep.base_runtime.empty()) {
        out << "base runtime (s/query)\n";
        for (const std::string& a : rep.algorithms) {
            const RuntimeStats& st = rep.base_runtime.at(a);
            out << "  " << std::left << std::setw(10) << a << std::right
                << std::setprecision(6) << "mean " << st.mean_seconds << "  stddev "
                << st.stddev_seconds << "\n";
        }
    }
    if (!rep.aggregator_runtime.empty()) {
        out << "aggregator runtime (s/query)\n";
        for (const auto& [method, st] : rep.aggregator_runtime)
            out << "  " << std::left << std::setw(10) << method << std::right
                << std::setprecision(6) << "mean " << st.mean_seconds << "  stddev "
                << st.stddev_seconds << "\n";
    }
    out.unsetf(std::ios::floatfield);
}

inline nlohmann::json report_to_json(const EvalReport& rep) {
    nlohmann::json j;
    j["queries"] = rep.queries;
    j["algorithms"] = rep.algorithms;
    j["coverage"] = rep.coverage;
    j["mean_overlap_percent"] = rep.mean_overlap;
    j["effective_size"] = rep.effective_sizes;
    j["overlap_factor"] = rep.overlap_factors;
    auto stats_json = [](const RuntimeStats& st) {
        return nlohmann::json{{"mean_seconds", st.mean_seconds},
                              {"stddev_seconds", st.stddev_seconds},
                              {"repetitions", st.repetitions}};
    };
    for (const auto& [name, st] : rep.base_runtime)
        j["base_runtime"][name] = stats_json(st);
    for (const auto& [name, st] : rep.aggregator_runtime)
        j["aggregator_runtime"][name] = stats_json(st);
    return j;
}

}  // namespace paperrec
