#pragma once

// Rank aggregation toward the Kemeny optimal ranking: the ranking minimizing
// the total Kendall distance to the input rankings. Exact solving is NP-hard,
// so alongside the exact small-instance solver there are three heuristics
// (Borda, merge sort, beam search) and an ILP emitter for external solvers.
//
// All methods consume the precedence matrix Q, where Q[i][j] is the weighted
// fraction of inputs ranking i above j. Inputs are first padded to a common
// universe: every item missing from a ranking joins one tied block at the
// bottom, and a tied pair contributes 1/2 to each of Q[i][j], Q[j][i], which
// keeps Q[i][j] + Q[j][i] = 1.
//
// Reported cost is the objective scaled by the number of inputs; with
// unweighted inputs that equals the total Kendall distance to the padded
// inputs (tied pairs counting 1/2).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "paperrec/core.hpp"

namespace paperrec {

// Complete ranking with ties: level[i] < level[j] means i is ranked above j.
struct PaddedRanking {
    std::map<PaperId, int> level;

    bool operator==(const PaddedRanking&) const = default;
};

// Extends each input to the union universe of all ranked items; the missing
// items of a ranking form one tied block below its ranked items.
inline std::vector<PaddedRanking> pad_unranked(const std::vector<Ranking>& inputs) {
    std::set<PaperId> universe;
    bool any = false;
    for (const Ranking& r : inputs) {
        any = any || !r.empty();
        for (const ScoredItem& s : r.items)
            universe.insert(s.id);
    }
    if (!any)
        throw validation_error("pad_unranked: all input rankings empty");
    std::vector<PaddedRanking> padded;
    padded.reserve(inputs.size());
    for (const Ranking& r : inputs) {
        PaddedRanking p;
        int pos = 0;
        for (const ScoredItem& s : r.items)
            p.level[s.id] = pos++;
        for (const PaperId& id : universe)
            p.level.try_emplace(id, pos);
        padded.push_back(std::move(p));
    }
    return padded;
}

// Pairwise disagreements between two rankings over the same universe; a pair
// tied in one ranking and ordered in the other counts 1/2.
inline double kendall_distance(const PaddedRanking& x, const PaddedRanking& y) {
    if (x.level.size() != y.level.size())
        throw validation_error("kendall_distance: universe mismatch");
    std::vector<std::pair<int, int>> levels;
    levels.reserve(x.level.size());
    auto ix = x.level.begin();
    auto iy = y.level.begin();
    for (; ix != x.level.end(); ++ix, ++iy) {
        if (ix->first != iy->first)
            throw validation_error("kendall_distance: universe mismatch");
        levels.emplace_back(ix->second, iy->second);
    }
    double d = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t j = i + 1; j < levels.size(); ++j) {
            int a = levels[i].first - levels[j].first;
            int b = levels[i].second - levels[j].second;
            if (a == 0 && b == 0)
                continue;
            if (a == 0 || b == 0)
                d += 0.5;
            else if ((a < 0) != (b < 0))
                d += 1.0;
        }
    }
    return d;
}

// Pairwise win-fraction matrix over the union universe (items in ascending
// id order). Unweighted inputs count 1/K each; explicit weights must be
// non-negative and sum to 1.
struct PrecedenceMatrix {
    std::vector<PaperId> items;
    std::vector<std::vector<double>> q;
    int k = 0;  // number of input rankings

    std::size_t size() const { return items.size(); }

    bool operator==(const PrecedenceMatrix&) const = default;
};

inline PrecedenceMatrix precedence(const std::vector<Ranking>& inputs,
                                   const std::optional<std::vector<double>>& weights = {}) {
    std::vector<double> w;
    if (weights) {
        if (weights->size() != inputs.size())
            throw validation_error("precedence: weight count does not match input count");
        double sum = 0.0;
        for (double v : *weights) {
            if (v < 0.0)
                throw validation_error("precedence: negative weight");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw validation_error("precedence: weights must sum to 1");
        w = *weights;
    } else {
        w.assign(inputs.size(), 1.0 / static_cast<double>(inputs.size()));
    }

    std::vector<PaddedRanking> padded = pad_unranked(inputs);
    PrecedenceMatrix m;
    m.k = static_cast<int>(inputs.size());
    for (const auto& [id, lvl] : padded.front().level)
        m.items.push_back(id);
    std::size_t e = m.items.size();
    m.q.assign(e, std::vector<double>(e, 0.0));

    std::vector<int> levels(e);
    for (std::size_t r = 0; r < padded.size(); ++r) {
        std::size_t idx = 0;
        for (const auto& [id, lvl] : padded[r].level)
            levels[idx++] = lvl;  // map iteration matches m.items order
        for (std::size_t i = 0; i < e; ++i) {
            for (std::size_t j = i + 1; j < e; ++j) {
                if (levels[i] < levels[j]) {
                    m.q[i][j] += w[r];
                } else if (levels[j] < levels[i]) {
                    m.q[j][i] += w[r];
                } else {
                    m.q[i][j] += 0.5 * w[r];
                    m.q[j][i] += 0.5 * w[r];
                }
            }
        }
    }
    return m;
}

struct AggregateResult {
    Ranking ranking;
    std::string method;
    double cost = 0.0;  // objective scaled by the input count
    std::chrono::duration<double> elapsed{0.0};
};

namespace detail {

// Disagreement mass of a permutation (indices into m.items):
// sum of q[later][earlier] over all ordered pairs.
inline double objective(const PrecedenceMatrix& m, const std::vector<std::size_t>& order) {
    double c = 0.0;
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b)
            c += m.q[order[b]][order[a]];
    return c;
}

// Positional scores so the Ranking type's descending-score invariant encodes
// exactly the aggregate order.
inline Ranking order_to_ranking(const PrecedenceMatrix& m, const std::vector<std::size_t>& order) {
    std::vector<ScoredItem> items;
    items.reserve(order.size());
    double e = static_cast<double>(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        items.push_back({m.items[order[pos]], e - static_cast<double>(pos)});
    Ranking r;
    r.items = std::move(items);
    r.limit = order.size();
    return r;
}

inline AggregateResult finish(const PrecedenceMatrix& m, std::vector<std::size_t> order,
                              std::string method) {
    AggregateResult res;
    res.cost = objective(m, order) * static_cast<double>(m.k);
    res.ranking = order_to_ranking(m, order);
    res.ranking.algorithm = method;
    res.method = std::move(method);
    return res;
}

}  // namespace detail

// Sorts items by total win fraction (row sum of Q), descending; ties break
// by ascending id. The classic positional average-rank heuristic.
inline AggregateResult aggregate_borda(const PrecedenceMatrix& m) {
    std::size_t e = m.size();
    std::vector<double> row_sum(e, 0.0);
    for (std::size_t i = 0; i < e; ++i)
        row_sum[i] = std::accumulate(m.q[i].begin(), m.q[i].end(), 0.0);
    std::vector<std::size_t> order(e);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (row_sum[a] != row_sum[b])
            return row_sum[a] > row_sum[b];
        return a < b;  // items are in ascending id order
    });
    return detail::finish(m, std::move(order), "borda");
}

namespace detail {

// Hand-rolled stable merge sort: the pairwise comparator "i before j iff
// q[i][j] >= q[j][i]" is majority preference, which need not be transitive,
// so std::sort / std::stable_sort are off-limits.
inline void merge_sort(const PrecedenceMatrix& m, std::vector<std::size_t>& order, std::size_t lo,
                       std::size_t hi, std::vector<std::size_t>& scratch) {
    if (hi - lo <= 1)
        return;
    std::size_t mid = lo + (hi - lo) / 2;
    merge_sort(m, order, lo, mid, scratch);
    merge_sort(m, order, mid, hi, scratch);
    std::size_t a = lo;
    std::size_t b = mid;
    scratch.clear();
    while (a < mid && b < hi) {
        if (m.q[order[a]][order[b]] >= m.q[order[b]][order[a]])
            scratch.push_back(order[a++]);
        else
            scratch.push_back(order[b++]);
    }
    while (a < mid)
        scratch.push_back(order[a++]);
    while (b < hi)
        scratch.push_back(order[b++]);
    std::copy(scratch.begin(), scratch.end(), order.begin() + static_cast<std::ptrdiff_t>(lo));
}

}  // namespace detail

inline AggregateResult aggregate_mergesort(const PrecedenceMatrix& m) {
    std::vector<std::size_t> order(m.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> scratch;
    scratch.reserve(order.size());
    detail::merge_sort(m, order, 0, order.size(), scratch);
    return detail::finish(m, std::move(order), "mergesort");
}

// Breadth-first search over the permutation tree keeping the best
// `beam_width` partial rankings per level. A partial ranking is scored by
// its total agreement mass: ordered pairs inside the prefix plus prefix
// items over the still-unplaced ones (a prefix commits to preceding them).
// Scoring prefixes only on their internal pairs would leave every level-1
// candidate tied at zero and the search blind. Candidate ties break by
// lexicographic item sequence. Width 1 is the greedy special case; an
// unbounded width explores every permutation.
inline AggregateResult aggregate_beam(const PrecedenceMatrix& m, std::size_t beam_width) {
    if (beam_width < 1)
        throw validation_error("aggregate_beam: beam width must be >= 1");
    std::size_t e = m.size();
    if (e == 0)
        return detail::finish(m, {}, "beam");

    std::vector<double> row_sum(e, 0.0);
    for (std::size_t i = 0; i < e; ++i)
        row_sum[i] = std::accumulate(m.q[i].begin(), m.q[i].end(), 0.0);

    struct Candidate {
        std::vector<std::size_t> prefix;
        double score = 0.0;
    };

    std::vector<Candidate> beam{{{}, 0.0}};
    struct Expansion {
        double score;
        std::size_t parent;
        std::size_t item;
    };
    std::vector<Expansion> expansions;

    for (std::size_t level = 0; level < e; ++level) {
        expansions.clear();
        for (std::size_t p = 0; p < beam.size(); ++p) {
            const Candidate& parent = beam[p];
            std::vector<bool> used(e, false);
            for (std::size_t i : parent.prefix)
                used[i] = true;
            for (std::size_t x = 0; x < e; ++x) {
                if (used[x])
                    continue;
                // Appending x: its pairs against the prefix were already
                // counted as prefix-over-unplaced mass q[i][x]; the new mass
                // is x over the remaining items, row_sum minus x's mass over
                // prefix items.
                double gained = row_sum[x];
                for (std::size_t i : parent.prefix)
                    gained -= m.q[x][i];
                expansions.push_back({parent.score + gained, p, x});
            }
        }
        auto lex_less = [&](const Expansion& a, const Expansion& b) {
            const auto& pa = beam[a.parent].prefix;
            const auto& pb = beam[b.parent].prefix;
            for (std::size_t i = 0; i < pa.size(); ++i) {
                std::size_t xa = pa[i];
                std::size_t xb = pb[i];
                if (xa != xb)
                    return xa < xb;
            }
            return a.item < b.item;
        };
        auto better = [&](const Expansion& a, const Expansion& b) {
            if (a.score != b.score)
                return a.score > b.score;
            return lex_less(a, b);
        };
        std::size_t keep = std::min(beam_width, expansions.size());
        std::partial_sort(expansions.begin(),
                          expansions.begin() + static_cast<std::ptrdiff_t>(keep),
                          expansions.end(), better);
        expansions.resize(keep);
        std::vector<Candidate> next;
        next.reserve(keep);
        for (const Expansion& x : expansions) {
            Candidate c;
            c.prefix = beam[x.parent].prefix;
            c.prefix.push_back(x.item);
            c.score = x.score;
            next.push_back(std::move(c));
        }
        beam = std::move(next);
    }
    return detail::finish(m, std::move(beam.front().prefix), "beam");
}

inline constexpr std::size_t kDefaultExactCap = 16;

// Exact Kemeny optimum by dynamic programming over item subsets: G[S] is the
// minimal internal disagreement of ranking the set S, built by choosing
// which item goes first. O(2^E * E^2), hence the size cap. Reconstruction
// walks forward preferring the lowest id among optimal heads, so the result
// is the lexicographically smallest optimal ranking.
inline AggregateResult exact_kemeny(const PrecedenceMatrix& m,
                                    std::size_t cap = kDefaultExactCap) {
    std::size_t e = m.size();
    if (e > cap)
        throw capacity_error("exact aggregation limited to " + std::to_string(cap) +
                             " items (instance has " + std::to_string(e) +
                             "); use borda, mergesort, or beam");
    if (e == 0)
        return detail::finish(m, {}, "exact");

    std::uint32_t full = (e == 32) ? 0xffffffffu : ((1u << e) - 1u);
    std::vector<double> g(full + 1u, 0.0);
    // head_cost(x, S) = sum over y in S\{x} of q[y][x]
    auto head_cost = [&](std::size_t x, std::uint32_t mask) {
        double c = 0.0;
        for (std::size_t y = 0; y < e; ++y)
            if ((mask >> y) & 1u)
                c += m.q[y][x];
        return c - m.q[x][x];
    };
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        if ((mask & (mask - 1u)) == 0u) {
            g[mask] = 0.0;  // singleton
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < e; ++x) {
            if (!((mask >> x) & 1u))
                continue;
            double c = head_cost(x, mask) + g[mask & ~(1u << x)];
            if (c < best)
                best = c;
        }
        g[mask] = best;
    }

    std::vector<std::size_t> order;
    order.reserve(e);
    std::uint32_t mask = full;
    while (mask != 0u) {
        std::size_t pick = e;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < e; ++x) {
            if (!((mask >> x) & 1u))
                continue;
            double c = head_cost(x, mask) + g[mask & ~(1u << x)];
            if (c < best) {
                best = c;
                pick = x;
            }
        }
        order.push_back(pick);
        mask &= ~(1u << pick);
    }
    return detail::finish(m, std::move(order), "exact");
}

struct IlpSummary {
    std::size_t variables = 0;
    std::size_t symmetry_constraints = 0;
    std::size_t triple_constraints = 0;
};

// Writes the aggregation problem as an integer linear program in LP format.
// Binary x_i_j = 1 means item i is ranked before item j; minimizing
// sum Q_ij*x_ji + Q_ji*x_ij under the pairwise complementarity and triple
// transitivity constraints yields the Kemeny optimum (this is the minimum
// weighted feedback arc set). Intended for external solvers; at production
// sizes the cubic constraint count makes this route expensive, which is why
// the in-process exact solver above exists for small instances.
inline IlpSummary emit_ilp(const PrecedenceMatrix& m, const std::filesystem::path& path) {
    std::size_t e = m.size();
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw validation_error("cannot write LP file: " + path.string());

    auto var = [](std::size_t i, std::size_t j) {
        return "x_" + std::to_string(i) + "_" + std::to_string(j);
    };
    std::ostringstream obj;
    obj.precision(12);
    bool first = true;
    for (std::size_t i = 0; i < e; ++i) {
        for (std::size_t j = 0; j < e; ++j) {
            if (i == j)
                continue;
            if (!first)
                obj << " + ";
            obj << m.q[i][j] << ' ' << var(j, i);
            first = false;
        }
    }

    IlpSummary summary;
    summary.variables = e >= 2 ? e * (e - 1) : 0;
    out << "\\ Kemeny rank aggregation over " << e << " items\n";
    for (std::size_t i = 0; i < e; ++i)
        out << "\\ item " << i << ": " << m.items[i] << '\n';
    out << "Minimize\n obj: " << (e > 1 ? obj.str() : "0 x_dummy") << "\n";
    out << "Subject To\n";
    for (std::size_t i = 0; i < e; ++i) {
        for (std::size_t j = i + 1; j < e; ++j) {
            out << " sym_" << i << '_' << j << ": " << var(i, j) << " + " << var(j, i)
                << " = 1\n";
            ++summary.symmetry_constraints;
        }
    }
    for (std::size_t i = 0; i < e; ++i) {
        for (std::size_t j = 0; j < e; ++j) {
            if (j == i)
                continue;
            for (std::size_t k = 0; k < e; ++k) {
                if (k == i || k == j)
                    continue;
                out << " tri_" << i << '_' << j << '_' << k << ": " << var(i, j) << " + "
                    << var(j, k) << " + " << var(k, i) << " >= 1\n";
                ++summary.triple_constraints;
            }
        }
    }
    out << "Binary\n";
    if (e > 1) {
        for (std::size_t i = 0; i < e; ++i)
            for (std::size_t j = 0; j < e; ++j)
                if (i != j)
                    out << ' ' << var(i, j) << '\n';
    } else {
        out << " x_dummy\n";
    }
    out << "End\n";
    return summary;
}

struct AggregateParams {
    std::size_t top_n = 50;
    std::size_t beam_width = 32;
    std::size_t exact_cap = kDefaultExactCap;
    std::optional<std::vector<double>> weights;
};

inline const std::vector<std::string>& aggregate_methods() {
    static const std::vector<std::string> methods = {"borda", "mergesort", "beam", "exact"};
    return methods;
}

// Pads, builds the precedence matrix, dispatches to the requested method and
// truncates the result. Empty base rankings are tolerated (they become one
// all-tied block); elapsed covers the whole per-query aggregation.
inline AggregateResult aggregate(const std::vector<Ranking>& inputs, const std::string& method,
                                 const AggregateParams& params = {}) {
    auto t0 = std::chrono::steady_clock::now();
    PrecedenceMatrix m = precedence(inputs, params.weights);
    AggregateResult res;
    if (method == "borda")
        res = aggregate_borda(m);
    else if (method == "mergesort")
        res = aggregate_mergesort(m);
    else if (method == "beam")
        res = aggregate_beam(m, params.beam_width);
    else if (method == "exact")
        res = exact_kemeny(m, params.exact_cap);
    else
        throw validation_error("unknown aggregation method: " + method);
    res.elapsed = std::chrono::steady_clock::now() - t0;
    for (const Ranking& r : inputs) {
        if (!r.query.empty()) {
            res.ranking.query = r.query;
            break;
        }
    }
    if (res.ranking.items.size() > params.top_n)
        res.ranking.items.resize(params.top_n);
    res.ranking.limit = params.top_n;
    return res;
}

}  // namespace paperrec
