#pragma once

// Weighted co-authorship graph and the two-hop shared-author recommender.
// An edge weight is the number of authors two papers share.

#include <map>
#include <vector>

#include "paperrec/core.hpp"

namespace paperrec {

struct CoauthorGraph {
    // Every corpus paper is a key; isolated papers map to an empty set.
    std::map<PaperId, std::map<PaperId, int>> adj;

    bool contains(const PaperId& id) const { return adj.count(id) != 0; }

    const std::map<PaperId, int>& neighbors(const PaperId& id) const {
        auto it = adj.find(id);
        if (it == adj.end())
            throw unknown_id_error("unknown paper id: " + id);
        return it->second;
    }

    bool operator==(const CoauthorGraph&) const = default;
};

inline CoauthorGraph build_coauthor_graph(const Corpus& corpus) {
    CoauthorGraph g;
    std::map<std::string, std::vector<PaperId>> by_author;
    for (const auto& [id, rec] : corpus.papers) {
        g.adj[id];
        for (const std::string& author : rec.authors)
            by_author[author].push_back(id);
    }
    for (const auto& [author, papers] : by_author) {
        for (std::size_t i = 0; i < papers.size(); ++i) {
            for (std::size_t j = i + 1; j < papers.size(); ++j) {
                ++g.adj[papers[i]][papers[j]];
                ++g.adj[papers[j]][papers[i]];
            }
        }
    }
    return g;
}

// Score of a one- or two-hop neighbor j: the sum over all simple paths
// q->j of length <= 2 of the edge weights along the path. Ties break by
// ascending id so repeated runs agree.
inline Ranking recommend_ca(const CoauthorGraph& g, const PaperId& q, std::size_t n) {
    const auto& direct = g.neighbors(q);
    std::map<PaperId, double> score;
    for (const auto& [j, w] : direct)
        score[j] += w;
    for (const auto& [x, wqx] : direct) {
        for (const auto& [j, wxj] : g.neighbors(x)) {
            if (j == q || j == x)
                continue;
            score[j] += wqx + wxj;
        }
    }
    std::vector<ScoredItem> scored;
    scored.reserve(score.size());
    for (const auto& [j, s] : score)
        scored.push_back({j, s});
    return make_ranking(q, "b-ca", std::move(scored), n);
}

}  // namespace paperrec
