#pragma once

// Directed citation graph plus the degree-normalized sparse citation vectors
// and shared-neighbor candidate sets that drive the co-citation and
// bibliographic-coupling recommenders.
//
// Repeated citations of the same target collapse to a single edge here; the
// per-occurrence positions only matter to the proximity recommender, which
// reads them from the corpus directly.

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "paperrec/core.hpp"

namespace paperrec {

// Sparse vector keyed by paper id. Entries are sorted by id and never hold
// zero values.
struct SparseVector {
    std::vector<std::pair<PaperId, double>> entries;

    bool empty() const { return entries.empty(); }

    double norm() const {
        double s = 0.0;
        for (const auto& [id, v] : entries)
            s += v * v;
        return std::sqrt(s);
    }

    bool operator==(const SparseVector&) const = default;
};

inline double dot(const SparseVector& a, const SparseVector& b) {
    double s = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() && ib != b.entries.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            s += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return s;
}

// dot(a,b) / (|a||b|); 0 when either vector is empty.
inline double cosine(const SparseVector& a, const SparseVector& b) {
    if (a.empty() || b.empty())
        return 0.0;
    double na = a.norm();
    double nb = b.norm();
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return dot(a, b) / (na * nb);
}

struct CitationGraph {
    // Every corpus paper is a key in both maps, so degree 0 and "unknown id"
    // stay distinguishable.
    std::map<PaperId, std::set<PaperId>> out_adj;
    std::map<PaperId, std::set<PaperId>> in_adj;

    bool contains(const PaperId& id) const { return out_adj.count(id) != 0; }

    const std::set<PaperId>& out(const PaperId& id) const { return find(out_adj, id); }
    const std::set<PaperId>& in(const PaperId& id) const { return find(in_adj, id); }

    std::size_t out_degree(const PaperId& id) const { return out(id).size(); }
    std::size_t in_degree(const PaperId& id) const { return in(id).size(); }

    bool operator==(const CitationGraph&) const = default;

private:
    static const std::set<PaperId>& find(const std::map<PaperId, std::set<PaperId>>& adj,
                                         const PaperId& id) {
        auto it = adj.find(id);
        if (it == adj.end())
            throw unknown_id_error("unknown paper id: " + id);
        return it->second;
    }
};

inline CitationGraph build_graph(const Corpus& corpus) {
    CitationGraph g;
    for (const auto& [id, rec] : corpus.papers) {
        g.out_adj[id];
        g.in_adj[id];
    }
    for (const auto& [id, rec] : corpus.papers) {
        for (const auto& occ : rec.citations) {
            g.out_adj[id].insert(occ.target);
            g.in_adj[occ.target].insert(id);
        }
    }
    return g;
}

// Incoming citation vector of `i`, each citer j weighted 1/out_degree(j):
// being co-cited by a paper that cites little is worth more.
inline SparseVector normalized_in_vector(const CitationGraph& g, const PaperId& i) {
    SparseVector v;
    for (const PaperId& j : g.in(i))
        v.entries.emplace_back(j, 1.0 / static_cast<double>(g.out_degree(j)));
    return v;
}

// Outgoing citation vector of `i`, each cited j weighted 1/in_degree(j):
// citing a rarely-cited paper is worth more.
inline SparseVector normalized_out_vector(const CitationGraph& g, const PaperId& i) {
    SparseVector v;
    for (const PaperId& j : g.out(i))
        v.entries.emplace_back(j, 1.0 / static_cast<double>(g.in_degree(j)));
    return v;
}

// All j != i sharing at least one incoming citation with i. Exactly the set
// of papers whose normalized incoming vectors have nonzero cosine with i's,
// so restricting scoring to this set loses nothing.
inline std::set<PaperId> cocitation_candidates(const CitationGraph& g, const PaperId& i) {
    std::set<PaperId> out;
    for (const PaperId& citer : g.in(i))
        for (const PaperId& j : g.out(citer))
            if (j != i)
                out.insert(j);
    return out;
}

// All j != i sharing at least one outgoing citation with i.
inline std::set<PaperId> coupling_candidates(const CitationGraph& g, const PaperId& i) {
    std::set<PaperId> out;
    for (const PaperId& cited : g.out(i))
        for (const PaperId& j : g.in(cited))
            if (j != i)
                out.insert(j);
    return out;
}

}  // namespace paperrec
