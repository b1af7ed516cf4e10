#pragma once

// The four citation-signal base recommenders:
//
//   b-ccs  co-citation similarity   cosine of normalized incoming vectors
//   b-bc   bibliographic coupling   cosine of normalized outgoing vectors
//   b-ibcf item-based filtering     log-likelihood item similarity, citing
//                                   papers as users, cited papers as items
//   b-ccp  co-citation proximity    weights by how close the citation marks
//                                   sit in the citing document

#include <cmath>
#include <map>
#include <set>

#include "paperrec/citation_graph.hpp"
#include "paperrec/core.hpp"

namespace paperrec {

// Minimal textual distance between two citation marks in one document.
// Enum values are the relationship weights.
enum class ProximityType {
    Paper = 1,
    Section = 2,
    Paragraph = 3,
    Sentence = 4,
    Group = 5,
};

inline int weight(ProximityType p) { return static_cast<int>(p); }

// Both occurrences must come from the same citing document. Group ids are
// document-local, so group equality is checked first.
inline ProximityType proximity_type(const CitationOccurrence& a, const CitationOccurrence& b) {
    if (a.group == b.group)
        return ProximityType::Group;
    if (a.section == b.section && a.paragraph == b.paragraph && a.sentence == b.sentence)
        return ProximityType::Sentence;
    if (a.section == b.section && a.paragraph == b.paragraph)
        return ProximityType::Paragraph;
    if (a.section == b.section)
        return ProximityType::Section;
    return ProximityType::Paper;
}

// Raw co-citation pair counts |in(q) ∩ in(j)| for every candidate j.
// Diagnostic view of b-ccs before degree normalization.
inline std::map<PaperId, int> cocitation_counts(const CitationGraph& g, const PaperId& q) {
    std::map<PaperId, int> counts;
    for (const PaperId& citer : g.in(q))
        for (const PaperId& j : g.out(citer))
            if (j != q)
                ++counts[j];
    return counts;
}

inline Ranking recommend_ccs(const CitationGraph& g, const PaperId& q, std::size_t n) {
    SparseVector vq = normalized_in_vector(g, q);
    std::vector<ScoredItem> scored;
    for (const PaperId& j : cocitation_candidates(g, q)) {
        double s = cosine(vq, normalized_in_vector(g, j));
        if (s > 0.0)
            scored.push_back({j, s});
    }
    return make_ranking(q, "b-ccs", std::move(scored), n);
}

inline Ranking recommend_bc(const CitationGraph& g, const PaperId& q, std::size_t n) {
    SparseVector vq = normalized_out_vector(g, q);
    std::vector<ScoredItem> scored;
    for (const PaperId& j : coupling_candidates(g, q)) {
        double s = cosine(vq, normalized_out_vector(g, j));
        if (s > 0.0)
            scored.push_back({j, s});
    }
    return make_ranking(q, "b-bc", std::move(scored), n);
}

// G-statistic over a 2x2 contingency table, S(x) = x ln x with S(0) = 0.
// Measures deviation from independence; 0 for independent or degenerate
// margins.
inline double llr(double k11, double k12, double k21, double k22) {
    if (k11 < 0 || k12 < 0 || k21 < 0 || k22 < 0)
        throw validation_error("llr: negative count");
    double n = k11 + k12 + k21 + k22;
    if (n <= 0)
        throw validation_error("llr: all counts zero");
    auto entropy = [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
    double g = 2.0 * (entropy(k11) + entropy(k12) + entropy(k21) + entropy(k22)
                      - entropy(k11 + k12) - entropy(k21 + k22)
                      - entropy(k11 + k21) - entropy(k12 + k22)
                      + entropy(n));
    return g > 0.0 ? g : 0.0;  // clamp rounding noise
}

// Items the query already cites are "owned" and never recommended; candidates
// are papers co-cited with an owned item. Item-item similarity is the
// log-likelihood statistic over citing papers (the user population: every
// paper with at least one outgoing citation). Pairs with no common citer get
// similarity 0 -- without co-citation evidence there is no association link,
// and the raw G-statistic would otherwise reward anti-correlation. A
// candidate's score is the mean similarity to all owned items, so candidates
// whose only links are degenerate can legitimately score 0.
inline Ranking recommend_ibcf(const CitationGraph& g, const PaperId& q, std::size_t n) {
    const std::set<PaperId>& owned = g.out(q);
    if (owned.empty())
        return make_ranking(q, "b-ibcf", {}, n);

    double users = 0;
    for (const auto& [id, cited] : g.out_adj)
        if (!cited.empty())
            ++users;

    std::set<PaperId> candidates;
    for (const PaperId& item : owned)
        for (const PaperId& j : cocitation_candidates(g, item))
            if (j != q && owned.count(j) == 0)
                candidates.insert(j);

    auto similarity = [&](const PaperId& a, const PaperId& b) {
        const std::set<PaperId>& ia = g.in(a);
        const std::set<PaperId>& ib = g.in(b);
        double k11 = 0;
        for (const PaperId& u : ia)
            if (ib.count(u))
                ++k11;
        if (k11 == 0)
            return 0.0;
        double k12 = static_cast<double>(ia.size()) - k11;
        double k21 = static_cast<double>(ib.size()) - k11;
        double k22 = users - k11 - k12 - k21;
        return llr(k11, k12, k21, k22);
    };

    std::vector<ScoredItem> scored;
    for (const PaperId& c : candidates) {
        double sum = 0.0;
        for (const PaperId& item : owned)
            sum += similarity(item, c);
        scored.push_back({c, sum / static_cast<double>(owned.size())});
    }
    return make_ranking(q, "b-ibcf", std::move(scored), n);
}

// For each document citing q and each other paper j it cites, the pair
// contributes the weight of the closest (q, j) occurrence pair in that
// document; contributions sum across citing documents.
inline Ranking recommend_ccp(const Corpus& corpus, const CitationGraph& g, const PaperId& q,
                             std::size_t n) {
    std::map<PaperId, double> score;
    for (const PaperId& citer : g.in(q)) {
        const PaperRecord& doc = corpus.at(citer);
        std::vector<const CitationOccurrence*> q_occs;
        for (const auto& occ : doc.citations)
            if (occ.target == q)
                q_occs.push_back(&occ);
        std::map<PaperId, int> best;
        for (const auto& occ : doc.citations) {
            if (occ.target == q)
                continue;
            int& w = best.try_emplace(occ.target, 0).first->second;
            for (const CitationOccurrence* qo : q_occs)
                w = std::max(w, weight(proximity_type(*qo, occ)));
        }
        for (const auto& [j, w] : best)
            score[j] += w;
    }
    std::vector<ScoredItem> scored;
    scored.reserve(score.size());
    for (const auto& [j, s] : score)
        scored.push_back({j, s});
    return make_ranking(q, "b-ccp", std::move(scored), n);
}

}  // namespace paperrec
