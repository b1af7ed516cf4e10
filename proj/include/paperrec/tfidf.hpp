#pragma once

// TF-IDF inverted indexes over abstract tokens and over concept tags, with
// the rare-term candidate pruning used by the two content recommenders.
//
//   tf  = sqrt(occurrence count)   (fixed 1 for tags)
//   idf = sqrt(ln(n/df)),  0 when df = 0
//
// Scoring a query against every other document is quadratic in the corpus,
// so candidates are restricted to documents sharing at least one rare term
// (df <= rare_threshold). With the threshold at n_docs the pruning is exact:
// only zero-similarity pairs are skipped.

#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "paperrec/core.hpp"

namespace paperrec {

inline constexpr std::size_t kDefaultRareThreshold = 5000;

// Fixed English stop-word list; data/stopwords.txt ships the same words as a
// plain-text resource.
inline const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a", "about", "above", "after", "again", "against", "all", "am", "an", "and",
        "any", "are", "aren't", "as", "at", "be", "because", "been", "before", "being",
        "below", "between", "both", "but", "by", "can't", "cannot", "could", "couldn't",
        "did", "didn't", "do", "does", "doesn't", "doing", "don't", "down", "during",
        "each", "few", "for", "from", "further", "had", "hadn't", "has", "hasn't",
        "have", "haven't", "having", "he", "her", "here", "hers", "herself", "him",
        "himself", "his", "how", "i", "if", "in", "into", "is", "isn't", "it", "its",
        "itself", "let's", "me", "more", "most", "mustn't", "my", "myself", "no", "nor",
        "not", "of", "off", "on", "once", "only", "or", "other", "ought", "our", "ours",
        "ourselves", "out", "over", "own", "same", "shan't", "she", "should",
        "shouldn't", "so", "some", "such", "than", "that", "the", "their", "theirs",
        "them", "themselves", "then", "there", "these", "they", "this", "those",
        "through", "to", "too", "under", "until", "up", "very", "was", "wasn't", "we",
        "were", "weren't", "what", "when", "where", "which", "while", "who", "whom",
        "why", "will", "with", "won't", "would", "wouldn't", "you", "your", "yours",
        "yourself", "yourselves",
    };
    return words;
}

// Lowercased whitespace-split tokens with leading/trailing punctuation
// stripped and stop words removed. Internal punctuation (hyphens, digits in
// identifiers like p53-mediated) is kept.
inline std::vector<std::string> tokenize(std::string_view text,
                                         const std::set<std::string>& stopwords) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i == start)
            continue;
        std::size_t lo = start;
        std::size_t hi = i;
        while (lo < hi && std::ispunct(static_cast<unsigned char>(text[lo])))
            ++lo;
        while (hi > lo && std::ispunct(static_cast<unsigned char>(text[hi - 1])))
            --hi;
        if (lo == hi)
            continue;
        std::string token(text.substr(lo, hi - lo));
        for (char& c : token)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (!stopwords.count(token))
            out.push_back(std::move(token));
    }
    return out;
}

inline std::vector<std::string> tokenize(std::string_view text) {
    return tokenize(text, default_stopwords());
}

inline double tf(double count) { return std::sqrt(count); }

// Inverted index (token -> postings) plus the forward view needed to rebuild
// a document's weight vector. Documents with no terms are absent entirely.
struct TfIdfIndex {
    std::map<std::string, std::vector<std::pair<PaperId, double>>> postings;  // id-sorted, tf > 0
    std::map<PaperId, std::vector<std::pair<std::string, double>>> docs;      // token -> tf
    std::size_t n_docs = 0;
    std::size_t rare_threshold = kDefaultRareThreshold;

    std::size_t df(const std::string& token) const {
        auto it = postings.find(token);
        return it == postings.end() ? 0 : it->second.size();
    }

    bool indexed(const PaperId& id) const { return docs.count(id) != 0; }

    bool operator==(const TfIdfIndex&) const = default;
};

inline double idf(const TfIdfIndex& ix, const std::string& token) {
    std::size_t df = ix.df(token);
    if (df == 0)
        return 0.0;
    return std::sqrt(std::log(static_cast<double>(ix.n_docs) / static_cast<double>(df)));
}

namespace detail {

inline TfIdfIndex build_index(const std::map<PaperId, std::map<std::string, double>>& doc_terms,
                              std::size_t rare_threshold) {
    TfIdfIndex ix;
    ix.rare_threshold = rare_threshold;
    for (const auto& [id, terms] : doc_terms) {
        if (terms.empty())
            continue;
        auto& fwd = ix.docs[id];
        for (const auto& [token, tf_value] : terms) {
            fwd.emplace_back(token, tf_value);
            ix.postings[token].emplace_back(id, tf_value);
        }
    }
    ix.n_docs = ix.docs.size();
    return ix;
}

}  // namespace detail

inline TfIdfIndex build_abstract_index(const Corpus& corpus,
                                       std::size_t rare_threshold = kDefaultRareThreshold) {
    std::map<PaperId, std::map<std::string, double>> doc_terms;
    for (const auto& [id, rec] : corpus.papers) {
        std::map<std::string, double> counts;
        for (std::string& token : tokenize(rec.abstract))
            counts[std::move(token)] += 1.0;
        if (counts.empty())
            continue;
        auto& terms = doc_terms[id];
        for (const auto& [token, count] : counts)
            terms[token] = tf(count);
    }
    return detail::build_index(doc_terms, rare_threshold);
}

// Tags are binary: a tag either annotates the paper or it does not.
inline TfIdfIndex build_tag_index(const Corpus& corpus,
                                  std::size_t rare_threshold = kDefaultRareThreshold) {
    std::map<PaperId, std::map<std::string, double>> doc_terms;
    for (const auto& [id, rec] : corpus.papers)
        for (const std::string& tag : rec.tags)
            doc_terms[id][tag] = 1.0;
    return detail::build_index(doc_terms, rare_threshold);
}

// Documents sharing at least one rare term with q. Empty for unindexed q.
inline std::set<PaperId> rare_candidates(const TfIdfIndex& ix, const PaperId& q) {
    std::set<PaperId> out;
    auto doc = ix.docs.find(q);
    if (doc == ix.docs.end())
        return out;
    for (const auto& [token, tf_value] : doc->second) {
        const auto& posting = ix.postings.at(token);
        if (posting.size() > ix.rare_threshold)
            continue;
        for (const auto& [id, other_tf] : posting)
            if (id != q)
                out.insert(id);
    }
    return out;
}

using TokenVector = std::map<std::string, double>;

// tf*idf weights of an indexed document; zero-idf terms are dropped.
inline TokenVector token_vector(const TfIdfIndex& ix, const PaperId& id) {
    TokenVector v;
    auto doc = ix.docs.find(id);
    if (doc == ix.docs.end())
        return v;
    for (const auto& [token, tf_value] : doc->second) {
        double w = tf_value * idf(ix, token);
        if (w > 0.0)
            v.emplace(token, w);
    }
    return v;
}

inline double cosine(const TokenVector& a, const TokenVector& b) {
    if (a.empty() || b.empty())
        return 0.0;
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (const auto& [t, w] : a)
        na += w * w;
    for (const auto& [t, w] : b)
        nb += w * w;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace detail {

inline Ranking recommend_tfidf(const TfIdfIndex& ix, const PaperId& q, std::size_t n,
                               const std::string& label) {
    TokenVector vq = token_vector(ix, q);
    std::vector<ScoredItem> scored;
    for (const PaperId& j : rare_candidates(ix, q)) {
        double s = cosine(vq, token_vector(ix, j));
        if (s > 0.0)
            scored.push_back({j, s});
    }
    return make_ranking(q, label, std::move(scored), n);
}

}  // namespace detail

// Abstract similarity over the token index.
inline Ranking recommend_as(const TfIdfIndex& abstract_index, const PaperId& q, std::size_t n) {
    return detail::recommend_tfidf(abstract_index, q, n, "b-as");
}

// Semantic similarity over the concept-tag index.
inline Ranking recommend_sts(const TfIdfIndex& tag_index, const PaperId& q, std::size_t n) {
    return detail::recommend_tfidf(tag_index, q, n, "b-sts");
}

}  // namespace paperrec
