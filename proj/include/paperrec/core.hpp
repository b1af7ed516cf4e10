#pragma once

// Core record model shared by every recommender: paper records, the corpus
// container, and the Ranking type produced by all base algorithms.

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paperrec {

// Opaque paper identifier (DOI or fixture label). Lexicographic comparison
// is the deterministic tie-break used throughout.
using PaperId = std::string;

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input (bad line, bad token, bad snapshot).
class parse_error : public error {
public:
    using error::error;
};

// Input violates a documented precondition (duplicate id, bad weights, ...).
class validation_error : public error {
public:
    using error::error;
};

// Query id not present in the structure being queried.
class unknown_id_error : public error {
public:
    using error::error;
};

// Instance exceeds a configured size cap; caller should fall back to a
// heuristic method.
class capacity_error : public error {
public:
    using error::error;
};

// One in-text citation mark. Position indices are document-local; `group`
// identifies the bracket group the mark appeared in.
struct CitationOccurrence {
    PaperId target;
    int section = 0;
    int paragraph = 0;
    int sentence = 0;
    int group = 0;

    bool operator==(const CitationOccurrence&) const = default;
};

struct PaperRecord {
    PaperId id;
    std::string abstract;
    std::vector<std::string> tags;     // deduplicated, sorted
    std::vector<std::string> authors;  // deduplicated, sorted
    std::vector<CitationOccurrence> citations;

    bool operator==(const PaperRecord&) const = default;
};

// Validated paper collection. Immutable after load; safe for concurrent
// reads. Every citation target resolves to a key in `papers`.
struct Corpus {
    std::map<PaperId, PaperRecord> papers;

    std::size_t size() const { return papers.size(); }
    bool contains(const PaperId& id) const { return papers.count(id) != 0; }

    const PaperRecord& at(const PaperId& id) const {
        auto it = papers.find(id);
        if (it == papers.end())
            throw unknown_id_error("unknown paper id: " + id);
        return it->second;
    }

    bool operator==(const Corpus&) const = default;
};

struct ScoredItem {
    PaperId id;
    double score = 0.0;

    bool operator==(const ScoredItem&) const = default;
};

// Ordered recommendation list for one query paper. Items are sorted by
// descending score, ties broken by ascending id; the query never appears.
struct Ranking {
    PaperId query;
    std::string algorithm;
    std::vector<ScoredItem> items;
    std::size_t limit = 0;

    bool empty() const { return items.empty(); }
    std::size_t size() const { return items.size(); }

    bool operator==(const Ranking&) const = default;
};

// Normalizes raw scores into a Ranking: drops any query echo, orders by
// (score desc, id asc) and truncates to `limit`.
inline Ranking make_ranking(PaperId query, std::string algorithm,
                            std::vector<ScoredItem> scored, std::size_t limit) {
    std::erase_if(scored, [&](const ScoredItem& s) { return s.id == query; });
    std::sort(scored.begin(), scored.end(), [](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score)
            return a.score > b.score;
        return a.id < b.id;
    });
    if (scored.size() > limit)
        scored.resize(limit);
    Ranking r;
    r.query = std::move(query);
    r.algorithm = std::move(algorithm);
    r.items = std::move(scored);
    r.limit = limit;
    return r;
}

}  // namespace paperrec
