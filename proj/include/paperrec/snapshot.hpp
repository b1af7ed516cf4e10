#pragma once

// Serialization: stable text output for rankings and aggregate results, and
// versioned JSON snapshots for the built indices. Snapshots store the
// minimal state (forward views); derived structure (reverse adjacency,
// postings) is rebuilt on load.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paperrec/aggregate.hpp"
#include "paperrec/citation_graph.hpp"
#include "paperrec/coauthor.hpp"
#include "paperrec/core.hpp"
#include "paperrec/corpus.hpp"
#include "paperrec/tfidf.hpp"

namespace paperrec {

inline constexpr int kSnapshotVersion = 1;
inline constexpr const char* kSnapshotFormat = "paperrec-index";

// 12 significant digits, shortest form ("6", not "6.00000000000"); enough to
// keep output byte-stable without drowning small fixtures in digits.
inline std::string format_score(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

// One item per line: id <TAB> score. Empty ranking writes nothing.
inline void write_ranking(std::ostream& out, const Ranking& r) {
    for (const ScoredItem& s : r.items)
        out << s.id << '\t' << format_score(s.score) << '\n';
}

// Ranking plus header comments carrying method, cost and timing; the
// elapsed line is the only non-deterministic output field.
inline void write_aggregate(std::ostream& out, const AggregateResult& res,
                            bool include_elapsed = true) {
    out << "# method " << res.method << '\n';
    out << "# cost " << format_score(res.cost) << '\n';
    if (include_elapsed)
        out << "# elapsed_s " << format_score(res.elapsed.count()) << '\n';
    write_ranking(out, res.ranking);
}

inline nlohmann::json ranking_to_json(const Ranking& r) {
    nlohmann::json items = nlohmann::json::array();
    for (const ScoredItem& s : r.items)
        items.push_back({{"id", s.id}, {"score", s.score}});
    return {{"query", r.query}, {"algorithm", r.algorithm}, {"limit", r.limit},
            {"items", items}};
}

inline Ranking ranking_from_json(const nlohmann::json& j) {
    Ranking r;
    r.query = j.at("query").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.limit = j.at("limit").get<std::size_t>();
    for (const auto& item : j.at("items"))
        r.items.push_back({item.at("id").get<std::string>(), item.at("score").get<double>()});
    return r;
}

namespace detail {

inline nlohmann::json snapshot_header(const std::string& kind) {
    return {{"format", kSnapshotFormat}, {"kind", kind}, {"version", kSnapshotVersion}};
}

inline void check_snapshot_header(const nlohmann::json& j, const std::string& kind) {
    if (!j.is_object() || j.value("format", "") != kSnapshotFormat)
        throw parse_error("snapshot: bad or missing format marker");
    if (j.value("kind", "") != kind)
        throw parse_error("snapshot: expected kind '" + kind + "', found '" +
                          j.value("kind", "") + "'");
    if (j.value("version", 0) != kSnapshotVersion)
        throw parse_error("snapshot: unsupported version for kind '" + kind + "'");
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw validation_error("cannot write " + path.string());
    out << j.dump(1, '\t') << '\n';
}

}  // namespace detail

inline nlohmann::json graph_to_json(const CitationGraph& g) {
    nlohmann::json j = detail::snapshot_header("citation");
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [id, targets] : g.out_adj)
        out[id] = targets;
    j["out"] = std::move(out);
    return j;
}

inline CitationGraph graph_from_json(const nlohmann::json& j) {
    detail::check_snapshot_header(j, "citation");
    CitationGraph g;
    const nlohmann::json& out = j.at("out");
    for (const auto& [id, targets] : out.items()) {
        g.out_adj[id];
        g.in_adj[id];
    }
    for (const auto& [id, targets] : out.items()) {
        for (const auto& t : targets) {
            PaperId target = t.get<std::string>();
            if (out.find(target) == out.end())
                throw parse_error("citation snapshot: target '" + target +
                                  "' is not a key of the adjacency");
            g.out_adj[id].insert(target);
            g.in_adj[target].insert(id);
        }
    }
    return g;
}

inline nlohmann::json tfidf_to_json(const TfIdfIndex& ix, const std::string& kind) {
    nlohmann::json j = detail::snapshot_header(kind);
    j["rare_threshold"] = ix.rare_threshold;
    nlohmann::json docs = nlohmann::json::object();
    for (const auto& [id, terms] : ix.docs) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& [token, tf_value] : terms)
            doc.push_back({token, tf_value});
        docs[id] = std::move(doc);
    }
    j["docs"] = std::move(docs);
    return j;
}

inline TfIdfIndex tfidf_from_json(const nlohmann::json& j, const std::string& kind) {
    detail::check_snapshot_header(j, kind);
    std::map<PaperId, std::map<std::string, double>> doc_terms;
    for (const auto& [id, doc] : j.at("docs").items()) {
        auto& terms = doc_terms[id];
        for (const auto& entry : doc) {
            if (!entry.is_array() || entry.size() != 2)
                throw parse_error("tf-idf snapshot: malformed term entry");
            terms[entry[0].get<std::string>()] = entry[1].get<double>();
        }
        if (terms.empty())
            throw parse_error("tf-idf snapshot: empty document '" + id + "'");
    }
    return detail::build_index(doc_terms, j.at("rare_threshold").get<std::size_t>());
}

inline nlohmann::json coauthor_to_json(const CoauthorGraph& g) {
    nlohmann::json j = detail::snapshot_header("coauthor");
    nlohmann::json adj = nlohmann::json::object();
    for (const auto& [id, nbrs] : g.adj) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [other, w] : nbrs)
            row[other] = w;
        adj[id] = std::move(row);
    }
    j["adj"] = std::move(adj);
    return j;
}

inline CoauthorGraph coauthor_from_json(const nlohmann::json& j) {
    detail::check_snapshot_header(j, "coauthor");
    CoauthorGraph g;
    const nlohmann::json& adj = j.at("adj");
    for (const auto& [id, row] : adj.items())
        g.adj[id];
    for (const auto& [id, row] : adj.items()) {
        for (const auto& [other, w] : row.items()) {
            if (adj.find(other) == adj.end())
                throw parse_error("coauthor snapshot: neighbor '" + other +
                                  "' is not a key of the adjacency");
            g.adj[id][other] = w.get<int>();
        }
    }
    return g;
}

}  // namespace paperrec
