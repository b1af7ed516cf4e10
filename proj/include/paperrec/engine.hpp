#pragma once

// Facade bundling the corpus with every built index, the seven base
// recommenders behind one dispatch point, and index-directory persistence.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paperrec/cite_recommenders.hpp"
#include "paperrec/citation_graph.hpp"
#include "paperrec/coauthor.hpp"
#include "paperrec/core.hpp"
#include "paperrec/corpus.hpp"
#include "paperrec/snapshot.hpp"
#include "paperrec/tfidf.hpp"

namespace paperrec {

// Canonical algorithm order; aggregation inputs and reports follow it.
inline const std::vector<std::string>& base_algorithms() {
    static const std::vector<std::string> algos = {"b-ccs", "b-bc", "b-ibcf", "b-ccp",
                                                   "b-as",  "b-sts", "b-ca"};
    return algos;
}

struct Engine {
    Corpus corpus;
    CitationGraph graph;
    TfIdfIndex abstracts;
    TfIdfIndex tags;
    CoauthorGraph coauthors;
};

inline Engine make_engine(Corpus corpus, std::size_t rare_threshold = kDefaultRareThreshold) {
    Engine e;
    e.graph = build_graph(corpus);
    e.abstracts = build_abstract_index(corpus, rare_threshold);
    e.tags = build_tag_index(corpus, rare_threshold);
    e.coauthors = build_coauthor_graph(corpus);
    e.corpus = std::move(corpus);
    return e;
}

inline Ranking recommend(const Engine& e, const std::string& algo, const PaperId& q,
                         std::size_t n) {
    if (!e.corpus.contains(q))
        throw unknown_id_error("unknown paper id: " + q);
    if (algo == "b-ccs")
        return recommend_ccs(e.graph, q, n);
    if (algo == "b-bc")
        return recommend_bc(e.graph, q, n);
    if (algo == "b-ibcf")
        return recommend_ibcf(e.graph, q, n);
    if (algo == "b-ccp")
        return recommend_ccp(e.corpus, e.graph, q, n);
    if (algo == "b-as")
        return recommend_as(e.abstracts, q, n);
    if (algo == "b-sts")
        return recommend_sts(e.tags, q, n);
    if (algo == "b-ca")
        return recommend_ca(e.coauthors, q, n);
    throw validation_error("unknown algorithm: " + algo);
}

// All seven base rankings in canonical order; empty lists stay in place so
// positions line up with base_algorithms().
inline std::vector<Ranking> recommend_all(const Engine& e, const PaperId& q, std::size_t n) {
    std::vector<Ranking> out;
    out.reserve(base_algorithms().size());
    for (const std::string& algo : base_algorithms())
        out.push_back(recommend(e, algo, q, n));
    return out;
}

namespace detail {

inline const std::vector<std::pair<const char*, const char*>>& index_files() {
    static const std::vector<std::pair<const char*, const char*>> files = {
        {"citation.json", "citation"},
        {"abstract.json", "abstract"},
        {"tags.json", "tags"},
        {"coauthor.json", "coauthor"},
    };
    return files;
}

}  // namespace detail

// Writes corpus + the four index snapshots + manifest into `dir`. Refuses to
// overwrite an existing index unless `force`; returns the corpus hash.
inline std::string save_engine(const Engine& e, const std::filesystem::path& dir,
                               bool force = false) {
    std::filesystem::path manifest_path = dir / "manifest.json";
    if (!force && std::filesystem::exists(manifest_path))
        throw validation_error("index already exists at " + dir.string() +
                               " (use --force to rebuild)");
    std::filesystem::create_directories(dir);

    std::string body = corpus_to_jsonl(e.corpus);
    std::ofstream corpus_out(dir / "corpus.jsonl", std::ios::trunc);
    if (!corpus_out)
        throw validation_error("cannot write " + (dir / "corpus.jsonl").string());
    corpus_out << body;
    corpus_out.close();

    detail::write_json_file(dir / "citation.json", graph_to_json(e.graph));
    detail::write_json_file(dir / "abstract.json", tfidf_to_json(e.abstracts, "abstract"));
    detail::write_json_file(dir / "tags.json", tfidf_to_json(e.tags, "tags"));
    detail::write_json_file(dir / "coauthor.json", coauthor_to_json(e.coauthors));

    std::string hash = fnv1a64_hex(body);
    nlohmann::json manifest = detail::snapshot_header("manifest");
    manifest["n_papers"] = e.corpus.size();
    manifest["corpus_hash"] = hash;
    manifest["rare_threshold"] = e.abstracts.rare_threshold;
    nlohmann::json files = nlohmann::json::array();
    files.push_back("corpus.jsonl");
    for (const auto& [name, kind] : detail::index_files())
        files.push_back(name);
    manifest["files"] = std::move(files);
    detail::write_json_file(manifest_path, manifest);
    return hash;
}

inline Engine load_engine(const std::filesystem::path& dir) {
    nlohmann::json manifest = detail::read_json_file(dir / "manifest.json");
    detail::check_snapshot_header(manifest, "manifest");

    Engine e;
    e.corpus = load_corpus(dir / "corpus.jsonl");
    std::string hash = corpus_hash(e.corpus);
    if (hash != manifest.at("corpus_hash").get<std::string>())
        throw validation_error("index at " + dir.string() +
                               " does not match its corpus (rebuild with --force)");
    if (e.corpus.size() != manifest.at("n_papers").get<std::size_t>())
        throw validation_error("index manifest paper count mismatch");

    e.graph = graph_from_json(detail::read_json_file(dir / "citation.json"));
    e.abstracts = tfidf_from_json(detail::read_json_file(dir / "abstract.json"), "abstract");
    e.tags = tfidf_from_json(detail::read_json_file(dir / "tags.json"), "tags");
    e.coauthors = coauthor_from_json(detail::read_json_file(dir / "coauthor.json"));

    for (const auto& [id, rec] : e.corpus.papers) {
        if (!e.graph.contains(id))
            throw validation_error("citation snapshot out of sync with corpus: " + id);
        if (!e.coauthors.contains(id))
            throw validation_error("coauthor snapshot out of sync with corpus: " + id);
    }
    if (e.graph.out_adj.size() != e.corpus.size() || e.coauthors.adj.size() != e.corpus.size())
        throw validation_error("index snapshot keys out of sync with corpus");
    return e;
}

}  // namespace paperrec
