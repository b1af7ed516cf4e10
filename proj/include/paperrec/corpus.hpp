#pragma once

// Corpus ingestion and persistence.
//
// On-disk format is line-delimited JSON, one record per line:
//   {"id": "...", "abstract": "...", "tags": [...], "authors": [...],
//    "citations": [{"target": "...", "section": 0, "paragraph": 0,
//                   "sentence": 0, "group": 0}, ...]}
// A sidecar manifest (<path>.manifest.json) records the record count and a
// content hash of the written bytes.
//
// Validation at load: duplicate ids are rejected; self-citations and
// citations whose target is not in the corpus are dropped (counted in
// LoadReport).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "paperrec/core.hpp"

namespace paperrec {

struct LoadReport {
    std::size_t self_citations_dropped = 0;
    std::size_t unresolved_dropped = 0;
};

// FNV-1a, used to key index snapshots to the corpus they were built from.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace detail {

inline nlohmann::json record_to_json(const PaperRecord& rec) {
    nlohmann::json j;
    j["id"] = rec.id;
    j["abstract"] = rec.abstract;
    j["tags"] = rec.tags;
    j["authors"] = rec.authors;
    auto cits = nlohmann::json::array();
    for (const auto& c : rec.citations) {
        cits.push_back({{"target", c.target},
                        {"section", c.section},
                        {"paragraph", c.paragraph},
                        {"sentence", c.sentence},
                        {"group", c.group}});
    }
    j["citations"] = std::move(cits);
    return j;
}

inline PaperRecord record_from_json(const nlohmann::json& j) {
    PaperRecord rec;
    rec.id = j.at("id").get<std::string>();
    if (rec.id.empty())
        throw parse_error("record with empty id");
    rec.abstract = j.value("abstract", std::string{});
    if (j.contains("tags"))
        rec.tags = j.at("tags").get<std::vector<std::string>>();
    if (j.contains("authors"))
        rec.authors = j.at("authors").get<std::vector<std::string>>();
    if (j.contains("citations")) {
        for (const auto& cj : j.at("citations")) {
            CitationOccurrence occ;
            occ.target = cj.at("target").get<std::string>();
            occ.section = cj.value("section", 0);
            occ.paragraph = cj.value("paragraph", 0);
            occ.sentence = cj.value("sentence", 0);
            occ.group = cj.value("group", 0);
            if (occ.section < 0 || occ.paragraph < 0 || occ.sentence < 0 || occ.group < 0)
                throw parse_error("negative citation position");
            rec.citations.push_back(std::move(occ));
        }
    }
    return rec;
}

inline void dedup_sorted(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

// Enforces the corpus invariants on a set of parsed records: dedups tags and
// authors, drops self-citations and unresolved targets.
inline Corpus validate_corpus(std::map<PaperId, PaperRecord> papers, LoadReport* report = nullptr) {
    LoadReport local;
    for (auto& [id, rec] : papers) {
        detail::dedup_sorted(rec.tags);
        detail::dedup_sorted(rec.authors);
        std::erase_if(rec.citations, [&](const CitationOccurrence& occ) {
            if (occ.target == id) {
                ++local.self_citations_dropped;
                return true;
            }
            if (papers.count(occ.target) == 0) {
                ++local.unresolved_dropped;
                return true;
            }
            return false;
        });
    }
    if (report)
        *report = local;
    Corpus corpus;
    corpus.papers = std::move(papers);
    return corpus;
}

inline Corpus load_corpus(const std::filesystem::path& path, LoadReport* report = nullptr) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open corpus file: " + path.string());
    std::map<PaperId, PaperRecord> papers;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        PaperRecord rec;
        try {
            rec = detail::record_from_json(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
        } catch (const parse_error& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (papers.count(rec.id))
            throw validation_error("line " + std::to_string(lineno) + ": duplicate id " + rec.id);
        papers.emplace(rec.id, std::move(rec));
    }
    return validate_corpus(std::move(papers), report);
}

// Serializes the corpus (records in id order, one JSON object per line).
inline std::string corpus_to_jsonl(const Corpus& corpus) {
    std::ostringstream out;
    for (const auto& [id, rec] : corpus.papers)
        out << detail::record_to_json(rec).dump() << '\n';
    return out.str();
}

// Writes <path> plus the sidecar manifest <path>.manifest.json.
// Returns the content hash of the written bytes.
inline std::string save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::string body = corpus_to_jsonl(corpus);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw validation_error("cannot write corpus file: " + path.string());
        out << body;
    }
    std::string hash = fnv1a64_hex(body);
    nlohmann::json manifest{{"n", corpus.size()}, {"content_hash", hash}};
    std::filesystem::path mpath = path;
    mpath += ".manifest.json";
    std::ofstream mout(mpath, std::ios::trunc);
    if (!mout)
        throw validation_error("cannot write manifest: " + mpath.string());
    mout << manifest.dump(2) << '\n';
    return hash;
}

inline std::string corpus_hash(const Corpus& corpus) {
    return fnv1a64_hex(corpus_to_jsonl(corpus));
}

namespace detail {

inline PaperRecord make_record(PaperId id, std::string abstract, std::vector<std::string> tags,
                               std::vector<std::string> authors,
                               std::vector<CitationOccurrence> citations) {
    PaperRecord rec;
    rec.id = std::move(id);
    rec.abstract = std::move(abstract);
    rec.tags = std::move(tags);
    rec.authors = std::move(authors);
    rec.citations = std::move(citations);
    return rec;
}

// Seven papers A..E, Y, Z. E cites {A, B}; Y cites {A, C, D, E};
// Z cites {A, B, C, E}. In-text positions inside Y: the E and D marks share
// a bracket group, E and A share a sentence, E and C share only a section.
// Inside Z: E and B share a sentence, E and A a section, E and C only the
// paper.
inline Corpus fixture_cit() {
    std::map<PaperId, PaperRecord> papers;
    auto add = [&](PaperRecord rec) { papers.emplace(rec.id, std::move(rec)); };
    add(make_record("A", "", {}, {}, {}));
    add(make_record("B", "", {}, {}, {}));
    add(make_record("C", "", {}, {}, {}));
    add(make_record("D", "", {}, {}, {}));
    add(make_record("E", "", {}, {},
                    {{"A", 0, 0, 0, 0}, {"B", 0, 0, 1, 1}}));
    add(make_record("Y", "", {}, {},
                    {{"E", 0, 0, 0, 0},
                     {"D", 0, 0, 0, 0},
                     {"A", 0, 0, 0, 1},
                     {"C", 0, 1, 0, 2}}));
    add(make_record("Z", "", {}, {},
                    {{"E", 0, 0, 0, 0},
                     {"B", 0, 0, 0, 1},
                     {"A", 0, 1, 0, 2},
                     {"C", 1, 0, 0, 3}}));
    return validate_corpus(std::move(papers));
}

// Five abstracts with a documented df ladder over the token vocabulary:
//   alpha df=2 (E,A)   beta df=3 (E,A,B)   gamma df=4 (E,A,B,C)
//   delta df=5 (all)   omega df=1 (D)
// and a tag ladder:
//   t-rare df=2 (E,B)  t-mid df=3 (E,A,B)  t-com df=4 (E,A,B,C)
//   t-x df=2 (A,D)     t-y df=1 (D)
// Paper B carries the same tag set as E, so E's top semantic match is exact.
inline Corpus fixture_txt() {
    std::map<PaperId, PaperRecord> papers;
    auto add = [&](PaperRecord rec) { papers.emplace(rec.id, std::move(rec)); };
    add(make_record("A", "alpha alpha alpha beta gamma delta", {"t-mid", "t-com", "t-x"}, {}, {}));
    add(make_record("B", "beta beta gamma delta", {"t-rare", "t-mid", "t-com"}, {}, {}));
    add(make_record("C", "gamma gamma gamma delta", {"t-com"}, {}, {}));
    add(make_record("D", "omega delta delta", {"t-x", "t-y"}, {}, {}));
    add(make_record("E", "alpha beta gamma delta", {"t-rare", "t-mid", "t-com"}, {}, {}));
    return validate_corpus(std::move(papers));
}

// Four papers whose author overlaps give the shared-author edge weights
// E-A=1, E-B=1, E-C=1, A-B=3, B-C=2 (and no A-C edge).
inline Corpus fixture_auth() {
    std::map<PaperId, PaperRecord> papers;
    auto add = [&](PaperRecord rec) { papers.emplace(rec.id, std::move(rec)); };
    add(make_record("A", "", {}, {"ea", "p1", "p2", "p3"}, {}));
    add(make_record("B", "", {}, {"eb", "p1", "p2", "p3", "q1", "q2"}, {}));
    add(make_record("C", "", {}, {"ec", "q1", "q2"}, {}));
    add(make_record("E", "", {}, {"ea", "eb", "ec"}, {}));
    return validate_corpus(std::move(papers));
}

}  // namespace detail

// Built-in test corpora: "cit" (citation structure), "txt" (abstract and tag
// content), "auth" (co-authorship). Deterministic.
inline Corpus fixture(const std::string& name) {
    if (name == "cit")
        return detail::fixture_cit();
    if (name == "txt")
        return detail::fixture_txt();
    if (name == "auth")
        return detail::fixture_auth();
    throw validation_error("unknown fixture: " + name);
}

}  // namespace paperrec
