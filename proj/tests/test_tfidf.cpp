#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "paperrec/corpus.hpp"
#include "paperrec/tfidf.hpp"

using namespace paperrec;
using Catch::Approx;

namespace {

const Corpus& txt() {
    static const Corpus corpus = fixture("txt");
    return corpus;
}

std::vector<PaperId> ids_of(const Ranking& r) {
    std::vector<PaperId> ids;
    for (const ScoredItem& s : r.items)
        ids.push_back(s.id);
    return ids;
}

}  // namespace

TEST_CASE("tokenizer normalizes case and strips external punctuation", "[tfidf]") {
    CHECK(tokenize("The TF-IDF weighting, (revisited).") ==
          std::vector<std::string>{"tf-idf", "weighting", "revisited"});
    CHECK(tokenize("Don't stop; self-supervised models win!") ==
          std::vector<std::string>{"stop", "self-supervised", "models", "win"});
    CHECK(tokenize("   ") == std::vector<std::string>{});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("... --- !!!") == std::vector<std::string>{});
    CHECK(tokenize("p53-mediated WAS the And") == std::vector<std::string>{"p53-mediated"});
}

TEST_CASE("stopword list matches the shipped data file", "[tfidf]") {
    std::ifstream in(std::string(PAPERREC_DATA_DIR) + "/stopwords.txt");
    REQUIRE(in.good());
    std::set<std::string> from_file;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            from_file.insert(line);
    CHECK(from_file == default_stopwords());
}

TEST_CASE("tf and idf unit values", "[tfidf]") {
    CHECK(tf(9.0) == 3.0);
    CHECK(tf(1.0) == 1.0);
    CHECK(tf(0.0) == 0.0);

    TfIdfIndex ix;
    ix.n_docs = 100;
    ix.postings["solo"] = {{"d1", 1.0}};
    CHECK(idf(ix, "absent") == 0.0);
    CHECK(idf(ix, "solo") == Approx(2.14597).margin(1e-5));

    TfIdfIndex everywhere;
    everywhere.n_docs = 4;
    everywhere.postings["common"] = {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}, {"d", 1.0}};
    CHECK(idf(everywhere, "common") == 0.0);  // ln(4/4) = 0
}

TEST_CASE("abstract index df ladder on the text fixture", "[tfidf]") {
    TfIdfIndex ix = build_abstract_index(txt());
    CHECK(ix.n_docs == 5);
    CHECK(ix.df("alpha") == 2);
    CHECK(ix.df("beta") == 3);
    CHECK(ix.df("gamma") == 4);
    CHECK(ix.df("delta") == 5);
    CHECK(ix.df("omega") == 1);
    CHECK(ix.df("nothere") == 0);
    // tf values are sqrt(count): A repeats alpha three times.
    auto vec = token_vector(ix, "A");
    CHECK(vec.at("alpha") == Approx(std::sqrt(3.0) * idf(ix, "alpha")).margin(1e-12));
    CHECK(vec.count("delta") == 0);  // idf 0 tokens dropped
}

TEST_CASE("tag index is binary and dedup-insensitive", "[tfidf]") {
    TfIdfIndex ix = build_tag_index(txt());
    CHECK(ix.n_docs == 5);
    CHECK(ix.df("t-rare") == 2);
    CHECK(ix.df("t-mid") == 3);
    CHECK(ix.df("t-com") == 4);
    CHECK(ix.df("t-x") == 2);
    CHECK(ix.df("t-y") == 1);

    // Same corpus with one tag duplicated in the raw record.
    std::map<PaperId, PaperRecord> papers = txt().papers;
    papers["E"].tags = {"t-rare", "t-rare", "t-mid", "t-com"};
    Corpus dup = validate_corpus(std::move(papers));
    TfIdfIndex ix2 = build_tag_index(dup);
    CHECK(ix2 == ix);
    CHECK(recommend_sts(ix2, "E", 10).items == recommend_sts(ix, "E", 10).items);
}

TEST_CASE("abstract similarity ranking for E", "[tfidf]") {
    TfIdfIndex ix = build_abstract_index(txt());
    Ranking r = recommend_as(ix, "E", 10);
    REQUIRE(ids_of(r) == std::vector<PaperId>{"A", "B", "C"});  // D shares only delta (idf 0)
    CHECK(r.items[0].score == Approx(0.9681).margin(1e-4));
    CHECK(r.items[1].score == Approx(0.6597).margin(1e-4));
    CHECK(r.items[2].score == Approx(0.3677).margin(1e-4));
    CHECK(r.algorithm == "b-as");
}

TEST_CASE("tag similarity ranking for E", "[tfidf]") {
    TfIdfIndex ix = build_tag_index(txt());
    Ranking r = recommend_sts(ix, "E", 10);
    REQUIRE(ids_of(r) == std::vector<PaperId>{"B", "A", "C"});
    CHECK(r.items[0].score == Approx(1.0).margin(1e-9));  // B carries E's exact tag set
    CHECK(r.items[1].score == Approx(0.4448).margin(1e-4));
    CHECK(r.items[2].score == Approx(0.3677).margin(1e-4));
    CHECK(r.algorithm == "b-sts");
}

TEST_CASE("documents without indexed terms are absent, queries empty", "[tfidf]") {
    std::map<PaperId, PaperRecord> papers;
    papers["a"] = {"a", "only the of and", {}, {}, {}};  // stopwords only
    papers["b"] = {"b", "signal", {}, {}, {}};
    Corpus corpus = validate_corpus(std::move(papers));
    TfIdfIndex ix = build_abstract_index(corpus);
    CHECK(ix.n_docs == 1);
    CHECK_FALSE(ix.indexed("a"));
    CHECK(recommend_as(ix, "a", 10).empty());
    CHECK(rare_candidates(ix, "a").empty());
}

TEST_CASE("rare-term pruning respects the threshold", "[tfidf]") {
    // gamma has df 4, so with threshold 3 it may not generate candidates.
    TfIdfIndex tight = build_abstract_index(txt(), 3);
    auto cands = rare_candidates(tight, "C");  // C: gamma (df 4), delta (df 5)
    CHECK(cands.empty());

    TfIdfIndex loose = build_abstract_index(txt(), 5000);
    CHECK(rare_candidates(loose, "C") == std::set<PaperId>{"A", "B", "D", "E"});
}

TEST_CASE("pruned tf-idf rankings equal all-pairs brute force", "[tfidf][property]") {
    std::mt19937_64 rng(555444333);
    for (int round = 0; round < 60; ++round) {
        Corpus corpus = oracles::random_corpus(rng, 14);
        TfIdfIndex abstracts = build_abstract_index(corpus);
        TfIdfIndex tags = build_tag_index(corpus);
        for (const auto& [q, rec] : corpus.papers) {
            Ranking as_got = recommend_as(abstracts, q, 50);
            Ranking as_want = oracles::tfidf_bruteforce(corpus, q, 50, false);
            REQUIRE(ids_of(as_got) == ids_of(as_want));
            for (std::size_t i = 0; i < as_got.items.size(); ++i)
                CHECK(as_got.items[i].score == Approx(as_want.items[i].score).margin(1e-9));

            Ranking sts_got = recommend_sts(tags, q, 50);
            Ranking sts_want = oracles::tfidf_bruteforce(corpus, q, 50, true);
            REQUIRE(ids_of(sts_got) == ids_of(sts_want));
            for (std::size_t i = 0; i < sts_got.items.size(); ++i)
                CHECK(sts_got.items[i].score == Approx(sts_want.items[i].score).margin(1e-9));

            for (const Ranking* r : {&as_got, &sts_got})
                for (const ScoredItem& s : r->items) {
                    CHECK(s.score > 0.0);
                    CHECK(s.score <= 1.0 + 1e-12);
                }
        }

        // The tightest threshold that still admits every shared term: pruning
        // at df <= n_docs must change nothing.
        TfIdfIndex tight = build_abstract_index(corpus, corpus.size());
        for (const auto& [q, rec] : corpus.papers)
            CHECK(recommend_as(tight, q, 50).items == recommend_as(abstracts, q, 50).items);
    }
}

TEST_CASE("weight-vector cosine is symmetric", "[tfidf][property]") {
    std::mt19937_64 rng(246813579);
    for (int round = 0; round < 20; ++round) {
        Corpus corpus = oracles::random_corpus(rng, 12);
        TfIdfIndex ix = build_abstract_index(corpus);
        for (const auto& [a, arec] : corpus.papers) {
            if (!ix.indexed(a))
                continue;
            for (const auto& [b, brec] : corpus.papers) {
                if (!ix.indexed(b))
                    continue;
                TokenVector va = token_vector(ix, a);
                TokenVector vb = token_vector(ix, b);
                CHECK(cosine(va, vb) == Approx(cosine(vb, va)).margin(1e-12));
            }
        }
    }
}

TEST_CASE("token-free additions leave the index unchanged", "[tfidf]") {
    Corpus base = txt();
    TfIdfIndex before = build_abstract_index(base);

    std::map<PaperId, PaperRecord> papers = base.papers;
    papers["F"] = {"F", "the of and", {}, {}, {}};
    papers["G"] = {"G", "", {}, {}, {}};
    Corpus extended = validate_corpus(std::move(papers));
    TfIdfIndex after = build_abstract_index(extended);
    CHECK(after == before);
    for (const auto& [q, rec] : base.papers)
        CHECK(recommend_as(after, q, 10).items == recommend_as(before, q, 10).items);
}

TEST_CASE("token-disjoint additions preserve candidate sets", "[tfidf]") {
    Corpus base = txt();
    TfIdfIndex before = build_abstract_index(base);

    std::map<PaperId, PaperRecord> papers = base.papers;
    papers["F"] = {"F", "unrelated vocabulary entirely", {}, {}, {}};
    Corpus extended = validate_corpus(std::move(papers));
    TfIdfIndex after = build_abstract_index(extended);

    // Scores shift with n_docs, but which documents are comparable does not.
    for (const auto& [q, rec] : base.papers)
        CHECK(rare_candidates(after, q) == rare_candidates(before, q));
}
