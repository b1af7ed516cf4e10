#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "paperrec/engine.hpp"
#include "paperrec/evaluate.hpp"

using namespace paperrec;
using Catch::Approx;

namespace {

Ranking from_ids(const std::vector<PaperId>& ids) {
    Ranking r;
    r.limit = ids.size();
    for (std::size_t i = 0; i < ids.size(); ++i)
        r.items.push_back({ids[i], static_cast<double>(ids.size() - i)});
    return r;
}

}  // namespace

TEST_CASE("coverage fractions", "[evaluate]") {
    CHECK(coverage({from_ids({"a"}), from_ids({"b"})}) == 1.0);
    CHECK(coverage({Ranking{}, Ranking{}}) == 0.0);
    CHECK(coverage({from_ids({"a"}), Ranking{}, Ranking{}, from_ids({"b"})}) == 0.5);
    CHECK_THROWS_AS(coverage({}), validation_error);
}

TEST_CASE("coverage of the citation recommender on the fixture queries", "[evaluate]") {
    Engine engine = make_engine(fixture("cit"));
    std::vector<Ranking> ccs;
    for (const PaperId& q : {"A", "B", "C", "D", "E", "Y", "Z"})
        ccs.push_back(recommend(engine, "b-ccs", q, 10));
    CHECK(coverage(ccs) == Approx(5.0 / 7.0).margin(1e-12));
}

TEST_CASE("pairwise overlap percentages", "[evaluate]") {
    Ranking a = from_ids({"p", "q", "r", "s"});
    Ranking b = from_ids({"q", "p", "z", "w"});
    CHECK(pairwise_overlap(a, a) == 100.0);
    CHECK(pairwise_overlap(a, b) == 50.0);
    CHECK(pairwise_overlap(b, a) == 50.0);  // symmetric
    CHECK(pairwise_overlap(a, from_ids({"z1", "z2"})) == 0.0);
    CHECK(pairwise_overlap(a, Ranking{}) == 0.0);
    CHECK(pairwise_overlap(Ranking{}, Ranking{}) == 0.0);

    // Different lengths: denominator is the longer list.
    Ranking longer = from_ids({"p", "q", "r", "s", "t"});
    Ranking shorter = from_ids({"p", "q"});
    CHECK(pairwise_overlap(longer, shorter) == 40.0);
}

TEST_CASE("effective size endpoints are exact", "[evaluate]") {
    std::vector<Ranking> identical(4, from_ids({"a", "b", "c"}));
    EffectiveSize same = effective_size(identical);
    CHECK(same.e == 3);
    CHECK(same.p == 4.0);

    std::vector<Ranking> disjoint = {from_ids({"a", "b"}), from_ids({"c", "d"}),
                                     from_ids({"e", "f"})};
    EffectiveSize split = effective_size(disjoint);
    CHECK(split.e == 6);
    CHECK(split.p == 1.0);

    // Empty lists are excluded from K.
    std::vector<Ranking> mixed = {from_ids({"a", "b"}), Ranking{}, from_ids({"a", "b"})};
    EffectiveSize m = effective_size(mixed);
    CHECK(m.e == 2);
    CHECK(m.p == 2.0);

    CHECK_THROWS_AS(effective_size({Ranking{}, Ranking{}}), validation_error);
}

TEST_CASE("effective size bounds", "[evaluate][property]") {
    std::mt19937_64 rng(777);
    for (int round = 0; round < 50; ++round) {
        std::vector<Ranking> inputs = synthetic_instance(8, 5, rng());
        EffectiveSize es = effective_size(inputs);
        std::size_t n = 8, k = 5;
        CHECK(es.e >= n);
        CHECK(es.e <= n * k);
        CHECK(es.p >= 1.0);
        CHECK(es.p <= static_cast<double>(k));
    }
}

TEST_CASE("runtime statistics", "[evaluate]") {
    RuntimeStats st = runtime_stats({1.0, 2.0, 3.0});
    CHECK(st.mean_seconds == Approx(2.0));
    CHECK(st.stddev_seconds == Approx(1.0));
    CHECK(st.repetitions == 3);

    RuntimeStats single = runtime_stats({5.0});
    CHECK(single.mean_seconds == 5.0);
    CHECK(single.stddev_seconds == 0.0);
}

TEST_CASE("aggregator timing table", "[evaluate]") {
    std::vector<Ranking> inputs = {from_ids({"a", "b"}), from_ids({"b", "a"})};
    CHECK_THROWS_AS(time_aggregators(inputs, {"borda"}, 2), validation_error);

    auto table = time_aggregators(inputs, {"borda", "mergesort", "beam", "exact"}, 5);
    REQUIRE(table.size() == 4);
    for (const auto& [method, st] : table) {
        CHECK(st.repetitions == 5);
        CHECK(st.mean_seconds >= 0.0);
        CHECK(st.mean_seconds < 0.05);  // two items: effectively instant
    }
}

TEST_CASE("synthetic instances are deterministic", "[evaluate]") {
    auto a = synthetic_instance(12, 3, 42);
    auto b = synthetic_instance(12, 3, 42);
    REQUIRE(a.size() == 3);
    CHECK(a[0].items.size() == 12);
    for (std::size_t r = 0; r < a.size(); ++r)
        CHECK(a[r].items == b[r].items);
    auto c = synthetic_instance(12, 3, 43);
    bool all_same = true;
    for (std::size_t r = 0; r < a.size(); ++r)
        all_same = all_same && a[r].items == c[r].items;
    CHECK_FALSE(all_same);
    CHECK_THROWS_AS(synthetic_instance(0, 3, 1), validation_error);
}

TEST_CASE("runtime sweep produces one row per size and method", "[evaluate]") {
    auto rows = run_sweep({5, 10}, 3, {"borda", "mergesort"}, 3, 7);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].e == 5);
    CHECK(rows[3].e == 10);

    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "e,method,mean_seconds,stddev_seconds,repetitions");
    int count = 0;
    while (std::getline(lines, line))
        if (!line.empty())
            ++count;
    CHECK(count == 4);
}

TEST_CASE("evaluation report over the citation fixture", "[evaluate]") {
    Engine engine = make_engine(fixture("cit"));
    EvalInputs in;
    in.algorithms = base_algorithms();
    for (const PaperId& q : {"A", "B", "C", "D", "E", "Y", "Z"}) {
        in.queries.push_back(q);
        in.results.push_back(recommend_all(engine, q, 10));
        in.call_seconds.push_back(std::vector<double>(in.algorithms.size(), 0.001));
    }
    EvalReport rep = build_report(in);

    CHECK(rep.coverage.at("b-ccs") == Approx(5.0 / 7.0).margin(1e-12));
    CHECK(rep.coverage.at("b-ca") == 0.0);  // fixture has no authors
    REQUIRE(rep.mean_overlap.size() == in.algorithms.size());
    for (std::size_t i = 0; i < rep.mean_overlap.size(); ++i)
        for (std::size_t j = 0; j < rep.mean_overlap.size(); ++j) {
            CHECK(rep.mean_overlap[i][j] == Approx(rep.mean_overlap[j][i]).margin(1e-9));
            CHECK(rep.mean_overlap[i][j] >= 0.0);
            CHECK(rep.mean_overlap[i][j] <= 100.0);
        }
    REQUIRE(rep.effective_sizes.size() == 7);
    CHECK(rep.base_runtime.at("b-ccs").mean_seconds == Approx(0.001));

    std::ostringstream text;
    write_report_text(rep, text);
    CHECK(text.str().find("coverage") != std::string::npos);
    CHECK(text.str().find("b-ccp") != std::string::npos);

    nlohmann::json j = report_to_json(rep);
    CHECK(j.at("coverage").at("b-ccs").get<double>() == Approx(5.0 / 7.0));
    CHECK(j.at("queries").size() == 7);
}

TEST_CASE("report assembly validates input shapes", "[evaluate]") {
    EvalInputs in;
    in.algorithms = {"b-ccs"};
    in.queries = {"A"};
    CHECK_THROWS_AS(build_report(in), validation_error);  // results missing
    in.results = {{Ranking{}, Ranking{}}};                // wrong width
    CHECK_THROWS_AS(build_report(in), validation_error);
}
