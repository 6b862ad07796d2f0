#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "clusterlens/errors.hpp"
#include "clusterlens/histogram.hpp"
#include "clusterlens/json_io.hpp"
#include "clusterlens/payloads.hpp"
#include "support.hpp"

using namespace clusterlens;
using nlohmann::json;

TEST_CASE("canonical dump sorts keys and keeps full precision") {
    const json value = {{"b", 0.1}, {"a", 1}, {"c", {{"z", true}, {"y", nullptr}}}};
    CHECK(canonical_dump(value) == R"({"a":1,"b":0.10000000000000001,"c":{"y":null,"z":true}})");
    const double third = 1.0 / 3;
    CHECK(json::parse(canonical_dump(json(third))).get<double>() == third);
    CHECK_THROWS(canonical_dump(json(std::numeric_limits<double>::infinity())));
    CHECK_THROWS(canonical_dump(json::array({std::nan("")})));
}

TEST_CASE("matrix export layout") {
    std::mt19937_64 rng(3);
    const auto d = support::random_dataset(rng, 60, 4, 3);
    const auto matrix = full_matrix(d);
    const auto j = to_json(matrix);
    CHECK(j["clusters"].size() == 3);
    CHECK(j["features"].size() == 4);
    REQUIRE(j["cells"].size() == 12);
    const auto& cell = j["cells"][5];
    CHECK(cell["t"].get<double>() == matrix.at(1, 1).t);
    CHECK(cell["p"].get<double>() == matrix.at(1, 1).p);
    CHECK(cell["decimals"].get<int>() == matrix.at(1, 1).decimals);
    CHECK(cell["degenerate"].get<bool>() == false);
}

TEST_CASE("ranking export") {
    std::mt19937_64 rng(3);
    const auto d = support::random_dataset(rng, 60, 4, 3);
    const auto r = rank_features(full_matrix(d).row(0), RankMode::signed_t, 2);
    const auto j = to_json(r);
    CHECK(j["mode"] == "signed");
    CHECK(j["top_k"] == 2);
    CHECK(j["ordered"].size() == 4);
    CHECK(j["ordered"][0]["index"] == r.ordered[0].feature_index);
}

TEST_CASE("analysis payloads") {
    std::mt19937_64 rng(9);
    const auto d = support::random_dataset(rng, 90, 7, 3);
    Analysis analysis(d);

    const auto summary = json::parse(analysis.summary_json());
    CHECK(summary["n"] == 90);
    CHECK(summary["m"] == 7);
    CHECK(summary["clusters"] == 3);
    CHECK(summary["default_mode"] == "absolute");

    const auto contrast = analysis.contrast_json("k1", "signed");
    CHECK(contrast == canonical_dump(to_json(importance_payload(d, 1, RankMode::signed_t))));
    CHECK(contrast == analysis.contrast_json("k1", "signed"));
    CHECK(contrast == analysis.compute_contrast_json("k1", "signed"));
    CHECK(analysis.contrast_json("k1", "auto") == analysis.contrast_json("k1", "absolute"));
    CHECK_THROWS_AS(analysis.contrast_json("nope", "auto"), LookupError);
    CHECK_THROWS_AS(analysis.contrast_json("k1", "bogus"), ArgumentError);

    const auto contrast_json = json::parse(contrast);
    CHECK(contrast_json["displayed"].size() == 7);
    CHECK(contrast_json["preselected"].size() == 4);
    CHECK(contrast_json["context"].size() == 7);

    const auto pair = json::parse(analysis.pair_json("k0", "k2", "absolute"));
    const auto swapped = json::parse(analysis.pair_json("k2", "k0", "absolute"));
    for (std::size_t f = 0; f < 7; ++f) {
        CHECK(pair["first"][f]["t"].get<double>() == -swapped["first"][f]["t"].get<double>());
        CHECK(pair["first"][f]["p"] == swapped["first"][f]["p"]);
    }
    CHECK(pair["clusters"] == json::array({"k0", "k2"}));
    CHECK_THROWS_AS(analysis.pair_json("k0", "k0", "auto"), ArgumentError);

    CHECK(analysis.matrix_json() == canonical_dump(to_json(full_matrix(d))));

    const auto hist = json::parse(analysis.histograms_json("k0", {"f2", "3"}, 10));
    REQUIRE(hist["histograms"].size() == 2);
    CHECK(hist["histograms"][0]["index"] == 2);
    CHECK(hist["histograms"][1]["index"] == 3);
    CHECK(hist["histograms"][0]["edges"].size() == 11);
    CHECK(json::parse(analysis.histograms_json("k0", {}, 10))["histograms"].size() == 4);
    CHECK_THROWS_AS(analysis.histograms_json("k0", {"nope"}, 10), LookupError);

    GridRequest request;
    request.selected = {0, 3};
    const auto grid = json::parse(analysis.grid_json(request));
    CHECK(grid["cell_size"] == 20.0);
    CHECK(grid["selected"] == json::array({0, 3}));
    std::size_t cells = 0;
    for (const auto& c : grid["cells"]) {
        cells += 1;
        CHECK(c.contains("segments"));
        CHECK(c.contains("empty"));
    }
    CHECK(cells > 0);
    request.cell_size = 1;
    CHECK_THROWS_AS(analysis.grid_json(request), ArgumentError);
}

TEST_CASE("topic payloads") {
    std::vector<double> values = {1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1};
    const Dataset corpus({"a", "b", "c", "d"}, values, support::line_coords(4), {"x", "x", "y", "y"});
    Analysis analysis(corpus);
    const auto topics = json::parse(analysis.topics_json(2));
    REQUIRE(topics["topics"].size() == 2);
    CHECK(topics["coherence"]["m"] == 2);
    CHECK(topics["coherence"]["per_topic"].size() == 2);
    CHECK(topics["clamped"] == false);
    CHECK(json::parse(analysis.topics_json(9))["clamped"] == true);

    const auto sweep = json::parse(analysis.coherence_sweep_json(2, 4));
    CHECK(sweep["sweep"].size() == 3);
    CHECK(sweep.contains("auc"));
}
