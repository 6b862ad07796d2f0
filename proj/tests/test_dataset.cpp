#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "clusterlens/dataset.hpp"
#include "clusterlens/errors.hpp"

using namespace clusterlens;

namespace {

Schema rest_schema() {
    return Schema::from_json({{"label_col", "label"}, {"x_col", "x"}, {"y_col", "y"}, {"feature_cols", "rest"}});
}

const char* kFourRows =
    "label,x,y,f1,f2\n"
    "0,0.0,0.0,1,2\n"
    "0,1.0,0.5,3,4\n"
    "1,2.0,1.0,5,6\n"
    "1,3.0,1.5,7,8\n";

}

TEST_CASE("minimal valid input") {
    const auto d = parse_dataset(kFourRows, ',', rest_schema());
    CHECK(d.n() == 4);
    CHECK(d.m() == 2);
    CHECK(d.feature_names() == std::vector<std::string>{"f1", "f2"});
    CHECK(d.cluster_count() == 2);
    CHECK(d.value(2, 1) == 6);
    CHECK(d.column(0)[3] == 7);
    CHECK(d.coords()[1].x == 1.0);
    CHECK(d.coords()[1].y == 0.5);
    CHECK(d.cluster_sizes() == std::vector<std::size_t>{2, 2});
}

TEST_CASE("cluster views") {
    const auto d = parse_dataset(kFourRows, ',', rest_schema());
    const auto v0 = cluster_view(d, "0");
    CHECK(v0.member_indices == std::vector<std::size_t>{0, 1});
    CHECK(v0.complement_indices == std::vector<std::size_t>{2, 3});
    const auto v1 = cluster_view(d, "1");
    CHECK(v1.member_indices == std::vector<std::size_t>{2, 3});
    CHECK(v1.complement_indices == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(cluster_view(d, "7"), LookupError);
    CHECK_THROWS_AS(cluster_view(d, std::size_t{7}), LookupError);
}

TEST_CASE("labels map to ids by first appearance") {
    const auto d = parse_dataset("label,x,y,f\nb,0,0,1\na,0,0,2\nb,0,0,3\na,0,0,4\n", ',', rest_schema());
    CHECK(d.cluster_names() == std::vector<std::string>{"b", "a"});
    CHECK(d.cluster_id("a") == 1);
    CHECK(std::vector<std::size_t>(d.labels().begin(), d.labels().end()) == std::vector<std::size_t>{0, 1, 0, 1});
}

TEST_CASE("undersized cluster is rejected by name") {
    const auto text = "label,x,y,f\nA,0,0,1\nA,0,0,2\nLonely,0,0,3\n";
    try {
        parse_dataset(text, ',', rest_schema());
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("Lonely") != std::string::npos);
    }
}

TEST_CASE("a single cluster is rejected") {
    CHECK_THROWS_AS(parse_dataset("label,x,y,f\nA,0,0,1\nA,0,0,2\n", ',', rest_schema()), ValidationError);
}

TEST_CASE("missing columns are schema errors") {
    auto schema = rest_schema();
    schema.x_col = "px";
    CHECK_THROWS_AS(parse_dataset(kFourRows, ',', schema), SchemaError);

    auto listed = Schema::from_json({{"label_col", "label"}, {"x_col", "x"}, {"y_col", "y"}, {"feature_cols", {"f1", "nope"}}});
    CHECK_THROWS_AS(parse_dataset(kFourRows, ',', listed), SchemaError);
    CHECK_THROWS_AS(Schema::from_json({{"x_col", "x"}, {"y_col", "y"}}), SchemaError);
    CHECK_THROWS_AS(Schema::from_json(nlohmann::json::array()), SchemaError);
}

TEST_CASE("explicit feature columns keep file order") {
    const auto schema = Schema::from_json({{"label_col", "label"}, {"x_col", "x"}, {"y_col", "y"}, {"feature_cols", {"f2", "f1"}}});
    const auto d = parse_dataset(kFourRows, ',', schema);
    CHECK(d.feature_names() == std::vector<std::string>{"f1", "f2"});

    const auto only = Schema::from_json({{"label_col", "label"}, {"x_col", "x"}, {"y_col", "y"}, {"feature_cols", {"f2"}}});
    CHECK(parse_dataset(kFourRows, ',', only).m() == 1);
}

TEST_CASE("missing feature_cols means every other column") {
    const auto schema = Schema::from_json({{"label_col", "label"}, {"x_col", "x"}, {"y_col", "y"}});
    CHECK(parse_dataset(kFourRows, ',', schema).m() == 2);
}

TEST_CASE("malformed cells report row and column") {
    const auto text = "label,x,y,f1,f2\n0,0,0,1,2\n0,0,0,abc,4\n1,0,0,5,6\n1,0,0,7,8\n";
    try {
        parse_dataset(text, ',', rest_schema());
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.row() == 3);
        CHECK(e.column() == 4);
    }

    try {
        parse_dataset("label,x,y,f1,f2\n0,0,0,1,2\n0,0,0,,4\n1,0,0,5,6\n1,0,0,7,8\n", ',', rest_schema());
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.row() == 3);
        CHECK(e.column() == 4);
    }

    CHECK_THROWS_AS(parse_dataset("label,x,y,f1,f2\n0,0,0,1\n", ',', rest_schema()), ParseError);
    CHECK_THROWS_AS(parse_dataset("", ',', rest_schema()), ParseError);
}

TEST_CASE("non-finite values are validation errors") {
    for (const char* bad : {"nan", "inf", "-inf", "1e400"}) {
        const std::string text = std::string("label,x,y,f1,f2\n0,0,0,1,2\n0,0,0,") + bad + ",4\n1,0,0,5,6\n1,0,0,7,8\n";
        CHECK_THROWS_AS(parse_dataset(text, ',', rest_schema()), ValidationError);
    }
    CHECK_THROWS_AS(parse_dataset("label,x,y,f1\n0,nan,0,1\n0,0,0,1\n1,0,0,1\n1,0,0,1\n", ',', rest_schema()), ValidationError);
}

TEST_CASE("quoted fields, whitespace, CRLF and tabs") {
    const auto text = "\"label\",x,y,\"f, one\"\r\n\"a,b\",0,0, 1.5 \r\n\"a,b\",1,1,2\r\nc,2,2,3\r\nc,3,3,4\r\n";
    const auto d = parse_dataset(text, ',', rest_schema());
    CHECK(d.feature_names() == std::vector<std::string>{"f, one"});
    CHECK(d.cluster_name(0) == "a,b");
    CHECK(d.value(0, 0) == 1.5);

    const auto tsv = parse_dataset("label\tx\ty\tf\nA\t0\t0\t1\nA\t0\t0\t2\nB\t0\t0\t3\nB\t0\t0\t4\n", '\t', rest_schema());
    CHECK(tsv.n() == 4);
}

TEST_CASE("parsing is deterministic") {
    const auto a = parse_dataset(kFourRows, ',', rest_schema());
    const auto b = parse_dataset(kFourRows, ',', rest_schema());
    CHECK(a.feature_names() == b.feature_names());
    CHECK(std::equal(a.column(0).begin(), a.column(0).end(), b.column(0).begin()));
    CHECK(std::equal(a.column(1).begin(), a.column(1).end(), b.column(1).begin()));
    CHECK(a.cluster_names() == b.cluster_names());
}

TEST_CASE("files and delimiters") {
    const auto dir = std::filesystem::temp_directory_path() / "clusterlens_dataset_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "d.tsv") << "label\tx\ty\tf\nA\t0\t0\t1\nA\t0\t0\t2\nB\t0\t0\t3\nB\t0\t0\t4\n";
        std::ofstream(dir / "s.json") << R"({"label_col": "label", "x_col": "x", "y_col": "y", "feature_cols": "rest"})";
    }
    CHECK(delimiter_for("a.tsv") == '\t');
    CHECK(delimiter_for("a.TAB") == '\t');
    CHECK(delimiter_for("a.csv") == ',');
    const auto d = load_dataset(dir / "d.tsv", load_schema(dir / "s.json"));
    CHECK(d.n() == 4);
    CHECK_THROWS_AS(load_dataset(dir / "missing.csv", rest_schema()), IoError);
    CHECK_THROWS_AS(load_schema(dir / "missing.json"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("constructor invariants") {
    CHECK_THROWS_AS(Dataset({"a"}, {1, 2, 3}, {{0, 0}, {0, 0}}, {"x", "x"}), ValidationError);
    CHECK_THROWS_AS(Dataset({"a", "a"}, {1, 2, 3, 4, 1, 2, 3, 4}, {{0, 0}, {0, 0}, {0, 0}, {0, 0}}, {"x", "x", "y", "y"}), ValidationError);
    CHECK_THROWS_AS(Dataset({}, {}, {{0, 0}, {0, 0}, {0, 0}, {0, 0}}, {"x", "x", "y", "y"}), ValidationError);
    const auto d = Dataset::from_rows({"a", "b"}, {{1, 2}, {3, 4}, {5, 6}, {7, 8}}, {{0, 0}, {0, 0}, {0, 0}, {0, 0}}, {"x", "x", "y", "y"});
    CHECK(d.value(1, 1) == 4);
    CHECK(d.feature_index("b") == 1);
    CHECK_THROWS_AS(d.feature_index("c"), LookupError);
    CHECK_THROWS_AS(d.cluster_id("z"), LookupError);
}
