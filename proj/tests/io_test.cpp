#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "stiefel/io.hpp"
#include "stiefel/random.hpp"

using namespace stiefel;

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.6), "0.6");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(-1.0 / 6.0), "-0.16666666666666666");
    Rng rng(1);
    const Matrix samples = random_gaussian(50, 1, rng);
    for (double v : samples.data()) {
        EXPECT_EQ(std::stod(format_double(v * 1e-7)), v * 1e-7);
    }
}

TEST(Json, RoundTripIsExact) {
    Rng rng(2);
    const Matrix a = random_gaussian(5, 3, rng);
    const Matrix back = parse_matrix_json(to_json(a).dump());
    EXPECT_EQ(back, a);
    EXPECT_EQ(to_json(Matrix::from_rows({{1, 2}, {3, 4}})).dump(),
              R"({"cols":2,"data":[1.0,2.0,3.0,4.0],"rows":2})");
}

TEST(Json, Malformed) {
    EXPECT_THROW(parse_matrix_json("{"), ParseError);
    EXPECT_THROW(parse_matrix_json(R"({"rows":2,"cols":1})"), ParseError);
    EXPECT_THROW(parse_matrix_json(R"({"rows":0,"cols":1,"data":[]})"), ParseError);
    EXPECT_THROW(parse_matrix_json(R"({"rows":-1,"cols":1,"data":[1]})"), ParseError);
    EXPECT_THROW(parse_matrix_json(R"({"rows":2,"cols":1,"data":[1]})"), ParseError);
    EXPECT_THROW(parse_matrix_json(R"({"rows":1,"cols":1,"data":["x"]})"), ParseError);
    EXPECT_THROW(parse_matrix_json("[1,2]"), ParseError);
}

TEST(Csv, ParsesRowsCommentsAndBlocks) {
    const Matrix a = parse_matrix_csv("# two by two\n2, 1\n0,+3\n");
    EXPECT_EQ(a, Matrix::from_rows({{2, 1}, {0, 3}}));
    EXPECT_EQ(parse_matrix_csv("3\n4"), Matrix::from_rows({{3}, {4}}));
    EXPECT_EQ(parse_matrix_csv("1,2\r\n3,4\r\n"), Matrix::from_rows({{1, 2}, {3, 4}}));

    const auto blocks = parse_csv_blocks("1,0\n0,1\n\n# Q\n5\n");
    ASSERT_EQ(blocks.size(), 2u);
    EXPECT_EQ(blocks[1], Matrix::from_rows({{5}}));
}

TEST(Csv, Malformed) {
    EXPECT_THROW(parse_matrix_csv(""), ParseError);
    EXPECT_THROW(parse_matrix_csv("1,2\n3\n"), ParseError);
    EXPECT_THROW(parse_matrix_csv("1,abc\n"), ParseError);
    EXPECT_THROW(parse_matrix_csv("1,\n"), ParseError);
    EXPECT_THROW(parse_matrix_csv("1\n\n2\n"), ParseError);
}

TEST(Csv, RoundTripIsExact) {
    Rng rng(3);
    const Matrix a = random_gaussian(4, 6, rng);
    EXPECT_EQ(parse_matrix_csv(to_csv(a)), a);
}

TEST(Csv, NonFiniteSurvivesParsingButNotValidation) {
    const Matrix a = parse_matrix("1,nan\n0,1\n");
    EXPECT_TRUE(std::isnan(a(0, 1)));
    EXPECT_THROW(validate_injective(a), NonFiniteError);
}

TEST(ParseMatrix, SniffsFormat) {
    EXPECT_EQ(parse_matrix("  \n{\"rows\":1,\"cols\":1,\"data\":[2]}"), Matrix::from_rows({{2}}));
    EXPECT_EQ(parse_matrix("2\n"), Matrix::from_rows({{2}}));
}

TEST(PathOutput, CsvHeaderAndRows) {
    const auto path = trace_path(validate_injective(Matrix::from_rows({{3}, {4}})), 3);
    const std::string csv = path_to_csv(path);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,entry_0_0,entry_1_0,min_diag,ortho_defect");
    EXPECT_NE(csv.find("\n0,3,4,1,"), std::string::npos);
    const json j = path_to_json(path);
    ASSERT_EQ(j.size(), 3u);
    EXPECT_EQ(j[1]["t"].get<double>(), 0.5);
    EXPECT_EQ(matrix_from_json(j[0]["point"]), Matrix::from_rows({{3}, {4}}));
}

TEST(ReportOutput, Json) {
    EquivarianceReport r;
    r.frame_defect = 1e-16;
    r.homotopy_defects = {{0.0, 0.0}, {1.0, 2e-16}};
    r.passed = true;
    const json j = to_json(r);
    EXPECT_EQ(j["frame_defect"].get<double>(), 1e-16);
    EXPECT_EQ(j["homotopy_defects"][1][1].get<double>(), 2e-16);
    EXPECT_TRUE(j["passed"].get<bool>());
}
