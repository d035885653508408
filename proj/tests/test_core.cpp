#include <cmath>

#include "doctest.h"
#include "orthojoin/core.hpp"

using namespace orthojoin;

TEST_CASE("size tuple parsing and summaries") {
    const SizeTuple m = SizeTuple::parse("3, 1,2,1");
    CHECK(m.length() == 4);
    CHECK(m.total() == 7);
    CHECK(m.iso() == 2);
    CHECK(m.to_string() == "3,1,2,1");
    CHECK(m.canonical() == SizeTuple{3, 2, 1, 1});
    CHECK(SizeTuple::parse("5") == SizeTuple{5});

    CHECK_THROWS_AS(SizeTuple::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(SizeTuple::parse("2,,1"), std::invalid_argument);
    CHECK_THROWS_AS(SizeTuple::parse("2,x"), std::invalid_argument);
    CHECK_THROWS_AS(SizeTuple::parse("2,0"), std::invalid_argument);
    CHECK_THROWS_AS(SizeTuple::parse("-1"), std::invalid_argument);
    CHECK_THROWS_AS(SizeTuple(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("int matrix sums and middle") {
    const IntMatrix a = IntMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}, {7, 8}});
    CHECK(a.row_sum(1) == 7);
    CHECK(a.col_sum(0) == 16);
    CHECK(a.total() == 36);
    CHECK(a.row_sums() == std::vector<int>{3, 7, 11, 15});
    const IntMatrix mid = middle(a);
    CHECK(mid == IntMatrix::from_rows({{3, 4}, {5, 6}}));
    CHECK_THROWS_AS(middle(IntMatrix::from_rows({{1}, {2}})), std::invalid_argument);
    CHECK_THROWS_AS(IntMatrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("multiplicity matrix invariants") {
    const auto v = MultiplicityMatrix::from_rows({{1, 0}, {1, 1}, {0, 0}});
    CHECK(v.rows() == 3);
    CHECK(v.cols() == 2);
    CHECK(v.column(0) == std::vector<int>{1, 1, 0});
    CHECK(v.middle_mass() == 2);

    CHECK_THROWS_AS(MultiplicityMatrix::from_rows({{1}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiplicityMatrix::from_rows({{1, 0}, {0, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MultiplicityMatrix::from_rows({{1}, {-1}, {1}}), std::invalid_argument);
}

TEST_CASE("eigenvalue lists") {
    const auto d = EigenvalueList::default_for_rows(5);
    REQUIRE(d.length() == 5);
    CHECK(d[0] == -1.0);
    CHECK(d[4] == 1.0);
    CHECK(d[1] == doctest::Approx(-0.5 * 0.999));
    CHECK(d[2] == doctest::Approx(0.0));
    CHECK(d[3] == doctest::Approx(0.5 * 0.999));
    CHECK(d.is_realization_list());

    const auto d3 = EigenvalueList::default_for_rows(3);
    CHECK(d3[1] == doctest::Approx(0.0));

    CHECK(EigenvalueList::with_interior({-0.2, 0.3}).length() == 4);
    CHECK_THROWS_AS(EigenvalueList::with_interior({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(EigenvalueList({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(EigenvalueList({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(EigenvalueList::default_for_rows(2), std::invalid_argument);
    CHECK_FALSE(EigenvalueList({-2.0, 0.0, 1.0}).is_realization_list());
}

TEST_CASE("dense symmetric matrix storage") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 2 + 1e-14, 3;
    const auto s = DenseSymMatrix::from_matrix(m);
    CHECK(s(0, 1) == s(1, 0));
    m(1, 0) = 5;
    CHECK_THROWS_AS(DenseSymMatrix::from_matrix(m), std::invalid_argument);
    CHECK_THROWS_AS(DenseSymMatrix::from_matrix(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);

    DenseSymMatrix t(3);
    t.set(0, 2, 4.0);
    CHECK(t(2, 0) == 4.0);
}

TEST_CASE("json encodings round trip") {
    const auto v = MultiplicityMatrix::from_rows({{0, 1}, {2, 1}, {0, 0}, {1, 1}});
    const nlohmann::json j = v;
    CHECK(j.at("rows") == 4);
    CHECK(j.at("cols") == 2);
    CHECK(multiplicity_matrix_from_json(j) == v);

    const SizeTuple t{2, 1};
    CHECK(nlohmann::json(t).dump() == "[2,1]");
    CHECK(nlohmann::json::parse("[3,3]").get<SizeTuple>() == SizeTuple{3, 3});

    Eigen::MatrixXd x(2, 2);
    x << 0.1, -std::sqrt(2.0), -std::sqrt(2.0), 1.0 / 3.0;
    const auto back = matrix_from_json(nlohmann::json::parse(matrix_to_json(x).dump()));
    CHECK((back - x).cwiseAbs().maxCoeff() == 0.0);

    const auto nested = matrix_from_json(nlohmann::json::parse(R"({"n":2,"data":[[1,2],[2,1]]})"));
    CHECK(nested(1, 0) == 2.0);
    CHECK_THROWS(matrix_from_json(nlohmann::json::parse(R"({"n":2,"data":[1,2,3]})")));

    const std::string text = matrix_to_text(x, 3);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
