#include <algorithm>
#include <random>

#include "doctest.h"
#include "orthojoin/combinatorics.hpp"
#include "orthojoin/decision.hpp"

using namespace orthojoin;

namespace {

// Plain product search over every pair of matrices with 3 or 4 rows; returns
// the smallest middle mass of a compatible pair, or -1.
int naive_mu(const SizeTuple& m, const SizeTuple& n) {
    int best = -1;
    for (int rows = 3; rows <= 4; ++rows) {
        const auto vs = enumerate_multiplicity_matrices(m, rows);
        const auto ws = enumerate_multiplicity_matrices(n, rows);
        for (const auto& v : vs)
            for (const auto& w : ws)
                if (is_compatible(v, w) && (best < 0 || v.middle_mass() < best)) best = v.middle_mass();
    }
    return best;
}

std::vector<SizeTuple> small_tuples(int max_total) {
    std::vector<SizeTuple> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int cap) -> void {
        if (!cur.empty()) out.emplace_back(cur);
        for (int p = std::min(left, cap); p >= 1; --p) {
            cur.push_back(p);
            self(self, left - p, p);
            cur.pop_back();
        }
    };
    rec(rec, max_total, max_total);
    return out;
}

void check_witness(const SizeTuple& m, const SizeTuple& n) {
    CAPTURE(m.to_string());
    CAPTURE(n.to_string());
    const Witness w = construct_witness(m, n);
    CHECK(is_multiplicity_matrix_for(w.v, m));
    CHECK(is_multiplicity_matrix_for(w.w, n));
    CHECK(is_compatible(w.v, w.w));
    CHECK(w.v.middle_mass() == mu(m, n));
    CHECK((w.v.rows() == 3 || w.v.rows() == 4));
}

}  // namespace

TEST_CASE("two cliques against independent vertices") {
    CHECK(decide_q(SizeTuple{2, 2}, SizeTuple{1, 1, 1}).q == 3);
    CHECK(decide_q(SizeTuple{2, 2}, SizeTuple{1, 1}).q == 2);
    CHECK(decide_q(SizeTuple{2, 2}, SizeTuple{1, 1, 1, 1}).q == 2);
    CHECK(decide_q(SizeTuple{5}, SizeTuple{2, 1, 1}).q == 2);
    CHECK(decide_q(SizeTuple{2, 2, 2}, SizeTuple{1, 1, 1, 1, 1, 1, 1}).q == 3);
    CHECK(decide_q(SizeTuple{3, 3}, SizeTuple{1, 1, 1, 1, 1}).q == 2);
}

TEST_CASE("decision report contents") {
    const auto r = decide_q(SizeTuple{3, 2}, SizeTuple{2, 1, 1});
    CHECK(r.q == 2);
    CHECK(r.rule == Rule::g3);
    CHECK_FALSE(r.swapped);
    REQUIRE(r.witness.has_value());
    CHECK(r.mu == 3);
    CHECK(r.iplus_range == std::make_pair(3, 6));

    const auto none = decide_q(SizeTuple{2, 2}, SizeTuple{1, 1, 1});
    CHECK(none.rule == Rule::none);
    CHECK_FALSE(none.witness.has_value());
    CHECK_FALSE(none.mu.has_value());
    CHECK_FALSE(none.iplus_range.has_value());

    const auto swapped = decide_q(SizeTuple{1, 1, 1}, SizeTuple{3});
    CHECK(swapped.swapped);
    REQUIRE(swapped.witness.has_value());
    CHECK(swapped.witness->v.cols() == 3);
    CHECK(swapped.witness->w.cols() == 1);

    const nlohmann::json j = r;
    CHECK(j.at("q") == 2);
    CHECK(j.at("rule") == "g3");
    CHECK(j.at("mu") == 3);
    CHECK(j.at("iplus_range") == nlohmann::json::array({3, 6}));
    CHECK(j.at("witness").contains("V"));
}

TEST_CASE("clauses") {
    CHECK(decision_rule(SizeTuple{2, 2}, SizeTuple{3, 3}) == Rule::g1);
    CHECK(decision_rule(SizeTuple{2}, SizeTuple{2, 2, 2}) == Rule::none);
    CHECK(decision_rule(SizeTuple{1, 1}, SizeTuple{1, 1}) == Rule::g2);
    CHECK(decision_rule(SizeTuple{1, 1}, SizeTuple{1, 1, 1}) == Rule::none);
    CHECK(decision_rule(SizeTuple{2, 2}, SizeTuple{1, 1}) == Rule::g3);
}

TEST_CASE("mu and multiplicity range") {
    CHECK(mu(SizeTuple{3, 2}, SizeTuple{2, 1, 1}) == 3);
    CHECK(mu(SizeTuple{2, 2}, SizeTuple{2, 1, 1}) == 4);
    CHECK(iplus_range(SizeTuple{2, 2}, SizeTuple{2, 1, 1}) == std::make_pair(4, 4));
    CHECK(iplus_range(SizeTuple{1}, SizeTuple{1}) == std::make_pair(1, 1));
    CHECK_THROWS_AS(mu(SizeTuple{2, 2}, SizeTuple{1, 1, 1}), NotRealizable);
    CHECK_THROWS_AS(iplus_range(SizeTuple{2, 2}, SizeTuple{1, 1, 1}), NotRealizable);

    for (int s = 1; s <= 4; ++s)
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 12; ++b) {
                const SizeTuple m(std::vector<int>(static_cast<std::size_t>(a), s));
                const SizeTuple n(std::vector<int>(static_cast<std::size_t>(b), 1));
                if (formula_q(m, n) == 2) CHECK(mu(m, n) == b);
            }
}

TEST_CASE("witness constructions") {
    SUBCASE("three rows") {
        const auto w = construct_witness(SizeTuple{2, 2}, SizeTuple{1, 1});
        CHECK(w.branch == "three-row");
        CHECK(w.v == MultiplicityMatrix::from_rows({{1, 1}, {1, 1}, {0, 0}}));
        CHECK(w.w == MultiplicityMatrix::from_rows({{0, 0}, {1, 1}, {0, 0}}));
    }
    SUBCASE("shrink and lift") {
        const auto w = construct_witness(SizeTuple{2, 2}, SizeTuple{1, 1, 1, 1});
        CHECK(w.branch == "four-row-shrink-and-lift");
        CHECK(w.v == MultiplicityMatrix::from_rows({{0, 0}, {1, 1}, {1, 1}, {0, 0}}));
        CHECK(w.w == MultiplicityMatrix::from_rows({{0, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 0}}));
    }
    SUBCASE("no isolated vertices") {
        const auto w = construct_witness(SizeTuple{2, 2}, SizeTuple{2, 2, 2});
        CHECK(w.branch == "four-row-no-isolated");
        CHECK(w.v.middle_mass() == 4);
    }
    SUBCASE("spread") {
        const auto w = construct_witness(SizeTuple{5}, SizeTuple{1, 1, 1, 1, 1});
        CHECK(w.branch == "four-row-spread");
    }
    SUBCASE("one clique against as many vertices as it has") {
        const auto w = construct_witness(SizeTuple{3}, SizeTuple{1, 1, 1});
        CHECK(w.branch == "four-row-spread");
        CHECK(w.v == MultiplicityMatrix::from_rows({{0}, {1}, {2}, {0}}));
        CHECK(is_compatible(w.v, w.w));
    }
    SUBCASE("rejects q = 3") {
        CHECK_THROWS_AS(construct_witness(SizeTuple{3}, SizeTuple{1, 1, 1, 1}), NotRealizable);
        CHECK_THROWS_AS(construct_witness(SizeTuple{2, 2}, SizeTuple{1, 1, 1}), NotRealizable);
    }
}

TEST_CASE("closed form agrees with a plain product search") {
    const auto tuples = small_tuples(4);
    for (const auto& m : tuples) {
        for (const auto& n : tuples) {
            CAPTURE(m.to_string());
            CAPTURE(n.to_string());
            const int expected = naive_mu(m, n);
            CHECK(formula_q(m, n) == (expected > 0 ? 2 : 3));
            if (expected > 0) {
                CHECK(mu(m, n) == expected);
                check_witness(m, n);
            }
        }
    }
}

TEST_CASE("every q = 2 pair gets a witness of mass mu") {
    const auto tuples = small_tuples(8);
    int built = 0;
    for (const auto& m : tuples)
        for (const auto& n : tuples)
            if (formula_q(m, n) == 2) {
                check_witness(m, n);
                ++built;
            }
    CHECK(built > 1000);
}

TEST_CASE("permutation and swap invariance") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> len(1, 6), entry(1, 4);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<int> a(static_cast<std::size_t>(len(rng))), b(static_cast<std::size_t>(len(rng)));
        for (int& x : a) x = entry(rng);
        for (int& x : b) x = entry(rng);
        const SizeTuple m(a), n(b);
        std::shuffle(a.begin(), a.end(), rng);
        const int q = formula_q(m, n);
        CHECK(formula_q(SizeTuple(a), n) == q);
        CHECK(formula_q(n, m) == q);
        if (q == 2) CHECK(mu(n, m) == mu(m, n));
    }
}

TEST_CASE("same-size components") {
    const auto [v, w] = witness_same_size_components(SizeTuple{2, 2}, SizeTuple{2, 2}, 2);
    CHECK(v == MultiplicityMatrix::from_rows({{0, 0}, {1, 1}, {1, 1}, {0, 0}}));
    CHECK(w == v);

    const auto [v2, w2] = witness_same_size_components(SizeTuple{3, 2}, SizeTuple{2, 4}, 2);
    CHECK(v2 == MultiplicityMatrix::from_rows({{1, 0}, {1, 1}, {1, 1}, {0, 0}}));
    CHECK(w2 == MultiplicityMatrix::from_rows({{0, 1}, {1, 1}, {1, 1}, {0, 1}}));
    CHECK(is_compatible(v2, w2));

    const auto [v3, w3] = witness_same_size_components(SizeTuple{2, 3}, SizeTuple{3, 2}, 2);
    CHECK(is_compatible(v3, w3));
    CHECK(is_multiplicity_matrix_for(v3, SizeTuple{2, 3}));

    CHECK_THROWS_AS(witness_same_size_components(SizeTuple{2, 5}, SizeTuple{2, 2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(witness_same_size_components(SizeTuple{2}, SizeTuple{2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(witness_same_size_components(SizeTuple{2, 2}, SizeTuple{2, 2, 2}, 2), std::invalid_argument);
}

TEST_CASE("connected graph against cliques") {
    const auto [v, w] = witness_connected_vs_cliques(3, SizeTuple{2, 2, 2});
    CHECK(v == MultiplicityMatrix::from_rows({{0}, {1}, {1}, {1}, {0}}));
    CHECK(w == MultiplicityMatrix::from_rows({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
    CHECK(is_compatible(v, w));

    const auto [v2, w2] = witness_connected_vs_cliques(5, SizeTuple{1, 1, 1});
    CHECK(v2 == MultiplicityMatrix::from_rows({{1}, {1}, {1}, {1}, {1}}));
    CHECK(w2.data().row_sum(0) == 0);
    CHECK(is_compatible(v2, w2));

    CHECK_THROWS_AS(witness_connected_vs_cliques(2, SizeTuple{1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(witness_connected_vs_cliques(6, SizeTuple{1, 1, 1}), std::invalid_argument);
}
