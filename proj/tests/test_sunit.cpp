#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prt/sunit.hpp"

using namespace prt;

TEST(SUnit, Rank) {
    EXPECT_EQ(subgroup_rank({2, 3}).rank, 2U);
    EXPECT_EQ(subgroup_rank({4, 8}).rank, 1U);
    EXPECT_EQ(subgroup_rank({-1}).rank, 0U);
    EXPECT_EQ(subgroup_rank({BigRat(2, 3), 6, 4}).rank, 2U);
    EXPECT_THROW(subgroup_rank({0}), Error);
    auto g = subgroup_rank({BigRat(-12, 5)});
    EXPECT_EQ(g.recompose(0), BigRat(-12, 5));
}

TEST(SUnit, Bounds) {
    EXPECT_EQ(sunit_solution_bound(1), BigInt(1) << 32);
    EXPECT_EQ(sunit_solution_bound(0), BigInt(1) << 16);
    EXPECT_EQ(sunit_raw_bound(2), BigInt(1) << 32);
}

TEST(SUnit, ThreeVariableCriterion) {
    auto g = subgroup_rank({2, 3});
    EXPECT_EQ(decide_sunit_3var(1, 1, -2, g).status, SUnitStatus::PR_CONSTANT);
    EXPECT_EQ(decide_sunit_3var(1, 1, -1, g).status, SUnitStatus::NOT_PR);
    EXPECT_EQ(decide_sunit_3var(2, 3, -5, g).status, SUnitStatus::PR_CONSTANT);
    EXPECT_THROW(decide_sunit_3var(0, 1, -1, g), Error);
}

TEST(SUnit, ScalingInvariance) {
    oracle::Rng rng(71);
    auto g = subgroup_rank({2});
    for (int it = 0; it < 300; ++it) {
        BigRat a = rng.nonzero(-6, 6), b = rng.nonzero(-6, 6), c = rng.coin() ? -(a + b) : BigRat(rng.nonzero(-6, 6));
        if (c == 0) continue;
        BigRat l(rng.nonzero(-9, 9), rng.nonzero(1, 9));
        EXPECT_EQ(decide_sunit_3var(a, b, c, g).status, decide_sunit_3var(l * a, l * b, l * c, g).status);
    }
}

TEST(SUnit, GroupElements) {
    auto two = enumerate_group_elements(subgroup_rank({2}), 2);
    EXPECT_EQ(two, (std::vector<BigRat>{BigRat(1, 4), BigRat(1, 2), 1, 2, 4}));
    EXPECT_EQ(enumerate_group_elements(subgroup_rank({2, 3}), 1).size(), 9U);
    EXPECT_EQ(enumerate_group_elements(subgroup_rank({-1}), 1), (std::vector<BigRat>{-1, 1}));
}

TEST(SUnit, UnitEquationCounts) {
    auto a = count_unit_equation_solutions(1, 1, subgroup_rank({2}), 4);
    EXPECT_EQ(a.count, 1U);
    EXPECT_EQ(a.solutions[0], std::make_pair(BigRat(1, 2), BigRat(1, 2)));

    auto b = count_unit_equation_solutions(1, 1, subgroup_rank({-1, 2}), 4);
    EXPECT_EQ(b.count, 3U);
    std::set<std::pair<BigRat, BigRat>> got(b.solutions.begin(), b.solutions.end());
    std::set<std::pair<BigRat, BigRat>> want{{2, -1}, {-1, 2}, {BigRat(1, 2), BigRat(1, 2)}};
    EXPECT_EQ(got, want);
    EXPECT_TRUE(b.within_bound);

    EXPECT_EQ(count_unit_equation_solutions(2, 3, subgroup_rank({1}), 0).count, 0U);
}

TEST(SUnit, CountsRespectBoundProperty) {
    oracle::Rng rng(72);
    const std::vector<std::vector<BigRat>> groups = {{2}, {-1, 2}, {2, 3}, {-1, 3, 5}, {BigRat(1, 2), 6}};
    for (const auto& gens : groups) {
        auto g = subgroup_rank(gens);
        for (int it = 0; it < 6; ++it) {
            BigRat a = rng.nonzero(-4, 4), b = rng.nonzero(-4, 4);
            auto r = count_unit_equation_solutions(a, b, g, 3);
            EXPECT_TRUE(r.within_bound);
            for (const auto& [x, y] : r.solutions) EXPECT_EQ(a * x + b * y, 1);
        }
    }
}

TEST(SUnit, RankInvariantUnderUnimodularRecombination) {
    oracle::Rng rng(73);
    const std::vector<BigRat> primes = {2, 3, 5, 7, 11};
    for (int it = 0; it < 100; ++it) {
        std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
        std::vector<BigRat> gens;
        for (std::size_t i = 0; i < k; ++i) {
            BigRat g = rng.coin() ? -1 : 1;
            for (const auto& p : primes) g *= rpow(p, rng.uniform(-2, 2));
            gens.push_back(g);
        }
        auto base = subgroup_rank(gens).rank;
        // elementary operations: g_i <- g_i * g_j^t, swaps, inversions
        auto mixed = gens;
        for (int op = 0; op < 4; ++op) {
            std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(k) - 1));
            std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(k) - 1));
            if (i != j) mixed[i] *= rpow(mixed[j], rng.uniform(-2, 2));
            else mixed[i] = 1 / mixed[i];
        }
        EXPECT_EQ(subgroup_rank(mixed).rank, base);
        EXPECT_EQ(base, oracle::rank_of_columns([&] {
                      std::vector<std::vector<BigRat>> rows;
                      for (const auto& g : gens) {
                          std::vector<BigRat> r;
                          for (const auto& p : primes) {
                              int v = 0;
                              BigInt n = abs(num(g)), d = den(g), pi = num(p);
                              while (n % pi == 0) { n /= pi; ++v; }
                              while (d % pi == 0) { d /= pi; --v; }
                              r.emplace_back(v);
                          }
                          rows.push_back(r);
                      }
                      return rows;
                  }()));
    }
}

TEST(SUnit, NoThreeTermProgressionsInPowersOfTwo) {
    auto g = subgroup_rank({2});
    for (std::size_t E = 0; E <= 6; ++E) EXPECT_TRUE(nonconstant_solutions_3var(1, 1, -2, g, E).empty());
    // sanity: the same scan does find nonconstant solutions where they exist
    EXPECT_FALSE(nonconstant_solutions_3var(1, 1, -1, g, 2).empty());
}
