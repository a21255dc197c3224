#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prt/expr.hpp"
#include "prt/model.hpp"
#include "prt/poly.hpp"

using namespace prt;

namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};
const std::vector<std::string> kXY = {"x", "y"};

MultiPoly random_poly(oracle::Rng& rng, const std::vector<std::string>& vars, int max_deg, int terms) {
    MultiPoly p(vars);
    for (int t = 0; t < terms; ++t) {
        Exponent e(vars.size(), 0);
        int budget = static_cast<int>(rng.uniform(0, max_deg));
        for (int k = 0; k < budget; ++k) ++e[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(vars.size()) - 1))];
        p.add_term(e, rng.uniform(-9, 9));
    }
    return p;
}

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    auto cs = classify_text(text + " = 0");
    return std::visit(
        [&](const auto& f) -> MultiPoly {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearSystem>) {
                MultiPoly p = MultiPoly::constant(f.vars, -f.b[0]);
                for (std::size_t j = 0; j < f.vars.size(); ++j) {
                    Exponent e(f.vars.size(), 0);
                    e[j] = 1;
                    p.add_term(e, f.A(0, j));
                }
                return p.with_vars(vars);
            } else if constexpr (std::is_same_v<T, PolyExpEquation>) {
                throw std::logic_error("unexpected class");
            } else {
                return f.polys[0].with_vars(vars);
            }
        },
        cs.form);
}

std::vector<BigRat> point(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Poly, EvalExamples) {
    EXPECT_EQ(parse_poly("x*y - z + 2", kXYZ).eval(point({1, 1, 1})), 2);
    EXPECT_EQ(MultiPoly(kXYZ).eval(point({4, 5, 6})), 0);
    EXPECT_EQ(parse_poly("x^2 - y", kXY).eval(point({3, 9})), 0);
    EXPECT_THROW(MultiPoly(kXY).eval(point({1, 2, 3})), Error);
}

TEST(Poly, DiagonalExamples) {
    EXPECT_EQ(poly_diagonal(parse_poly("x*y - z + 2", kXYZ)).to_string(), "w^2 - w + 2");
    EXPECT_EQ(poly_diagonal(parse_poly("x - y + 2*z + 2", kXYZ)).to_string(), "2*w + 2");
    EXPECT_TRUE(poly_diagonal(parse_poly("x - y", kXY)).is_zero());
}

TEST(Poly, IntegerRootExamples) {
    EXPECT_EQ(integer_roots(UniPoly({-2, -1, 1})), (std::vector<BigInt>{-1, 2}));
    EXPECT_TRUE(integer_roots(UniPoly({1, 0, 1})).empty());
    EXPECT_EQ(integer_roots(UniPoly({0, 0, 0, 1})), (std::vector<BigInt>{0}));
    EXPECT_EQ(integer_roots(UniPoly({BigRat(-3, 2), BigRat(1, 2)})), (std::vector<BigInt>{3}));
    EXPECT_THROW(integer_roots(UniPoly()), Error);
}

TEST(Poly, DividesXMinusYExamples) {
    EXPECT_TRUE(divides_x_minus_y(parse_poly("x^2 - y^2", kXY)));
    EXPECT_TRUE(divides_x_minus_y(parse_poly("x^2 - 2*x*y + y^2", kXY)));
    EXPECT_FALSE(divides_x_minus_y(parse_poly("x + y", kXY)));
    EXPECT_THROW(divides_x_minus_y(parse_poly("x + z", kXYZ)), Error);
}

TEST(Poly, Printing) {
    EXPECT_EQ(parse_poly("x*y - z + 2", kXYZ).to_string(), "x*y - z + 2");
    EXPECT_EQ(UniPoly({2, -1, 1}).to_string("s"), "s^2 - s + 2");
    EXPECT_EQ(UniPoly().to_string(), "0");
}

TEST(Poly, RingHomomorphismProperty) {
    oracle::Rng rng(21);
    for (int it = 0; it < 300; ++it) {
        MultiPoly p = random_poly(rng, kXYZ, 4, 5), q = random_poly(rng, kXYZ, 4, 5);
        std::vector<BigRat> v{BigRat(rng.uniform(-6, 6), rng.nonzero(1, 4)), BigRat(rng.uniform(-6, 6)),
                              BigRat(rng.uniform(-6, 6), 3)};
        EXPECT_EQ(poly_eval(p + q, v), poly_eval(p, v) + poly_eval(q, v));
        EXPECT_EQ(poly_eval(p - q, v), poly_eval(p, v) - poly_eval(q, v));
        EXPECT_EQ(poly_eval(p * q, v), poly_eval(p, v) * poly_eval(q, v));
        BigRat w = rng.uniform(-5, 5);
        EXPECT_EQ(poly_diagonal(p).eval(w), poly_eval(p, std::vector<BigRat>{w, w, w}));
    }
}

TEST(Poly, IntegerRootsAgreeWithBruteScan) {
    oracle::Rng rng(22);
    for (int it = 0; it < 150; ++it) {
        // half the cases have planted roots so the property is not vacuous
        UniPoly p = UniPoly::constant(rng.nonzero(-3, 3));
        if (rng.coin()) {
            int k = static_cast<int>(rng.uniform(1, 3));
            for (int j = 0; j < k; ++j) p = p * UniPoly({BigRat(-rng.uniform(-30, 30)), 1});
            if (rng.coin()) p = p * UniPoly({rng.nonzero(1, 5), 0, 1});
        } else {
            std::vector<BigRat> c;
            for (int j = 0; j <= rng.uniform(1, 4); ++j) c.emplace_back(rng.uniform(-9, 9));
            c.back() = rng.nonzero(-9, 9);
            p = UniPoly(c);
        }
        auto roots = integer_roots(p);
        std::vector<BigInt> brute;
        for (int r = -1000; r <= 1000; ++r)
            if (p.eval(r) == 0) brute.emplace_back(r);
        EXPECT_EQ(roots, brute) << p.to_string();
    }
}

TEST(Poly, DividesXMinusYAgreesWithLongDivision) {
    oracle::Rng rng(23);
    int divisible = 0;
    for (int it = 0; it < 400; ++it) {
        MultiPoly p = random_poly(rng, kXY, 5, 4);
        if (rng.coin()) p = p * parse_poly("x - y", kXY);   // plant a factor, degree <= 6
        oracle::Bivariate b;
        for (const auto& [e, c] : p.terms()) b[{static_cast<int>(e[0]), static_cast<int>(e[1])}] += c;
        bool expect = oracle::divisible_by_x_minus_y(b);
        divisible += expect;
        EXPECT_EQ(divides_x_minus_y(p), expect) << p.to_string();
    }
    EXPECT_GT(divisible, 50);
}

TEST(Poly, RestrictAndCompose) {
    MultiPoly p = parse_poly("x^2*y - 3*y + 1", kXY);
    std::vector<BigRat> vals{2, 0};
    UniPoly u = p.restrict_to(1, vals);   // 4y - 3y + 1
    EXPECT_EQ(u.to_string("y"), "y + 1");
    UniPoly q({1, 2, 1});                 // (w+1)^2
    EXPECT_EQ(q.compose_affine(2, 1).to_string(), "4*w^2 + 8*w + 4");
}
