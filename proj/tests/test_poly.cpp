#include <gtest/gtest.h>

#include "support.hpp"
#include "zp2/poly.hpp"

using namespace zp2;

TEST(Poly, MonomialPacking) {
    Mono m = mono_make({2, 0, 3});
    EXPECT_EQ(mono_exp(m, 0), 2);
    EXPECT_EQ(mono_exp(m, 2), 3);
    EXPECT_EQ(mono_degree(m), 5);
    EXPECT_EQ(mono_mul(m, mono_var(1, 4)), mono_make({2, 4, 3}));
    EXPECT_THROW(mono_mul(mono_var(0, 200), mono_var(0, 1)), PrecisionError);
}

TEST(Poly, ArithmeticAndPowers) {
    auto R = make_ring(3, 12);
    Poly x = Poly::variable(R, 0);
    Poly one = Poly::constant(R, 1);
    Poly f = (one + x).pow(3);
    auto c = f.univariate_coeffs();
    ASSERT_EQ(c.size(), 4u);
    EXPECT_TRUE(c[1].same_as(R.from_int(3)));
    EXPECT_TRUE(c[3].same_as(R.one()));
    EXPECT_TRUE((f - f).is_zero());
    EXPECT_TRUE((x * (one - x) + x * x - x).is_zero());
}

TEST(Poly, ReductionByMonicRelation) {
    auto R = make_ring(3, 12);
    Poly x = Poly::variable(R, 0);
    Poly one = Poly::constant(R, 1);
    RingElement mu = R.pi_pow(2);
    // P = ((1 + mu x)^3 - 1) / mu^3
    Poly P = ((one + mu * x).pow(3) - one).divide_exact(mu.pow(3));
    auto rel = MonicRelation::from_poly(P, 0);
    EXPECT_EQ(rel.degree, 3);
    EXPECT_TRUE(reduce(P, {rel}).is_zero());
    Poly g = reduce((one + mu * x).pow(3), {rel});
    EXPECT_TRUE((g - one).is_zero());
    Poly h = reduce(x.pow(7) + x, {rel});
    EXPECT_LT(h.degree(0), 3);
    EXPECT_TRUE((reduce(h, {rel}) - h).is_zero());
}

TEST(Poly, ReductionIsLinear) {
    std::mt19937_64 rng(3);
    auto R = make_ring(3, 12);
    Poly x = Poly::variable(R, 0);
    Poly y = Poly::variable(R, 1);
    Poly one = Poly::constant(R, 1);
    auto r1 = MonicRelation::from_poly(x.pow(3) - R.pi() * x, 0);
    auto r2 = MonicRelation::from_poly(y.pow(3) - x * y - one, 1);
    std::vector<MonicRelation> rels = {r2, r1};
    for (int i = 0; i < 20; ++i) {
        Poly f(R), g(R);
        for (int k = 0; k < 6; ++k) {
            f.add_term(mono_make({static_cast<int>(rng() % 6), static_cast<int>(rng() % 6)}),
                       sample::random_element(R, rng));
            g.add_term(mono_make({static_cast<int>(rng() % 6), static_cast<int>(rng() % 6)}),
                       sample::random_element(R, rng));
        }
        RingElement c = sample::random_element(R, rng);
        Poly lhs = reduce(f + c * g, rels);
        Poly rhs = reduce(f, rels) + c * reduce(g, rels);
        EXPECT_TRUE((lhs - rhs).is_zero());
        EXPECT_LT(lhs.degree(0), 3);
        EXPECT_LT(lhs.degree(1), 3);
    }
}

TEST(Poly, SubstituteAndDivide) {
    auto R = make_ring(3, 12);
    Poly x = Poly::variable(R, 0);
    Poly y = Poly::variable(R, 1);
    Poly f = x * x + y;
    Poly g = substitute(f, {y + Poly::constant(R, 1), x});
    EXPECT_TRUE((g - (y * y + y + y + Poly::constant(R, 1) + x)).is_zero());
    Poly h = R.pi_pow(3) * x;
    EXPECT_TRUE((h.divide_exact(R.pi_pow(2)) - R.pi() * x).is_zero());
    EXPECT_THROW(h.divide_exact(R.pi_pow(4)), DivisibilityError);
}

TEST(Poly, RenameAndShift) {
    auto R = make_ring(3, 12);
    Poly f = Poly::variable(R, 0) * Poly::variable(R, 1).pow(2);
    Poly g = f.shift(2);
    EXPECT_EQ(g.max_var(), 3);
    EXPECT_EQ(g.degree(3), 2);
    EXPECT_TRUE((f.rename({1, 0}) - Poly::variable(R, 1) * Poly::variable(R, 0).pow(2)).is_zero());
}
