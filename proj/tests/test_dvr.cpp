#include <gtest/gtest.h>

#include <random>

#include "zp2/dvr.hpp"

using namespace zp2;

namespace {

RingElement random_element(const RingDescriptor& R, std::mt19937_64& rng) {
    Digits d(R.e());
    std::uniform_int_distribution<std::int64_t> dist(0, R.data()->pM - 1);
    for (auto& x : d) x = dist(rng);
    return RingElement(R.data(), d, R.max_precision());
}

// element of valuation exactly v (random unit times pi^v)
RingElement random_with_valuation(const RingDescriptor& R, int v, std::mt19937_64& rng) {
    RingElement u = random_element(R, rng);
    if (!u.is_unit()) u += R.one();
    return u * R.pi_pow(v);
}

}  // namespace

TEST(Ring, CyclotomicInvariants) {
    auto R = make_ring(3, 8);
    EXPECT_EQ(R.e(), 6);
    EXPECT_EQ(R.p_elem().valuation(), Valuation::exact(6));
    EXPECT_EQ(R.lambda(1).valuation(), Valuation::exact(3));
    EXPECT_EQ(R.pi().valuation(), Valuation::exact(1));

    auto R5 = make_ring(5, 6);
    EXPECT_EQ(R5.e(), 20);
    EXPECT_EQ(R5.lambda(1).valuation(), Valuation::exact(5));
}

TEST(Ring, EisensteinPolynomialAtThree) {
    // (1+x)^6 + (1+x)^3 + 1 = x^6 + 6x^5 + 15x^4 + 21x^3 + 18x^2 + 9x + 3
    auto R = make_ring(3, 8);
    std::vector<std::int64_t> expect = {3, 9, 18, 21, 15, 6, 1};
    EXPECT_EQ(R.eisenstein_coeffs(), expect);
    for (std::size_t i = 0; i + 1 < expect.size(); ++i) EXPECT_EQ(expect[i] % 3, 0);
    EXPECT_NE(expect[0] % 9, 0);
}

TEST(Ring, RejectsBadPrimes) {
    EXPECT_THROW(make_ring(4), ValidationError);
    EXPECT_THROW(make_ring(2), ValidationError);
    EXPECT_THROW(make_ring(9), ValidationError);
    EXPECT_THROW(make_ring(3, 1), ValidationError);
}

TEST(Ring, CustomEisensteinCheck) {
    EXPECT_NO_THROW(make_custom_ring(3, 6, {3, 0, 1}));
    EXPECT_THROW(make_custom_ring(3, 6, {9, 0, 1}), EisensteinError);
    EXPECT_THROW(make_custom_ring(3, 6, {3, 1, 1}), EisensteinError);
    EXPECT_THROW(make_custom_ring(3, 6, {3, 0, 2}), EisensteinError);
}

TEST(Ring, RelationReduction) {
    auto R = make_ring(3, 8);
    RingElement x = R.pi() * R.pi_pow(R.e() - 1);
    EXPECT_EQ(x.valuation(), Valuation::exact(R.e()));
    RingElement z = x + (-x);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.precision(), R.max_precision());
}

TEST(Ring, PiPowers) {
    for (int p : {3, 5}) {
        auto R = make_ring(p);
        RingElement x = R.one();
        for (int k = 0; k <= R.max_precision() + 2; ++k) {
            EXPECT_TRUE(R.pi_pow(k).same_as(x)) << p << " " << k;
            if (k < R.max_precision()) {
                EXPECT_EQ(R.pi_pow(k).valuation(), Valuation::exact(k));
            }
            x *= R.pi();
        }
        EXPECT_EQ(divide_exact(R.pi_pow(R.e()), R.p_elem()).is_unit(), true);
        EXPECT_FALSE((R.pi_pow(R.e()) - R.p_elem()).is_zero());
    }
}

TEST(Ring, ValuationOfZeroIsIndeterminate) {
    auto R = make_ring(3, 8);
    RingElement z = R.zero().with_precision(5);
    EXPECT_EQ(z.valuation(), Valuation::indeterminate(5));
    EXPECT_EQ(R.pi_pow(7).with_precision(5).valuation(), Valuation::indeterminate(5));
}

TEST(Ring, Eta) {
    auto R = make_ring(3, 12);
    RingElement h = eta(R);
    RingElement expect = R.pi() - R.pi().pow(2) * invert_unit(R.from_int(2));
    EXPECT_TRUE(h.same_as(expect));
    EXPECT_EQ(h.valuation(), Valuation::exact(1));
    auto R5 = make_ring(5, 12);
    EXPECT_EQ(eta(R5).valuation(), Valuation::exact(1));
}

TEST(Ring, EtaCongruence) {
    for (int p : {3, 5}) {
        auto R = make_ring(p, 12);
        RingElement h = eta(R);
        RingElement l1 = R.lambda(1);
        RingElement lhs = R.p_elem() * h - l1;
        RingElement rhs = divide_exact(R.p_elem(), l1.pow(p - 1)) * h.pow(p);
        EXPECT_TRUE(equal_mod(lhs, rhs, p * p)) << "p = " << p;
    }
}

TEST(Ring, DivideExact) {
    auto R = make_ring(3, 12);
    RingElement u = divide_exact(R.p_elem(), R.lambda(1).pow(2));
    EXPECT_EQ(u.valuation(), Valuation::exact(0));
    EXPECT_TRUE(equal_mod(u * R.lambda(1).pow(2), R.p_elem(), u.precision()));
    RingElement x = R.from_int(17) + R.pi_pow(4);
    EXPECT_TRUE(divide_exact(x, R.one()).same_as(x));
    EXPECT_THROW(divide_exact(R.pi(), R.pi_pow(2)), ValuationError);
    EXPECT_THROW(divide_exact(R.pi(), R.zero().with_precision(3)), ValuationError);
}

TEST(Ring, InvertUnit) {
    auto R = make_ring(3, 12);
    EXPECT_TRUE(invert_unit(R.one()).same_as(R.one()));
    RingElement z = R.zeta2();
    EXPECT_TRUE(invert_unit(z).same_as(z.pow(8)));
    EXPECT_THROW(invert_unit(R.pi()), ValuationError);
}

TEST(Ring, Quotients) {
    auto R = make_ring(3, 12);
    EXPECT_EQ(enumerate_quotient(R, 3).size(), 27u);
    EXPECT_TRUE(reduce_mod(R.lambda(1), 3).is_zero());
    auto q1 = enumerate_quotient(R, 1);
    ASSERT_EQ(q1.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(q1[i].digits(), std::vector<int>{i});
    EXPECT_THROW(reduce_mod(R.one().with_precision(2), 3), PrecisionError);
}

TEST(RingProperties, RingAxiomsOnSamples) {
    std::mt19937_64 rng(7);
    for (int p : {3, 5}) {
        auto R = make_ring(p, 12);
        for (int i = 0; i < 50; ++i) {
            auto a = random_element(R, rng), b = random_element(R, rng), c = random_element(R, rng);
            EXPECT_TRUE(((a * b) * c).same_as(a * (b * c)));
            EXPECT_TRUE((a * (b + c)).same_as(a * b + a * c));
            EXPECT_TRUE((a * b).same_as(b * a));
        }
    }
}

TEST(RingProperties, ValuationIsMultiplicativeAndUltrametric) {
    std::mt19937_64 rng(11);
    auto R = make_ring(3, 12);
    std::uniform_int_distribution<int> vd(0, 20);
    for (int i = 0; i < 100; ++i) {
        auto x = random_with_valuation(R, vd(rng), rng);
        auto y = random_with_valuation(R, vd(rng), rng);
        auto vx = x.valuation(), vy = y.valuation();
        auto vxy = (x * y).valuation();
        ASSERT_TRUE(vx.determinate && vy.determinate);
        if (vxy.determinate) {
            EXPECT_EQ(vxy.value, vx.value + vy.value);
        }
        auto vs = (x + y).valuation();
        EXPECT_GE(vs.value, std::min(vx.value, vy.value));
    }
}

TEST(RingProperties, DivideExactRoundTrip) {
    std::mt19937_64 rng(13);
    auto R = make_ring(3, 12);
    std::uniform_int_distribution<int> vd(0, 12);
    for (int i = 0; i < 100; ++i) {
        auto x = random_element(R, rng);
        auto y = random_with_valuation(R, vd(rng), rng);
        auto q = divide_exact(x * y, y);
        EXPECT_EQ(q.precision(), R.max_precision() - y.valuation().value);
        EXPECT_TRUE(equal_mod(q, x, q.precision()));
    }
}

TEST(RingProperties, ValuationFormulaAgreesWithRepeatedDivision) {
    std::mt19937_64 rng(17);
    for (int p : {3, 5}) {
        auto R = make_ring(p, 6);
        for (int i = 0; i < 100; ++i) {
            auto x = random_element(R, rng) * R.pi_pow(static_cast<int>(rng() % 9));
            int count = 0;
            RingElement y = x;
            while (!y.is_zero() && !y.is_unit()) {
                y = y.div_pi();
                ++count;
            }
            auto v = x.valuation();
            if (y.is_zero()) {
                EXPECT_FALSE(v.determinate);
            } else {
                EXPECT_EQ(v, Valuation::exact(count));
            }
        }
    }
}
