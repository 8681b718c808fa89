#include <gtest/gtest.h>

#include "support.hpp"
#include "zp2/artin_hasse.hpp"

using namespace zp2;

TEST(ArtinHasse, LeadingCoefficients) {
    const auto& e = ah_series(3, 27);
    ASSERT_EQ(e.size(), 28u);
    EXPECT_EQ(e[0], 1);
    EXPECT_EQ(e[1], 1);
    EXPECT_EQ(e[2], mpq_class(1, 2));
    // exp(T + T^3/3): T^3 coefficient 1/6 + 1/3
    EXPECT_EQ(e[3], mpq_class(1, 2));
    for (const auto& c : e) EXPECT_NE(c.get_den() % 3, 0);
    for (const auto& c : ah_series(5, 125)) EXPECT_NE(c.get_den() % 5, 0);
}

TEST(ArtinHasse, AHRejectsBadInput) {
    EXPECT_THROW(ah_series(4, 5), ValidationError);
    EXPECT_THROW(deformed_ah(3, 0), ValidationError);
}

TEST(ArtinHasse, DeformedCertifiedAndSpecializes) {
    const int p = 3, D = 27;
    const auto& s = deformed_ah(p, D);
    ASSERT_EQ(s.size(), static_cast<std::size_t>(D + 1));
    for (const auto& c : s) {
        EXPECT_GE(c.min_lambda_exp(), 0);
        EXPECT_TRUE(c.p_integral(p));
    }
    auto diag = specialize_u_equals_lambda(s);
    EXPECT_EQ(diag[0], 1);
    EXPECT_EQ(diag[1], 1);
    for (int k = 2; k <= D; ++k) EXPECT_EQ(diag[k], 0) << k;
    auto zero = specialize_lambda_zero(s);
    const auto& e = ah_series(p, D);
    for (int k = 0; k <= D; ++k) {
        BiPoly expect;
        expect.add_term(k, 0, e[k]);
        EXPECT_TRUE(zero[k] == expect) << k;
    }
}

TEST(ArtinHasse, ProductFormula) {
    for (int p : {3, 5}) {
        const int D = p == 3 ? 27 : 30;
        const auto& s = deformed_ah(p, D);
        auto prod = ah_product_formula(p, D);
        for (int k = 0; k <= D; ++k) EXPECT_TRUE(s[k] == prod[k]) << "p=" << p << " k=" << k;
    }
}

TEST(ArtinHasse, SpecialPolynomial) {
    auto R = make_ring(3, 12);
    const int t = 3;
    RingElement mu = R.pi_pow(3);
    Poly one = ep_poly_special(R.zero(), mu, t);
    EXPECT_TRUE((one - Poly::constant(R.one())).with_precision(t).is_zero());
    Poly lin = ep_poly_special(mu, mu, t);
    EXPECT_TRUE((lin - Poly::constant(R.one()) - Poly::monomial(mu, mono_var(0, 1))).with_precision(t).is_zero());
    RingElement a = R.pi();
    Poly f = ep_poly_special(a, R.zero(), t);
    Poly expect = ep_poly_lift(a).with_precision(t);
    EXPECT_TRUE((f - expect).is_zero());
    EXPECT_THROW(ep_poly_special(R.one(), mu, t), PreconditionError);
}

TEST(ArtinHasse, SpecialPolynomialMatchesSeries) {
    auto R = make_ring(3, 12);
    RingElement mu = R.lambda(1);
    auto exact = ep_series(mu, mu, 9);
    EXPECT_TRUE((exact[1] - mu).is_zero());
    for (int i = 2; i <= 9; ++i) EXPECT_TRUE(exact[i].is_zero()) << i;
    // a = -mu: (1 + mu T)^{-1}, whose tail starts in degree p with valuation p v(mu)
    RingElement a = -mu;
    auto series = ep_series(a, mu, 9);
    Poly f = ep_poly_special(a, mu, R.max_precision());
    for (int i = 0; i < 3; ++i) EXPECT_TRUE((series[i] - f.coeff(mono_var(0, i))).is_zero());
    for (int i = 3; i <= 9; ++i) EXPECT_EQ(series[i].valuation(), Valuation::exact(3 * i)) << i;
}

TEST(ArtinHasse, DifferentialCharacterization) {
    auto R = make_ring(3, 12);
    const int t = 6;
    RingElement mu = R.pi_pow(2);
    for (const auto& q : enumerate_quotient(R, t)) {
        RingElement a = q.lift();
        RingElement at = a.with_precision(t);
        if (!(at.pow(3) - mu.pow(2).with_precision(t) * at).is_zero()) continue;
        Poly f = ep_poly_special(a, mu, t);
        EXPECT_TRUE(differential_defect(f, a, mu, t).is_zero()) << q.digit_string();
    }
}

TEST(ArtinHasse, WittProducts) {
    auto R = make_ring(3, 12);
    RingElement mu = R.pi_pow(2);
    RingElement a0 = R.pi();
    auto single = ep_witt(WittVector::teichmuller(a0), mu, 9);
    auto direct = ep_series(a0, mu, 9);
    for (int i = 0; i <= 9; ++i) EXPECT_TRUE((single[i] - direct[i]).is_zero());
    auto unit = ep_witt(WittVector::zero(R), mu, 9);
    EXPECT_TRUE((unit[0] - R.one()).is_zero());
    for (int i = 1; i <= 9; ++i) EXPECT_TRUE(unit[i].is_zero());
    RingElement b = R.pi_pow(2);
    auto shifted = ep_witt(verschiebung(WittVector::teichmuller(b)), mu, 9);
    auto inner = ep_series(b, mu.pow(3), 3);
    for (int i = 0; i <= 9; ++i) {
        if (i % 3 == 0)
            EXPECT_TRUE((shifted[i] - inner[i / 3]).is_zero());
        else
            EXPECT_TRUE(shifted[i].is_zero());
    }
}
