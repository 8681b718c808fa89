#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "zp2/fiber.hpp"

using namespace zp2;

TEST(Fiber, CanonicalModel) {
    const auto R = make_ring(3);
    auto d = make_descriptor(R, 3, 3, eta(R), 1);
    FiberClass c = classify_fiber(d);
    EXPECT_EQ(c.tag, FiberTag::ZpByZp);
    EXPECT_EQ(c.a, 0);
    EXPECT_EQ(c.b, 1);
    EXPECT_TRUE(verify_fiber(d));
    EXPECT_EQ(eta_ratio_residue(R), 1);
}

TEST(Fiber, EtaRatioAndWilson) {
    EXPECT_EQ(eta_ratio_residue(make_ring(5)), 1);
    for (int p : {3, 5, 7}) EXPECT_TRUE(wilson_holds(p));
    EXPECT_THROW(wilson_holds(9), ValidationError);
}

TEST(Fiber, Dispatch) {
    const auto R = make_ring(3);
    EXPECT_EQ(classify_fiber(make_descriptor(R, 0, 0, R.zero(), 2)), (FiberClass{FiberTag::MuPExtension, 2}));
    EXPECT_EQ(classify_fiber(make_descriptor(R, 2, 0, R.zero(), 1)).tag, FiberTag::TrivialExtension);
    EXPECT_EQ(classify_fiber(make_descriptor(R, 3, 1, R.zero(), 1)).tag, FiberTag::TrivialExtension);
    EXPECT_EQ(classify_fiber(make_descriptor(R, 2, 2, R.zero(), 0)).tag, FiberTag::AlphaPExtension);
}

TEST(Fiber, SweepEnumeratedModels) {
    const auto R = make_ring(3);
    for (const auto& d : enumerate_models(R, 3)) {
        FiberReport rep = verify_fiber_report(d);
        EXPECT_TRUE(rep.ok) << d.to_string() << ": " << rep.mismatch;
    }
}

TEST(Fiber, SweepPhiCells) {
    for (int p : {3, 5}) {
        const auto R = make_ring(p);
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= m; ++n)
                for (const auto& x : phi_brute(R, m, n)) {
                    auto d = make_descriptor(R, m, n, x.a.lift(), x.j);
                    EXPECT_TRUE(verify_fiber(d)) << p << " " << d.to_string();
                }
    }
}

TEST(Fiber, P5KernelElementIsTrivialAlphaData) {
    const auto R = make_ring(5);
    auto d = make_descriptor(R, 3, 3, R.pi_pow(2), 0);
    ASSERT_TRUE(phi_condition(R, 3, 3, d.a, 0));
    FiberClass c = classify_fiber(d);
    EXPECT_EQ(c.tag, FiberTag::AlphaPExtension);
    EXPECT_EQ(c.beta, 0);
    EXPECT_EQ(c.gamma, 0);
    EXPECT_TRUE(verify_fiber(d));
}

TEST(Fiber, WrongClaimsAreRejected) {
    const auto R = make_ring(3);
    auto can = make_descriptor(R, 3, 3, eta(R), 1);
    FiberReport r1 = verify_fiber_against(can, {FiberTag::ZpByZp, 0, 0, 0, 0, 2});
    EXPECT_FALSE(r1.ok);
    EXPECT_FALSE(r1.mismatch.empty());
    FiberReport r2 = verify_fiber_against(make_descriptor(R, 2, 2, R.zero(), 0), {FiberTag::AlphaPExtension, 0, 1, 0});
    EXPECT_FALSE(r2.ok);
    EXPECT_NE(r2.mismatch.find("relation"), std::string::npos) << r2.mismatch;
    EXPECT_FALSE(verify_fiber_against(make_descriptor(R, 0, 0, R.zero(), 1), {FiberTag::MuPExtension, 2}).ok);
    EXPECT_FALSE(verify_fiber_against(make_descriptor(R, 3, 2, R.pi(), 1), {FiberTag::ZpByZp, 0, 0, 0, 0, 1}).ok);
}

TEST(Fiber, AlphaParametersIgnoreTheLift) {
    const auto R = make_ring(5);
    std::mt19937_64 rng(5);
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= m; ++n)
            for (const auto& x : phi_brute(R, m, n)) {
                auto d = make_descriptor(R, m, n, x.a.lift(), x.j);
                auto base = alpha_parameters(d, d.a_lift());
                for (int k = 0; k < 5; ++k) {
                    RingElement lift = d.a_lift() + d.lambda() * sample::random_element(R, rng);
                    EXPECT_EQ(alpha_parameters(d, lift), base) << d.to_string();
                }
            }
}

TEST(Fiber, ClaimedPresentationsAreHopf) {
    const auto R = make_ring(3);
    auto check = [&](const ModelDescriptor& d, const FiberClass& c) {
        HopfReport rep = check_hopf_axioms(fiber_presentation(d, c));
        for (const auto& f : rep.failures) ADD_FAILURE() << c.to_string() << ": " << f;
    };
    for (int i = 0; i < 3; ++i) check(make_descriptor(R, 0, 0, R.zero(), i), {FiberTag::MuPExtension, i});
    check(make_descriptor(R, 1, 0, R.zero(), 1), {FiberTag::TrivialExtension});
    check(make_descriptor(R, 3, 0, R.zero(), 1), {FiberTag::TrivialExtension});
    check(make_descriptor(R, 3, 1, R.zero(), 1), {FiberTag::TrivialExtension});
    for (int b = 0; b < 3; ++b)
        for (int g = 0; g < 3; ++g) check(make_descriptor(R, 2, 2, R.zero(), 0), {FiberTag::AlphaPExtension, 0, b, g});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) check(make_descriptor(R, 3, 3, eta(R), 1), {FiberTag::ZpByZp, 0, 0, 0, a, b});
}

TEST(Fiber, CocycleC1) {
    const auto R = make_ring(3);
    Poly c = cocycle_c1(R, 0, 1);
    Poly x = Poly::variable(R, 0), y = Poly::variable(R, 1);
    Poly lhs = Poly::constant(R.p_elem()) * c;
    EXPECT_TRUE((lhs - (x.pow(3) + y.pow(3) - (x + y).pow(3))).is_zero());
}
