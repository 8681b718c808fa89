#include <gtest/gtest.h>

#include <set>

#include "zp2/artin_hasse.hpp"
#include "zp2/models.hpp"

using namespace zp2;

namespace {

RingDescriptor R3() { return make_ring(3); }

}  // namespace

TEST(Models, DescriptorValidation) {
    const auto R = R3();
    EXPECT_THROW(make_descriptor(R, 2, 3, R.zero(), 1), ValidationError);
    EXPECT_THROW(make_descriptor(R, 4, 1, R.zero(), 1), ValidationError);
    auto d = make_descriptor(R, 3, 3, eta(R), 4);
    EXPECT_EQ(d.j, 1);
    EXPECT_EQ(d.a.modulus(), 3);
}

TEST(Models, PhiClosedMatchesBruteP3) {
    const auto R = R3();
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= m; ++n) {
            auto closed = phi_closed(R, m, n);
            auto brute = phi_brute(R, m, n);
            EXPECT_EQ(closed, brute) << m << "," << n;
            auto ker = ker_p2(R, m, n);
            EXPECT_EQ(ker, ker_p2_brute(R, m, n)) << m << "," << n;
            auto img = p2_image(brute);
            EXPECT_EQ(img.size() == 3u, p2_surjective_predicted(R, m, n)) << m << "," << n;
            EXPECT_TRUE(img.size() == 3u || img == std::vector<int>{0});
        }
}

TEST(Models, PhiClosedMatchesBruteP5) {
    const auto R = make_ring(5);
    for (auto [m, n] : {std::pair{3, 3}, {3, 2}, {5, 1}}) {
        EXPECT_EQ(phi_closed(R, m, n), phi_brute(R, m, n)) << m << "," << n;
        EXPECT_EQ(ker_p2(R, m, n), ker_p2_brute(R, m, n)) << m << "," << n;
    }
    EXPECT_EQ(ker_p2(R, 3, 3).size(), 5u);
}

TEST(Models, PhiAtLambdaOne) {
    const auto R = R3();
    auto phi = phi_brute(R, 3, 3);
    ASSERT_EQ(phi.size(), 3u);
    for (int k = 0; k < 3; ++k) {
        PhiElement x{reduce_mod(eta(R).scaled(k), 3), k};
        EXPECT_NE(std::find(phi.begin(), phi.end(), x), phi.end()) << k;
    }
    for (int n = 0; n <= 3; ++n) {
        auto cell = phi_brute(R, 3, n);
        EXPECT_EQ(cell.size(), 3u) << n;
        std::set<int> js;
        for (const auto& x : cell) js.insert(x.j);
        EXPECT_EQ(js.size(), 3u) << n;
    }
}

TEST(Models, PhiIsAGroup) {
    const auto R = R3();
    for (auto [m, n] : {std::pair{3, 3}, {2, 1}, {3, 1}}) {
        auto phi = phi_brute(R, m, n);
        std::set<PhiElement> s(phi.begin(), phi.end());
        for (const auto& x : phi)
            for (const auto& y : phi) EXPECT_TRUE(s.count(phi_add(R, n, x, y)));
    }
}

TEST(Models, SurjectivitySpotValues) {
    const auto R = R3();
    EXPECT_EQ(p2_image(phi_brute(R, 2, 0)).size(), 3u);
    EXPECT_EQ(p2_image(phi_brute(R, 2, 1)), std::vector<int>{0});
    EXPECT_EQ(p2_image(phi_brute(R, 3, 1)).size(), 3u);
}

TEST(Models, HomOracle) {
    const auto R = R3();
    struct Cell {
        int vm, t;
        std::size_t count;
    };
    for (auto c : {Cell{3, 1, 1}, Cell{3, 3, 9}, Cell{2, 2, 3}, Cell{1, 1, 1}, Cell{0, 1, 3}, Cell{0, 2, 3}}) {
        auto closed = hom_closed(R.pi_pow(c.vm), c.t);
        auto brute = hom_brute(R.pi_pow(c.vm), c.t);
        ASSERT_EQ(closed.size(), brute.size()) << c.vm << "," << c.t;
        for (std::size_t i = 0; i < closed.size(); ++i)
            EXPECT_TRUE((closed[i] - brute[i]).is_zero()) << c.vm << "," << c.t;
        EXPECT_EQ(brute.size(), c.count) << c.vm << "," << c.t;
    }
}

TEST(Models, HomBudget) {
    const auto R = R3();
    EXPECT_THROW(hom_brute(R.pi_pow(3), 4), BudgetError);
    EXPECT_THROW(hom_brute(R.pi_pow(3), 2, 10), BudgetError);
}

TEST(Models, EnumerateModels) {
    const auto R = R3();
    auto models = enumerate_models(R, 3);
    ASSERT_EQ(models.size(), 7u);
    for (const auto& d : models) {
        EXPECT_EQ(d.j, 1);
        EXPECT_TRUE(phi_condition(R, d.m, d.n, d.a, d.j)) << d.to_string();
    }
    for (std::size_t i = 0; i < models.size(); ++i)
        for (std::size_t k = 0; k < models.size(); ++k)
            EXPECT_EQ(is_isomorphic(models[i], models[k]), i == k) << models[i].to_string() << " " << models[k].to_string();
}

TEST(Models, ExtensionsAreHopfAlgebras) {
    const auto R = R3();
    for (const auto& d : enumerate_models(R, 3)) {
        HopfPresentation H = build_extension(d);
        HopfReport rep = check_hopf_axioms(H);
        for (const auto& f : rep.failures) ADD_FAILURE() << d.to_string() << ": " << f;
        EXPECT_TRUE(rep.ok()) << d.to_string();
        EXPECT_EQ(rep.rank, 9) << d.to_string();
    }
}

TEST(Models, ExtensionRejectsPointsOutsidePhi) {
    const auto R = R3();
    EXPECT_THROW(build_extension(make_descriptor(R, 3, 3, R.zero(), 1)), DivisibilityError);
    EXPECT_THROW(build_extension(make_descriptor(R, 2, 1, R.zero(), 1)), DivisibilityError);
}

TEST(Models, NonTrivialJZeroExtension) {
    const auto R = R3();
    for (const auto& x : phi_brute(R, 2, 2)) {
        auto d = make_descriptor(R, 2, 2, x.a.lift(), x.j);
        EXPECT_TRUE(check_hopf_axioms(build_extension(d)).ok()) << d.to_string();
    }
}

TEST(Models, NormalForm) {
    const auto R = R3();
    auto d = make_descriptor(R, 3, 3, eta(R).scaled(2), 2);
    auto nf = normal_form_model(d);
    EXPECT_EQ(nf.j, 1);
    EXPECT_TRUE(is_isomorphic(d, nf));
    EXPECT_EQ(nf, make_descriptor(R, 3, 3, eta(R), 1));
    EXPECT_THROW(normal_form_model(make_descriptor(R, 3, 3, R.zero(), 0)), ValidationError);
}

TEST(Models, HomClassification) {
    const auto R = R3();
    auto models = enumerate_models(R, 3);
    for (const auto& d1 : models)
        for (const auto& d2 : models) {
            HomClass closed = hom_models(d1, d2);
            HomClass brute = hom_models_brute(d1, d2);
            EXPECT_EQ(closed.tag, brute.tag) << d1.to_string() << " -> " << d2.to_string();
            EXPECT_EQ(closed.witnesses, brute.witnesses) << d1.to_string() << " -> " << d2.to_string();
            EXPECT_EQ(closed.invertible, brute.invertible) << d1.to_string() << " -> " << d2.to_string();
        }
}

TEST(Models, AmbientIsogeny) {
    const auto R = R3();
    for (const auto& d : enumerate_models(R, 3)) {
        AmbientIsogeny iso = ambient_isogeny(d);
        EXPECT_TRUE(iso.morphism) << d.to_string();
        EXPECT_TRUE(iso.kernel_contained) << d.to_string();
        EXPECT_TRUE(check_hopf_axioms(*iso.source).ok()) << d.to_string();
        EXPECT_TRUE(check_hopf_axioms(*iso.target).ok()) << d.to_string();
    }
}

TEST(Models, RadBrute) {
    const auto R = R3();
    auto s = rad_brute(R, 1, 2);
    EXPECT_FALSE(s.empty());
    for (const auto& x : s) EXPECT_EQ(x.j, 0);
    EXPECT_EQ(static_cast<long>(s.size()), rad_witt_count(R, 1, 2));
}

TEST(Models, MorphismCheckerRejectsPerturbedImages) {
    const auto R = R3();
    auto d = make_descriptor(R, 3, 3, eta(R), 1);
    auto e = std::make_shared<const HopfPresentation>(build_extension(d));
    const MorphismChecker checker(e, e);
    auto f = psi_rs(d, e, d, e, 1, 1, &checker);
    ASSERT_TRUE(f);
    EXPECT_TRUE(check_morphism(*f));
    for (int i = 0; i < 2; ++i) {
        auto images = f->images;
        images[i].num += Poly::monomial(R.one(), mono_var(0, 1) | mono_var(1, 1));
        EXPECT_FALSE(checker.check(images).comult) << i;
        HopfMorphism g{e, e, images};
        EXPECT_FALSE(check_morphism(g)) << i;
    }
}
