#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zp2/dvr.hpp"
#include "zp2/hopf.hpp"
#include "zp2/poly.hpp"

namespace zp2 {

constexpr long kDefaultBudget = 10'000'000;

// cap on brute-force candidates: p^9
long enumeration_cap(int p);
void check_budget(long candidates, int p, long budget, const std::string& what);

// (m, n, a, j) describes E^(pi^m, pi^n; E_p(aS), j)
struct ModelDescriptor {
    RingDescriptor ring;
    int m = 0;
    int n = 0;
    QuotElement a;  // modulo pi^n
    int j = 0;

    RingElement mu() const { return ring.pi_pow(m); }
    RingElement lambda() const { return ring.pi_pow(n); }
    RingElement a_lift() const { return a.lift(); }
    std::string to_string() const;

    friend bool operator==(const ModelDescriptor& x, const ModelDescriptor& y);
    friend bool operator<(const ModelDescriptor& x, const ModelDescriptor& y);
};

ModelDescriptor make_descriptor(RingDescriptor ring, int m, int n, const RingElement& a, int j);
void validate_descriptor(const ModelDescriptor& d);

struct PhiElement {
    QuotElement a;
    int j = 0;

    friend bool operator==(const PhiElement& x, const PhiElement& y) { return x.j == y.j && x.a == y.a; }
    friend bool operator<(const PhiElement& x, const PhiElement& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.j < y.j;
    }
};

// group schemes of section one
HopfPresentation build_mu(RingDescriptor ring, int n);
HopfPresentation build_G(const RingElement& lambda, int n);
HopfPresentation smooth_G(const RingElement& lambda);
// P_{lambda,n}(T) = ((1 + lambda T)^{p^n} - 1) / lambda^{p^n}
Poly p_poly(const RingElement& lambda, int n, int var = 0);
// v(p) >= p^{n-1}(p-1) v(lambda)
bool condition_star(const RingElement& lambda, int n);

HopfMorphism isogeny_psi(const RingElement& lambda, int n);
// x -> 1 + lambda T, from G_{lambda,n} to mu_{p^n}
HopfMorphism alpha_map(const RingElement& lambda, int n);
// T -> pi^k T, from G_{mu pi^k,1} to G_{mu,1}
HopfMorphism neron_blowup(const RingElement& mu, int k = 1);
HopfMorphism neron_blowup_unit(const RingElement& mu);
// T -> ((1 + lambda T)^i - 1) / lambda', i = 0..p^n-1; empty when v(lambda) < v(lambda')
std::vector<HopfMorphism> hom_gln(const RingElement& lambda, const RingElement& lambda_prime, int n);

// homomorphisms G_{mu,1} -> G_m over R/pi^t as degree < p polynomials
std::vector<Poly> hom_closed(const RingElement& mu, int t);
std::vector<Poly> hom_brute(const RingElement& mu, int t, long budget = kDefaultBudget);
// F(S)F(T) = F(S + T + mu S T) and F(0) = 1 in (R/pi^t)[S,T]/(P_mu(S), P_mu(T))
bool is_group_like(const Poly& f, const RingElement& mu, int t);
// canonical representative: coefficients reduced to digits modulo pi^t
Poly canonical_poly(const Poly& f, int t);

// solution group Phi_{pi^m, pi^n}
bool phi_condition(RingDescriptor ring, int m, int n, const QuotElement& a, int j);
std::vector<PhiElement> phi_closed(RingDescriptor ring, int m, int n);
std::vector<PhiElement> phi_brute(RingDescriptor ring, int m, int n, long budget = kDefaultBudget);
std::vector<PhiElement> ker_p2(RingDescriptor ring, int m, int n);
std::vector<PhiElement> ker_p2_brute(RingDescriptor ring, int m, int n, long budget = kDefaultBudget);
enum class PhiCase { a, b, c };
PhiCase phi_case(RingDescriptor ring, int m, int n);
// p_2 : Phi -> Z/pZ is onto exactly when this holds
bool p2_surjective_predicted(RingDescriptor ring, int m, int n);
std::vector<int> p2_image(const std::vector<PhiElement>& phi);
PhiElement phi_add(RingDescriptor ring, int n, const PhiElement& x, const PhiElement& y);

// the finite flat group scheme E^(mu, lambda; F, j) of rank p^2
HopfPresentation build_extension(const ModelDescriptor& d);
// the smooth group E^(mu, lambda; F) for a polynomial F group-like mod lambda
HopfPresentation smooth_extension(const RingElement& mu, const RingElement& lambda, const Poly& f);
// the smooth group E^(mu, lambda; N / (1 + mu S)^e)
HopfPresentation smooth_extension_frac(const RingElement& mu, const RingElement& lambda, const Poly& num, int e);

struct AmbientIsogeny {
    std::shared_ptr<HopfPresentation> source;  // E^(mu, lambda; F)
    std::shared_ptr<HopfPresentation> target;  // E^(mu^p, lambda^p; G)
    HopfMorphism map;
    Poly g_num;  // G = g_num / (1 + mu^p S)^g_den_exp
    int g_den_exp = 0;
    bool morphism = false;
    // both target generators pull back to their counit values on build_extension(d)
    bool kernel_contained = false;
};

AmbientIsogeny ambient_isogeny(const ModelDescriptor& d, bool verify_morphism = true);

ModelDescriptor normal_form_model(const ModelDescriptor& d);
bool is_isomorphic(const ModelDescriptor& d1, const ModelDescriptor& d2);

enum class HomTag { Zero, OrderP, OrderP2 };
std::string to_string(HomTag t);

struct HomClass {
    HomTag tag = HomTag::Zero;
    std::vector<std::pair<int, int>> witnesses;  // (r, s)
    bool invertible = false;                     // some psi_{r,s} is an isomorphism
};

HomClass hom_models(const ModelDescriptor& d1, const ModelDescriptor& d2);
HomClass hom_models_brute(const ModelDescriptor& d1, const ModelDescriptor& d2);
// the same with prebuilt build_extension outputs
HomClass hom_models_brute(const ModelDescriptor& d1, std::shared_ptr<const HopfPresentation> e1,
                          const ModelDescriptor& d2, std::shared_ptr<const HopfPresentation> e2);
// psi_{r,s} : E1 -> E2, or nullopt when a division fails
std::optional<HopfMorphism> psi_rs(const ModelDescriptor& d1, std::shared_ptr<const HopfPresentation> e1,
                                   const ModelDescriptor& d2, std::shared_ptr<const HopfPresentation> e2, int r,
                                   int s,
                                   const MorphismChecker* checker = nullptr);

std::vector<ModelDescriptor> enumerate_models(RingDescriptor ring, int m_max);

struct RadSurvivor {
    Poly f;
    int j = 0;
};

// pairs (F, j), F a homomorphism G_{mu,1} -> G_m over R/pi^n, such that
// F^p (1 + mu S)^{-j} = 1 in (R/pi^{np})[S]/P_mu(S)
std::vector<RadSurvivor> rad_brute(RingDescriptor ring, int m, int n, long budget = kDefaultBudget);
// the same count through p[a] - j[mu] in the image of psi_*
long rad_witt_count(RingDescriptor ring, int m, int n);

}  // namespace zp2
