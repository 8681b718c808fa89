#include "zp2/models.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "zp2/artin_hasse.hpp"
#include "zp2/witt.hpp"

namespace zp2 {

namespace {

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int valuation_of(const RingElement& x, const char* what) {
    Valuation v = x.valuation();
    if (!v.determinate) throw ValidationError(std::string(what) + " has indeterminate valuation");
    return v.value;
}

Poly var(RingDescriptor R, int i) { return Poly::variable(R, i); }
Poly one(RingDescriptor R) { return Poly::constant(R.one()); }
Poly lin(const RingElement& c, int i) { return one(c.ring()) + Poly::monomial(c, mono_var(i, 1)); }

int inv_mod_p(int j, int p) {
    j = ((j % p) + p) % p;
    if (j == 0) throw ValidationError("j must be invertible mod p");
    return static_cast<int>(inverse_mod(j, p));
}

std::vector<std::vector<int>> poly_key(const Poly& f, int t, int len) {
    std::vector<std::vector<int>> key;
    for (int i = 0; i < len; ++i) key.push_back(reduce_mod(f.coeff(mono_var(0, i)), t).digits());
    return key;
}

// quotient and remainder of f by the monic univariate g (both in variable 0)
std::pair<Poly, Poly> divmod_monic(const Poly& f, const Poly& g) {
    auto gc = g.univariate_coeffs(0);
    const int dg = static_cast<int>(gc.size()) - 1;
    auto fc = f.univariate_coeffs(0);
    const RingDescriptor R = f.ring();
    std::vector<RingElement> q(std::max<int>(0, static_cast<int>(fc.size()) - dg), R.zero());
    for (int i = static_cast<int>(fc.size()) - 1; i >= dg; --i) {
        RingElement c = fc[i];
        q[i - dg] = c;
        for (int k = 0; k <= dg; ++k) fc[i - dg + k] -= c * gc[k];
    }
    Poly quo(R), rem(R);
    for (std::size_t i = 0; i < q.size(); ++i) quo.add_term(mono_var(0, static_cast<int>(i)), q[i]);
    for (int i = 0; i < std::min<int>(dg, static_cast<int>(fc.size())); ++i) rem.add_term(mono_var(0, i), fc[i]);
    return {quo, rem};
}

// odometer over base^size; false after the last index
bool next_index(std::vector<std::size_t>& idx, std::size_t base) {
    int i = static_cast<int>(idx.size()) - 1;
    while (i >= 0 && idx[i] + 1 == base) idx[i--] = 0;
    if (i < 0) return false;
    ++idx[i];
    return true;
}

}  // namespace

long enumeration_cap(int p) { return ipow(p, 9); }

void check_budget(long candidates, int p, long budget, const std::string& what) {
    if (candidates > enumeration_cap(p) || candidates > budget)
        throw BudgetError(what + ": " + std::to_string(candidates) + " candidates exceed the budget");
}

std::string ModelDescriptor::to_string() const {
    std::ostringstream os;
    os << "(m=" << m << ", n=" << n << ", a=[" << a.digit_string() << "], j=" << j << ")";
    return os.str();
}

bool operator==(const ModelDescriptor& x, const ModelDescriptor& y) {
    return x.ring == y.ring && x.m == y.m && x.n == y.n && x.a == y.a && x.j == y.j;
}

bool operator<(const ModelDescriptor& x, const ModelDescriptor& y) {
    if (x.m != y.m) return x.m < y.m;
    if (x.n != y.n) return x.n < y.n;
    if (x.a != y.a) return x.a < y.a;
    return x.j < y.j;
}

ModelDescriptor make_descriptor(RingDescriptor ring, int m, int n, const RingElement& a, int j) {
    ModelDescriptor d;
    d.ring = ring;
    d.m = m;
    d.n = n;
    d.a = reduce_mod(a, n);
    d.j = ((j % ring.p()) + ring.p()) % ring.p();
    validate_descriptor(d);
    return d;
}

void validate_descriptor(const ModelDescriptor& d) {
    if (!d.ring.valid()) throw ValidationError("descriptor has no ring");
    const int p = d.ring.p();
    if (d.ring.flavor() != Flavor::cyclotomic_p2) throw ValidationError("models need the cyclotomic ring");
    if (!(p >= d.m && d.m >= d.n && d.n >= 0))
        throw ValidationError("need v(lambda_(1)) = " + std::to_string(p) + " >= m >= n >= 0");
    if (d.a.modulus() != d.n) throw ValidationError("a must live in R/pi^n");
    if (d.j < 0 || d.j >= p) throw ValidationError("j must be in [0, p)");
}

bool condition_star(const RingElement& lambda, int n) {
    const RingDescriptor R = lambda.ring();
    const int p = R.p();
    return R.e() >= ipow(p, n - 1) * (p - 1) * valuation_of(lambda, "lambda");
}

Poly p_poly(const RingElement& lambda, int n, int v) {
    const RingDescriptor R = lambda.ring();
    const long q = ipow(R.p(), n);
    Poly f = lin(lambda, v).pow(static_cast<unsigned>(q)) - one(R);
    return f.divide_exact(lambda.pow(q));
}

HopfPresentation build_mu(RingDescriptor R, int n) {
    if (n < 1) throw ValidationError("mu_{p^n} needs n >= 1");
    const long q = ipow(R.p(), n);
    HopfPresentation H;
    H.ring = R;
    H.name = "mu_" + std::to_string(q);
    H.generators = {"X"};
    H.relations = {var(R, 0).pow(static_cast<unsigned>(q)) - one(R)};
    H.comult = {Frac(var(R, 0) * var(R, 1))};
    H.counit = {R.one()};
    H.antipode = {Frac(var(R, 0).pow(static_cast<unsigned>(q - 1)))};
    H.units = {{var(R, 0), var(R, 0).pow(static_cast<unsigned>(q - 1))}};
    return H;
}

HopfPresentation build_G(const RingElement& lambda, int n) {
    const RingDescriptor R = lambda.ring();
    if (n < 1 || n > 2) throw ValidationError("G_{lambda,n} is built for n = 1, 2");
    if (!condition_star(lambda, n)) throw PreconditionError("v(p) >= p^{n-1}(p-1)v(lambda) fails");
    const long q = ipow(R.p(), n);
    HopfPresentation H;
    H.ring = R;
    H.name = "G_{pi^" + std::to_string(valuation_of(lambda, "lambda")) + "," + std::to_string(n) + "}";
    H.generators = {"T"};
    H.relations = {p_poly(lambda, n)};
    H.comult = {Frac(var(R, 0) + var(R, 1) + lambda * var(R, 0) * var(R, 1))};
    H.counit = {R.zero()};
    Poly inv = lin(lambda, 0).pow(static_cast<unsigned>(q - 1));
    H.antipode = {Frac((inv - one(R)).divide_exact(lambda))};
    H.units = {{lin(lambda, 0), inv}};
    return H;
}

HopfPresentation smooth_G(const RingElement& lambda) {
    const RingDescriptor R = lambda.ring();
    HopfPresentation H;
    H.ring = R;
    H.name = "G^(pi^" + std::to_string(valuation_of(lambda, "lambda")) + ")";
    H.generators = {"T"};
    H.finite = false;
    H.comult = {Frac(var(R, 0) + var(R, 1) + lambda * var(R, 0) * var(R, 1))};
    H.counit = {R.zero()};
    H.antipode = {Frac(-var(R, 0), lin(lambda, 0))};
    return H;
}

HopfMorphism isogeny_psi(const RingElement& lambda, int n) {
    if (!condition_star(lambda, n)) throw PreconditionError("v(p) >= p^{n-1}(p-1)v(lambda) fails");
    HopfMorphism f;
    f.source = std::make_shared<HopfPresentation>(smooth_G(lambda));
    f.target = std::make_shared<HopfPresentation>(smooth_G(lambda.pow(ipow(lambda.ring().p(), n))));
    f.images = {Frac(p_poly(lambda, n))};
    return f;
}

HopfMorphism alpha_map(const RingElement& lambda, int n) {
    HopfMorphism f;
    f.source = std::make_shared<HopfPresentation>(build_G(lambda, n));
    f.target = std::make_shared<HopfPresentation>(build_mu(lambda.ring(), n));
    f.images = {Frac(lin(lambda, 0))};
    return f;
}

HopfMorphism neron_blowup(const RingElement& mu, int k) {
    const RingDescriptor R = mu.ring();
    const int p = R.p();
    if (k < 1) throw ValidationError("blow-up depth must be positive");
    if ((p - 1) * (valuation_of(mu, "mu") + k) > R.e())
        throw PreconditionError("v(p) > (p-1)v(mu) fails for the blown-up group");
    HopfMorphism f;
    f.source = std::make_shared<HopfPresentation>(build_G(mu * R.pi_pow(k), 1));
    f.target = std::make_shared<HopfPresentation>(build_G(mu, 1));
    f.images = {Frac(R.pi_pow(k) * var(R, 0))};
    return f;
}

HopfMorphism neron_blowup_unit(const RingElement& mu) { return neron_blowup(mu, 1); }

std::vector<HopfMorphism> hom_gln(const RingElement& lambda, const RingElement& lambda_prime, int n) {
    std::vector<HopfMorphism> out;
    auto src = std::make_shared<HopfPresentation>(build_G(lambda, n));
    auto tgt = std::make_shared<HopfPresentation>(build_G(lambda_prime, n));
    if (valuation_of(lambda, "lambda") < valuation_of(lambda_prime, "lambda'")) return out;
    const RingDescriptor R = lambda.ring();
    const long q = ipow(R.p(), n);
    for (long i = 0; i < q; ++i) {
        HopfMorphism f;
        f.source = src;
        f.target = tgt;
        Poly num = lin(lambda, 0).pow(static_cast<unsigned>(i)) - one(R);
        f.images = {Frac(num.divide_exact(lambda_prime))};
        if (!check_morphism(f)) throw CertificationError("hom_gln produced a non-morphism at i = " + std::to_string(i));
        out.push_back(f);
    }
    return out;
}

Poly canonical_poly(const Poly& f, int t) {
    Poly out(f.ring());
    for (const auto& [m, c] : f.terms()) out.add_term(m, reduce_mod(c, t).element());
    return out.with_precision(t);
}

namespace {

// Delta(S^k) for k < p in (R/pi^t)[S,T]/(P_mu(S), P_mu(T)), as coefficient tables
class GroupLikeTester {
public:
    GroupLikeTester(const RingElement& mu, int t) : R_(mu.ring()), p_(R_.p()), t_(t) {
        Poly P = p_poly(mu, 1).with_precision(t);
        rels_ = {MonicRelation::from_poly(P, 0), MonicRelation::from_poly(P.shift(1), 1)};
        Poly delta = (var(R_, 0) + var(R_, 1) + mu * var(R_, 0) * var(R_, 1)).with_precision(t);
        Poly pw = one(R_).with_precision(t);
        for (int k = 0; k < p_; ++k) {
            table_.push_back(reduce(pw, rels_));
            pw = reduce(pw * delta, rels_);
        }
    }

    bool test(const std::vector<RingElement>& c) const {
        if (!(c[0] - R_.one()).with_precision(t_).is_zero()) return false;
        for (int a = 0; a < p_; ++a)
            for (int b = 0; b < p_; ++b) {
                RingElement s = c[a] * c[b];
                Mono m = mono_var(0, a) | mono_var(1, b);
                for (int k = 0; k < p_; ++k) s -= c[k] * table_[k].coeff(m);
                if (!s.with_precision(t_).is_zero()) return false;
            }
        return true;
    }

private:
    RingDescriptor R_;
    int p_;
    int t_;
    std::vector<MonicRelation> rels_;
    std::vector<Poly> table_;
};

std::vector<RingElement> coeff_vector(const Poly& f, int p) {
    std::vector<RingElement> c;
    for (int i = 0; i < p; ++i) c.push_back(f.coeff(mono_var(0, i)));
    return c;
}

void sort_polys(std::vector<Poly>& v, int t, int p) {
    std::sort(v.begin(), v.end(), [&](const Poly& x, const Poly& y) { return poly_key(x, t, p) < poly_key(y, t, p); });
}

}  // namespace

bool is_group_like(const Poly& f, const RingElement& mu, int t) {
    return GroupLikeTester(mu, t).test(coeff_vector(f, mu.ring().p()));
}

std::vector<Poly> hom_closed(const RingElement& mu, int t) {
    const RingDescriptor R = mu.ring();
    const int p = R.p();
    const int vm = valuation_of(mu, "mu");
    std::vector<Poly> out;
    if (vm == 0) {
        Poly P = p_poly(mu, 1);
        auto rel = MonicRelation::from_poly(P, 0);
        for (int i = 0; i < p; ++i)
            out.push_back(canonical_poly(reduce(lin(mu, 0).pow(static_cast<unsigned>(i)), {rel}), t));
    } else {
        if ((p - 1) * vm > R.e()) throw PreconditionError("v(p) >= (p-1)v(mu) fails");
        RingElement mp = mu.pow(p - 1).with_precision(t);
        for_each_quotient(R, t, [&](const QuotElement& q) {
            RingElement a = q.element();
            if (!(a.pow(p) - mp * a).is_zero()) return;
            out.push_back(canonical_poly(ep_poly_special(q.lift(), mu, t), t));
        });
    }
    sort_polys(out, t, p);
    return out;
}

std::vector<Poly> hom_brute(const RingElement& mu, int t, long budget) {
    const RingDescriptor R = mu.ring();
    const int p = R.p();
    check_budget(ipow(p, t * p), p, budget, "hom_brute");
    GroupLikeTester tester(mu, t);
    auto elems = enumerate_quotient(R, t);
    std::vector<Poly> out;
    std::vector<std::size_t> idx(p, 0);
    std::vector<RingElement> c(p);
    do {
        for (int i = 0; i < p; ++i) c[i] = elems[idx[i]].element();
        if (tester.test(c)) out.push_back(canonical_poly(Poly::univariate(c), t));
    } while (next_index(idx, elems.size()));
    sort_polys(out, t, p);
    return out;
}

bool phi_condition(RingDescriptor R, int m, int n, const QuotElement& a, int j) {
    const int p = R.p();
    if (n == 0) return true;
    RingElement at = a.lift();
    if (!at.pow(p).with_precision(n).is_zero()) return false;
    RingElement mu = R.pi_pow(m);
    RingElement c = divide_exact(R.p_elem(), mu.pow(p - 1));
    RingElement lhs = R.p_elem() * at - mu.scaled(j) - c * at.pow(p);
    return lhs.with_precision(n * p).is_zero();
}

std::vector<PhiElement> phi_brute(RingDescriptor R, int m, int n, long budget) {
    const int p = R.p();
    check_budget(ipow(p, n + 1), p, budget, "phi_brute");
    std::vector<PhiElement> out;
    for_each_quotient(R, n, [&](const QuotElement& q) {
        for (int j = 0; j < p; ++j)
            if (phi_condition(R, m, n, q, j)) out.push_back({q, j});
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PhiElement> ker_p2(RingDescriptor R, int m, int n) {
    const int p = R.p();
    const long bound = std::max<long>(static_cast<long>(p) * n + (p - 1) * m - R.e(), n);
    std::vector<PhiElement> out;
    for_each_quotient(R, n, [&](const QuotElement& q) {
        if (q.is_zero() || static_cast<long>(p) * q.valuation() >= bound) out.push_back({q, 0});
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PhiElement> ker_p2_brute(RingDescriptor R, int m, int n, long budget) {
    std::vector<PhiElement> out;
    for (const auto& x : phi_brute(R, m, n, budget))
        if (x.j == 0) out.push_back(x);
    return out;
}

PhiCase phi_case(RingDescriptor R, int m, int n) {
    const int p = R.p();
    if (m < p * n && p * m - n >= R.e()) return PhiCase::a;
    if (m >= p * n) return PhiCase::b;
    return PhiCase::c;
}

bool p2_surjective_predicted(RingDescriptor R, int m, int n) { return phi_case(R, m, n) != PhiCase::c; }

std::vector<PhiElement> phi_closed(RingDescriptor R, int m, int n) {
    const int p = R.p();
    auto ker = ker_p2(R, m, n);
    std::vector<PhiElement> out;
    switch (phi_case(R, m, n)) {
    case PhiCase::a: {
        RingElement base = divide_exact(eta(R) * R.pi_pow(m), R.lambda(1));
        for (int j = 0; j < p; ++j)
            for (const auto& k : ker) out.push_back({reduce_mod(base.scaled(j) + k.a.lift(), n), j});
        break;
    }
    case PhiCase::b:
        for (int j = 0; j < p; ++j)
            for (const auto& k : ker) out.push_back({k.a, j});
        break;
    case PhiCase::c:
        out = ker;
        break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> p2_image(const std::vector<PhiElement>& phi) {
    std::set<int> js;
    for (const auto& x : phi) js.insert(x.j);
    return {js.begin(), js.end()};
}

PhiElement phi_add(RingDescriptor R, int n, const PhiElement& x, const PhiElement& y) {
    return {reduce_mod(x.a.lift() + y.a.lift(), n), (x.j + y.j) % R.p()};
}

namespace {

// F(S1 + S1' + mu S1 S1') with S1 at var 0 and S1' at var 2
Poly f_of_delta(const Poly& f, const RingElement& mu, int right) {
    const RingDescriptor R = mu.ring();
    Poly delta = var(R, 0) + var(R, right) + mu * var(R, 0) * var(R, right);
    return substitute(f, {delta});
}

}  // namespace

HopfPresentation build_extension(const ModelDescriptor& d) {
    validate_descriptor(d);
    const RingDescriptor R = d.ring;
    const int p = R.p();
    const RingElement mu = d.mu(), lambda = d.lambda();
    Poly F = ep_poly_lift(d.a_lift(), 0);
    Poly S1 = var(R, 0), S2 = var(R, 1);
    Poly u = lin(mu, 0);
    Poly W = F + lambda * S2;

    HopfPresentation H;
    H.ring = R;
    H.name = "E" + d.to_string();
    H.generators = {"S1", "S2"};
    Poly rel1 = p_poly(mu, 1, 0);
    auto r1 = MonicRelation::from_poly(rel1, 0);
    Poly num2 = reduce(W.pow(p) - u.pow(d.j), {r1});
    Poly rel2;
    try {
        rel2 = num2.divide_exact(lambda.pow(p));
    } catch (const DivisibilityError& e) {
        throw DivisibilityError("second relation is not divisible by lambda^p; (a, j) is not in Phi");
    }
    H.relations = {rel1, rel2};
    auto rels1 = tensor_relations(H, 1);
    auto rels2 = tensor_relations(H, 2);

    // copy two: S1' = var 2, S2' = var 3
    Poly cocycle = reduce(F * F.shift(2) - f_of_delta(F, mu, 2), rels2);
    Poly cocycle_div;
    try {
        cocycle_div = cocycle.divide_exact(lambda);
    } catch (const DivisibilityError&) {
        throw DivisibilityError("cocycle is not divisible by lambda; F is not group-like mod lambda");
    }
    Poly d1 = S1 + var(R, 2) + mu * S1 * var(R, 2);
    Poly d2 = S2 * F.shift(2) + F * var(R, 3) + lambda * S2 * var(R, 3) + cocycle_div;
    H.comult = {Frac(reduce(d1, rels2)), Frac(reduce(d2, rels2))};
    H.counit = {R.zero(), R.zero()};

    Poly sigma1 = reduce(-(S1 * u.pow(p - 1)), rels1);
    Poly winv = reduce(W.pow(p - 1) * u.pow(p - d.j), rels1);
    Poly num_sigma2 = reduce(winv - substitute(F, {sigma1}), rels1);
    Poly sigma2;
    try {
        sigma2 = num_sigma2.divide_exact(lambda);
    } catch (const DivisibilityError&) {
        throw DivisibilityError("antipode of S2 is not divisible by lambda");
    }
    H.antipode = {Frac(sigma1), Frac(sigma2)};
    H.units = {{u, reduce(u.pow(p - 1), rels1)}, {W, winv}};
    return H;
}

HopfPresentation smooth_extension(const RingElement& mu, const RingElement& lambda, const Poly& f) {
    const RingDescriptor R = mu.ring();
    Poly S1 = var(R, 0), S2 = var(R, 1);
    Poly u = lin(mu, 0);
    Poly W = f + lambda * S2;
    HopfPresentation H;
    H.ring = R;
    H.name = "E^(smooth)";
    H.generators = {"S1", "S2"};
    H.finite = false;
    Poly cocycle = f * f.shift(2) - f_of_delta(f, mu, 2);
    Poly d2 = S2 * f.shift(2) + f * var(R, 3) + lambda * S2 * var(R, 3) + cocycle.divide_exact(lambda);
    H.comult = {Frac(S1 + var(R, 2) + mu * S1 * var(R, 2)), Frac(d2)};
    H.counit = {R.zero(), (R.one() - f.constant_term()).with_precision(R.max_precision())};
    if (!H.counit[1].is_zero()) H.counit[1] = divide_exact(H.counit[1], lambda);
    // sigma(S1) = -S1/u; f(sigma S1) = g / u^deg f
    const int df = f.degree(0);
    Poly g(R);
    for (const auto& [m, c] : f.terms()) {
        int i = mono_exp(m, 0);
        Poly t = Poly::constant(c) * (-S1).pow(static_cast<unsigned>(i)) * u.pow(static_cast<unsigned>(df - i));
        g += t;
    }
    Poly ud = u.pow(static_cast<unsigned>(df));
    Poly num = (ud - W * g).divide_exact(lambda);
    H.antipode = {Frac(-S1, u), Frac(num, W * ud)};
    return H;
}

HopfPresentation smooth_extension_frac(const RingElement& mu, const RingElement& lambda, const Poly& N, int e) {
    const RingDescriptor R = mu.ring();
    Poly S1 = var(R, 0), S2 = var(R, 1);
    Poly u = lin(mu, 0);
    Poly D = u.pow(static_cast<unsigned>(e));
    Poly DL = D, DR = D.shift(2), NL = N, NR = N.shift(2);
    HopfPresentation H;
    H.ring = R;
    H.name = "E^(smooth, rational)";
    H.generators = {"S1", "S2"};
    H.finite = false;
    // (W (x) W - G(Delta S1)) / lambda with W = (N + lambda S2 D) / D and D(Delta S1) = D (x) D
    Poly WL = NL + lambda * S2 * DL;
    Poly WR = NR + lambda * var(R, 3) * DR;
    Poly num = (WL * WR - f_of_delta(N, mu, 2)).divide_exact(lambda);
    H.comult = {Frac(S1 + var(R, 2) + mu * S1 * var(R, 2)), Frac(num, DL * DR)};
    H.counit = {R.zero(), R.zero()};
    const int k = N.degree(0);
    Poly g(R);
    for (const auto& [m, c] : N.terms()) {
        int i = mono_exp(m, 0);
        g += Poly::constant(c) * (-S1).pow(static_cast<unsigned>(i)) * u.pow(static_cast<unsigned>(k - i));
    }
    Poly uk = u.pow(static_cast<unsigned>(k));
    Poly W = N + lambda * S2 * D;
    Poly anum = (D * (uk - g * W)).divide_exact(lambda);
    H.antipode = {Frac(-S1, u), Frac(anum, W * uk)};
    return H;
}

AmbientIsogeny ambient_isogeny(const ModelDescriptor& d, bool verify_morphism) {
    validate_descriptor(d);
    const RingDescriptor R = d.ring;
    const int p = R.p();
    const RingElement mu = d.mu(), lambda = d.lambda();
    const int np = d.n * p;
    Poly F = ep_poly_lift(d.a_lift(), 0);
    Poly u = lin(mu, 0);
    Poly P = p_poly(mu, 1, 0);

    AmbientIsogeny out;
    bool found = false;
    Poly N(R);
    int dexp = 0;
    const int dmin = (d.j + p - 1) / p;
    for (dexp = dmin; dexp <= p && !found; ++dexp) {
        Poly L = F.pow(p) * u.pow(static_cast<unsigned>(p * dexp - d.j));
        N = one(R);
        bool ok = true;
        for (int k = 0; !L.is_zero(); ++k) {
            auto [q, r] = divmod_monic(L, P);
            RingElement c = r.constant_term();
            Poly rest = r - Poly::constant(c);
            if (k == 0) rest += Poly::constant(c - R.one());
            for (const auto& [m, x] : rest.terms())
                if (!x.with_precision(np).is_zero()) ok = false;
            if (!ok) break;
            if (k > 0 && !c.with_precision(np).is_zero())
                N.add_term(mono_var(0, k), reduce_mod(c, np).lift());
            L = q;
        }
        if (ok) {
            found = true;
            break;
        }
    }
    if (!found) throw LinearSolveError("no G with F^p (1 + mu S)^{-j} = G(P(S)) mod lambda^p at denominator exponent <= p");
    out.g_num = N;
    out.g_den_exp = dexp;

    const RingElement mup = mu.pow(p), lambdap = lambda.pow(p);
    out.source = std::make_shared<HopfPresentation>(smooth_extension(mu, lambda, F));
    out.target = std::make_shared<HopfPresentation>(smooth_extension_frac(mup, lambdap, N, dexp));
    Poly W = F + lambda * var(R, 1);
    Poly NP = substitute(N, {P});
    Poly num = (W.pow(p) * u.pow(static_cast<unsigned>(p * dexp - d.j)) - NP).divide_exact(lambdap);
    out.map.source = out.source;
    out.map.target = out.target;
    out.map.images = {Frac(P), Frac(num, u.pow(static_cast<unsigned>(p * dexp)))};
    out.morphism = verify_morphism ? check_morphism(out.map) : false;

    HopfPresentation finite = build_extension(d);
    out.kernel_contained = normal_form(P, finite).is_zero() && normal_form(num, finite).is_zero();
    return out;
}

ModelDescriptor normal_form_model(const ModelDescriptor& d) {
    validate_descriptor(d);
    if (d.j == 0) throw ValidationError("j = 0 is not a model of Z/p^2Z");
    const int p = d.ring.p();
    ModelDescriptor out = d;
    out.a = reduce_mod(d.a_lift().scaled(inv_mod_p(d.j, p)), d.n);
    out.j = 1;
    if (!phi_condition(out.ring, out.m, out.n, out.a, out.j))
        throw CertificationError("normalized descriptor left Phi");
    return out;
}

bool is_isomorphic(const ModelDescriptor& d1, const ModelDescriptor& d2) {
    validate_descriptor(d1);
    validate_descriptor(d2);
    if (d1.ring != d2.ring) throw MixedRingError("descriptors over different rings");
    if (d1.j == 0 || d2.j == 0) throw ValidationError("isomorphism test needs models of Z/p^2Z");
    if (d1.m != d2.m || d1.n != d2.n) return false;
    const int p = d1.ring.p();
    int ratio = static_cast<int>((static_cast<long>(d1.j) * inv_mod_p(d2.j, p)) % p);
    RingElement rhs = d2.a_lift().scaled(ratio) * d1.ring.pi_pow(d1.m - d2.m);
    return reduce_mod(d1.a_lift() - rhs, d2.n).is_zero();
}

std::string to_string(HomTag t) {
    switch (t) {
    case HomTag::Zero:
        return "Zero";
    case HomTag::OrderP:
        return "OrderP";
    case HomTag::OrderP2:
        return "OrderP2";
    }
    return "?";
}

HomClass hom_models(const ModelDescriptor& d1, const ModelDescriptor& d2) {
    validate_descriptor(d1);
    validate_descriptor(d2);
    if (d1.j == 0 || d2.j == 0) throw ValidationError("Hom classification needs models of Z/p^2Z");
    const int p = d1.ring.p();
    HomClass h;
    if (d1.m < d2.n) {
        h.tag = HomTag::Zero;
        h.witnesses = {{0, 0}};
        return h;
    }
    bool full = false;
    if (d2.m <= d1.m && d2.n <= d1.n) {
        int ratio = static_cast<int>((static_cast<long>(d1.j) * inv_mod_p(d2.j, p)) % p);
        RingElement rhs = d2.a_lift().scaled(ratio) * d1.ring.pi_pow(d1.m - d2.m);
        full = reduce_mod(d1.a_lift() - rhs, d2.n).is_zero();
    }
    h.tag = full ? HomTag::OrderP2 : HomTag::OrderP;
    for (int r = 0; r < (full ? p : 1); ++r)
        for (int s = 0; s < p; ++s) h.witnesses.push_back({r, s});
    h.invertible = full && d1.m == d2.m && d1.n == d2.n;
    return h;
}

std::optional<HopfMorphism> psi_rs(const ModelDescriptor& d1, std::shared_ptr<const HopfPresentation> e1,
                                   const ModelDescriptor& d2, std::shared_ptr<const HopfPresentation> e2, int r,
                                   int s, const MorphismChecker* checker) {
    const RingDescriptor R = d1.ring;
    const int p = R.p();
    const int k = static_cast<int>((static_cast<long>(r) * d1.j % p) * inv_mod_p(d2.j, p) % p);
    auto rels = tensor_relations(*e1, 1);
    Poly u1 = lin(d1.mu(), 0);
    Poly img1(R);
    try {
        img1 = reduce(u1.pow(static_cast<unsigned>(k)) - one(R), rels).divide_exact(d2.mu());
    } catch (const DivisibilityError&) {
        return std::nullopt;
    }
    Poly F1 = ep_poly_lift(d1.a_lift(), 0), F2 = ep_poly_lift(d2.a_lift(), 0);
    Poly W1 = F1 + d1.lambda() * var(R, 1);
    Poly num = reduce(W1.pow(static_cast<unsigned>(r)) * u1.pow(static_cast<unsigned>(s)) - substitute(F2, {img1}), rels);
    Poly img2(R);
    try {
        img2 = num.divide_exact(d2.lambda());
    } catch (const DivisibilityError&) {
        return std::nullopt;
    }
    HopfMorphism f;
    f.source = std::move(e1);
    f.target = std::move(e2);
    f.images = {Frac(img1), Frac(img2)};
    if (!(checker ? checker->check(f.images).ok() : check_morphism(f))) return std::nullopt;
    return f;
}

HomClass hom_models_brute(const ModelDescriptor& d1, const ModelDescriptor& d2) {
    validate_descriptor(d1);
    validate_descriptor(d2);
    if (d1.j == 0 || d2.j == 0) throw ValidationError("Hom classification needs models of Z/p^2Z");
    return hom_models_brute(d1, std::make_shared<const HopfPresentation>(build_extension(d1)), d2,
                            std::make_shared<const HopfPresentation>(build_extension(d2)));
}

HomClass hom_models_brute(const ModelDescriptor& d1, std::shared_ptr<const HopfPresentation> e1,
                          const ModelDescriptor& d2, std::shared_ptr<const HopfPresentation> e2) {
    if (d1.j == 0 || d2.j == 0) throw ValidationError("Hom classification needs models of Z/p^2Z");
    const int p = d1.ring.p();
    HomClass h;
    const MorphismChecker checker(e1, e2);
    for (int r = 0; r < p; ++r)
        for (int s = 0; s < p; ++s) {
            auto f = psi_rs(d1, e1, d2, e2, r, s, &checker);
            if (!f) continue;
            h.witnesses.push_back({r, s});
            if (r != 0 && !h.invertible) {
                auto v = determinant_valuation(*f);
                if (v && *v == 0) h.invertible = true;
            }
        }
    const long count = static_cast<long>(h.witnesses.size());
    if (count == 1)
        h.tag = HomTag::Zero;
    else if (count == p)
        h.tag = HomTag::OrderP;
    else if (count == static_cast<long>(p) * p)
        h.tag = HomTag::OrderP2;
    else
        throw CertificationError("Hom group of order " + std::to_string(count) + " is not a subgroup of Z/p^2Z");
    return h;
}

std::vector<ModelDescriptor> enumerate_models(RingDescriptor R, int m_max) {
    const int p = R.p();
    if (m_max < 0 || m_max > p) throw ValidationError("m_max must lie in [0, p]");
    std::vector<ModelDescriptor> out;
    for (int m = 0; m <= m_max; ++m)
        for (int n = 0; n <= m; ++n)
            for (const auto& x : phi_closed(R, m, n)) {
                if (x.j != 1) continue;
                ModelDescriptor d;
                d.ring = R;
                d.m = m;
                d.n = n;
                d.a = x.a;
                d.j = 1;
                out.push_back(d);
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RadSurvivor> rad_brute(RingDescriptor R, int m, int n, long budget) {
    const int p = R.p();
    if (!(n > m && m >= 0)) throw ValidationError("rad_brute covers v(mu) < v(lambda)");
    if (n * (p - 1) > R.e()) throw ValidationError("F^p mod pi^{np} needs n(p-1) <= v(p)");
    check_budget(ipow(p, n * (p - 1)) * p, p, budget, "rad_brute");
    const RingElement mu = R.pi_pow(m);
    const int np = n * p;
    auto rel = MonicRelation::from_poly(p_poly(mu, 1, 0), 0);
    Poly u = lin(mu, 0);
    std::vector<Poly> upow;
    for (int j = 0; j < p; ++j) upow.push_back(reduce(u.pow(static_cast<unsigned>(p - j)), {rel}));
    auto elems = enumerate_quotient(R, n);
    GroupLikeTester tester(mu, n);
    std::vector<RadSurvivor> out;
    std::vector<std::size_t> idx(p - 1, 0);
    do {
        Poly f = one(R);
        for (int i = 1; i < p; ++i) f.add_term(mono_var(0, i), elems[idx[i - 1]].lift());
        if (!tester.test(coeff_vector(f, p))) continue;
        Poly fp = reduce(f.pow(p), {rel});
        for (int j = 0; j < p; ++j) {
            Poly g = reduce(fp * upow[j], {rel}) - one(R);
            if (g.with_precision(np).is_zero()) out.push_back({canonical_poly(f, n), j});
        }
    } while (next_index(idx, elems.size()));
    return out;
}

long rad_witt_count(RingDescriptor R, int m, int n) {
    const int p = R.p();
    const int np = n * p;
    if (np > R.e()) throw ValidationError("the Witt count needs p = 0 in R/pi^{np}");
    const RingElement mu = R.pi_pow(m);
    const RingElement mup = mu.pow(p);
    const int len = kWittDefaultLength;
    auto key = [&](const WittVector& w) {
        std::vector<std::vector<int>> k;
        for (int i = 0; i < len; ++i) k.push_back(reduce_mod(w.coord(i), np).digits());
        return k;
    };
    // coordinates admissible for the Frobenius kernel of [mu^{p(p-1)}] in R/pi^{np}
    std::vector<RingElement> coords;
    RingElement target_scalar = mup.pow(p - 1).with_precision(np);
    for_each_quotient(R, np, [&](const QuotElement& q) {
        RingElement x = q.element();
        if (q.valuation() >= 1 && (x.pow(p) - target_scalar * x).is_zero()) coords.push_back(x);
    });
    std::set<std::vector<std::vector<int>>> image;
    for (const auto& b0 : coords)
        for (const auto& b1 : coords) {
            WittVector b(R, {b0, b1}, np);
            if (!is_frobenius_kernel(b, mup, np)) continue;
            image.insert(key(psi_star_image(b, mu).truncated(len)));
        }
    long count = 0;
    for_each_quotient(R, n, [&](const QuotElement& q) {
        WittVector a = WittVector::teichmuller(q.element(), n);
        if (!is_frobenius_kernel(a, mu, n)) return;
        WittVector pa = mult_by_p(a, n, len);
        for (int j = 0; j < p; ++j) {
            WittVector jm = witt_scalar(j, WittVector::teichmuller(mu, np), len);
            WittVector diff = witt_sub(pa, jm, len);
            if (image.count(key(diff.truncated(len)))) ++count;
        }
    });
    return count;
}

}  // namespace zp2
