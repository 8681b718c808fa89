#include "zp2/fiber.hpp"

#include <sstream>

namespace zp2 {

namespace {

Poly var(RingDescriptor R, int i) { return Poly::variable(R, i); }
Poly one(RingDescriptor R) { return Poly::constant(R.one()); }

int residue_of_quotient(const RingElement& num, const RingElement& den) {
    RingElement q = divide_exact(num, den);
    if (q.precision() < 1) throw PrecisionError("quotient is not known mod pi");
    return q.residue();
}

HopfPresentation assemble(RingDescriptor R, std::string name, Poly rel1, Poly rel2, Poly d1, Poly d2, Poly s1,
                          Poly s2) {
    HopfPresentation H;
    H.ring = R;
    H.name = std::move(name);
    H.generators = {"S1", "S2"};
    H.relations = {std::move(rel1), std::move(rel2)};
    H.comult = {Frac(std::move(d1)), Frac(std::move(d2))};
    H.counit = {R.zero(), R.zero()};
    H.antipode = {Frac(std::move(s1)), Frac(std::move(s2))};
    return H;
}

std::string describe_difference(const Poly& f, const std::vector<std::string>& names) {
    for (const auto& [m, c] : f.terms()) {
        if (c.with_precision(1).is_zero()) continue;
        std::ostringstream os;
        os << "coefficient of " << Poly::monomial(f.ring().one(), m).to_string(names) << " is " << c.residue();
        return os.str();
    }
    return "no difference";
}

bool next_coeffs(std::vector<int>& c, int p) {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (++c[i] < p) return true;
        c[i] = 0;
    }
    return false;
}

}  // namespace

std::string to_string(FiberTag t) {
    switch (t) {
    case FiberTag::MuPExtension:
        return "MuPExtension";
    case FiberTag::TrivialExtension:
        return "TrivialExtension";
    case FiberTag::AlphaPExtension:
        return "AlphaPExtension";
    case FiberTag::ZpByZp:
        return "ZpByZp";
    }
    return "?";
}

std::string FiberClass::to_string() const {
    std::ostringstream os;
    os << zp2::to_string(tag);
    switch (tag) {
    case FiberTag::MuPExtension:
        os << "(" << i << ")";
        break;
    case FiberTag::AlphaPExtension:
        os << "(" << beta << ", " << gamma << ")";
        break;
    case FiberTag::ZpByZp:
        os << "(" << a << ", " << b << ")";
        break;
    case FiberTag::TrivialExtension:
        break;
    }
    return os.str();
}

std::pair<int, int> alpha_parameters(const ModelDescriptor& d, const RingElement& at) {
    const RingDescriptor R = d.ring;
    const int p = R.p();
    const RingElement mu = d.mu(), lambda = d.lambda();
    RingElement c = divide_exact(R.p_elem(), mu.pow(p - 1));
    RingElement ap = at.pow(p);
    RingElement lhs = R.p_elem() * at - mu.scaled(d.j) - c * ap;
    int beta = residue_of_quotient(-lhs, lambda.pow(p));
    int gamma = residue_of_quotient(ap, lambda);
    return {beta, gamma};
}

FiberClass classify_fiber(const ModelDescriptor& d) {
    validate_descriptor(d);
    const int p = d.ring.p();
    FiberClass c;
    if (d.m == 0) {
        c.tag = FiberTag::MuPExtension;
        c.i = d.j;
    } else if (d.n == 0) {
        c.tag = FiberTag::TrivialExtension;
    } else if (d.m < p) {
        c.tag = FiberTag::AlphaPExtension;
        std::tie(c.beta, c.gamma) = alpha_parameters(d, d.a_lift());
    } else if (d.n < p) {
        c.tag = FiberTag::TrivialExtension;
    } else {
        c.tag = FiberTag::ZpByZp;
        c.a = 0;
        c.b = d.j;
    }
    return c;
}

Poly cocycle_c1(RingDescriptor R, int x, int y) {
    const int p = R.p();
    Poly c(R);
    mpz_class b;
    for (int i = 1; i < p; ++i) {
        mpz_bin_uiui(b.get_mpz_t(), p, i);
        mpz_class q = b / p;
        c.add_term(mono_var(x, i) | mono_var(y, p - i), -R.from_mpz(q));
    }
    return c;
}

HopfPresentation fiber_presentation(const ModelDescriptor& d, const FiberClass& c) {
    const RingDescriptor R = d.ring;
    const unsigned p = static_cast<unsigned>(R.p());
    Poly S1 = var(R, 0), S2 = var(R, 1), T1 = var(R, 2), T2 = var(R, 3);
    Poly X = one(R) + S1, Y = one(R) + S2;
    Poly add1 = S1 + T1, add2 = S2 + T2;
    Poly mul1 = S1 + T1 + S1 * T1, mul2 = S2 + T2 + S2 * T2;
    Poly C1 = cocycle_c1(R, 0, 2);
    HopfPresentation H;
    switch (c.tag) {
    case FiberTag::MuPExtension: {
        Poly inv2 = Y.pow(p - 1) * X.pow(p - static_cast<unsigned>(c.i)) - one(R);
        H = assemble(R, c.to_string(), X.pow(p) - one(R), Y.pow(p) - X.pow(static_cast<unsigned>(c.i)), mul1, mul2,
                     X.pow(p - 1) - one(R), inv2);
        H.units = {{X, X.pow(p - 1)}, {Y, inv2 + one(R)}};
        break;
    }
    case FiberTag::TrivialExtension:
        if (d.n == 0) {
            Poly rel1 = d.m < R.p() ? S1.pow(p) : S1.pow(p) - S1;
            H = assemble(R, c.to_string(), rel1, Y.pow(p) - one(R), add1, mul2, -S1, Y.pow(p - 1) - one(R));
            H.units = {{Y, Y.pow(p - 1)}};
        } else {
            H = assemble(R, c.to_string(), S1.pow(p) - S1, S2.pow(p), add1, add2, -S1, -S2);
        }
        break;
    case FiberTag::AlphaPExtension:
        H = assemble(R, c.to_string(), S1.pow(p), S2.pow(p) - R.from_int(c.beta) * S1, add1,
                     add2 + R.from_int(c.gamma) * C1, -S1, -S2);
        break;
    case FiberTag::ZpByZp:
        H = assemble(R, c.to_string(), S1.pow(p) - S1, S2.pow(p) - S2 - R.from_int(c.a) * S1, add1,
                     add2 + R.from_int(c.b) * C1, -S1, -S2);
        break;
    }
    return residue_fiber(H);
}

FiberReport verify_fiber_report(const ModelDescriptor& d) { return verify_fiber_against(d, classify_fiber(d)); }

FiberReport verify_fiber_against(const ModelDescriptor& d, const FiberClass& c) {
    FiberReport rep;
    rep.claimed = c;
    const RingDescriptor R = d.ring;
    const int p = R.p();
    auto claimed = std::make_shared<const HopfPresentation>(fiber_presentation(d, rep.claimed));
    auto actual = std::make_shared<const HopfPresentation>(residue_fiber(build_extension(d)));
    std::vector<int> g(p - 1, 0);
    do {
        Poly shift(R);
        for (int i = 1; i < p; ++i) shift.add_term(mono_var(0, i), R.from_int(g[i - 1]).with_precision(1));
        HopfMorphism f;
        f.source = claimed;
        f.target = actual;
        f.images = {Frac(var(R, 0).with_precision(1)), Frac(var(R, 1).with_precision(1) + shift)};
        if (!check_morphism(f)) continue;
        auto v = determinant_valuation(f);
        if (v && *v == 0) {
            rep.ok = true;
            rep.shift = shift;
            return rep;
        }
    } while (next_coeffs(g, p));

    HopfMorphism f;
    f.source = claimed;
    f.target = actual;
    f.images = {Frac(var(R, 0).with_precision(1)), Frac(var(R, 1).with_precision(1))};
    for (int i = 0; i < 2; ++i) {
        Poly image = normal_form(actual->relations[i], *claimed);
        if (!image.is_zero()) {
            rep.mismatch = "relation of " + actual->generators[i] + ": " + describe_difference(image, claimed->generators);
            return rep;
        }
    }
    MorphismReport mr = check_morphism_report(f);
    rep.mismatch = mr.failures.empty() ? "no coordinate change S2 -> S2 + g(S1) is invertible" : mr.failures.front();
    return rep;
}

bool verify_fiber(const ModelDescriptor& d) { return verify_fiber_report(d).ok; }

bool wilson_holds(int p) {
    if (!is_prime(p)) throw ValidationError("Wilson check needs a prime");
    long f = 1;
    for (int k = 2; k < p; ++k) f = f * k % p;
    return f == p - 1;
}

int eta_ratio_residue(RingDescriptor R) { return residue_of_quotient(eta(R).pow(R.p()), R.lambda(1)); }

}  // namespace zp2
