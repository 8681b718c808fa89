#include "zp2/artin_hasse.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace zp2 {

void BiPoly::add_term(int u, int l, const mpq_class& c) {
    if (c == 0) return;
    auto key = std::make_pair(u, l);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms.erase(it);
}

int BiPoly::min_lambda_exp() const {
    int m = 0;
    for (const auto& [k, c] : terms) m = std::min(m, k.second);
    return m;
}

bool BiPoly::p_integral(int p) const {
    for (const auto& [k, c] : terms)
        if (c.get_den() % p == 0) return false;
    return true;
}

RingElement BiPoly::evaluate(const RingElement& u, const RingElement& l) const {
    const RingDescriptor R = u.ring();
    RingElement s = R.zero().with_precision(std::min(u.precision(), l.precision()));
    for (const auto& [k, c] : terms) {
        if (k.first < 0 || k.second < 0) throw ValuationError("negative exponent in evaluation");
        s += R.from_rational(c) * u.pow(k.first) * l.pow(k.second);
    }
    return s;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

BiPoly operator+(BiPoly a, const BiPoly& b) {
    for (const auto& [k, c] : b.terms) a.add_term(k.first, k.second, c);
    return a;
}

namespace {

BiPoly bi_const(const mpq_class& c) {
    BiPoly b;
    b.add_term(0, 0, c);
    return b;
}

BiPoly bi_mono(int u, int l, const mpq_class& c = 1) {
    BiPoly b;
    b.add_term(u, l, c);
    return b;
}

BiPoly bi_scale(const BiPoly& a, const mpq_class& c) {
    BiPoly out;
    for (const auto& [k, x] : a.terms) out.add_term(k.first, k.second, x * c);
    return out;
}

DeformedSeries series_mul(const DeformedSeries& a, const DeformedSeries& b, int D) {
    DeformedSeries out(D + 1);
    for (int i = 0; i <= D && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= D && j < static_cast<int>(b.size()); ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] = out[i + j] + a[i] * b[j];
        }
    }
    return out;
}

// G = F^c for F with constant term 1: n G_n = sum_{k=1}^n ((c+1)k - n) F_k G_{n-k}
DeformedSeries series_power(const DeformedSeries& f, const mpq_class& c, int D) {
    DeformedSeries g(D + 1);
    g[0] = bi_const(1);
    for (int n = 1; n <= D; ++n) {
        BiPoly acc;
        for (int k = 1; k <= n && k < static_cast<int>(f.size()); ++k) {
            if (f[k].is_zero()) continue;
            mpq_class w = (c + 1) * k - n;
            if (w == 0) continue;
            acc = acc + bi_scale(f[k] * g[n - k], w);
        }
        g[n] = bi_scale(acc, mpq_class(1, n));
    }
    return g;
}

long ipow(long b, int e) {
    long r = 1;
    while (e--) r *= b;
    return r;
}

struct SeriesMemo {
    std::mutex mu;
    std::map<std::pair<int, int>, std::unique_ptr<RationalSeries>> plain;
    std::map<std::pair<int, int>, std::unique_ptr<DeformedSeries>> deformed;
};

SeriesMemo& series_memo() {
    static SeriesMemo m;
    return m;
}

void check_args(int p, int D) {
    if (p < 3 || !is_prime(p)) throw ValidationError("Artin-Hasse series need an odd prime");
    if (D < 1) throw ValidationError("truncation degree must be positive");
}

RationalSeries compute_ah(int p, int D) {
    // E' = E * sum_r T^{p^r - 1}
    RationalSeries c(D + 1);
    c[0] = 1;
    for (int n = 1; n <= D; ++n) {
        mpq_class s = 0;
        for (long q = 1; q <= n; q *= p) s += c[n - q];
        c[n] = s / n;
    }
    for (int n = 0; n <= D; ++n)
        if (c[n].get_den() % p == 0)
            throw CertificationError("E_p(T) coefficient " + std::to_string(n) + " is not p-integral");
    return c;
}

DeformedSeries compute_deformed(int p, int D) {
    // (1 + Lambda T)^{U/Lambda}: coefficient of T^k is prod_{i<k}(U - i Lambda) / k!
    DeformedSeries s(D + 1);
    BiPoly c = bi_const(1);
    s[0] = c;
    for (int k = 1; k <= D; ++k) {
        c = c * (bi_mono(1, 0) + bi_mono(0, 1, -(k - 1)));
        c = bi_scale(c, mpq_class(1, k));
        s[k] = c;
    }
    for (int r = 1; ipow(p, r) <= D; ++r) {
        long q = ipow(p, r), q0 = q / p;
        // exponent (X^{p^r} - X^{p^{r-1}}) / p^r with X = U / Lambda
        BiPoly ex = bi_mono(static_cast<int>(q), -static_cast<int>(q), mpq_class(1, q)) +
                    bi_mono(static_cast<int>(q0), -static_cast<int>(q0), mpq_class(-1, q));
        DeformedSeries factor(D + 1);
        BiPoly binom = bi_const(1);
        factor[0] = binom;
        for (long l = 1; l * q <= D; ++l) {
            binom = binom * (ex + bi_const(-(l - 1)));
            binom = bi_scale(binom, mpq_class(1, l));
            factor[l * q] = binom * bi_mono(0, static_cast<int>(l * q));
        }
        s = series_mul(s, factor, D);
    }
    for (int k = 0; k <= D; ++k) {
        if (s[k].min_lambda_exp() < 0)
            throw CertificationError("E_p(U,Lambda;T) coefficient " + std::to_string(k) + " has a pole in Lambda");
        if (!s[k].p_integral(p))
            throw CertificationError("E_p(U,Lambda;T) coefficient " + std::to_string(k) + " is not p-integral");
    }
    return s;
}

}  // namespace

const RationalSeries& ah_series(int p, int D) {
    check_args(p, D);
    auto& m = series_memo();
    std::lock_guard<std::mutex> lock(m.mu);
    auto key = std::make_pair(p, D);
    auto it = m.plain.find(key);
    if (it == m.plain.end()) it = m.plain.emplace(key, std::make_unique<RationalSeries>(compute_ah(p, D))).first;
    return *it->second;
}

const DeformedSeries& deformed_ah(int p, int D) {
    check_args(p, D);
    auto& m = series_memo();
    std::lock_guard<std::mutex> lock(m.mu);
    auto key = std::make_pair(p, D);
    auto it = m.deformed.find(key);
    if (it == m.deformed.end())
        it = m.deformed.emplace(key, std::make_unique<DeformedSeries>(compute_deformed(p, D))).first;
    return *it->second;
}

DeformedSeries ah_product_formula(int p, int D) {
    const RationalSeries& e = ah_series(p, D);
    DeformedSeries out(D + 1);
    out[0] = bi_const(1);
    for (int i = 1; i <= D; ++i) {
        if (i % p == 0) continue;
        // E_p(U Lambda^{i-1} T^i)
        DeformedSeries f(D + 1);
        for (int k = 0; k * i <= D; ++k) f[k * i] = bi_mono(k, k * (i - 1), e[k]);
        mpq_class c(i % 2 ? 1 : -1, i);
        out = series_mul(out, series_power(f, c, D), D);
    }
    return out;
}

std::vector<mpq_class> specialize_u_equals_lambda(const DeformedSeries& s) {
    std::vector<mpq_class> out;
    for (const auto& c : s) {
        mpq_class total = 0;
        for (const auto& [k, x] : c.terms)
            if (k.first + k.second != static_cast<int>(out.size())) {
                throw CertificationError("E_p(U,Lambda;T) coefficient is not homogeneous");
            } else {
                total += x;
            }
        out.push_back(total);
    }
    return out;
}

DeformedSeries specialize_lambda_zero(const DeformedSeries& s) {
    DeformedSeries out;
    for (const auto& c : s) {
        BiPoly b;
        for (const auto& [k, x] : c.terms)
            if (k.second == 0) b.add_term(k.first, 0, x);
        out.push_back(b);
    }
    return out;
}

RingSeries ep_series(const RingElement& a, const RingElement& mu, int D) {
    const DeformedSeries& s = deformed_ah(a.ring().p(), D);
    RingSeries out;
    for (const auto& c : s) out.push_back(c.evaluate(a, mu));
    return out;
}

Poly ep_poly_special(const RingElement& a, const RingElement& mu, int t, int var) {
    const RingDescriptor R = a.ring();
    const int p = R.p();
    RingElement at = a.with_precision(t), mt = mu.with_precision(t);
    if (!(at.pow(p) - mt.pow(p - 1) * at).is_zero())
        throw PreconditionError("a^p = mu^{p-1} a fails modulo pi^" + std::to_string(t));
    Poly f(R);
    RingElement c = R.one().with_precision(t);
    f.add_term(0, c);
    for (int i = 1; i < p; ++i) {
        c = c * (at - mt.scaled(i - 1)) * invert_unit(R.from_int(i));
        f.add_term(mono_var(var, i), c);
    }
    return f.with_precision(t);
}

Poly ep_poly_lift(const RingElement& a, int var) {
    const RingDescriptor R = a.ring();
    Poly f(R);
    RingElement c = R.one();
    f.add_term(0, c);
    for (int i = 1; i < R.p(); ++i) {
        c = c * a * invert_unit(R.from_int(i));
        f.add_term(mono_var(var, i), c);
    }
    return f;
}

RingSeries ep_witt(const WittVector& a, const RingElement& mu, int D) {
    const RingDescriptor R = a.ring();
    const int p = R.p();
    int prec = a.modulus() > 0 ? a.modulus() : R.max_precision();
    RingSeries out(D + 1, R.zero().with_precision(prec));
    out[0] = R.one().with_precision(prec);
    RingElement muk = mu;
    long q = 1;
    for (std::size_t k = 0; k < a.length(); ++k) {
        if (q > D) break;
        RingSeries f = ep_series(a.coord(k), muk, static_cast<int>(D / q));
        RingSeries next(D + 1, R.zero().with_precision(prec));
        for (int i = 0; i <= D; ++i) {
            if (out[i].is_zero()) continue;
            for (long l = 0; i + l * q <= D; ++l) next[i + l * q] += out[i] * f[l];
        }
        out = std::move(next);
        muk = muk.pow(p);
        q *= p;
    }
    return out;
}

Poly differential_defect(const Poly& f, const RingElement& a, const RingElement& mu, int t, int var) {
    const RingDescriptor R = f.ring();
    Poly deriv(R);
    for (const auto& [m, c] : f.terms()) {
        int ex = mono_exp(m, var);
        if (!ex) continue;
        deriv.add_term(m - mono_var(var, 1), c.scaled(ex));
    }
    Poly lin = Poly::constant(R.one()) + Poly::monomial(mu, mono_var(var, 1));
    return (deriv * lin - a * f).with_precision(t);
}

}  // namespace zp2
