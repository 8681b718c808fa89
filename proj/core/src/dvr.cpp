#include "zp2/dvr.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace zp2 {

namespace {

using u128 = unsigned __int128;

std::int64_t mod_reduce(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<u128>(a) * static_cast<u128>(b)) %
                                     static_cast<u128>(m));
}

int vp_int(std::int64_t c, int p) {
    int v = 0;
    while (c % p == 0) {
        c /= p;
        ++v;
    }
    return v;
}

std::int64_t mpz_mod(const mpz_class& c, std::int64_t m) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(m));
    return r.get_si();
}

struct Registry {
    std::mutex mu;
    std::map<std::tuple<int, int, std::vector<std::int64_t>>, std::unique_ptr<RingData>> rings;
};

Registry& registry() {
    static Registry r;
    return r;
}

void check_same(const RingElement& a, const RingElement& b) {
    if (a.ring_data() != b.ring_data() || a.ring_data() == nullptr)
        throw MixedRingError("operands belong to different rings");
}

const RingData* build(int p, int M, const std::vector<std::int64_t>& c, Flavor flavor) {
    auto key = std::make_tuple(p, M, c);
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.rings.find(key);
    if (it != reg.rings.end()) return it->second.get();

    auto d = std::make_unique<RingData>();
    d->p = p;
    d->M = M;
    d->e = static_cast<int>(c.size()) - 1;
    d->flavor = flavor;
    d->ppow.resize(M + 1);
    d->ppow[0] = 1;
    for (int i = 1; i <= M; ++i) d->ppow[i] = d->ppow[i - 1] * p;
    d->pM = d->ppow[M];
    const int e = d->e;
    const std::int64_t pM = d->pM;
    d->eisenstein.assign(c.begin(), c.end() - 1);
    for (auto& x : d->eisenstein) x = mod_reduce(x, pM);

    Digits top(e);
    for (int i = 0; i < e; ++i) top[i] = mod_reduce(-d->eisenstein[i], pM);
    d->high.push_back(top);
    for (int k = 1; k + 1 < e; ++k) {
        const Digits& prev = d->high.back();
        Digits next(e, 0);
        std::int64_t carry = prev[e - 1];
        for (int i = e - 1; i >= 1; --i) next[i] = prev[i - 1];
        next[0] = 0;
        for (int i = 0; i < e; ++i) next[i] = (next[i] + mulmod(carry, top[i], pM)) % pM;
        d->high.push_back(next);
    }

    // p/pi = -u^{-1} (pi^{e-1} + c_{e-1} pi^{e-2} + ... + c_1) where c_0 = p u
    std::int64_t u = d->eisenstein[0] / p;
    std::int64_t uinv = inverse_mod(mod_reduce(u, pM), pM);
    Digits w(e, 0);
    for (int i = 0; i < e; ++i) {
        std::int64_t ci = (i + 1 < e) ? d->eisenstein[i + 1] : 1;
        w[i] = mod_reduce(-mulmod(uinv, ci, pM), pM);
    }
    d->p_over_pi = w;

    u128 bound = static_cast<u128>(pM - 1) * static_cast<u128>(pM - 1) * static_cast<u128>(e + 1);
    d->small_products = bound < (static_cast<u128>(1) << 62);

    const RingData* out = d.get();
    reg.rings.emplace(key, std::move(d));
    return out;
}

void check_size(int p, int M) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw ValidationError("p must be an odd prime, got " + std::to_string(p));
    if (M < 2) throw ValidationError("precision M must be at least 2");
    if (p > 13) throw ValidationError("p > 13 is outside the supported range");
    long double bound = 1;
    for (int i = 0; i < M; ++i) bound *= p;
    if (bound >= 4.6e18L) throw ValidationError("p^M must stay below 2^62");
}

}  // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod_reduce(a, m);
    while (a1 != 0) {
        std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_tuple(a1, g - q * a1);
        std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
    }
    if (g != 1) throw ValuationError("integer is not invertible modulo p^M");
    return mod_reduce(x, m);
}

RingDescriptor make_ring(int p, int M) {
    check_size(p, M);
    const int e = p * (p - 1);
    // E(x) = sum_{i<p} (1+x)^{ip}
    std::vector<mpz_class> coeff(e + 1, 0);
    for (int i = 0; i < p; ++i) {
        mpz_class b;
        for (int k = 0; k <= i * p; ++k) {
            mpz_bin_uiui(b.get_mpz_t(), i * p, k);
            coeff[k] += b;
        }
    }
    if (coeff[e] != 1) throw EisensteinError("leading coefficient is not 1");
    for (int k = 0; k < e; ++k)
        if (coeff[k] % p != 0) throw EisensteinError("coefficient not divisible by p");
    if (coeff[0] % (p * p) == 0) throw EisensteinError("constant term divisible by p^2");
    std::int64_t pM = 1;
    for (int i = 0; i < M; ++i) pM *= p;
    std::vector<std::int64_t> c(e + 1);
    for (int k = 0; k <= e; ++k) c[k] = mpz_mod(coeff[k], pM);
    return RingDescriptor(build(p, M, c, Flavor::cyclotomic_p2));
}

RingDescriptor make_custom_ring(int p, int M, const std::vector<std::int64_t>& coeffs) {
    check_size(p, M);
    if (coeffs.size() < 2) throw EisensteinError("Eisenstein polynomial needs degree >= 1");
    std::int64_t pM = 1;
    for (int i = 0; i < M; ++i) pM *= p;
    std::vector<std::int64_t> c(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = mod_reduce(coeffs[k], pM);
    if (c.back() != 1) throw EisensteinError("leading coefficient is not 1");
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
        if (c[k] % p != 0) throw EisensteinError("coefficient not divisible by p");
    if (c[0] % (static_cast<std::int64_t>(p) * p) == 0)
        throw EisensteinError("constant term has p-valuation > 1");
    return RingDescriptor(build(p, M, c, Flavor::custom));
}

std::vector<std::int64_t> RingDescriptor::eisenstein_coeffs() const {
    std::vector<std::int64_t> c(d_->eisenstein.begin(), d_->eisenstein.end());
    c.push_back(1);
    return c;
}

RingElement RingDescriptor::zero() const { return from_int(0); }
RingElement RingDescriptor::one() const { return from_int(1); }

RingElement RingDescriptor::from_int(std::int64_t c) const {
    Digits d(d_->e, 0);
    d[0] = mod_reduce(c, d_->pM);
    return RingElement(d_, std::move(d), d_->max_precision());
}

RingElement RingDescriptor::from_mpz(const mpz_class& c) const {
    Digits d(d_->e, 0);
    d[0] = mpz_mod(c, d_->pM);
    return RingElement(d_, std::move(d), d_->max_precision());
}

RingElement RingDescriptor::from_rational(const mpq_class& q) const {
    mpz_class den = q.get_den();
    if (den % d_->p == 0) throw ValuationError("rational is not p-integral");
    std::int64_t n = mpz_mod(q.get_num(), d_->pM);
    std::int64_t dd = mpz_mod(den, d_->pM);
    return from_int(mulmod(n, inverse_mod(dd, d_->pM), d_->pM));
}

RingElement RingDescriptor::pi_pow(int k) const {
    if (k < 0) throw ValidationError("negative power of pi");
    if (d_->e == 1) return from_int(-d_->eisenstein[0]).pow(static_cast<std::uint64_t>(k));
    if (k >= d_->e) return pi_pow(1).pow(static_cast<std::uint64_t>(k));
    Digits d(d_->e, 0);
    d[k] = 1;
    return RingElement(d_, std::move(d), d_->max_precision());
}

RingElement RingDescriptor::pi() const { return pi_pow(1); }
RingElement RingDescriptor::p_elem() const { return from_int(d_->p); }
RingElement RingDescriptor::zeta2() const { return one() + pi(); }
RingElement RingDescriptor::zeta1() const { return zeta2().pow(d_->p); }

RingElement RingDescriptor::lambda(int k) const {
    if (d_->flavor != Flavor::cyclotomic_p2)
        throw ValidationError("lambda_(k) needs the cyclotomic flavor");
    if (k == 2) return pi();
    if (k == 1) return zeta1() - one();
    throw ValidationError("lambda_(k) is defined for k = 1, 2");
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    if (v.determinate) return os << v.value;
    return os << "indeterminate(" << v.value << ")";
}

RingElement::RingElement(const RingData* r, Digits d, int prec)
    : r_(r), prec_(prec), d_(std::move(d)) {
    if (prec_ > r_->max_precision()) prec_ = r_->max_precision();
    if (prec_ < 0) prec_ = 0;
    d_.resize(r_->e, 0);
    normalize();
}

void RingElement::normalize() {
    const int e = r_->e;
    for (int i = 0; i < e; ++i) {
        int c = prec_ - i;
        c = c <= 0 ? 0 : (c + e - 1) / e;
        if (c > r_->M) c = r_->M;
        std::int64_t m = r_->ppow[c];
        d_[i] = mod_reduce(d_[i], m);
    }
}

Valuation RingElement::valuation() const {
    int best = -1;
    for (int i = 0; i < r_->e; ++i) {
        if (d_[i] == 0) continue;
        int v = r_->e * vp_int(d_[i], r_->p) + i;
        if (best < 0 || v < best) best = v;
    }
    if (best < 0) return Valuation::indeterminate(prec_);
    return Valuation::exact(best);
}

bool RingElement::is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](std::int64_t x) { return x == 0; });
}

bool RingElement::is_unit() const { return d_[0] % r_->p != 0; }

int RingElement::residue() const { return static_cast<int>(d_[0] % r_->p); }

RingElement RingElement::operator-() const {
    Digits d(d_);
    for (auto& x : d) x = x == 0 ? 0 : r_->pM - x;
    return RingElement(r_, std::move(d), prec_);
}

RingElement& RingElement::operator+=(const RingElement& o) {
    check_same(*this, o);
    for (int i = 0; i < r_->e; ++i) {
        d_[i] += o.d_[i];
        if (d_[i] >= r_->pM) d_[i] -= r_->pM;
    }
    prec_ = std::min(prec_, o.prec_);
    normalize();
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
    check_same(*this, o);
    for (int i = 0; i < r_->e; ++i) {
        d_[i] -= o.d_[i];
        if (d_[i] < 0) d_[i] += r_->pM;
    }
    prec_ = std::min(prec_, o.prec_);
    normalize();
    return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    check_same(a, b);
    const RingData& R = *a.r_;
    const int e = R.e;
    const std::int64_t pM = R.pM;
    Digits out(e, 0);
    if (R.small_products) {
        boost::container::small_vector<std::int64_t, 64> acc(2 * e - 1, 0);
        for (int i = 0; i < e; ++i) {
            std::int64_t ai = a.d_[i];
            if (ai == 0) continue;
            for (int j = 0; j < e; ++j) acc[i + j] += ai * b.d_[j];
        }
        for (int i = 0; i < e; ++i) out[i] = acc[i] % pM;
        for (int k = 0; k + 1 < e; ++k) {
            std::int64_t c = acc[e + k] % pM;
            if (c == 0) continue;
            const Digits& h = R.high[k];
            for (int i = 0; i < e; ++i) out[i] += c * h[i];
        }
        for (int i = 0; i < e; ++i) out[i] %= pM;
    } else {
        const u128 limit = static_cast<u128>(1) << 126;
        boost::container::small_vector<u128, 64> acc(2 * e - 1, 0);
        for (int i = 0; i < e; ++i) {
            if (a.d_[i] == 0) continue;
            for (int j = 0; j < e; ++j) {
                acc[i + j] += static_cast<u128>(a.d_[i]) * static_cast<u128>(b.d_[j]);
                if (acc[i + j] >= limit) acc[i + j] %= static_cast<u128>(pM);
            }
        }
        boost::container::small_vector<u128, 64> lo(e, 0);
        for (int i = 0; i < e; ++i) lo[i] = acc[i] % static_cast<u128>(pM);
        for (int k = 0; k + 1 < e; ++k) {
            std::int64_t c = static_cast<std::int64_t>(acc[e + k] % static_cast<u128>(pM));
            if (c == 0) continue;
            const Digits& h = R.high[k];
            for (int i = 0; i < e; ++i) {
                lo[i] += static_cast<u128>(c) * static_cast<u128>(h[i]);
                if (lo[i] >= limit) lo[i] %= static_cast<u128>(pM);
            }
        }
        for (int i = 0; i < e; ++i) out[i] = static_cast<std::int64_t>(lo[i] % static_cast<u128>(pM));
    }
    return RingElement(a.r_, std::move(out), std::min(a.prec_, b.prec_));
}

RingElement& RingElement::operator*=(const RingElement& o) { return *this = *this * o; }

RingElement RingElement::scaled(std::int64_t c) const {
    std::int64_t cm = mod_reduce(c, r_->pM);
    Digits d(d_);
    for (auto& x : d) x = mulmod(x, cm, r_->pM);
    return RingElement(r_, std::move(d), prec_);
}

RingElement RingElement::pow(std::uint64_t n) const {
    RingElement result = ring().one().with_precision(prec_);
    RingElement base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

RingElement RingElement::with_precision(int t) const {
    if (t >= prec_) return *this;
    return RingElement(r_, d_, t);
}

RingElement RingElement::div_pi() const {
    const int e = r_->e;
    if (prec_ == 0) return *this;
    if (d_[0] % r_->p != 0) throw ValuationError("element is not divisible by pi");
    std::int64_t q = d_[0] / r_->p;
    Digits out(e, 0);
    for (int i = 0; i + 1 < e; ++i) out[i] = d_[i + 1];
    for (int i = 0; i < e; ++i) out[i] = (out[i] + mulmod(q, r_->p_over_pi[i], r_->pM)) % r_->pM;
    return RingElement(r_, std::move(out), prec_ - 1);
}

RingElement RingElement::div_pi_pow(int k) const {
    if (k <= 0) return *this;
    Valuation v = valuation();
    if (v.value < k) throw ValuationError("element is not divisible by pi^" + std::to_string(k));
    const int e = r_->e;
    int q = k / e, r = k % e;
    RingElement x = *this;
    if (q > 0) {
        if (q > r_->M) q = r_->M;
        std::int64_t pq = r_->ppow[q];
        Digits out(e, 0);
        for (int i = 0; i < e; ++i) {
            if (x.d_[i] % pq != 0) throw ValuationError("digit not divisible by p^q");
            out[i] = x.d_[i] / pq;
        }
        x = RingElement(r_, std::move(out), std::max(0, prec_ - q * e));
    }
    for (int i = 0; i < r; ++i) x = x.div_pi();
    return x;
}

bool RingElement::same_as(const RingElement& o) const {
    return r_ == o.r_ && prec_ == o.prec_ && d_ == o.d_;
}

std::string RingElement::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_->e; ++i) {
        if (i) os << ",";
        os << d_[i];
    }
    os << "]@" << prec_;
    return os.str();
}

ModEquality equal_mod(const RingElement& x, const RingElement& y, int t) {
    RingElement d = x - y;
    Valuation v = d.valuation();
    if (v.determinate) return {v.value >= t, true};
    return {v.value >= t, false};
}

RingElement divide_exact(const RingElement& x, const RingElement& y) {
    check_same(x, y);
    Valuation vy = y.valuation();
    if (!vy.determinate) throw ValuationError("divisor has indeterminate valuation");
    Valuation vx = x.valuation();
    if (vx.value < vy.value)
        throw ValuationError("v(x) = " + std::to_string(vx.value) + " < v(y) = " +
                             std::to_string(vy.value));
    RingElement xs = x.div_pi_pow(vy.value);
    RingElement ys = y.div_pi_pow(vy.value);
    return xs * invert_unit(ys);
}

RingElement invert_unit(const RingElement& x) {
    if (!x.valid()) throw MixedRingError("invalid element");
    if (!x.is_unit()) throw ValuationError("element is not a unit");
    const RingData* R = x.ring_data();
    RingElement y = x.ring().from_int(inverse_mod(x.digits()[0], R->pM)).with_precision(x.precision());
    RingElement one = x.ring().one();
    for (int it = 0; it < 64; ++it) {
        RingElement err = x * y - one;
        if (err.is_zero()) return y;
        y -= y * err;
    }
    throw CertificationError("Newton inversion did not converge");
}

RingElement eta(const RingDescriptor& ring) {
    if (ring.flavor() != Flavor::cyclotomic_p2)
        throw ValidationError("eta needs the cyclotomic flavor");
    const int p = ring.p();
    RingElement s = ring.zero();
    RingElement pk = ring.one();
    RingElement pi = ring.pi();
    for (int k = 1; k < p; ++k) {
        pk *= pi;
        RingElement term = pk.scaled(inverse_mod(k, ring.data()->pM));
        if (k % 2 == 1)
            s += term;
        else
            s -= term;
    }
    return s;
}

std::vector<int> pi_adic_digits(const RingElement& x, int t) {
    if (t > x.precision())
        throw PrecisionError("requested " + std::to_string(t) + " digits from an element known mod pi^" +
                             std::to_string(x.precision()));
    std::vector<int> out;
    out.reserve(t);
    RingElement y = x;
    const RingElement one = x.ring().one();
    for (int i = 0; i < t; ++i) {
        int d = y.residue();
        out.push_back(d);
        if (i + 1 < t) {
            y -= one.scaled(d);
            y = y.div_pi();
        }
    }
    return out;
}

QuotElement::QuotElement(RingDescriptor ring, std::vector<int> digits)
    : ring_(ring), digits_(std::move(digits)) {
    RingElement s = ring_.zero();
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (digits_[i] < 0 || digits_[i] >= ring_.p())
            throw ValidationError("pi-adic digits must lie in [0, p)");
        if (digits_[i]) s += ring_.pi_pow(static_cast<int>(i)).scaled(digits_[i]);
    }
    lift_ = s;
}

bool QuotElement::is_zero() const {
    return std::all_of(digits_.begin(), digits_.end(), [](int d) { return d == 0; });
}

int QuotElement::valuation() const {
    for (std::size_t i = 0; i < digits_.size(); ++i)
        if (digits_[i]) return static_cast<int>(i);
    return modulus();
}

std::string QuotElement::digit_string() const {
    std::string s;
    for (int d : digits_) s += static_cast<char>('0' + d);
    return s.empty() ? "-" : s;
}

QuotElement reduce_mod(const RingElement& x, int t) {
    return QuotElement(x.ring(), pi_adic_digits(x, t));
}

void for_each_quotient(const RingDescriptor& ring, int t,
                       const std::function<void(const QuotElement&)>& fn) {
    if (t < 0 || t > ring.max_precision()) throw PrecisionError("quotient modulus out of range");
    std::vector<int> digits(t, 0);
    const int p = ring.p();
    while (true) {
        fn(QuotElement(ring, digits));
        int i = t - 1;
        while (i >= 0 && digits[i] == p - 1) digits[i--] = 0;
        if (i < 0) break;
        ++digits[i];
    }
}

std::vector<QuotElement> enumerate_quotient(const RingDescriptor& ring, int t) {
    std::vector<QuotElement> out;
    for_each_quotient(ring, t, [&](const QuotElement& q) { out.push_back(q); });
    return out;
}

}  // namespace zp2
