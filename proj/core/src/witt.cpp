#include "zp2/witt.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <tuple>

namespace zp2 {

namespace {

using Terms = std::map<Mono, mpz_class>;

void ip_add_term(Terms& t, Mono m, const mpz_class& c) {
    if (c == 0) return;
    auto it = t.find(m);
    if (it == t.end()) {
        t.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) t.erase(it);
}

UniversalPoly ip_add(const UniversalPoly& a, const UniversalPoly& b, long sign = 1) {
    UniversalPoly out = a;
    for (const auto& [m, c] : b.terms) ip_add_term(out.terms, m, sign > 0 ? mpz_class(c) : mpz_class(-c));
    return out;
}

UniversalPoly ip_mul(const UniversalPoly& a, const UniversalPoly& b) {
    UniversalPoly out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) ip_add_term(out.terms, mono_mul(ma, mb), ca * cb);
    return out;
}

UniversalPoly ip_const(long c) {
    UniversalPoly out;
    ip_add_term(out.terms, 0, mpz_class(c));
    return out;
}

UniversalPoly ip_pow(const UniversalPoly& a, long n) {
    UniversalPoly result = ip_const(1);
    UniversalPoly base = a;
    while (n) {
        if (n & 1) result = ip_mul(result, base);
        n >>= 1;
        if (n) base = ip_mul(base, base);
    }
    return result;
}

UniversalPoly ip_scale(const UniversalPoly& a, const mpz_class& s) {
    UniversalPoly out;
    for (const auto& [m, c] : a.terms) ip_add_term(out.terms, m, c * s);
    return out;
}

UniversalPoly ip_divexact(const UniversalPoly& a, const mpz_class& d) {
    UniversalPoly out;
    for (const auto& [m, c] : a.terms) {
        if (c % d != 0) throw CertificationError("universal Witt polynomial is not integral");
        out.terms.emplace(m, c / d);
    }
    return out;
}

mpz_class zpow(long p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, k);
    return r;
}

int max_length(int p) { return p == 3 ? kWittMaxLength : kWittMaxLength - 1; }

struct Memo {
    std::recursive_mutex mu;
    std::map<std::tuple<char, int, int>, std::unique_ptr<UniversalPoly>> table;
};

Memo& memo() {
    static Memo m;
    return m;
}

template <class F>
const UniversalPoly& memoized(char kind, int p, int r, F&& compute) {
    auto& m = memo();
    std::lock_guard<std::recursive_mutex> lock(m.mu);
    auto key = std::make_tuple(kind, p, r);
    auto it = m.table.find(key);
    if (it != m.table.end()) return *it->second;
    auto value = std::make_unique<UniversalPoly>(compute());
    const UniversalPoly& ref = *value;
    m.table.emplace(key, std::move(value));
    return ref;
}

void check_index(int p, int r, int limit) {
    if (r < 0 || r >= limit)
        throw PrecisionError("Witt component " + std::to_string(r) + " is beyond the supported length at p = " +
                             std::to_string(p));
}

void check_odd_prime(int p) {
    if (p < 3 || !is_prime(p)) throw ValidationError("Witt layer needs an odd prime");
}

int combine_modulus(int a, int b) {
    if (a == 0) return b;
    if (b == 0) return a;
    return std::min(a, b);
}

RingElement zero_at(const RingDescriptor& R, int t) {
    return t > 0 ? R.zero().with_precision(t) : R.zero();
}

}  // namespace

RingElement UniversalPoly::evaluate(const RingDescriptor& ring, const std::vector<RingElement>& values) const {
    std::vector<std::vector<RingElement>> powers(values.size());
    int prec = ring.max_precision();
    for (const auto& v : values) prec = std::min(prec, v.precision());
    RingElement s = ring.zero().with_precision(prec);
    for (const auto& [m, c] : terms) {
        RingElement t = ring.from_mpz(c);
        for (int i = 0; i < kMaxVars; ++i) {
            int ex = mono_exp(m, i);
            if (!ex) continue;
            auto& pw = powers.at(i);
            if (pw.empty()) pw.push_back(ring.one());
            while (static_cast<int>(pw.size()) <= ex) pw.push_back(pw.back() * values[i]);
            t *= pw[ex];
        }
        s += t;
    }
    return s;
}

bool UniversalPoly::isobaric(int p, long w) const {
    for (const auto& [m, c] : terms) {
        long weight = 0;
        for (int i = 0; i < kMaxVars; ++i) {
            long pi = 1;
            for (int k = 0; k < i % kWittU; ++k) pi *= p;
            weight += pi * mono_exp(m, i);
        }
        if (weight != w) return false;
    }
    return true;
}

UniversalPoly ghost_poly(int p, int r, int offset) {
    UniversalPoly out;
    for (int i = 0; i <= r; ++i) {
        long ex = 1;
        for (int k = 0; k < r - i; ++k) ex *= p;
        if (ex > 127) throw PrecisionError("ghost polynomial degree too large");
        ip_add_term(out.terms, mono_var(offset + i, static_cast<int>(ex)), zpow(p, i));
    }
    return out;
}

const UniversalPoly& witt_sum_poly(int p, int r) {
    check_odd_prime(p);
    check_index(p, r, max_length(p));
    return memoized('S', p, r, [&] {
        UniversalPoly num = ip_add(ghost_poly(p, r, 0), ghost_poly(p, r, kWittU));
        for (int i = 0; i < r; ++i) {
            UniversalPoly t = ip_scale(ip_pow(witt_sum_poly(p, i), zpow(p, r - i).get_si()), zpow(p, i));
            num = ip_add(num, t, -1);
        }
        return ip_divexact(num, zpow(p, r));
    });
}

const UniversalPoly& witt_product_poly(int p, int r) {
    check_odd_prime(p);
    check_index(p, r, max_length(p));
    return memoized('P', p, r, [&] {
        UniversalPoly num = ip_mul(ghost_poly(p, r, 0), ghost_poly(p, r, kWittU));
        for (int i = 0; i < r; ++i) {
            UniversalPoly t = ip_scale(ip_pow(witt_product_poly(p, i), zpow(p, r - i).get_si()), zpow(p, i));
            num = ip_add(num, t, -1);
        }
        return ip_divexact(num, zpow(p, r));
    });
}

const UniversalPoly& witt_frobenius_poly(int p, int r) {
    check_odd_prime(p);
    check_index(p, r, max_length(p) - 1);
    return memoized('F', p, r, [&] {
        UniversalPoly num = ghost_poly(p, r + 1, 0);
        for (int i = 0; i < r; ++i) {
            UniversalPoly t = ip_scale(ip_pow(witt_frobenius_poly(p, i), zpow(p, r - i).get_si()), zpow(p, i));
            num = ip_add(num, t, -1);
        }
        return ip_divexact(num, zpow(p, r));
    });
}

UniversalPoly sum_ghost_defect(int p, int r) {
    UniversalPoly lhs;
    for (int i = 0; i <= r; ++i)
        lhs = ip_add(lhs, ip_scale(ip_pow(witt_sum_poly(p, i), zpow(p, r - i).get_si()), zpow(p, i)));
    lhs = ip_add(lhs, ghost_poly(p, r, 0), -1);
    return ip_add(lhs, ghost_poly(p, r, kWittU), -1);
}

UniversalPoly frobenius_ghost_defect(int p, int r) {
    UniversalPoly lhs;
    for (int i = 0; i <= r; ++i)
        lhs = ip_add(lhs, ip_scale(ip_pow(witt_frobenius_poly(p, i), zpow(p, r - i).get_si()), zpow(p, i)));
    return ip_add(lhs, ghost_poly(p, r + 1, 0), -1);
}

WittVector::WittVector(RingDescriptor ring, std::vector<RingElement> coords, int modulus)
    : ring_(ring), coords_(std::move(coords)), modulus_(modulus) {
    for (auto& c : coords_) {
        if (c.ring_data() != ring_.data()) throw MixedRingError("Witt coordinate from another ring");
        if (modulus_ > 0) c = c.with_precision(modulus_);
    }
    trim();
}

WittVector WittVector::zero(RingDescriptor ring, int modulus) { return WittVector(ring, {}, modulus); }

WittVector WittVector::teichmuller(const RingElement& a, int modulus) {
    return WittVector(a.ring(), {a}, modulus);
}

void WittVector::trim() {
    while (!coords_.empty() && coords_.back().is_zero()) coords_.pop_back();
}

RingElement WittVector::coord(std::size_t i) const {
    if (i < coords_.size()) return coords_[i];
    return zero_at(ring_, modulus_);
}

WittVector WittVector::truncated(std::size_t len) const {
    std::vector<RingElement> c(coords_.begin(), coords_.begin() + std::min(len, coords_.size()));
    return WittVector(ring_, std::move(c), modulus_);
}

WittVector WittVector::reduced(int modulus) const { return WittVector(ring_, coords_, modulus); }

bool operator==(const WittVector& a, const WittVector& b) {
    if (a.ring_ != b.ring_) return false;
    std::size_t n = std::max(a.length(), b.length());
    for (std::size_t i = 0; i < n; ++i)
        if (!(a.coord(i) - b.coord(i)).is_zero()) return false;
    return true;
}

RingElement ghost(const WittVector& w, int r) {
    const RingDescriptor R = w.ring();
    const int p = R.p();
    RingElement s = zero_at(R, w.modulus());
    for (int i = 0; i <= r; ++i) {
        std::uint64_t ex = 1;
        for (int k = 0; k < r - i; ++k) ex *= p;
        s += w.coord(i).pow(ex) * R.from_mpz(zpow(p, i));
    }
    return s;
}

namespace {

WittVector apply_binary(const WittVector& u, const WittVector& v, int length,
                        const UniversalPoly& (*poly)(int, int)) {
    if (u.ring() != v.ring()) throw MixedRingError("Witt vectors over different rings");
    const RingDescriptor R = u.ring();
    if (length > max_length(R.p())) throw PrecisionError("requested Witt length exceeds the supported table");
    int t = combine_modulus(u.modulus(), v.modulus());
    std::vector<RingElement> values(kMaxVars, zero_at(R, t));
    for (int i = 0; i < kWittU; ++i) {
        values[i] = u.coord(i).with_precision(t > 0 ? t : R.max_precision());
        values[kWittU + i] = v.coord(i).with_precision(t > 0 ? t : R.max_precision());
    }
    std::vector<RingElement> out;
    for (int r = 0; r < length; ++r) out.push_back(poly(R.p(), r).evaluate(R, values));
    return WittVector(R, std::move(out), t);
}

}  // namespace

WittVector witt_add(const WittVector& u, const WittVector& v, int length) {
    return apply_binary(u, v, length, &witt_sum_poly);
}

WittVector witt_mul(const WittVector& u, const WittVector& v, int length) {
    return apply_binary(u, v, length, &witt_product_poly);
}

WittVector witt_neg(const WittVector& u) {
    std::vector<RingElement> c;
    for (const auto& x : u.coords()) c.push_back(-x);
    return WittVector(u.ring(), std::move(c), u.modulus());
}

WittVector witt_sub(const WittVector& u, const WittVector& v, int length) {
    return witt_add(u, witt_neg(v), length);
}

WittVector witt_scalar(long n, const WittVector& u, int length) {
    if (n < 0) return witt_scalar(-n, witt_neg(u), length);
    WittVector result = WittVector::zero(u.ring(), u.modulus());
    WittVector base = u;
    while (n) {
        if (n & 1) result = witt_add(result, base, length);
        n >>= 1;
        if (n) base = witt_add(base, base, length);
    }
    return result;
}

WittVector scalar_teich(const RingElement& c, const WittVector& u) {
    std::vector<RingElement> out;
    RingElement cp = c;
    for (std::size_t i = 0; i < u.length(); ++i) {
        out.push_back(cp * u.coord(i));
        cp = cp.pow(u.ring().p());
    }
    return WittVector(u.ring(), std::move(out), u.modulus());
}

WittVector verschiebung(const WittVector& u) {
    std::vector<RingElement> out;
    out.push_back(zero_at(u.ring(), u.modulus()));
    for (const auto& x : u.coords()) out.push_back(x);
    return WittVector(u.ring(), std::move(out), u.modulus());
}

WittVector frobenius_w(const WittVector& u, int length) {
    const RingDescriptor R = u.ring();
    const int p = R.p();
    const int t = u.modulus();
    std::vector<RingElement> out;
    if (t > 0 && t <= R.e()) {
        // p = 0 in R/pi^t: F is the coordinate-wise p-th power
        for (std::size_t i = 0; i < u.length(); ++i) out.push_back(u.coord(i).pow(p));
        return WittVector(R, std::move(out), t);
    }
    if (length > max_length(p) - 1) throw PrecisionError("requested Frobenius length exceeds the supported table");
    std::vector<RingElement> values(kMaxVars, zero_at(R, t));
    for (int i = 0; i < kWittU; ++i) values[i] = u.coord(i);
    for (int r = 0; r < length; ++r) out.push_back(witt_frobenius_poly(p, r).evaluate(R, values));
    return WittVector(R, std::move(out), t);
}

bool is_frobenius_kernel(const WittVector& u, const RingElement& mu, int t) {
    WittVector w = u.reduced(t);
    for (const auto& c : w.coords())
        if (c.valuation().at_least() < 1) return false;
    const int p = w.ring().p();
    RingElement scalar = mu.pow(p - 1);
    if (t > 0) scalar = scalar.with_precision(t);
    int length = std::min<int>(max_length(p) - 1, std::max<int>(kWittDefaultLength, static_cast<int>(w.length())));
    WittVector lhs = frobenius_w(w, length);
    WittVector rhs = scalar_teich(scalar, w);
    if (t > 0 && t <= w.ring().e()) return lhs == rhs;
    return lhs == rhs.truncated(length);
}

WittVector mult_by_p_of_lift(const WittVector& lift, int n, int length) {
    const int p = lift.ring().p();
    WittVector integral = lift.reduced(0);
    WittVector prod = witt_scalar(p, integral, length);
    return prod.reduced(n * p);
}

WittVector mult_by_p(const WittVector& u, int n, int length) {
    std::vector<RingElement> lifts;
    for (const auto& c : u.coords()) lifts.push_back(reduce_mod(c, n).lift());
    return mult_by_p_of_lift(WittVector(u.ring(), std::move(lifts), 0), n, length);
}

WittVector psi_star_image(const WittVector& b, const RingElement& mu) {
    const RingDescriptor R = b.ring();
    const int p = R.p();
    RingElement c;
    try {
        c = divide_exact(R.p_elem(), mu.pow(p - 1));
    } catch (const ValuationError&) {
        throw ValuationError("p / mu^{p-1} is not in R");
    }
    if (b.modulus() > 0) c = c.with_precision(b.modulus());
    int length = std::min<int>(max_length(p), std::max<int>(kWittDefaultLength, static_cast<int>(b.length()) + 1));
    return witt_add(scalar_teich(c, b), verschiebung(b), length);
}

}  // namespace zp2
