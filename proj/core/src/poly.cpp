#include "zp2/poly.hpp"

#include <algorithm>
#include <sstream>

namespace zp2 {

namespace {
constexpr Mono kHighBits = 0x8080808080808080ULL;
}

Mono mono_mul(Mono a, Mono b) {
    if ((a | b) & kHighBits) throw PrecisionError("monomial exponent exceeds 127");
    return a + b;
}

int mono_degree(Mono m) {
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) d += mono_exp(m, i);
    return d;
}

Mono mono_make(const std::vector<int>& exps) {
    Mono m = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0 || exps[i] > 255) throw PrecisionError("exponent out of range");
        m |= mono_var(static_cast<int>(i), exps[i]);
    }
    return m;
}

Poly::Poly(RingDescriptor ring) : ring_(ring), prec_(ring.max_precision()) {}

Poly Poly::constant(const RingElement& c) {
    Poly f(c.ring());
    f.add_term(0, c);
    return f;
}

Poly Poly::constant(RingDescriptor ring, std::int64_t c) { return constant(ring.from_int(c)); }

Poly Poly::variable(RingDescriptor ring, int var) {
    Poly f(ring);
    f.add_term(mono_var(var, 1), ring.one());
    return f;
}

Poly Poly::monomial(const RingElement& c, Mono m) {
    Poly f(c.ring());
    f.add_term(m, c);
    return f;
}

Poly Poly::univariate(const std::vector<RingElement>& coeffs, int var) {
    if (coeffs.empty()) throw ValidationError("empty coefficient list");
    Poly f(coeffs.front().ring());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        f.add_term(mono_var(var, static_cast<int>(i)), coeffs[i]);
    return f;
}

void Poly::add_term(Mono m, const RingElement& c) {
    prec_ = std::min(prec_, c.precision());
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

RingElement Poly::coeff(Mono m) const {
    auto it = terms_.find(m);
    if (it == terms_.end()) return ring_.zero().with_precision(prec_);
    return it->second;
}

Poly Poly::operator-() const {
    Poly f(ring_);
    f.prec_ = prec_;
    for (const auto& [m, c] : terms_) f.terms_.emplace(m, -c);
    return f;
}

Poly& Poly::operator+=(const Poly& o) {
    if (!ring_.valid()) ring_ = o.ring_, prec_ = o.prec_;
    if (o.ring_ != ring_) throw MixedRingError("polynomials over different rings");
    prec_ = std::min(prec_, o.prec_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (!ring_.valid()) ring_ = o.ring_, prec_ = o.prec_;
    if (o.ring_ != ring_) throw MixedRingError("polynomials over different rings");
    prec_ = std::min(prec_, o.prec_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.ring_ != b.ring_) throw MixedRingError("polynomials over different rings");
    Poly f(a.ring_);
    f.prec_ = std::min(a.prec_, b.prec_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) f.add_term(mono_mul(ma, mb), ca * cb);
    return f;
}

Poly operator*(const RingElement& c, const Poly& a) {
    Poly f(a.ring_);
    f.prec_ = std::min(a.prec_, c.precision());
    for (const auto& [m, x] : a.terms_) f.add_term(m, c * x);
    return f;
}

Poly Poly::mul_mono(Mono m) const {
    Poly f(ring_);
    f.prec_ = prec_;
    for (const auto& [k, c] : terms_) f.terms_.emplace(mono_mul(k, m), c);
    return f;
}

Poly Poly::pow(unsigned n) const {
    Poly result = constant(ring_.one()).with_precision(prec_);
    Poly base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

Poly Poly::with_precision(int t) const {
    Poly f(ring_);
    f.prec_ = std::min(prec_, t);
    for (const auto& [m, c] : terms_) f.add_term(m, c.with_precision(t));
    return f;
}

Poly Poly::divide_exact(const RingElement& c) const {
    Poly f(ring_);
    Valuation vc = c.valuation();
    if (!vc.determinate) throw DivisibilityError("divisor has indeterminate valuation");
    f.prec_ = std::max(0, std::min(prec_, c.precision()) - vc.value);
    for (const auto& [m, x] : terms_) {
        try {
            f.add_term(m, zp2::divide_exact(x, c));
        } catch (const ValuationError& err) {
            throw DivisibilityError(std::string("coefficient not divisible: ") + err.what());
        }
    }
    return f;
}

int Poly::degree(int var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_exp(m, var));
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

int Poly::max_var() const {
    int v = -1;
    for (const auto& [m, c] : terms_)
        for (int i = 0; i < kMaxVars; ++i)
            if (mono_exp(m, i)) v = std::max(v, i);
    return v;
}

Poly Poly::rename(const std::vector<int>& map) const {
    Poly f(ring_);
    f.prec_ = prec_;
    for (const auto& [m, c] : terms_) {
        Mono out = 0;
        for (int i = 0; i < kMaxVars; ++i) {
            int ex = mono_exp(m, i);
            if (!ex) continue;
            if (i >= static_cast<int>(map.size()) || map[i] < 0 || map[i] >= kMaxVars)
                throw ValidationError("variable rename out of range");
            out = mono_mul(out, mono_var(map[i], ex));
        }
        f.add_term(out, c);
    }
    return f;
}

Poly Poly::shift(int offset) const {
    std::vector<int> map(kMaxVars, -1);
    for (int i = 0; i + offset < kMaxVars; ++i) map[i] = i + offset;
    return rename(map);
}

RingElement Poly::evaluate(const std::vector<RingElement>& values) const {
    RingElement s = ring_.zero().with_precision(prec_);
    for (const auto& [m, c] : terms_) {
        RingElement t = c;
        for (int i = 0; i < kMaxVars; ++i) {
            int ex = mono_exp(m, i);
            if (!ex) continue;
            if (i >= static_cast<int>(values.size())) throw ValidationError("missing value");
            t *= values[i].pow(ex);
        }
        s += t;
    }
    return s;
}

std::vector<RingElement> Poly::univariate_coeffs(int var) const {
    std::vector<RingElement> out(degree(var) + 1, ring_.zero().with_precision(prec_));
    for (const auto& [m, c] : terms_) {
        if (m != mono_var(var, mono_exp(m, var)))
            throw ValidationError("polynomial is not univariate");
        out[mono_exp(m, var)] = c;
    }
    return out;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string();
        for (int i = 0; i < kMaxVars; ++i) {
            int ex = mono_exp(m, i);
            if (!ex) continue;
            os << "*" << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i));
            if (ex > 1) os << "^" << ex;
        }
    }
    return os.str();
}

MonicRelation MonicRelation::from_poly(const Poly& f, int var) {
    int d = f.degree(var);
    Poly lead(f.ring());
    Poly tail(f.ring());
    for (const auto& [m, c] : f.terms()) {
        if (mono_exp(m, var) == d)
            lead.add_term(m, c);
        else
            tail.add_term(m, c);
    }
    if (lead.size() != 1 || lead.terms().begin()->first != mono_var(var, d))
        throw ValidationError("relation is not monic in its generator");
    RingElement lc = lead.terms().begin()->second;
    if (!(lc - f.ring().one()).is_zero()) throw ValidationError("leading coefficient is not 1");
    MonicRelation r;
    r.var = var;
    r.degree = d;
    r.tail = tail;
    return r;
}

Poly MonicRelation::as_poly() const {
    return tail + Poly::monomial(tail.ring().one(), mono_var(var, degree));
}

namespace {

Poly reduce_one(const Poly& f, const MonicRelation& rel) {
    int maxd = f.degree(rel.var);
    if (maxd < rel.degree) return f;
    const Mono vmask = static_cast<Mono>(0xff) << (8 * rel.var);
    std::vector<Poly> buckets(maxd + 1, Poly(f.ring()));
    for (const auto& [m, c] : f.terms()) buckets[mono_exp(m, rel.var)].add_term(m & ~vmask, c);
    std::vector<std::pair<int, std::pair<Mono, RingElement>>> tail;
    for (const auto& [m, c] : rel.tail.terms())
        tail.push_back({mono_exp(m, rel.var), {m & ~vmask, -c}});
    int prec = std::min(f.precision(), rel.tail.precision());
    for (int D = maxd; D >= rel.degree; --D) {
        for (const auto& [rest, c] : buckets[D].terms()) {
            for (const auto& [ev, tm] : tail) {
                buckets[D - rel.degree + ev].add_term(mono_mul(rest, tm.first), c * tm.second);
            }
        }
    }
    Poly out(f.ring());
    for (int D = 0; D < rel.degree && D <= maxd; ++D)
        out += buckets[D].mul_mono(mono_var(rel.var, D));
    return out.with_precision(prec);
}

}  // namespace

Poly reduce(const Poly& f, const std::vector<MonicRelation>& rels) {
    Poly g = f;
    for (const auto& r : rels) g = reduce_one(g, r);
    return g;
}

Poly substitute(const Poly& f, const std::vector<Poly>& images, const Reducer& r) {
    std::vector<std::vector<Poly>> cache(images.size());
    auto power = [&](int var, int ex) -> const Poly& {
        auto& c = cache[var];
        if (c.empty()) c.push_back(Poly::constant(f.ring().one()));
        while (static_cast<int>(c.size()) <= ex) {
            Poly next = c.back() * images[var];
            c.push_back(r ? r(next) : next);
        }
        return c[ex];
    };
    Poly out(f.ring());
    for (const auto& [m, c] : f.terms()) {
        Poly t = Poly::constant(c);
        for (int i = 0; i < kMaxVars; ++i) {
            int ex = mono_exp(m, i);
            if (!ex) continue;
            if (i >= static_cast<int>(images.size())) throw ValidationError("missing image for variable");
            t = t * power(i, ex);
            if (r) t = r(t);
        }
        out += t;
    }
    return r ? r(out) : out;
}

}  // namespace zp2
