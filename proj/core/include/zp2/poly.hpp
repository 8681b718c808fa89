#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zp2/dvr.hpp"

namespace zp2 {

// Exponent vector of up to 8 variables, 8 bits each; variable i sits in byte i.
using Mono = std::uint64_t;

constexpr int kMaxVars = 8;

inline int mono_exp(Mono m, int var) { return static_cast<int>((m >> (8 * var)) & 0xff); }

inline Mono mono_var(int var, int exp) { return static_cast<Mono>(exp) << (8 * var); }

Mono mono_mul(Mono a, Mono b);
int mono_degree(Mono m);
Mono mono_make(const std::vector<int>& exps);

// Sparse multivariate polynomial with coefficients in R (or in R/pi^t when
// the coefficients carry precision t).
class Poly {
public:
    using Terms = std::map<Mono, RingElement>;

    Poly() = default;
    explicit Poly(RingDescriptor ring);

    static Poly constant(const RingElement& c);
    static Poly constant(RingDescriptor ring, std::int64_t c);
    static Poly variable(RingDescriptor ring, int var);
    static Poly monomial(const RingElement& c, Mono m);
    // univariate polynomial sum c_i x_var^i
    static Poly univariate(const std::vector<RingElement>& coeffs, int var = 0);

    RingDescriptor ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    // smallest precision of any coefficient that has entered this polynomial
    int precision() const { return prec_; }

    void add_term(Mono m, const RingElement& c);
    RingElement coeff(Mono m) const;
    RingElement constant_term() const { return coeff(0); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const RingElement& c, const Poly& a);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly mul_mono(Mono m) const;

    Poly pow(unsigned n) const;
    Poly with_precision(int t) const;
    // divide every coefficient exactly by c; DivisibilityError on failure
    Poly divide_exact(const RingElement& c) const;
    int degree(int var) const;
    int total_degree() const;
    int max_var() const;
    // variable i becomes variable map[i]
    Poly rename(const std::vector<int>& map) const;
    Poly shift(int offset) const;
    // evaluate every variable at a ring element
    RingElement evaluate(const std::vector<RingElement>& values) const;
    // the univariate coefficient list in var (other variables must be absent)
    std::vector<RingElement> univariate_coeffs(int var = 0) const;

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    RingDescriptor ring_;
    Terms terms_;
    int prec_ = 0;
};

// g_var^degree + tail, where tail has smaller degree in var and only involves
// variables that are reduced later
struct MonicRelation {
    int var = 0;
    int degree = 0;
    Poly tail;

    // build from a polynomial that is monic of the given degree in var
    static MonicRelation from_poly(const Poly& f, int var);
    Poly as_poly() const;
};

// remainder of f under the triangular system, processed in the given order
Poly reduce(const Poly& f, const std::vector<MonicRelation>& rels);

using Reducer = std::function<Poly(const Poly&)>;

// f(images[0], images[1], ...), reducing after every product when r is set
Poly substitute(const Poly& f, const std::vector<Poly>& images, const Reducer& r = {});

}  // namespace zp2
