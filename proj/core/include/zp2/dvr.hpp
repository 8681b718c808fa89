#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "zp2/errors.hpp"

namespace zp2 {

enum class Flavor { cyclotomic_p2, custom };

using Digits = boost::container::small_vector<std::int64_t, 20>;

// Shared, immutable description of R = Z[x]/(E(x), p^M).
// Instances live in a process-wide registry and are never freed, so
// elements may hold raw pointers to them.
struct RingData {
    int p = 0;
    int e = 0;
    int M = 0;
    std::int64_t pM = 0;
    std::vector<std::int64_t> ppow;        // p^0 .. p^M
    std::vector<std::int64_t> eisenstein;  // c_0..c_{e-1}; leading 1 implicit
    Flavor flavor = Flavor::custom;
    std::vector<Digits> high;  // x^{e+k} reduced, k = 0..e-2
    Digits p_over_pi;          // digits of p / pi
    bool small_products = false;

    int max_precision() const { return e * M; }
};

class RingElement;
class QuotElement;

class RingDescriptor {
public:
    RingDescriptor() = default;
    explicit RingDescriptor(const RingData* d) : d_(d) {}

    int p() const { return d_->p; }
    int e() const { return d_->e; }
    int M() const { return d_->M; }
    Flavor flavor() const { return d_->flavor; }
    int max_precision() const { return d_->max_precision(); }
    // c_0..c_e of E(x), c_e = 1
    std::vector<std::int64_t> eisenstein_coeffs() const;
    const RingData* data() const { return d_; }
    bool valid() const { return d_ != nullptr; }

    RingElement zero() const;
    RingElement one() const;
    RingElement from_int(std::int64_t c) const;
    RingElement from_mpz(const mpz_class& c) const;
    // p-integral rationals only
    RingElement from_rational(const mpq_class& q) const;
    RingElement pi() const;
    RingElement pi_pow(int k) const;
    RingElement p_elem() const;
    // zeta_{p^2} = 1 + pi
    RingElement zeta2() const;
    // zeta_p = zeta_{p^2}^p
    RingElement zeta1() const;
    // lambda_(k) = zeta_k - 1 for k = 1, 2
    RingElement lambda(int k) const;

    friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
        return a.d_ == b.d_;
    }
    friend bool operator!=(const RingDescriptor& a, const RingDescriptor& b) {
        return a.d_ != b.d_;
    }

private:
    const RingData* d_ = nullptr;
};

RingDescriptor make_ring(int p, int M = 12);
// coeffs = c_0..c_e with c_e = 1
RingDescriptor make_custom_ring(int p, int M, const std::vector<std::int64_t>& coeffs);

bool is_prime(std::int64_t n);

struct Valuation {
    bool determinate = false;
    int value = 0;  // exact valuation, or the precision bound when indeterminate

    static Valuation exact(int v) { return {true, v}; }
    static Valuation indeterminate(int k) { return {false, k}; }
    // lower bound valid in both cases
    int at_least() const { return value; }
    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.determinate == b.determinate && a.value == b.value;
    }
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

// outcome of a congruence test x == y mod pi^t
struct ModEquality {
    bool equal = false;
    // true: the difference has a known valuation >= t
    // false with equal: the difference is zero at its stored precision (>= t)
    bool determinate = false;
    explicit operator bool() const { return equal; }
};

class RingElement {
public:
    RingElement() = default;
    RingElement(const RingData* r, Digits d, int prec);

    RingDescriptor ring() const { return RingDescriptor(r_); }
    const RingData* ring_data() const { return r_; }
    int precision() const { return prec_; }
    const Digits& digits() const { return d_; }
    bool valid() const { return r_ != nullptr; }

    Valuation valuation() const;
    // every stored digit is zero, i.e. x == 0 mod pi^precision
    bool is_zero() const;
    bool is_unit() const;
    // x mod pi as an integer in [0, p)
    int residue() const;

    RingElement operator-() const;
    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const RingElement& o);
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    RingElement scaled(std::int64_t c) const;

    RingElement pow(std::uint64_t n) const;
    RingElement with_precision(int t) const;
    RingElement div_pi() const;
    RingElement div_pi_pow(int k) const;

    // exact digit equality at equal precision
    bool same_as(const RingElement& o) const;

    std::string to_string() const;

private:
    friend class RingDescriptor;
    void normalize();
    const RingData* r_ = nullptr;
    int prec_ = 0;
    Digits d_;
};

ModEquality equal_mod(const RingElement& x, const RingElement& y, int t);
RingElement divide_exact(const RingElement& x, const RingElement& y);
RingElement invert_unit(const RingElement& x);
RingElement eta(const RingDescriptor& ring);

// canonical pi-adic digit expansion of x mod pi^t
std::vector<int> pi_adic_digits(const RingElement& x, int t);

class QuotElement {
public:
    QuotElement() = default;
    QuotElement(RingDescriptor ring, std::vector<int> digits);

    RingDescriptor ring() const { return ring_; }
    int modulus() const { return static_cast<int>(digits_.size()); }
    const std::vector<int>& digits() const { return digits_; }
    // canonical lift sum a_i pi^i at full precision
    const RingElement& lift() const { return lift_; }
    // the lift truncated to precision t
    RingElement element() const { return lift_.with_precision(modulus()); }
    bool is_zero() const;
    // v of the class, capped at the modulus
    int valuation() const;
    std::string digit_string() const;

    friend bool operator==(const QuotElement& a, const QuotElement& b) {
        return a.digits_ == b.digits_;
    }
    friend bool operator!=(const QuotElement& a, const QuotElement& b) { return !(a == b); }
    friend bool operator<(const QuotElement& a, const QuotElement& b) {
        return a.digits_ < b.digits_;
    }

private:
    RingDescriptor ring_;
    std::vector<int> digits_;
    RingElement lift_;
};

QuotElement reduce_mod(const RingElement& x, int t);
void for_each_quotient(const RingDescriptor& ring, int t,
                       const std::function<void(const QuotElement&)>& fn);
std::vector<QuotElement> enumerate_quotient(const RingDescriptor& ring, int t);

std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

}  // namespace zp2
