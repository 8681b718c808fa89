#pragma once

#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "zp2/dvr.hpp"
#include "zp2/poly.hpp"
#include "zp2/witt.hpp"

namespace zp2 {

// Laurent polynomial in U and Lambda with rational coefficients;
// keys are (exponent of U, exponent of Lambda)
struct BiPoly {
    std::map<std::pair<int, int>, mpq_class> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(int u, int l, const mpq_class& c);
    int min_lambda_exp() const;
    bool p_integral(int p) const;
    // value at U = u, Lambda = l
    RingElement evaluate(const RingElement& u, const RingElement& l) const;
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator+(BiPoly a, const BiPoly& b);
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms == b.terms; }
};

// coefficients c_0..c_D of a truncated series over Q
using RationalSeries = std::vector<mpq_class>;
using DeformedSeries = std::vector<BiPoly>;
using RingSeries = std::vector<RingElement>;

constexpr int default_truncation(int p) { return p * p * p; }

// E_p(T), certified p-integral
const RationalSeries& ah_series(int p, int D);
// E_p(U, Lambda; T) by binomial expansion of its defining product, certified
// to be polynomial in Lambda with p-integral coefficients
const DeformedSeries& deformed_ah(int p, int D);
// prod over (i,p)=1 of E_p(U Lambda^{i-1} T^i)^{(-1)^{i-1}/i}, truncated at D
DeformedSeries ah_product_formula(int p, int D);

// coefficient-wise specializations of E_p(U, Lambda; T)
std::vector<mpq_class> specialize_u_equals_lambda(const DeformedSeries& s);
DeformedSeries specialize_lambda_zero(const DeformedSeries& s);

// E_p(a, mu; T) evaluated in R, truncated at D
RingSeries ep_series(const RingElement& a, const RingElement& mu, int D);
// 1 + sum_{i<p} prod_{k<i}(a - k mu) / i! T^i over R/pi^t; needs a^p = mu^{p-1} a there
Poly ep_poly_special(const RingElement& a, const RingElement& mu, int t, int var = 0);
// sum_{i<p} a^i / i! T^i at full precision
Poly ep_poly_lift(const RingElement& a, int var = 0);
// prod_k E_p(a_k, mu^{p^k}; T^{p^k}), truncated at D
RingSeries ep_witt(const WittVector& a, const RingElement& mu, int D);

// F'(S)(1 + mu S) - a F(S) reduced mod pi^t
Poly differential_defect(const Poly& f, const RingElement& a, const RingElement& mu, int t, int var = 0);

}  // namespace zp2
