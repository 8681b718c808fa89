#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "zp2/dvr.hpp"
#include "zp2/poly.hpp"

namespace zp2 {

// Witt vectors are handled truncated to a fixed number of components.
// Universal polynomials are available for components 0..3.
constexpr int kWittMaxLength = 4;
constexpr int kWittDefaultLength = 3;

// Integer polynomial; variables T_0..T_3 sit at 0..3 and U_0..U_3 at 4..7.
struct UniversalPoly {
    std::map<Mono, mpz_class> terms;

    std::size_t size() const { return terms.size(); }
    // evaluate with values[i] substituted for variable i
    RingElement evaluate(const RingDescriptor& ring, const std::vector<RingElement>& values) const;
    // every monomial has weight w when T_i, U_i weigh p^i
    bool isobaric(int p, long w) const;
};

constexpr int kWittU = 4;

// S_r: sum, P_r: product, F_r: generalized Frobenius (variables T_0..T_{r+1})
const UniversalPoly& witt_sum_poly(int p, int r);
const UniversalPoly& witt_product_poly(int p, int r);
const UniversalPoly& witt_frobenius_poly(int p, int r);
// Phi_r(T_0..T_r) with T_i at variable offset + i
UniversalPoly ghost_poly(int p, int r, int offset = 0);
// Phi_r(S_0..S_r) - Phi_r(T) - Phi_r(U), computed symbolically
UniversalPoly sum_ghost_defect(int p, int r);
// Phi_r(F_0..F_r) - Phi_{r+1}(T)
UniversalPoly frobenius_ghost_defect(int p, int r);

class WittVector {
public:
    WittVector() = default;
    // modulus t: coordinates live in R/pi^t; 0 means integral
    WittVector(RingDescriptor ring, std::vector<RingElement> coords, int modulus = 0);

    static WittVector zero(RingDescriptor ring, int modulus = 0);
    static WittVector teichmuller(const RingElement& a, int modulus = 0);

    RingDescriptor ring() const { return ring_; }
    int modulus() const { return modulus_; }
    // support length after trimming trailing zeros
    std::size_t length() const { return coords_.size(); }
    const std::vector<RingElement>& coords() const { return coords_; }
    RingElement coord(std::size_t i) const;
    bool is_zero() const { return coords_.empty(); }
    WittVector truncated(std::size_t len) const;
    WittVector reduced(int modulus) const;

    friend bool operator==(const WittVector& a, const WittVector& b);
    friend bool operator!=(const WittVector& a, const WittVector& b) { return !(a == b); }

private:
    void trim();
    RingDescriptor ring_;
    std::vector<RingElement> coords_;
    int modulus_ = 0;
};

RingElement ghost(const WittVector& w, int r);
WittVector witt_add(const WittVector& u, const WittVector& v, int length = kWittDefaultLength);
WittVector witt_mul(const WittVector& u, const WittVector& v, int length = kWittDefaultLength);
// odd p: -u is the component-wise negative
WittVector witt_neg(const WittVector& u);
WittVector witt_sub(const WittVector& u, const WittVector& v, int length = kWittDefaultLength);
WittVector witt_scalar(long n, const WittVector& u, int length = kWittDefaultLength);
// [c] u = (c u_0, c^p u_1, c^{p^2} u_2, ...)
WittVector scalar_teich(const RingElement& c, const WittVector& u);
WittVector verschiebung(const WittVector& u);
WittVector frobenius_w(const WittVector& u, int length = kWittDefaultLength);

// F(u) = [mu^{p-1}] u in W(R/pi^t), all coordinates nilpotent
bool is_frobenius_kernel(const WittVector& u, const RingElement& mu, int t);

// p times the canonical lift of u (coordinates in R/pi^n), reduced mod pi^{np}
WittVector mult_by_p(const WittVector& u, int n, int length = kWittDefaultLength);
// same with a caller-supplied integral lift
WittVector mult_by_p_of_lift(const WittVector& lift, int n, int length = kWittDefaultLength);

// [p/mu^{p-1}] b + V(b)
WittVector psi_star_image(const WittVector& b, const RingElement& mu);

}  // namespace zp2
