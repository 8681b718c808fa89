#pragma once

#include <optional>
#include <string>
#include <utility>

#include "zp2/hopf.hpp"
#include "zp2/models.hpp"

namespace zp2 {

enum class FiberTag { MuPExtension, TrivialExtension, AlphaPExtension, ZpByZp };

std::string to_string(FiberTag t);

// parameters are residues in [0, p)
struct FiberClass {
    FiberTag tag = FiberTag::TrivialExtension;
    int i = 0;      // MuPExtension
    int beta = 0;   // AlphaPExtension
    int gamma = 0;  // AlphaPExtension
    int a = 0;      // ZpByZp
    int b = 0;      // ZpByZp

    std::string to_string() const;
    friend bool operator==(const FiberClass& x, const FiberClass& y) {
        return x.tag == y.tag && x.i == y.i && x.beta == y.beta && x.gamma == y.gamma && x.a == y.a && x.b == y.b;
    }
};

FiberClass classify_fiber(const ModelDescriptor& d);

// (beta, gamma) for 0 < v(lambda) <= v(mu) < v(lambda_(1)), computed from the given lift of a
std::pair<int, int> alpha_parameters(const ModelDescriptor& d, const RingElement& a_lift);

// presentation over F_p of the class: generators S1, S2 with coefficients at precision 1
HopfPresentation fiber_presentation(const ModelDescriptor& d, const FiberClass& c);

// C_1(X, Y) = (X^p + Y^p - (X + Y)^p) / p over Z, in variables x and y
Poly cocycle_c1(RingDescriptor ring, int x, int y);

struct FiberReport {
    bool ok = false;
    FiberClass claimed;
    // S2 -> S2 + shift(S1) identifies the claimed presentation with the residue fiber
    std::optional<Poly> shift;
    std::string mismatch;
};

FiberReport verify_fiber_report(const ModelDescriptor& d);
// compare the residue fiber of build_extension(d) with an arbitrary claimed class
FiberReport verify_fiber_against(const ModelDescriptor& d, const FiberClass& c);
bool verify_fiber(const ModelDescriptor& d);

// (p - 1)! = -1 mod p
bool wilson_holds(int p);
// eta^p / lambda_(1) mod pi
int eta_ratio_residue(RingDescriptor ring);

}  // namespace zp2
