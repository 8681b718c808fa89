#pragma once

#include <random>

#include "zp2/dvr.hpp"

namespace zp2::sample {

inline RingElement random_element(const RingDescriptor& R, std::mt19937_64& rng) {
    Digits d(R.e());
    std::uniform_int_distribution<std::int64_t> dist(0, R.data()->pM - 1);
    for (auto& x : d) x = dist(rng);
    return RingElement(R.data(), d, R.max_precision());
}

inline RingElement random_with_valuation(const RingDescriptor& R, int v, std::mt19937_64& rng) {
    RingElement u = random_element(R, rng);
    if (!u.is_unit()) u += R.one();
    return u * R.pi_pow(v);
}

}  // namespace zp2::sample
