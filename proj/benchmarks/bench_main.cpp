#include <benchmark/benchmark.h>

#include <random>

#include "zp2/artin_hasse.hpp"
#include "zp2/fiber.hpp"
#include "zp2/hopf.hpp"
#include "zp2/models.hpp"
#include "zp2/witt.hpp"

using namespace zp2;

namespace {

RingElement random_element(const RingDescriptor& R, std::mt19937_64& rng) {
    Digits d(R.e());
    std::uniform_int_distribution<std::int64_t> dist(0, R.data()->pM - 1);
    for (auto& x : d) x = dist(rng);
    return RingElement(R.data(), d, R.max_precision());
}

void BM_RingMul(benchmark::State& state) {
    const auto R = make_ring(static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    RingElement x = random_element(R, rng), y = random_element(R, rng);
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_RingMul)->Arg(3)->Arg(5);

void BM_RingInvert(benchmark::State& state) {
    const auto R = make_ring(static_cast<int>(state.range(0)));
    std::mt19937_64 rng(2);
    RingElement x = random_element(R, rng);
    if (!x.is_unit()) x += R.one();
    for (auto _ : state) benchmark::DoNotOptimize(invert_unit(x));
}
BENCHMARK(BM_RingInvert)->Arg(3)->Arg(5);

void BM_WittAdd(benchmark::State& state) {
    const auto R = make_ring(3);
    std::mt19937_64 rng(3);
    const int len = static_cast<int>(state.range(0));
    std::vector<RingElement> a, b;
    for (int i = 0; i < len; ++i) a.push_back(random_element(R, rng)), b.push_back(random_element(R, rng));
    WittVector u(R, a), v(R, b);
    for (auto _ : state) benchmark::DoNotOptimize(witt_add(u, v, len));
}
BENCHMARK(BM_WittAdd)->Arg(1)->Arg(2)->Arg(3);

void BM_DeformedArtinHasse(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ah_product_formula(3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DeformedArtinHasse)->Arg(9)->Arg(27);

void BM_HopfAxiomsCanonical(benchmark::State& state) {
    const auto R = make_ring(static_cast<int>(state.range(0)));
    const int p = R.p();
    auto d = make_descriptor(R, p, p, eta(R), 1);
    HopfPresentation H = build_extension(d);
    for (auto _ : state) benchmark::DoNotOptimize(check_hopf_axioms(H));
}
BENCHMARK(BM_HopfAxiomsCanonical)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PhiBrute(benchmark::State& state) {
    const auto R = make_ring(static_cast<int>(state.range(0)));
    const int m = static_cast<int>(state.range(1)), n = static_cast<int>(state.range(2));
    for (auto _ : state) benchmark::DoNotOptimize(phi_brute(R, m, n));
}
BENCHMARK(BM_PhiBrute)->Args({3, 3, 3})->Args({5, 3, 3})->Unit(benchmark::kMillisecond);

void BM_PhiClosed(benchmark::State& state) {
    const auto R = make_ring(static_cast<int>(state.range(0)));
    const int m = static_cast<int>(state.range(1)), n = static_cast<int>(state.range(2));
    for (auto _ : state) benchmark::DoNotOptimize(phi_closed(R, m, n));
}
BENCHMARK(BM_PhiClosed)->Args({3, 3, 3})->Args({5, 3, 3});

void BM_HomBrute(benchmark::State& state) {
    const auto R = make_ring(3);
    RingElement mu = R.pi_pow(static_cast<int>(state.range(0)));
    const int t = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(hom_brute(mu, t));
}
BENCHMARK(BM_HomBrute)->Args({3, 1})->Args({3, 3})->Args({2, 2})->Unit(benchmark::kMillisecond);

void BM_HomModelsBrute(benchmark::State& state) {
    const auto R = make_ring(static_cast<int>(state.range(0)));
    const int p = R.p();
    auto d1 = make_descriptor(R, p, p, eta(R), 1);
    auto d2 = make_descriptor(R, p, 1, R.zero(), 1);
    for (auto _ : state) benchmark::DoNotOptimize(hom_models_brute(d1, d2));
}
BENCHMARK(BM_HomModelsBrute)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_VerifyFiber(benchmark::State& state) {
    const auto R = make_ring(3);
    auto d = make_descriptor(R, 3, 3, eta(R), 1);
    for (auto _ : state) benchmark::DoNotOptimize(verify_fiber(d));
}
BENCHMARK(BM_VerifyFiber)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
