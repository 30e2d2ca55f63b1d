#include <benchmark/benchmark.h>

#include "umbrella/analysis.hpp"
#include "umbrella/foliation.hpp"
#include "umbrella/newton.hpp"
#include "umbrella/numerics.hpp"
#include "umbrella/rng.hpp"

using namespace umbrella;

namespace {

DeformationJet generic_jet() {
    Rng rng(17);
    while (true) {
        DeformationJet jet = sample_jet(rng, 6);
        CharField f = characteristic_field(jet, 5);
        if (is_generic(f)) return jet;
    }
}

void BM_Series2Product(benchmark::State& state) {
    Rng rng(3);
    std::vector<Series2::Term> ta, tb;
    for (int i = 0; i < 12; ++i) {
        ta.push_back({{static_cast<int>(rng.below(5)), static_cast<int>(rng.below(4))},
                      Rational::of(rng.int_in(-9, 9), rng.int_in(1, 7))});
        tb.push_back({{static_cast<int>(rng.below(5)), static_cast<int>(rng.below(4))},
                      Rational::of(rng.int_in(-9, 9), rng.int_in(1, 7))});
    }
    Series2 a = Series2::from_terms(7, ta), b = Series2::from_terms(7, tb);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Series2Product);

void BM_MapInversion(benchmark::State& state) {
    DeformationJet jet = generic_jet();
    MapJet4 m = normalized_map_jet(jet, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(invert(m));
}
BENCHMARK(BM_MapInversion)->Arg(5)->Arg(7);

void BM_CharacteristicField(benchmark::State& state) {
    DeformationJet jet = generic_jet();
    for (auto _ : state) benchmark::DoNotOptimize(characteristic_field(jet, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CharacteristicField)->Arg(5)->Arg(7);

void BM_NewtonDiagram(benchmark::State& state) {
    CharField f = characteristic_field(generic_jet(), 5);
    std::vector<Exp2> sup = support_of(canonical_field(f));
    for (auto _ : state) benchmark::DoNotOptimize(newton_diagram(sup));
}
BENCHMARK(BM_NewtonDiagram);

void BM_AnalyzeField(benchmark::State& state) {
    PlanarField f = canonical_field(characteristic_field(generic_jet(), 5));
    for (auto _ : state) benchmark::DoNotOptimize(analyze_field(f));
}
BENCHMARK(BM_AnalyzeField);

void BM_OrbitIntegration(benchmark::State& state) {
    PolyField f = PolyField::from_char_field(characteristic_field(DeformationJet::identity(), 7));
    IntegratorConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_orbit(f, 0.03, 0.02, 1, cfg));
}
BENCHMARK(BM_OrbitIntegration);

void BM_ClaimSample(benchmark::State& state) {
    Rng rng(9);
    for (auto _ : state) benchmark::DoNotOptimize(sample_symplectic(rng));
}
BENCHMARK(BM_ClaimSample);

}  // namespace

BENCHMARK_MAIN();
