#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "folprod/eta_calculus.hpp"
#include "folprod/verifier.hpp"

using namespace folprod;

namespace {

RationalFunction z4_over_quartic() {
  return RationalFunction({Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)},
                          {Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)});
}

MappingTorusScenario quartic_scenario() {
  MoebiusMap rot = MoebiusMap::make(Cx(0, 1), Cx(0, 0), Cx(0, 0), Cx(1, 0));
  return MappingTorusScenario(rot, SpeedProfile{1.0, {SpeedTerm{1, 0.0, 0.5}}},
                              EquivariantFamily(z4_over_quartic(), Cx(1, 0),
                                                {}));
}

void BM_AberthRootsDegree8(benchmark::State& state) {
  Poly p = poly_from_roots(
      Cx(1, 0), {Cx(0.9, 0.1), Cx(-0.7, 0.4), Cx(0.2, -0.8), Cx(-0.3, -0.5),
                 Cx(0.6, 0.6), Cx(-1.1, 0.2), Cx(0.05, 1.0), Cx(1.2, -0.3)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(aberth_roots(p));
  }
}
BENCHMARK(BM_AberthRootsDegree8);

void BM_ClusteredRootsMultiplicity(benchmark::State& state) {
  Poly p = poly_from_roots(
      Cx(1, 0), {Cx(0.5, 0), Cx(0.5, 0), Cx(0.5, 0), Cx(-0.4, 0.3),
                 Cx(-0.4, 0.3)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly_roots_clustered(p));
  }
}
BENCHMARK(BM_ClusteredRootsMultiplicity);

void BM_WindingOrder(benchmark::State& state) {
  RationalFunction f = z4_over_quartic();
  PointCP1 center = PointCP1::from_complex(Cx(0, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(winding_order(f, center, 0.4));
  }
}
BENCHMARK(BM_WindingOrder);

void BM_BaseReturnTime(benchmark::State& state) {
  SpeedProfile h{1.0, {SpeedTerm{1, 0.0, 0.5}, SpeedTerm{2, 0.1, 0.0}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(base_return_time(h));
  }
}
BENCHMARK(BM_BaseReturnTime);

void BM_TubeBoundaryIntegral(benchmark::State& state) {
  MappingTorusScenario scenario = quartic_scenario();
  auto orbits = find_singular_orbits(scenario);
  TubeSpec tube{orbits[1], default_tube_radius(scenario)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tube_boundary_integral(scenario, tube));
  }
}
BENCHMARK(BM_TubeBoundaryIntegral);

void BM_FullVerification(benchmark::State& state) {
  MappingTorusScenario scenario = quartic_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_product_formula(scenario));
  }
}
BENCHMARK(BM_FullVerification);

}  // namespace

BENCHMARK_MAIN();
