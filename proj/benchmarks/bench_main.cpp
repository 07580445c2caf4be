#include <benchmark/benchmark.h>

#include <cmath>

#include "cornerq/conformal.hpp"
#include "cornerq/construct.hpp"
#include "cornerq/geometry.hpp"
#include "cornerq/operators.hpp"

using namespace cornerq;

namespace {

const Vec4 kInterior = sph_to_cart({0.6, 0.9, 1.1, 0.4});
const Vec4 kNearSphere = sph_to_cart({0.999, 0.9, 1.1, 0.4});

void BM_SeriesInterior(benchmark::State& state) {
  const auto u1 = build_u1(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize((*u1)(kInterior));
}
BENCHMARK(BM_SeriesInterior)->Arg(256)->Arg(4096);

// Near the sphere the tail does not underflow, so every term is summed.
void BM_SeriesNearSphere(benchmark::State& state) {
  const auto u1 = build_u1(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize((*u1)(kNearSphere));
}
BENCHMARK(BM_SeriesNearSphere)->Arg(256)->Arg(4096);

void BM_GaussLegendre(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_legendre(n, 0.0, kHalfPi));
}
BENCHMARK(BM_GaussLegendre)->Arg(16)->Arg(64)->Arg(256);

void BM_ZonalIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(integrate_zonal_M([](double phi) { return std::cos(phi); }));
}
BENCHMARK(BM_ZonalIntegral);

void BM_P3M(benchmark::State& state) {
  const auto u1 = build_u1(256);
  const Point4 p = Point4::from_cartesian(sphere_point(0.9, 1.1, 0.4));
  for (auto _ : state) benchmark::DoNotOptimize(apply_P3M(*u1, p));
}
BENCHMARK(BM_P3M);

// Series fields return zero without differencing, so use a boosted one.
void BM_P4(benchmark::State& state) {
  const FieldPtr u = act(ConfElement::boost(2, 0.5), build_u1(256));
  const Point4 p = Point4::from_cartesian(kInterior);
  for (auto _ : state) benchmark::DoNotOptimize(apply_P4(*u, p));
}
BENCHMARK(BM_P4);

void BM_MobiusApply(benchmark::State& state) {
  const ConfElement e = compose(ConfElement::boost(2, 0.5), ConfElement::lambda());
  for (auto _ : state) benchmark::DoNotOptimize(mobius_apply(e, kInterior));
}
BENCHMARK(BM_MobiusApply);

}  // namespace

BENCHMARK_MAIN();
