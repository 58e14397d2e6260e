#include <benchmark/benchmark.h>

#include "biham/dynamics.hpp"
#include "biham/leaf_sov.hpp"
#include "biham/sampling.hpp"
#include "biham/verify_suite.hpp"

namespace {

using namespace biham;

const SymmetricParams kParams{1.0, 2.0, 3.0};

Point random_uv(std::uint64_t seed) {
  Sampler s(seed);
  std::array<cplx, 6> c{};
  for (auto& v : c) v = s.complex();
  return make_point(Chart::UV, c);
}

void BM_SchoutenQ(benchmark::State& state) {
  const BivectorField q = q_uv(kParams);
  const Point pt = random_uv(1);
  for (auto _ : state) benchmark::DoNotOptimize(schouten_residual(q, q, pt));
}
BENCHMARK(BM_SchoutenQ);

void BM_SchoutenP2M(benchmark::State& state) {
  const BivectorField p2 = p2_m(kParams.model());
  Point pt = random_uv(2);
  pt.chart = Chart::M;
  for (auto _ : state) benchmark::DoNotOptimize(schouten_residual(p2, p2, pt));
}
BENCHMARK(BM_SchoutenP2M);

void BM_NijenhuisPipeline(benchmark::State& state) {
  const LeafChart leaf = sample_points(SampleKind::Leaf, 1, 3, &kParams).leaves.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(nijenhuis(kParams, leaf));
    benchmark::DoNotOptimize(dn_brackets(kParams, leaf, true));
    benchmark::DoNotOptimize(deformation_xi2(kParams, leaf));
  }
}
BENCHMARK(BM_NijenhuisPipeline);

void BM_Rk4Steps(benchmark::State& state) {
  const ModelParams top = ModelParams::symmetric(10, 1, 2);
  const RealState m0{0.1, -0.4, 0.3, 0.8, -0.2, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_steps(top, m0, 1e-3, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rk4Steps)->Arg(1000)->Arg(10000);

void BM_VerifySuite(benchmark::State& state) {
  SuiteOptions opt;
  opt.points = static_cast<int>(state.range(0));
  opt.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(kParams.model(), opt));
}
BENCHMARK(BM_VerifySuite)->Args({10, 1})->Args({100, 1})->Args({100, 4})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
