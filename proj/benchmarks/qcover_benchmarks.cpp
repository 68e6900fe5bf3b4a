#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "qcover/circuit.hpp"
#include "qcover/dea.hpp"
#include "qcover/geometry.hpp"
#include "qcover/mmec.hpp"
#include "qcover/rng.hpp"
#include "qcover/sobol.hpp"
#include "qcover/volume.hpp"
#include "qcover/voronoi.hpp"

namespace {

std::vector<double> random_theta(const qcover::ParametricCircuit& c, qcover::Rng& rng) {
  std::vector<double> theta(static_cast<std::size_t>(c.num_params));
  for (int s = 0; s < c.num_params; ++s)
    theta[static_cast<std::size_t>(s)] = rng.uniform(0.0, c.period(s));
  return theta;
}

std::vector<std::array<double, 3>> sphere_points(int n, std::uint64_t seed) {
  qcover::Rng rng(seed);
  std::vector<std::array<double, 3>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = rng.normal(), y = rng.normal(), z = rng.normal();
    const double nrm = std::sqrt(x * x + y * y + z * z);
    pts.push_back({x / nrm, y / nrm, z / nrm});
  }
  return pts;
}

void BM_EvaluateMmec(benchmark::State& state) {
  const auto circuit = qcover::build({static_cast<int>(state.range(0)),
                                      qcover::PhaseMode::WithGlobalPhase,
                                      qcover::CompileMode::NativeControls});
  qcover::Rng rng(1);
  const auto theta = random_theta(circuit, rng);
  for (auto _ : state) {
    auto out = qcover::evaluate(circuit, theta);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_EvaluateMmec)->DenseRange(2, 8, 2);

void BM_JacobianGram(benchmark::State& state) {
  const auto circuit = qcover::build({static_cast<int>(state.range(0)),
                                      qcover::PhaseMode::WithGlobalPhase,
                                      qcover::CompileMode::NativeControls});
  qcover::Rng rng(2);
  const auto theta = random_theta(circuit, rng);
  std::vector<int> slots(static_cast<std::size_t>(circuit.num_params));
  for (int s = 0; s < circuit.num_params; ++s) slots[static_cast<std::size_t>(s)] = s;
  for (auto _ : state) {
    auto g = qcover::jacobian_gram(circuit, theta, slots);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_JacobianGram)->DenseRange(1, 3);

void BM_SobolScrambled(benchmark::State& state) {
  for (auto _ : state) {
    qcover::SobolSequence seq(2, 7, true);
    auto pts = seq.take(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(pts);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SobolScrambled)->Range(1024, 1 << 15);

void BM_SphericalDelaunay(benchmark::State& state) {
  const auto pts = sphere_points(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    auto sv = qcover::spherical_delaunay(pts);
    benchmark::DoNotOptimize(sv);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SphericalDelaunay)->RangeMultiplier(4)->Range(256, 1 << 14)->Complexity();

void BM_AlphaFromVoronoi(benchmark::State& state) {
  const auto pts = sphere_points(static_cast<int>(state.range(0)), 4);
  const auto sv = qcover::spherical_delaunay(pts);
  for (auto _ : state) {
    auto est = qcover::alpha_from_voronoi(sv);
    benchmark::DoNotOptimize(est);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AlphaFromVoronoi)->RangeMultiplier(4)->Range(256, 1 << 14)->Complexity();

void BM_SpiralVolume(benchmark::State& state) {
  const auto circuit = qcover::spiral_circuit(4);
  for (auto _ : state) {
    auto rep = qcover::volume(circuit,
                               qcover::QuadratureSpec::Trapezoid(
                                   static_cast<int>(state.range(0))),
                               qcover::MetricGauge::Bloch);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_SpiralVolume)->Range(256, 4096);

}  // namespace

BENCHMARK_MAIN();
