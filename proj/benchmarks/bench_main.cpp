#include <benchmark/benchmark.h>

#include <memory>

#include "surfvortex/dynamics.hpp"
#include "surfvortex/pairlab.hpp"
#include "surfvortex/schottky.hpp"

namespace sv = surfvortex;
using sv::ChartPoint;
using sv::Complex;

namespace {

const sv::VortexModel& torus_model() {
  static const sv::VortexModel m =
      sv::VortexModel::make(std::make_shared<sv::FlatTorus>(Complex(0.3, 1.1)));
  return m;
}

const sv::VortexModel& sphere_model() {
  static const sv::VortexModel m = sv::VortexModel::make(std::make_shared<sv::Sphere>());
  return m;
}

sv::PhaseState torus_state(int n) {
  const auto& m = torus_model();
  const auto& t = static_cast<const sv::FlatTorus&>(*m.surface);
  sv::PhaseState st;
  for (int k = 0; k < n; ++k) {
    const double s = 0.1 + 0.8 * k / n;
    st.vortices.push_back({{0, t.from_lattice(s, 0.15 + 0.7 * ((k * 7) % n) / n)}, 1.0 - 0.3 * k});
  }
  st.a = Eigen::VectorXd::Constant(1, 0.4);
  st.b = Eigen::VectorXd::Constant(1, -0.3);
  st.cycles = m.basis.place_cycles(st.positions());
  return st;
}

void BM_TorusGreen(benchmark::State& state) {
  const auto& g = *torus_model().green;
  const ChartPoint z{0, Complex(0.2, 0.3)}, w{0, Complex(0.7, 0.6)};
  for (auto _ : state) benchmark::DoNotOptimize(g.green(z, w));
}
BENCHMARK(BM_TorusGreen);

void BM_TorusGreenGradient(benchmark::State& state) {
  const auto& g = *torus_model().green;
  const ChartPoint z{0, Complex(0.2, 0.3)}, w{0, Complex(0.7, 0.6)};
  for (auto _ : state) benchmark::DoNotOptimize(g.gradient(z, w));
}
BENCHMARK(BM_TorusGreenGradient);

void BM_SphereGreen(benchmark::State& state) {
  const auto& g = *sphere_model().green;
  const ChartPoint z{0, Complex(0.2, 0.3)}, w{0, Complex(-0.7, 0.6)};
  for (auto _ : state) benchmark::DoNotOptimize(g.green(z, w));
}
BENCHMARK(BM_SphereGreen);

void BM_TorusRhs(benchmark::State& state) {
  const auto& m = torus_model();
  const auto st = torus_state(static_cast<int>(state.range(0)));
  const sv::Stepper stepper(m, st, {});
  Eigen::VectorXd y(2 * st.vortices.size() + 2);
  for (std::size_t k = 0; k < st.vortices.size(); ++k) {
    y(2 * k) = st.vortices[k].position.z.real();
    y(2 * k + 1) = st.vortices[k].position.z.imag();
  }
  y.tail(2) << st.a(0), st.b(0);
  for (auto _ : state) benchmark::DoNotOptimize(stepper.rhs(stepper.state(), y));
}
BENCHMARK(BM_TorusRhs)->Arg(2)->Arg(4)->Arg(8);

void BM_TorusStep(benchmark::State& state) {
  const auto& m = torus_model();
  sv::Stepper stepper(m, torus_state(2), {.dt = 1e-4});
  for (auto _ : state) stepper.step();
}
BENCHMARK(BM_TorusStep);

void BM_GeodesicSphere(benchmark::State& state) {
  const sv::Sphere s;
  const sv::GeodesicState g0{{0, Complex(0.3, -0.2)}, Complex(0.5, 0.5)};
  for (auto _ : state) benchmark::DoNotOptimize(sv::geodesic_integrate(s, g0, 1.0, 1e-3));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_GeodesicSphere)->Unit(benchmark::kMillisecond);

void BM_KimuraSphereSweep(benchmark::State& state) {
  sv::PairRun run;
  run.model = std::make_shared<const sv::VortexModel>(sphere_model());
  run.center = {0, Complex(0.3, 0.1)};
  run.direction = Complex(1.0, 0.4);
  run.parallel = false;
  for (auto _ : state) benchmark::DoNotOptimize(sv::kimura_deviation(run));
}
BENCHMARK(BM_KimuraSphereSweep)->Unit(benchmark::kMillisecond);

void BM_SchottkyResidual(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sv::schottky::boundary_geodesic_residual(static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SchottkyResidual)->Arg(256)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
