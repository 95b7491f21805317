#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "indefspec/eigen.hpp"
#include "indefspec/infzone.hpp"
#include "indefspec/measure.hpp"
#include "indefspec/sturm.hpp"
#include "indefspec/weyl.hpp"

using namespace indefspec;

namespace {

SpectralMeasure lattice() {
  SpectralMeasure m;
  AtomFamily fam;
  fam.positions = Expr::parse("k", "k");
  fam.weights = Expr::parse("1", "k");
  fam.weight_exponent = 0.0;
  m.families.push_back(fam);
  m.total_mass_infinite = true;
  return m;
}

SpectralMeasure band() {
  SpectralMeasure m;
  m.atoms.push_back({-1.0, 2.0 / 3.0});
  DensityPiece p;
  p.lo = 0;
  p.hi = kInf;
  p.rho = [](double t) { return std::pow(t, 2.5) / (kPi * (1.0 + t * t * t)); };
  p.exp_lo = 2.5;
  p.exp_inf = -0.5;
  p.label = "band";
  m.densities.push_back(p);
  m.total_mass_infinite = true;
  return m;
}

void bm_eval_M_lattice(benchmark::State& state) {
  WeylCoefficient w{lattice(), 0.0};
  Complex z{0.37, 1.21};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_M(w, z));
    z += Complex{1e-9, 0};
  }
}
BENCHMARK(bm_eval_M_lattice);

void bm_eval_M_band(benchmark::State& state) {
  WeylCoefficient w{band(), 0.0};
  Complex z{0.37, 1.21};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_M(w, z));
    z += Complex{1e-9, 0};
  }
}
BENCHMARK(bm_eval_M_band);

void bm_zone_m(benchmark::State& state) {
  ZoneSpec z;
  z.gaps.push_back({1, 2, 1.5, 1});
  z.gaps.push_back({5, 6.5, 6.0, -1});
  Complex l{0.4, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(m_coefficient(z, l, Side::plus));
    l += Complex{1e-9, 0};
  }
}
BENCHMARK(bm_zone_m);

void bm_m_numeric_free(benchmark::State& state) {
  PotentialSpec free_q;
  Complex l{0.3, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(m_numeric(free_q, Side::plus, l));
    l += Complex{1e-9, 0};
  }
}
BENCHMARK(bm_m_numeric_free);

void bm_classify_shared_atom(benchmark::State& state) {
  SpectralMeasure plus = lattice();
  SpectralMeasure minus = lattice();
  minus.atoms.push_back({0.5, 0.8});
  ModelOperator op;
  op.plus = {plus, 0.0};
  op.minus = {minus, 0.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(classify_eigenvalue(op, Complex{3.0, 0}, 8));
}
BENCHMARK(bm_classify_shared_atom);

}  // namespace

BENCHMARK_MAIN();
