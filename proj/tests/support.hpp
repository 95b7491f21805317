#pragma once

// Builders for the measures and operator pairs the tests exercise
// repeatedly.  Everything returns plain value objects.

#include <cmath>
#include <string>
#include <vector>

#include "indefspec/eigen.hpp"
#include "indefspec/measure.hpp"
#include "indefspec/modelop.hpp"
#include "indefspec/weyl.hpp"

namespace testsupport {

using namespace indefspec;

/// Integer lattice, weight 1 at every k, minus the excluded indices.
inline SpectralMeasure z_atoms(std::vector<long long> exclude = {},
                               std::vector<Atom> extra = {}) {
  AtomFamily fam;
  fam.positions = Expr::parse("k", "k");
  fam.weights = Expr::parse("1", "k");
  fam.range.exclude = std::move(exclude);
  fam.weight_exponent = 0;
  fam.position_growth = 1.0;
  SpectralMeasure m;
  m.families.push_back(fam);
  m.atoms = std::move(extra);
  return m;
}

/// Lattice with closed-form positions, e.g. "2*k" or "2*k+1".
inline SpectralMeasure lattice_atoms(const std::string& positions) {
  AtomFamily fam;
  fam.positions = Expr::parse(positions, "k");
  fam.weights = Expr::parse("1", "k");
  fam.weight_exponent = 0;
  fam.position_growth = 1.0;
  SpectralMeasure m;
  m.families.push_back(fam);
  return m;
}

/// Atoms a + 1/k for k >= 3, weights k^gamma, accumulating at a.
inline AtomFamily accumulating_family(double a, double gamma) {
  AtomFamily fam;
  fam.positions = Expr::parse(std::to_string(a) + " + k^(-1)", "k");
  fam.weights = Expr::parse("k^(" + std::to_string(gamma) + ")", "k");
  fam.range.lo = 3;
  fam.weight_exponent = gamma;
  fam.accumulation = a;
  fam.accumulation_exponent = 1.0;
  return fam;
}

/// Admissible measure clustering at a: integer lattice (minus an integer
/// sitting exactly at a) plus the accumulating family.
inline SpectralMeasure accumulating_measure(double a, double gamma) {
  std::vector<long long> excl;
  if (a == std::floor(a)) excl.push_back(static_cast<long long>(a));
  SpectralMeasure m = z_atoms(std::move(excl));
  m.families.push_back(accumulating_family(a, gamma));
  return m;
}

inline DensityPiece density_piece(double lo, double hi,
                                  std::function<double(double)> rho,
                                  double exp_lo, double exp_hi, double exp_inf,
                                  std::string label) {
  DensityPiece p;
  p.lo = lo;
  p.hi = hi;
  p.rho = std::move(rho);
  p.exp_lo = exp_lo;
  p.exp_hi = exp_hi;
  p.exp_inf = exp_inf;
  p.label = std::move(label);
  return p;
}

inline SpectralMeasure lebesgue() {
  SpectralMeasure m;
  m.densities.push_back(density_piece(
      -kInf, kInf, [](double) { return 1.0; }, 0, 0, 0, "lebesgue"));
  return m;
}

inline SpectralMeasure half_lebesgue() {
  SpectralMeasure m;
  m.densities.push_back(density_piece(
      0, kInf, [](double) { return 1.0; }, 0, 0, 0, "half-lebesgue"));
  return m;
}

inline SpectralMeasure density_on_negative() {
  SpectralMeasure m;
  m.densities.push_back(density_piece(
      -kInf, 0, [](double) { return 1.0; }, 0, 0, 0, "half-lebesgue-neg"));
  return m;
}

/// Mirror image under t -> -t.
inline SpectralMeasure reflect(const SpectralMeasure& m) {
  SpectralMeasure r;
  r.total_mass_infinite = m.total_mass_infinite;
  for (const auto& a : m.atoms) r.atoms.push_back({-a.t, a.w});
  for (const auto& f : m.families) {
    AtomFamily g = f;
    g.positions = Expr::parse("-(" + f.positions.text() + ")", "k");
    if (f.accumulation) g.accumulation = -*f.accumulation;
    r.families.push_back(std::move(g));
  }
  for (const auto& d : m.densities) {
    auto rho = d.rho;
    r.densities.push_back(density_piece(
        -d.hi, -d.lo, [rho](double t) { return rho(-t); }, d.exp_hi, d.exp_lo,
        d.exp_inf, "reflected:" + d.label));
  }
  return r;
}

inline WeylCoefficient wc(SpectralMeasure m, double C = 0) {
  return WeylCoefficient{std::move(m), C};
}

inline ModelOperator make_op(SpectralMeasure plus, SpectralMeasure minus,
                             double c_plus = 0, double c_minus = 0) {
  ModelOperator op;
  op.plus = wc(std::move(plus), c_plus);
  op.minus = wc(std::move(minus), c_minus);
  return op;
}

/// The measure of the closed-form one-turning-point example: density
/// t^{5/2}/(pi (1+t^3)) on [0,inf) plus the point mass 2/3 at -1.
inline SpectralMeasure sec6_measure() {
  SpectralMeasure m;
  m.atoms.push_back({-1.0, 2.0 / 3.0});
  m.densities.push_back(density_piece(
      0, kInf,
      [](double t) { return std::pow(t, 2.5) / (M_PI * (1.0 + t * t * t)); },
      2.5, 0, -0.5, "band"));
  return m;
}

}  // namespace testsupport
