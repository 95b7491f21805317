// Acceptance gate: nine release criteria, one PASS/FAIL line each on stdout,
// details on stderr, exit code = number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "indefspec/critical.hpp"
#include "indefspec/eigen.hpp"
#include "indefspec/error.hpp"
#include "indefspec/infzone.hpp"
#include "indefspec/measure.hpp"
#include "indefspec/modelop.hpp"
#include "indefspec/sturm.hpp"
#include "indefspec/types.hpp"
#include "indefspec/weyl.hpp"

#include "oracles.hpp"
#include "support.hpp"

using namespace indefspec;
using namespace testsupport;

namespace {

std::string num(double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

std::string cnum(Complex z) {
  char b[96];
  std::snprintf(b, sizeof b, "%.6g%+.6gi", z.real(), z.imag());
  return b;
}

struct Check {
  std::vector<std::string> failures;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

// ---------------------------------------------------------------------------
// criterion 1: the algebraic zone-function identity h g = k^2 + f holds to
// 1e-10 relative accuracy on a 20-spec corpus, 50 sample points each, at
// truncation levels 1, 8, and 64.

ZoneSpec zone(double mu0r, std::vector<ZoneGap> gaps) {
  ZoneSpec z;
  z.mu0r = mu0r;
  z.gaps = std::move(gaps);
  return z;
}

ZoneSpec with_tail(ZoneSpec z, const char* mul, const char* width) {
  z.tail.mul = Expr::parse(mul, "j");
  z.tail.width = Expr::parse(width, "j");
  return z;
}

void criterion1(Check& c) {
  std::vector<ZoneSpec> specs;
  specs.push_back(zone(0, {}));
  specs.push_back(zone(-2, {}));
  specs.push_back(zone(0, {{1, 2, 1.5, 1}}));
  specs.push_back(zone(0, {{1, 2, 1.5, -1}}));
  specs.push_back(zone(0, {{1, 2, 1.0, 1}}));
  specs.push_back(zone(0, {{1, 2, 2.0, -1}}));
  specs.push_back(zone(-1, {{0.5, 0.75, 0.6, 1}}));
  specs.push_back(zone(0, {{1, 2, 1.25, 1}, {5, 6.5, 6.0, -1}}));
  specs.push_back(zone(1, {{2, 2.5, 2.2, -1}, {7, 9, 8, -1}}));
  specs.push_back(
      zone(0, {{1, 1.5, 1.2, 1}, {3, 3.25, 3.1, -1}, {6, 7, 6.5, 1}}));
  specs.push_back(zone(0, {{2, 2, 2, 1}, {4, 5, 4.5, -1}}));
  specs.push_back(zone(0, {{1, 1.0001, 1.00005, 1}}));
  specs.push_back(zone(0, {{10, 100, 55, -1}}));
  specs.push_back(
      with_tail(zone(0, {{4, 4.0625, 4.03, 1}}), "4*j^2", "j^(-4)"));
  specs.push_back(with_tail(zone(0, {}), "j^3", "j^(-3)"));
  specs.push_back(
      with_tail(zone(0, {{2, 2.3, 2.1, -1}}), "2*j^2+3", "j^(-4)"));
  specs.push_back(with_tail(zone(0, {}), "10*j", "j^(-5)"));
  specs.push_back(with_tail(zone(0, {}), "j^4", "j^(-6)"));
  specs.push_back(zone(-5, {{-2, -1, -1.5, -1}}));
  specs.push_back(zone(0.25, {{1, 1.75, 1.5, 1}, {3, 3.5, 3.0, -1}}));
  c.expect(specs.size() == 20, "spec corpus must hold 20 entries");

  std::mt19937_64 rng(20260816);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> samples;
  samples.reserve(50);
  for (int k = 0; k < 50; ++k) {
    double re = -6.0 + 20.0 * u(rng);
    double im = (0.05 + 2.45 * u(rng)) * (u(rng) < 0.5 ? -1.0 : 1.0);
    samples.push_back({re, im});
  }

  for (size_t s = 0; s < specs.size(); ++s) {
    for (int lev : {1, 8, 64}) {
      double res = identity_residual(specs[s], samples, lev);
      c.expect(res < 1e-10, "spec " + std::to_string(s) + " level " +
                                std::to_string(lev) + ": identity residual " +
                                num(res));
    }
  }
}

// ---------------------------------------------------------------------------
// criterion 2: every Weyl-type function the library produces is Herglotz on
// the upper half plane and conjugate-symmetric: 200 samples per producer.

void criterion2(Check& c) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // analytic model coefficients
  std::vector<WeylCoefficient> coeffs = {
      wc(z_atoms(), 0.3), wc(half_lebesgue(), -0.2), wc(sec6_measure(), 0.0),
      wc(accumulating_measure(0, -2), 0.1), wc(lebesgue(), 0.0)};
  for (size_t k = 0; k < coeffs.size(); ++k) {
    for (int j = 0; j < 40; ++j) {
      Complex z{-8.0 + 16.0 * u(rng), 0.01 + 7.99 * u(rng)};
      Complex M = eval_M(coeffs[k], z);
      const double scale = std::max(1.0, std::abs(M));
      c.expect(M.imag() >= -1e-10 * scale,
               "eval_M coeff " + std::to_string(k) + " at " + cnum(z) +
                   ": Im M = " + num(M.imag()));
      Complex Mc = eval_M(coeffs[k], std::conj(z));
      c.expect(std::abs(Mc - std::conj(M)) <= 1e-10 * scale,
               "eval_M coeff " + std::to_string(k) + " at " + cnum(z) +
                   ": conjugate defect " + num(std::abs(Mc - std::conj(M))));
    }
  }

  // band-edge coefficients, both sides
  std::vector<ZoneSpec> zones = {
      zone(0, {{1, 2, 1.5, 1}}),
      with_tail(zone(0, {{4, 4.0625, 4.03, 1}}), "4*j^2", "j^(-4)"),
      zone(0, {}), zone(0, {{1, 2, 1.25, 1}, {5, 6.5, 6.0, -1}})};
  for (size_t k = 0; k < zones.size(); ++k) {
    for (int j = 0; j < 25; ++j) {
      Complex z{-4.0 + 12.0 * u(rng), 0.05 + 2.95 * u(rng)};
      for (Side side : {Side::plus, Side::minus}) {
        Complex m = m_coefficient(zones[k], z, side);
        const double scale = std::max(1.0, std::abs(m));
        c.expect(m.imag() >= -1e-10 * scale,
                 "m_coefficient zone " + std::to_string(k) + " at " + cnum(z) +
                     ": Im m = " + num(m.imag()));
        Complex mc = m_coefficient(zones[k], std::conj(z), side);
        c.expect(std::abs(mc - std::conj(m)) <= 1e-10 * scale,
                 "m_coefficient zone " + std::to_string(k) + " at " + cnum(z) +
                     ": conjugate defect " + num(std::abs(mc - std::conj(m))));
      }
    }
  }

  // ODE-solved coefficients
  PotentialSpec freep;
  PotentialSpec q6 = PotentialSpec::closed_form(
      "6*(x^4 - 6*abs(x)) / (abs(x)^3 + 3)^2");
  struct OdeCase {
    const PotentialSpec* q;
    int n;
    double target;
    const char* name;
  };
  std::vector<OdeCase> ode = {{&freep, 140, 1e-9, "free"}, {&q6, 60, 1e-7, "q6"}};
  for (const OdeCase& oc : ode) {
    for (int j = 0; j < oc.n; ++j) {
      Complex z{-1.5 + 3.0 * u(rng), 0.8 + 2.2 * u(rng)};
      Side side = (j % 2 == 0) ? Side::plus : Side::minus;
      WeylDiskResult r = m_numeric(*oc.q, side, z, 100.0, oc.target);
      const double scale = std::max(1.0, std::abs(r.m));
      c.expect(r.m.imag() >= -(r.error + 1e-10),
               std::string("m_numeric ") + oc.name + " at " + cnum(z) +
                   ": Im m = " + num(r.m.imag()));
      WeylDiskResult rc = m_numeric(*oc.q, side, std::conj(z), 100.0, oc.target);
      c.expect(std::abs(rc.m - std::conj(r.m)) <= 1e-10 * scale,
               std::string("m_numeric ") + oc.name + " at " + cnum(z) +
                   ": conjugate defect " + num(std::abs(rc.m - std::conj(r.m))));
    }
  }
}

// ---------------------------------------------------------------------------
// criterion 3: on a 27-pair corpus the point classifier and explicit chain
// construction agree: every reported multiplicity k admits a chain with
// residuals below 1e-8, and length k+1 fails (length 1 for non-eigenvalues).

struct ClassCase {
  std::string name;
  ModelOperator op;
  Complex lambda;
  bool eig;
  int k;  // expected algebraic multiplicity when eig
};

void criterion3(Check& c) {
  std::vector<ClassCase> cases;

  auto add = [&](std::string name, ModelOperator op, Complex l, bool eig,
                 int k) {
    cases.push_back({std::move(name), std::move(op), l, eig, k});
  };

  // no eigenvalue: at least one side carries local a.c. mass
  add("density/density shifted C", make_op(lebesgue(), lebesgue(), 0, 1),
      {0.5, 0}, false, 0);
  add("density/lattice", make_op(lebesgue(), z_atoms()), {0.7, 0}, false, 0);
  add("half density/density", make_op(half_lebesgue(), lebesgue(), 0.3, 0),
      {2.0, 0}, false, 0);
  add("density over an atom", make_op(half_lebesgue(), z_atoms()), {4.0, 0},
      false, 0);
  add("accumulation point vs atom",
      make_op(accumulating_measure(0, -2), z_atoms()), {0.0, 0}, false, 0);

  // no eigenvalue: atom on one side only
  add("atom/shifted lattice at 0",
      make_op(z_atoms(), lattice_atoms("k + 0.5")), {0.0, 0}, false, 0);
  add("atom/shifted lattice at 3",
      make_op(z_atoms(), lattice_atoms("k + 0.5")), {3.0, 0}, false, 0);
  add("atom/off-support half density", make_op(z_atoms(), half_lebesgue()),
      {-5.0, 0}, false, 0);
  add("even/odd sublattices",
      make_op(lattice_atoms("2*k"), lattice_atoms("2*k+1")), {0.0, 0}, false,
      0);

  // shared atom, unequal masses: simple
  add("mass 1 vs 2", make_op(z_atoms(), z_atoms({5}, {{5.0, 2.0}})), {5.0, 0},
      true, 1);
  add("mass 0.25 vs 1", make_op(z_atoms({-3}, {{-3.0, 0.25}}), z_atoms()),
      {-3.0, 0}, true, 1);
  add("mass 1 vs 1.3", make_op(z_atoms(), z_atoms({12}, {{12.0, 1.3}})),
      {12.0, 0}, true, 1);

  // shared atom, equal masses, divergent neighbour moment: simple
  {
    SpectralMeasure p = z_atoms({0}, {{0.0, 1.0}});
    p.families.push_back(accumulating_family(0, -2));
    SpectralMeasure q = p;
    q.atoms.push_back({7.5, 1.0});
    add("equal masses, heavy accumulation", make_op(p, q), {0.0, 0}, true, 1);
  }

  // shared atom, equal masses, regular neighbourhood: chain of length 2+
  add("lattice pair at 0", make_op(z_atoms(), z_atoms({5}, {{5.0, 2.0}})),
      {0.0, 0}, true, 2);
  add("lattice pair at 1", make_op(z_atoms(), z_atoms({5}, {{5.0, 2.0}})),
      {1.0, 0}, true, 2);
  add("reweighted at -2", make_op(z_atoms({6}, {{6.0, 2.5}}), z_atoms()),
      {-2.0, 0}, true, 2);
  add("off-lattice extra", make_op(z_atoms(), z_atoms({}, {{2.5, 0.8}})),
      {-7.0, 0}, true, 2);

  // tuned extras: first derivative vanishes too
  add("balanced pair, length 3",
      make_op(z_atoms({5}, {{5.0, 2.0}}),
              z_atoms({10}, {{10.0, 1.0 + 101.0 / 13.0}})),
      {0.0, 0}, true, 3);
  add("balanced pair at 1, length 3",
      make_op(z_atoms({4}, {{4.0, 2.0}}),
              z_atoms({7}, {{7.0, 1.0 + 125.0 / 34.0}})),
      {1.0, 0}, true, 3);

  // two tuned extras: second derivative vanishes as well
  {
    auto K0 = [](double t) { return 1.0 / t - t / (1.0 + t * t); };
    auto K0p = [](double t) { return 1.0 / (t * t); };
    const double a11 = K0(20), a12 = -K0(10), b1 = -K0(5);
    const double a21 = K0p(20), a22 = -K0p(10), b2 = -K0p(5);
    const double det = a11 * a22 - a12 * a21;
    const double w3 = (b1 * a22 - a12 * b2) / det;
    const double w2 = (a11 * b2 - b1 * a21) / det;
    c.expect(w3 > 0 && w2 > 0, "length-4 design needs positive weights");
    const double phi2 = 2.0 / 125.0 + w3 * 2.0 / 8000.0 - w2 * 2.0 / 1000.0;
    c.expect(std::abs(phi2) > 1e-6, "length-4 design: second derivative");
    add("doubly balanced pair, length 4",
        make_op(z_atoms({5, 20}, {{5.0, 2.0}, {20.0, 1.0 + w3}}),
                z_atoms({10}, {{10.0, 1.0 + w2}})),
        {0.0, 0}, true, 4);
  }

  // off the atoms: eigenvalue iff the boundary limit vanishes
  add("plain gap point", make_op(z_atoms(), z_atoms({3}, {{3.0, 1.5}})),
      {0.5, 0}, false, 0);
  add("constant offset", make_op(z_atoms(), z_atoms(), 0.1, 0), {0.5, 0},
      false, 0);
  add("offset plus extra",
      make_op(z_atoms(), z_atoms({4}, {{4.0, 1.3}}), 0.1, 0), {0.25, 0},
      false, 0);
  add("small imbalance", make_op(z_atoms(), z_atoms({10}, {{10.0, 3.0}})),
      {-0.5, 0}, false, 0);
  add("balanced gap zero",
      make_op(z_atoms({3}, {{3.0, 2.0}}), z_atoms({5}, {{5.0, 152.0 / 35.0}})),
      {0.5, 0}, true, 1);

  {
    // extras at 3 and 7 against 5, tuned so value and slope both vanish
    auto K = [](double t) { return 1.0 / (t - 0.5) - t / (1.0 + t * t); };
    auto Kp = [](double t) { return 1.0 / ((t - 0.5) * (t - 0.5)); };
    const double det = K(5) * (-Kp(7)) - (-K(7)) * Kp(5);
    const double b = (K(3) * (-Kp(7)) - (-K(7)) * Kp(3)) / det;
    const double cc = (K(5) * Kp(3) - K(3) * Kp(5)) / det;
    c.expect(b > 0 && cc > 0, "gap length-2 design needs positive weights");
    add("balanced gap zero, length 2",
        make_op(z_atoms({3, 7}, {{3.0, 2.0}, {7.0, 1.0 + cc}}),
                z_atoms({5}, {{5.0, 1.0 + b}})),
        {0.5, 0}, true, 2);
  }

  {
    // moment-limited gap eigenvalue: balanced extras, heavy accumulation
    SpectralMeasure p = z_atoms({3}, {{3.0, 2.0}});
    p.families.push_back(accumulating_family(0.5, -4));
    SpectralMeasure q = z_atoms({5}, {{5.0, 152.0 / 35.0}});
    q.families.push_back(accumulating_family(0.5, -4));
    add("moment-limited gap zero", make_op(p, q), {0.5, 0}, true, 1);
  }

  c.expect(cases.size() >= 25,
           "corpus holds " + std::to_string(cases.size()) + " pairs");

  for (const ClassCase& cc : cases) {
    EigenReport rep;
    try {
      rep = classify_eigenvalue(cc.op, cc.lambda, 12);
    } catch (const Error& e) {
      c.expect(false, cc.name + ": classify threw " + e.what());
      continue;
    }
    c.expect(rep.is_eigenvalue == cc.eig,
             cc.name + ": is_eigenvalue = " +
                 (rep.is_eigenvalue ? "true" : "false"));
    if (!cc.eig) {
      bool failed = false;
      try {
        auto chain = build_jordan_chain(cc.op, cc.lambda, 1);
        for (double r : jordan_residual(cc.op, cc.lambda, chain))
          if (!(r < 1e-8)) failed = true;
      } catch (const Error&) {
        failed = true;
      }
      c.expect(failed, cc.name + ": length-1 chain must fail");
      continue;
    }
    c.expect(rep.geometric == 1, cc.name + ": geometric " +
                                     std::to_string(rep.geometric));
    c.expect(rep.algebraic == Multiplicity::finite(cc.k),
             cc.name + ": algebraic " + rep.algebraic.str() + " expected " +
                 std::to_string(cc.k));

    try {
      auto chain = build_jordan_chain(cc.op, cc.lambda, cc.k);
      auto res = jordan_residual(cc.op, cc.lambda, chain);
      double worst = 0;
      for (double r : res) worst = std::max(worst, r);
      c.expect(int(res.size()) == cc.k && worst < 1e-8,
               cc.name + ": length-" + std::to_string(cc.k) +
                   " chain residual " + num(worst));
    } catch (const Error& e) {
      c.expect(false, cc.name + ": certified chain threw " + e.what());
    }

    bool failed = false;
    std::string why = "residuals stayed below 1e-8";
    try {
      auto longer = build_jordan_chain(cc.op, cc.lambda, cc.k + 1);
      for (double r : jordan_residual(cc.op, cc.lambda, longer))
        if (!(r < 1e-8)) {
          failed = true;
          why = "residual breach";
        }
    } catch (const Error& e) {
      failed = true;
      why = e.what();
    }
    c.expect(failed, cc.name + ": length-" + std::to_string(cc.k + 1) +
                         " chain must fail (" + why + ")");
  }
}

// ---------------------------------------------------------------------------
// criterion 4: identical halves are detected as degenerate, classified as
// infinite multiplicity off the joint support, and a 1e-3 perturbation of
// either half removes the degeneracy.

void criterion4(Check& c) {
  ModelOperator d1 = make_op(z_atoms(), z_atoms());
  c.expect(degenerate_check(d1), "lattice pair: degenerate");
  EigenReport r1 = classify_eigenvalue(d1, {0.5, 0}, 8);
  c.expect(r1.is_eigenvalue && r1.algebraic == Multiplicity::infinite(),
           "lattice pair at 0.5: " + r1.algebraic.str());
  EigenReport r1c = classify_eigenvalue(d1, {0.3, 1.1}, 8);
  c.expect(r1c.is_eigenvalue && r1c.algebraic == Multiplicity::infinite(),
           "lattice pair at 0.3+1.1i: " + r1c.algebraic.str());

  ModelOperator p1 = d1;
  p1.minus.measure.atoms.push_back({2.5, 1e-3});
  c.expect(!degenerate_check(p1), "atom perturbation flips the verdict");

  ModelOperator d2 = make_op(sec6_measure(), sec6_measure());
  c.expect(degenerate_check(d2), "band pair: degenerate");
  EigenReport r2 = classify_eigenvalue(d2, {-3.0, 0}, 8);
  c.expect(r2.is_eigenvalue && r2.algebraic == Multiplicity::infinite(),
           "band pair at -3: " + r2.algebraic.str());

  ModelOperator p2 = d2;
  p2.plus.C += 1e-3;
  c.expect(!degenerate_check(p2), "C perturbation flips the verdict");
  ModelOperator p3 = d2;
  p3.minus.measure.atoms[0].w += 1e-3;
  c.expect(!degenerate_check(p3), "mass perturbation flips the verdict");
}

// ---------------------------------------------------------------------------
// criterion 5: the closed-form one-turning-point example round-trips: the ODE
// solver reproduces the closed-form coefficient off the axis to 1e-5, the
// Stieltjes inversion recovers the band density to 1e-6, and the
// reconstructed measure classifies band points as locally divergent.

void criterion5(Check& c) {
  PotentialSpec q6 = PotentialSpec::closed_form(
      "6*(x^4 - 6*abs(x)) / (abs(x)^3 + 3)^2");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int j = 0; j < 10; ++j) {
    double im = 0.4 + 2.1 * u(rng);
    if (j % 3 == 2) im = -im;
    Complex z{-3.0 + 6.0 * u(rng), im};
    WeylDiskResult r = m_numeric(q6, Side::plus, z, 200.0, 1e-8);
    double diff = std::abs(r.m - oracle::m0_closed(z));
    c.expect(diff < 1e-5,
             "m_numeric vs closed form at " + cnum(z) + ": " + num(diff));
  }

  auto m0f = [](Complex z) { return oracle::m0_closed(z); };
  for (double t : {0.5, 1.0, 2.0}) {
    double rho = stieltjes_invert(m0f, t);
    double want = std::pow(t, 2.5) / (kPi * (1.0 + t * t * t));
    c.expect(std::abs(rho - want) < 1e-6,
             "inverted density at t=" + num(t) + ": " + num(rho) + " vs " +
                 num(want));
  }

  Complex probe = oracle::m0_closed(Complex(-1.0, 1e-6));
  double mass = 1e-6 * probe.imag();
  c.expect(std::abs(mass - 2.0 / 3.0) < 1e-4,
           "recovered point mass " + num(mass));

  SpectralMeasure rec;
  rec.atoms.push_back({-1.0, mass});
  rec.densities.push_back(density_piece(
      0, kInf, [m0f](double t) { return stieltjes_invert(m0f, t); }, 2.5, 0,
      -0.5, "reconstructed band"));
  for (double t : {0.5, 1.0, 2.0}) {
    PointClass pc = classify_point(rec, Complex(t, 0));
    c.expect(pc == PointClass::a0,
             "reconstructed measure at t=" + num(t) + ": " +
                 point_class_name(pc));
  }
}

// ---------------------------------------------------------------------------
// criterion 6: for the free operator the solved coefficient matches
// i/sqrt(lambda) to 1e-8 on the unit circle, and the large-|lambda|
// asymptotic defect stays bounded out to radius 1000.

void criterion6(Check& c) {
  PotentialSpec freep;
  for (int j = 1; j <= 10; ++j) {
    double th = kPi * j / 10.0;
    Complex z = (j == 10) ? Complex(-1.0, 0.0)
                          : Complex(std::cos(th), std::sin(th));
    WeylDiskResult r = m_numeric(freep, Side::plus, z);
    double diff = std::abs(r.m - oracle::m_free(z));
    c.expect(diff < 1e-8, "free coefficient at " + cnum(z) + ": " + num(diff));
  }
  for (int j = 1; j <= 5; ++j) {
    double th = kPi * (2 * j - 1) / 10.0;
    Complex z{std::cos(th), std::sin(th)};
    WeylDiskResult r = m_numeric(freep, Side::minus, z);
    double diff = std::abs(r.m - oracle::m_free(-z));
    c.expect(diff < 1e-8,
             "free minus-side coefficient at " + cnum(z) + ": " + num(diff));
  }

  const std::vector<double> radii = {10.0, 100.0, 1000.0};
  for (Side side : {Side::plus, Side::minus}) {
    double a = asymptotic_check(freep, side, radii);
    c.expect(a < 1e-6, "free asymptotic defect " + num(a));
  }
  PotentialSpec q6 = PotentialSpec::closed_form(
      "6*(x^4 - 6*abs(x)) / (abs(x)^3 + 3)^2");
  PotentialSpec bump = PotentialSpec::closed_form("exp(-x^2)");
  for (Side side : {Side::plus, Side::minus}) {
    double a6 = asymptotic_check(q6, side, radii);
    c.expect(std::isfinite(a6) && a6 < 10.0, "q6 asymptotic defect " + num(a6));
    double ab = asymptotic_check(bump, side, radii);
    c.expect(std::isfinite(ab) && ab < 10.0,
             "bump asymptotic defect " + num(ab));
  }
}

// ---------------------------------------------------------------------------
// criterion 7: on 10 operator pairs the spectrum search in spectral gaps and
// complex boxes agrees with a 1e5-point sign scan and with contour winding
// counts, and complex eigenvalues come in exactly conjugate pairs.

struct GapBox {
  double re0, re1, im0, im1;
  int winding;
};

struct GapPair {
  std::string name;
  ModelOperator op;
  std::vector<std::pair<double, double>> scans;
  std::vector<GapBox> boxes;
  std::vector<std::pair<double, double>> conj_boxes;  // re0,re1 with im +-1.6
};

void criterion7(Check& c) {
  std::vector<GapPair> pairs;

  {
    GapPair a;
    a.name = "conjugate pair";
    a.op = make_op(z_atoms({-1, 1}, {{-1.0, 2.0}, {1.0, 2.0}}),
                   z_atoms({0}, {{0.0, 2.0}}));
    a.scans = {{0.02, 0.98}};
    a.boxes = {{-0.6, 0.6, 0.4, 1.6, 1}};
    a.conj_boxes = {{-0.6, 0.6}};
    pairs.push_back(std::move(a));
  }

  {
    // five tuned nodes: the gap function has double zeros at +-i and the
    // kernel regularizers cancel exactly
    const double t[5] = {1, 2, 3, 4, 5};
    double cres[5];
    for (int i = 0; i < 5; ++i) {
      double prod = 1;
      for (int j = 0; j < 5; ++j)
        if (j != i) prod *= t[j] - t[i];
      double s = t[i] * t[i] + 1.0;
      cres[i] = s * s / prod;
    }
    double reg = 0;
    for (int i = 0; i < 5; ++i) reg += cres[i] * t[i] / (1.0 + t[i] * t[i]);
    c.expect(std::abs(reg) < 1e-12, "node design regularizer " + num(reg));
    GapPair b;
    b.name = "double conjugate pair";
    b.op = make_op(
        z_atoms({1, 3, 5},
                {{1.0, 1.0 + cres[0]}, {3.0, 1.0 + cres[2]},
                 {5.0, 1.0 + cres[4]}}),
        z_atoms({2, 4}, {{2.0, 1.0 - cres[1]}, {4.0, 1.0 - cres[3]}}));
    b.scans = {{0.02, 0.98}};
    b.boxes = {{-0.6, 0.6, 0.4, 1.6, 2}};
    b.conj_boxes = {{-0.6, 0.6}};
    pairs.push_back(std::move(b));
  }

  struct Single {
    double t0, extra;
    std::pair<double, double> scan;
    GapBox box;
  };
  std::vector<Single> singles = {
      {5, 1.0, {-0.98, -0.02}, {-0.45, -0.02, -0.25, 0.25, 1}},
      {3, 0.5, {-0.98, -0.02}, {-0.6, -0.05, -0.25, 0.25, 1}},
      {10, 2.0, {-0.98, -0.02}, {-0.3, -0.02, -0.25, 0.25, 1}},
      {-4, 0.7, {0.02, 0.98}, {0.02, 0.48, -0.25, 0.25, 1}},
      {7, 1.2, {-0.98, -0.02}, {-0.4, -0.02, -0.25, 0.25, 1}},
      {-2, 0.25, {0.02, 0.98}, {0.1, 0.9, -0.25, 0.25, 1}},
  };
  for (const Single& s : singles) {
    GapPair g;
    g.name = "gap zero at " + num(-1.0 / s.t0);
    g.op = make_op(z_atoms(),
                   z_atoms({(long long)s.t0, },
                           {{s.t0, 1.0 + s.extra}}));
    g.scans = {s.scan};
    g.boxes = {s.box};
    pairs.push_back(std::move(g));
  }

  {
    GapPair i1;
    i1.name = "two gap zeros (1,2)";
    i1.op = make_op(z_atoms(), z_atoms({3, -3}, {{3.0, 2.0}, {-3.0, 3.0}}));
    i1.scans = {{0.02, 0.98}, {9.02, 9.98}};
    i1.boxes = {{0.02, 0.4, -0.25, 0.25, 1}, {9.6, 9.98, -0.25, 0.25, 1}};
    pairs.push_back(std::move(i1));

    GapPair i2;
    i2.name = "two gap zeros (1,3)";
    i2.op = make_op(z_atoms(), z_atoms({3, -3}, {{3.0, 2.0}, {-3.0, 4.0}}));
    i2.scans = {{0.02, 0.98}, {6.05, 6.95}};
    i2.boxes = {{0.02, 0.45, -0.25, 0.25, 1}, {6.05, 6.95, -0.25, 0.25, 1}};
    pairs.push_back(std::move(i2));
  }

  c.expect(pairs.size() == 10, "gap corpus holds 10 pairs");

  for (const GapPair& g : pairs) {
    auto phi_c = [&g](Complex z) { return phi_value(g.op, z); };
    auto phi_r = [&g](double x) { return phi_value(g.op, {x, 0}).real(); };

    for (const auto& [lo, hi] : g.scans) {
      std::vector<double> scanned = oracle::sign_scan_roots(phi_r, lo, hi);
      std::vector<DiscretePoint> found;
      try {
        found = discrete_spectrum(g.op, {lo, hi, 0, 0}, 16);
      } catch (const Error& e) {
        c.expect(false, g.name + ": discrete_spectrum threw " + e.what());
        continue;
      }
      std::sort(found.begin(), found.end(),
                [](const DiscretePoint& a, const DiscretePoint& b) {
                  return a.lambda.real() < b.lambda.real();
                });
      c.expect(found.size() == scanned.size(),
               g.name + ": " + std::to_string(found.size()) + " roots vs scan " +
                   std::to_string(scanned.size()) + " on (" + num(lo) + "," +
                   num(hi) + ")");
      if (found.size() == scanned.size()) {
        for (size_t i = 0; i < found.size(); ++i) {
          c.expect(std::abs(found[i].lambda.real() - scanned[i]) < 1e-8 &&
                       found[i].lambda.imag() == 0.0,
                   g.name + ": root " + cnum(found[i].lambda) + " vs scan " +
                       num(scanned[i]));
          c.expect(found[i].mult == Multiplicity::finite(1),
                   g.name + ": gap root multiplicity " + found[i].mult.str());
        }
      }
    }

    for (const GapBox& b : g.boxes) {
      int w = oracle::box_winding(phi_c, b.re0, b.re1, b.im0, b.im1);
      c.expect(w == b.winding, g.name + ": winding " + std::to_string(w) +
                                   " expected " + std::to_string(b.winding));
      std::vector<DiscretePoint> found =
          discrete_spectrum(g.op, {b.re0, b.re1, b.im0, b.im1}, 16);
      int total = 0;
      for (const DiscretePoint& d : found) {
        if (d.mult.kind != Multiplicity::Kind::finite) total += 1000;
        total += d.mult.k;
      }
      c.expect(total == b.winding,
               g.name + ": box multiplicity " + std::to_string(total) +
                   " vs winding " + std::to_string(b.winding));
    }

    for (const auto& [re0, re1] : g.conj_boxes) {
      std::vector<DiscretePoint> found =
          discrete_spectrum(g.op, {re0, re1, -1.6, 1.6}, 16);
      for (const DiscretePoint& d : found) {
        if (d.lambda.imag() == 0.0) continue;
        bool matched = false;
        for (const DiscretePoint& e : found)
          if (e.lambda == std::conj(d.lambda)) matched = true;
        c.expect(matched, g.name + ": conjugate of " + cnum(d.lambda) +
                              " missing from the box report");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// criterion 8: turning-point verdicts across the exponent grid follow the
// integrability and norm-divergence rules, and the first moment solution
// matches its closed form to 1e-10.

WeightFunction power_weight(double alpha) {
  char text[96];
  std::snprintf(text, sizeof text, "sign(x) * (1 + abs(x))^(%.17g)", alpha);
  WeightFunction w;
  w.r = Expr::parse(text, "x");
  w.alpha_plus = alpha;
  w.alpha_minus = alpha;
  return w;
}

void criterion8(Check& c) {
  const double third = -5.0 / 3.0;
  for (double alpha : {-1.9, -1.7, third, -1.5, -1.2, -1.05, -0.9, -2.5, -3.0}) {
    CriticalVerdict v = critical_verdict(power_weight(alpha));
    const bool integrable = alpha < -1.0;
    c.expect(v.zero_is_eigenvalue == integrable,
             "alpha=" + num(alpha) + ": zero_is_eigenvalue");
    c.expect(v.singular_critical_point.has_value(),
             "alpha=" + num(alpha) + ": singular verdict must be decided");
    if (v.singular_critical_point.has_value()) {
      const bool singular = integrable && alpha >= third - 1e-12;
      c.expect(*v.singular_critical_point == singular,
               "alpha=" + num(alpha) + ": singular flag");
    }
    if (integrable) {
      c.expect(v.eigenvector_neutral,
               "alpha=" + num(alpha) + ": odd weight must be neutral");
      c.expect(v.zero_simple.has_value() &&
                   *v.zero_simple == (alpha >= third - 1e-12),
               "alpha=" + num(alpha) + ": simplicity flag");
    }
  }

  CriticalVerdict deep = critical_verdict(power_weight(-3.5));
  c.expect(deep.zero_is_eigenvalue && !deep.singular_critical_point.has_value(),
           "alpha=-3.5: singular question must stay open");

  for (double alpha : {-1.5, -2.5, -1.2}) {
    WeightFunction w = power_weight(alpha);
    for (double x : {0.5, 1.0, 3.0, 7.0, -2.0}) {
      double got = y1_eval(w, x);
      double want = oracle::y1_power_closed(alpha, x);
      c.expect(std::abs(got - want) < 1e-10,
               "alpha=" + num(alpha) + " x=" + num(x) + ": y1 " + num(got) +
                   " vs " + num(want));
    }
  }
  WeightFunction w15 = power_weight(-1.5);
  c.expect(std::abs(y1_eval(w15, 3.0) - 4.0) < 1e-10, "y1(3) at alpha=-1.5");
  c.expect(std::abs(y1_eval(w15, -3.0) + 4.0) < 1e-10, "y1(-3) at alpha=-1.5");
}

// ---------------------------------------------------------------------------
// criterion 9: analytic derivatives of the model coefficient agree with
// central differences to 1e-6 relative accuracy on 100 samples.

void criterion9(Check& c) {
  std::vector<WeylCoefficient> coeffs = {
      wc(z_atoms(), 0.3), wc(half_lebesgue(), -0.2), wc(sec6_measure(), 0.1),
      wc(z_atoms({0}, {{0.0, 2.0}}), 0.0)};
  std::mt19937_64 rng(20240816);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int sample = 0;
  for (const WeylCoefficient& w : coeffs) {
    for (int j = 0; j < 25; ++j, ++sample) {
      double im = (0.5 + 2.5 * u(rng)) * (j % 3 == 0 ? -1.0 : 1.0);
      Complex z{-4.0 + 8.0 * u(rng), im};
      const int n = 1 + (sample % 2);
      Complex d = eval_M_deriv(w, z, n);
      const double h = 1e-5 * std::max(1.0, std::abs(z));
      Complex lo, hi;
      if (n == 1) {
        hi = eval_M(w, z + h);
        lo = eval_M(w, z - h);
      } else {
        hi = eval_M_deriv(w, z + h, 1);
        lo = eval_M_deriv(w, z - h, 1);
      }
      Complex cd = (hi - lo) / (2.0 * h);
      double diff = std::abs(d - cd);
      c.expect(diff <= 1e-6 * std::max(1.0, std::abs(d)),
               "derivative order " + std::to_string(n) + " at " + cnum(z) +
                   ": defect " + num(diff));
    }
  }
  c.expect(sample == 100, "derivative corpus holds 100 samples");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    double budget_s;
    void (*fn)(Check&);
  };
  const std::vector<Entry> entries = {
      {1, "zone function identity", 10, criterion1},
      {2, "Herglotz and conjugate symmetry", 30, criterion2},
      {3, "classifier vs Jordan chains", 60, criterion3},
      {4, "degenerate pair detection", 5, criterion4},
      {5, "closed-form example round trip", 120, criterion5},
      {6, "free operator reference", 30, criterion6},
      {7, "gap zeros, winding, conjugate pairs", 60, criterion7},
      {8, "turning point verdicts", 20, criterion8},
      {9, "derivative consistency", 10, criterion9},
  };

  int failed = 0;
  for (const Entry& e : entries) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.fn(c);
    } catch (const std::exception& ex) {
      c.failures.push_back(std::string("unexpected exception: ") + ex.what());
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const bool in_budget = dt <= e.budget_s;
    const bool pass = c.failures.empty() && in_budget;
    std::printf("criterion %d: %s (%s, %d checks, %.2fs of %.0fs)\n", e.id,
                pass ? "PASS" : "FAIL", e.label, c.checks, dt, e.budget_s);
    std::fflush(stdout);
    if (!pass) {
      ++failed;
      if (!in_budget)
        std::fprintf(stderr, "  criterion %d: over budget (%.2fs > %.0fs)\n",
                     e.id, dt, e.budget_s);
      for (const std::string& f : c.failures)
        std::fprintf(stderr, "  criterion %d: %s\n", e.id, f.c_str());
    }
  }
  return failed;
}
