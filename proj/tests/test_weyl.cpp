#include <cmath>
#include <random>

#include "doctest.h"
#include "indefspec/weyl.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace indefspec;
using namespace testsupport;

TEST_SUITE_BEGIN("weyl");

TEST_CASE("eval_M closed forms") {
  SpectralMeasure one_atom;
  one_atom.atoms = {{0.0, 1.0}};
  one_atom.total_mass_infinite = false;
  CHECK(std::abs(eval_M(wc(one_atom), Complex(0, 1)) - Complex(0, 1)) < 1e-14);

  CHECK(std::abs(eval_M(wc(lebesgue()), Complex(0, 1)) - Complex(0, kPi)) <
        1e-10);
  CHECK(std::abs(eval_M(wc(lebesgue(), 2.5), Complex(0, 1)) -
                 Complex(2.5, kPi)) < 1e-10);
  // below the axis the Lebesgue value flips sign
  CHECK(std::abs(eval_M(wc(lebesgue()), Complex(0, -1)) - Complex(0, -kPi)) <
        1e-10);
}

TEST_CASE("eval_M on lattice atoms matches the cotangent closed form") {
  auto w = wc(z_atoms());
  CHECK(std::abs(eval_M(w, Complex(0.5, 0))) < 1e-10);
  CHECK(std::abs(eval_M(w, Complex(0.25, 0)) - Complex(-kPi, 0)) < 1e-10);
  const Complex at_i = eval_M(w, Complex(0, 1));
  CHECK(std::abs(at_i - oracle::zlattice_kernel_closed(Complex(0, 1))) <
        1e-10);
  CHECK(std::abs(at_i - oracle::zlattice_kernel_sum(Complex(0, 1))) < 1e-9);
}

TEST_CASE("eval_M on densities matches the independent kernel oracle") {
  auto half = wc(half_lebesgue());
  for (Complex lam : {Complex(0, 1), Complex(-2, 0.5), Complex(1.5, 2)}) {
    const Complex lib = eval_M(half, lam);
    const Complex ora = oracle::kernel_integral([](double) { return 1.0; },
                                                0.0, kInf, lam, 1e-12);
    CHECK(std::abs(lib - ora) < 1e-9);
    // principal-branch closed form -Log(-lambda)
    CHECK(std::abs(lib - (-std::log(-lam))) < 1e-9);
  }
  // on the negative half axis the formula stays real
  CHECK(std::abs(eval_M(half, Complex(-1, 0)) - Complex(0, 0)) < 1e-9);
  CHECK(std::abs(eval_M(half, Complex(-std::exp(1.0), 0)) - Complex(-1, 0)) <
        1e-9);
}

TEST_CASE("eval_M rejects points on the support") {
  CHECK_THROWS_AS(eval_M(wc(z_atoms()), Complex(3, 0)), Error);
  CHECK_THROWS_AS(eval_M(wc(lebesgue()), Complex(0.7, 0)), Error);
  CHECK_THROWS_AS(eval_M(wc(accumulating_measure(0.0, -2.0)), Complex(0, 0)),
                  Error);
  CHECK_NOTHROW(eval_M(wc(half_lebesgue()), Complex(-0.5, 0)));
}

TEST_CASE("eval_M_deriv closed forms") {
  SpectralMeasure one_atom;
  one_atom.atoms = {{0.0, 1.0}};
  one_atom.total_mass_infinite = false;
  CHECK(eval_M_deriv(wc(one_atom), Complex(2, 0), 1).real() ==
        doctest::Approx(0.25));

  CHECK(std::abs(eval_M_deriv(wc(lebesgue()), Complex(0, 1), 1)) < 1e-10);

  SpectralMeasure atom1;
  atom1.atoms = {{1.0, 3.0}};
  atom1.total_mass_infinite = false;
  const Complex want = 6.0 / std::pow(Complex(1, -1), 3);
  CHECK(std::abs(eval_M_deriv(wc(atom1), Complex(0, 1), 2) - want) < 1e-12);

  // lattice second kernel: M'(1/2) = pi^2
  CHECK(std::abs(eval_M_deriv(wc(z_atoms()), Complex(0.5, 0), 1) -
                 Complex(kPi * kPi, 0)) < 1e-10);
}

TEST_CASE("derivatives match central differences") {
  std::mt19937 rng(20240816);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.2, 2.0);
  std::vector<WeylCoefficient> ws = {wc(z_atoms()), wc(lebesgue()),
                                     wc(sec6_measure(), 0.5)};
  const double h = 1e-5;
  for (const auto& w : ws) {
    for (int s = 0; s < 20; ++s) {
      const Complex lam(re(rng), im(rng));
      const Complex d = eval_M_deriv(w, lam, 1);
      const Complex fd =
          (eval_M(w, lam + h) - eval_M(w, lam - h)) / (2.0 * h);
      CHECK(std::abs(d - fd) <= 1e-6 * std::max(1.0, std::abs(d)));
    }
  }
}

TEST_CASE("phi boundary limits") {
  auto zplus = z_atoms();
  auto zminus = z_atoms();
  zminus.atoms.push_back({5.0, 1.0});

  PhiFunction same{wc(zplus), wc(zplus)};
  auto v0 = eval_phi_boundary(same, 0.5, 0);
  REQUIRE(v0.is_finite());
  CHECK(std::abs(v0.value()) < 1e-12);

  PhiFunction phi{wc(zplus), wc(zminus)};
  auto v = eval_phi_boundary(phi, 0.0, 0);
  REQUIRE(v.is_finite());
  CHECK(v.value().real() == doctest::Approx(-1.0 / 130.0).epsilon(1e-9));
  CHECK(std::abs(v.value().imag()) < 1e-12);

  auto zmass = z_atoms();
  zmass.atoms.push_back({0.0, 1.0});
  PhiFunction bad{wc(zplus), wc(zmass)};
  CHECK_THROWS_AS(eval_phi_boundary(bad, 0.0, 0), Error);

  // divergent order-(n+1) moment reports Divergent rather than a number
  auto acc_p = accumulating_measure(0.0, -2.0);
  auto acc_m = accumulating_measure(0.0, -2.0);
  acc_m.atoms.push_back({3.5, 1.0});
  PhiFunction accphi{wc(acc_p), wc(acc_m)};
  CHECK(eval_phi_boundary(accphi, 0.0, 0).is_divergent());
}

TEST_CASE("phi boundary equals the analytic derivative off both supports") {
  auto zplus = z_atoms();
  auto zminus = z_atoms();
  zminus.atoms.push_back({5.5, 2.0});
  PhiFunction phi{wc(zplus, 0.3), wc(zminus, -0.2)};
  for (double lam : {0.25, 0.75, -1.6}) {
    for (int n = 0; n <= 2; ++n) {
      auto b = eval_phi_boundary(phi, lam, n);
      REQUIRE(b.is_finite());
      const Complex d = phi_deriv(phi, Complex(lam, 0), n);
      CHECK(std::abs(b.value() - d) < 1e-10);
    }
  }
}

TEST_CASE("herglotz residual is zero for positive measures") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.05, 3.0);
  std::vector<Complex> samples;
  for (int i = 0; i < 100; ++i) samples.push_back({re(rng), im(rng)});

  CHECK(r_function_residual(wc(z_atoms()), samples) < 1e-10);
  CHECK(r_function_residual(wc(lebesgue(), 1.5), samples) < 1e-10);
  CHECK(r_function_residual(wc(sec6_measure()), samples) < 1e-10);

  SpectralMeasure a12;
  a12.atoms = {{1.0, 2.0}};
  a12.total_mass_infinite = false;
  const Complex mi = eval_M(wc(a12), Complex(0, 1));
  CHECK(mi.imag() == doctest::Approx(1.0));

  CHECK(eval_M(wc(lebesgue()), Complex(0, 2)).imag() ==
        doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("stieltjes inversion recovers densities") {
  auto leb = wc(lebesgue());
  auto f_leb = [&leb](Complex z) { return eval_M(leb, z); };
  CHECK(stieltjes_invert(f_leb, 0.7) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(stieltjes_invert(f_leb, -4.2) == doctest::Approx(1.0).epsilon(1e-8));

  CHECK(stieltjes_invert([](Complex z) { return oracle::m0_closed(z); }, 1.0) ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-7));

  SpectralMeasure one_atom;
  one_atom.atoms = {{0.0, 1.0}};
  one_atom.total_mass_infinite = false;
  auto w0 = wc(one_atom);
  auto f_atom = [&w0](Complex z) { return eval_M(w0, z); };
  CHECK(std::abs(stieltjes_invert(f_atom, 2.0)) < 1e-9);

  CHECK_THROWS_AS(
      stieltjes_invert([](Complex z) { return std::sqrt(std::abs(z.imag())) *
                                              Complex(0, 1); },
                       0.0),
      Error);
}

TEST_CASE("conjugate symmetry holds to machine precision") {
  std::vector<WeylCoefficient> ws = {wc(z_atoms()), wc(sec6_measure(), -1.0)};
  for (const auto& w : ws) {
    for (Complex lam : {Complex(0.3, 0.9), Complex(-2, 1.7), Complex(4.4, 0.2)}) {
      const Complex up = eval_M(w, lam);
      const Complex dn = eval_M(w, std::conj(lam));
      CHECK(std::abs(dn - std::conj(up)) < 1e-10 * std::max(1.0, std::abs(up)));
    }
  }
}

TEST_SUITE_END();
