#include <cmath>

#include "doctest.h"
#include "indefspec/sturm.hpp"
#include "oracles.hpp"

using namespace indefspec;

namespace {

PotentialSpec sec6_potential() {
  return PotentialSpec::closed_form("6*(x^4 - 6*abs(x)) / (abs(x)^3 + 3)^2");
}

}  // namespace

TEST_SUITE_BEGIN("sturm");

TEST_CASE("potential spec evaluation") {
  PotentialSpec free;
  CHECK(free(3.7) == 0.0);
  CHECK(!free.is_sampled());

  auto q = sec6_potential();
  CHECK(q(0.0) == doctest::Approx(0.0));
  CHECK(q(1.0) == doctest::Approx(6.0 * (1.0 - 6.0) / 16.0));

  auto s = PotentialSpec::sampled({{0.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}});
  CHECK(s.is_sampled());
  CHECK(s(0.0) == doctest::Approx(1.0));
  CHECK(s(1.0) == doctest::Approx(2.0));
  CHECK(s(5.0) == 0.0);
}

TEST_CASE("free m-coefficient is i over the principal square root") {
  const Complex i(0, 1);
  auto r = m_numeric(PotentialSpec{}, Side::plus, i);
  CHECK(std::abs(r.m - i / std::sqrt(i)) < 1e-8);
  CHECK(r.error < 1e-8);

  // side minus evaluates the reflected parameter: i/sqrt(-lambda)
  auto rm = m_numeric(PotentialSpec{}, Side::minus, i);
  CHECK(std::abs(rm.m - i / std::sqrt(-i)) < 1e-8);
  CHECK(std::abs(rm.m - Complex(-std::sqrt(0.5), std::sqrt(0.5))) < 1e-8);

  // -lambda on the positive half axis is spectrum for the minus side
  CHECK_THROWS_AS(m_numeric(PotentialSpec{}, Side::minus, Complex(-4, 0)),
                  Error);
  // ... but resolvent for the plus side, where m is real
  auto rg = m_numeric(PotentialSpec{}, Side::plus, Complex(-4, 0));
  CHECK(std::abs(rg.m - Complex(-0.5, 0)) < 1e-8);
}

TEST_CASE("free-case exactness on the unit circle") {
  for (int j = 1; j < 12; ++j) {
    if (j == 6) continue;  // skip the real axis
    const double th = j * kPi / 6.0;
    const Complex lam(std::cos(th), std::sin(th));
    if (std::abs(lam.imag()) < 1e-12) continue;
    auto r = m_numeric(PotentialSpec{}, Side::plus, lam);
    CHECK(std::abs(r.m - oracle::m_free(lam)) < 1e-8);
    CHECK(std::abs(r.m - oracle::m_free(lam)) <= r.error + 1e-9);
  }
}

TEST_CASE("turning-point example matches its closed form") {
  auto q = sec6_potential();
  auto at = [&q](Complex lam) {
    return m_numeric(q, Side::plus, lam, 200.0, 1e-8);
  };

  auto rm4 = at(Complex(-4, 0));
  CHECK(std::abs(rm4.m - Complex(4.0 / 7.0, 0)) < 1e-6);

  auto ri = at(Complex(0, 1));
  CHECK(std::abs(ri.m - oracle::m0_closed(Complex(0, 1))) < 1e-6);

  auto r2i = at(Complex(0, 2));
  CHECK(std::abs(r2i.m - oracle::m0_closed(Complex(0, 2))) < 1e-6);
  // m0(2i) = (4+6i)/13
  CHECK(std::abs(oracle::m0_closed(Complex(0, 2)) -
                 Complex(4.0 / 13.0, 6.0 / 13.0)) < 1e-12);

  // the potential is even, so the minus side is the reflected closed form:
  // M_minus(lambda) = -m0(-lambda)
  auto rm = m_numeric(q, Side::minus, Complex(0, 1), 200.0, 1e-8);
  CHECK(std::abs(rm.m - (-oracle::m0_closed(Complex(0, -1)))) < 1e-6);
}

TEST_CASE("enclosure radius really encloses") {
  for (Complex lam : {Complex(0, 1), Complex(1, 2), Complex(-2, 0.5)}) {
    auto r = m_numeric(PotentialSpec{}, Side::plus, lam);
    CHECK(std::abs(r.m - oracle::m_free(lam)) <= r.error + 1e-12);
  }
}

TEST_CASE("disk radius contracts with the truncation radius") {
  const Complex lam(0.3, 0.4);
  auto q = sec6_potential();
  auto r8 = m_numeric(q, Side::plus, lam, 8.0, 1e-16);
  auto r16 = m_numeric(q, Side::plus, lam, 16.0, 1e-16);
  CHECK(r16.error <= r8.error * 1.01);
}

TEST_CASE("disk too large is reported") {
  // tiny imaginary part and small cutoff: the disk cannot contract
  CHECK_THROWS_AS(
      m_numeric(PotentialSpec{}, Side::plus, Complex(1.0, 1e-8), 2.0, 1e-12),
      Error);
}

TEST_CASE("herglotz sign and conjugate symmetry of m_numeric") {
  auto q = sec6_potential();
  for (Complex lam : {Complex(0, 1), Complex(1.5, 0.8), Complex(-0.7, 1.2)}) {
    for (Side s : {Side::plus, Side::minus}) {
      const Complex up = m_numeric(q, s, lam, 100.0, 1e-7).m;
      CHECK(up.imag() > -1e-7);
      const Complex dn = m_numeric(q, s, std::conj(lam), 100.0, 1e-7).m;
      CHECK(std::abs(dn - std::conj(up)) < 1e-6);
    }
  }
}

TEST_CASE("asymptotic deviation stays bounded") {
  const std::vector<double> radii{10.0, 100.0, 1000.0};
  CHECK(asymptotic_check(PotentialSpec{}, Side::plus, radii) < 1e-6);
  CHECK(asymptotic_check(PotentialSpec{}, Side::minus, radii) < 1e-6);

  CHECK(asymptotic_check(sec6_potential(), Side::plus, radii) < 10.0);

  auto bump = PotentialSpec::closed_form("exp(-x^2)");
  CHECK(asymptotic_check(bump, Side::plus, radii) < 10.0);
  CHECK(asymptotic_check(bump, Side::minus, radii) < 10.0);
}

TEST_CASE("resolvent ratio limits near the turning point") {
  auto t1 = resolvent_nonempty_ratio(Expr::parse("sign(x)", "x"),
                                     Expr::parse("1", "x"));
  CHECK(t1.certified);
  CHECK(t1.r_plus == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(t1.r_minus == doctest::Approx(1.0).epsilon(1e-6));

  auto t2 = resolvent_nonempty_ratio(
      Expr::parse("sign(x)*abs(x)^0.5", "x"), Expr::parse("1", "x"));
  CHECK(!t2.certified);

  auto t3 = resolvent_nonempty_ratio(Expr::parse("2*sign(x)", "x"),
                                     Expr::parse("2", "x"));
  CHECK(t3.certified);
  CHECK(t3.r_plus == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(t3.r_minus == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_SUITE_END();
