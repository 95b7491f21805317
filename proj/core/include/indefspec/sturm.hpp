#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "indefspec/numeric/expr.hpp"
#include "indefspec/types.hpp"

namespace indefspec {

/// Potential q for -y'' + q y on the half-lines: a closed form in x, a
/// sampled table (natural cubic spline inside the sample range, zero
/// outside), or identically zero.
class PotentialSpec {
 public:
  PotentialSpec() = default;  // free case

  static PotentialSpec closed_form(const std::string& text_in_x);
  static PotentialSpec sampled(std::vector<std::array<double, 2>> points);

  double operator()(double x) const;
  bool is_sampled() const { return bool(spline_); }
  const std::string& text() const { return text_; }

 private:
  struct Spline;
  Expr q_;
  std::shared_ptr<const Spline> spline_;
  std::string text_;
};

/// m-coefficient value with its rigorous enclosure radius (Weyl disk for
/// nonreal spectral parameter, doubling-step drift on the real resolvent).
struct WeylDiskResult {
  Complex m;
  double error = 0;
  double x_used = 0;
};

/// Neumann Titchmarsh-Weyl coefficient of the sign-weighted problem on the
/// given half-line, by nested Weyl disks up to radius x_max.  Real spectral
/// parameters in the resolvent set use the solution-ratio limit instead.
/// Throws DiskTooLarge when the enclosure cannot be contracted below
/// `target` within x_max.
WeylDiskResult m_numeric(const PotentialSpec& p, Side side, Complex lambda,
                         double x_max = 64.0, double target = 1e-9);

/// max over R in radii of |m(iR) - i/sqrt(+-iR)| * R, the scaled deviation
/// from the leading large-parameter term; bounded for integrable-tail q.
double asymptotic_check(const PotentialSpec& p, Side side,
                        const std::vector<double>& radii);

/// One-sided limits of int_0^x r / int_0^x 1/p as x -> +-0.
struct RatioTest {
  bool certified = false;  // both limits exist, nonzero, correctly signed
  double r_plus = 0;
  double r_minus = 0;  // magnitude of the negative-side limit
};

/// Richardson-extrapolated ratio limits near the turning point; certifies a
/// nonempty resolvent set when both are positive.  Throws NoLimit when the
/// extrapolation does not settle.
RatioTest resolvent_nonempty_ratio(const Expr& r, const Expr& p);

}  // namespace indefspec
