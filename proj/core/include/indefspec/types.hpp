#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "indefspec/error.hpp"

namespace indefspec {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = std::numbers::pi;

/// Result of a moment or integral evaluation: either a finite value or a
/// certified divergence.  Divergence is decided symbolically from declared
/// exponents, never from overflow.
class IntegralValue {
 public:
  static IntegralValue finite(Complex v) { return IntegralValue(true, v); }
  static IntegralValue divergent() { return IntegralValue(false, {}); }

  bool is_finite() const { return finite_; }
  bool is_divergent() const { return !finite_; }

  /// Finite value; throws if divergent.
  Complex value() const {
    if (!finite_) fail(Errc::divergent_moment, "value() on divergent result");
    return value_;
  }
  double real() const { return value().real(); }

 private:
  IntegralValue(bool f, Complex v) : finite_(f), value_(v) {}
  bool finite_;
  Complex value_;
};

enum class Side { plus, minus };

inline int side_sign(Side s) { return s == Side::plus ? +1 : -1; }
inline const char* side_name(Side s) { return s == Side::plus ? "+" : "-"; }

/// Global numeric knobs.  `extended` switches hot accumulation loops to
/// 80-bit long double; both modes use compensated summation.
enum class PrecisionMode { standard, extended };
PrecisionMode precision_mode();
void set_precision_mode(PrecisionMode m);

struct Tolerances {
  double truncation = 1e-12;    // tail bound target for infinite sums
  double quadrature = 1e-10;    // adaptive quadrature target
  double zero_abs = 1e-9;       // absolute floor for "is this zero" tests
  double equality_rel = 1e-9;   // relative tolerance for equality tests
  double equality_abs = 1e-12;  // absolute floor for equality tests
  double boundary_residual = 1e-9;  // interface-condition residual bound
};

/// Default tolerances, adjustable once at startup (CLI --tol).
Tolerances& tolerances();

inline bool nearly_equal(double a, double b, const Tolerances& t = tolerances()) {
  return std::abs(a - b) <= t.equality_abs + t.equality_rel * std::max(std::abs(a), std::abs(b));
}

inline bool is_zero_value(Complex v, double scale, const Tolerances& t = tolerances()) {
  return std::abs(v) <= t.zero_abs * std::max(1.0, scale);
}

}  // namespace indefspec
