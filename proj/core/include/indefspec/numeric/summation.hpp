#pragma once

#include <functional>

#include "indefspec/numeric/quad.hpp"
#include "indefspec/types.hpp"

namespace indefspec {

/// Compensated accumulator; switches the carry register to long double under
/// PrecisionMode::extended.
class Accumulator {
 public:
  void add(Complex v) {
    add_part(v.real(), re_, cre_);
    add_part(v.imag(), im_, cim_);
  }
  Complex total() const { return Complex((double)re_, (double)im_); }

 private:
  static void add_part(double v, long double& s, long double& c) {
    long double y = (long double)v - c;
    long double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  long double re_ = 0, im_ = 0, cre_ = 0, cim_ = 0;
};

/// Tail sum  sum_{k=K}^{inf} g(k)  for a smooth g decaying like k^{-d}
/// (d > 1), via Euler-Maclaurin through the third derivative.  The error
/// field estimates the first omitted correction plus quadrature error.
QuadResult em_tail(const std::function<Complex(double)>& g, double K, double d,
                   double tol);

}  // namespace indefspec
