#pragma once

#include <functional>

#include "indefspec/types.hpp"

namespace indefspec {

struct QuadResult {
  Complex value{0.0, 0.0};
  double error = 0;
  long evals = 0;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    error += o.error;
    evals += o.evals;
    return *this;
  }
};

using ComplexFn = std::function<Complex(double)>;

/// Adaptive 15-point Gauss-Kronrod on finite [a,b].  `tol` is an absolute
/// target; the returned error is the accumulated Kronrod estimate.
QuadResult gk_adaptive(const ComplexFn& f, double a, double b, double tol);

/// Integral over [lo,hi] (endpoints may be +-inf) of an integrand with
/// known power behavior: f ~ c (t-lo)^{exp_lo} near a finite lo,
/// f ~ c (hi-t)^{exp_hi} near a finite hi, and f ~ c |t|^{exp_inf} toward
/// infinite endpoints (exp_inf < -1 required there).  Exponents > -1 at
/// finite endpoints; substitutions make the integrand smooth before the
/// adaptive pass.
QuadResult integrate_shaped(const ComplexFn& f, double lo, double hi,
                            double exp_lo, double exp_hi, double exp_inf,
                            double tol);

}  // namespace indefspec
