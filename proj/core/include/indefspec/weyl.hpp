#pragma once

#include <functional>
#include <vector>

#include "indefspec/measure.hpp"
#include "indefspec/types.hpp"

namespace indefspec {

/// Herglotz function attached to a measure and a real constant:
///   M(lambda) = C + integral of ( 1/(t-lambda) - t/(1+t^2) ) dSigma(t).
struct WeylCoefficient {
  SpectralMeasure measure;
  double C = 0;
};

/// Difference of two Weyl functions, Phi = M_plus - M_minus.
struct PhiFunction {
  WeylCoefficient plus;
  WeylCoefficient minus;
};

/// M(lambda) off the closed support (or anywhere off the real axis).
/// Throws OnSupport when real lambda carries an atom, sits where the local
/// density is positive, or is an accumulation point dense enough to make the
/// kernel non-integrable.
Complex eval_M(const WeylCoefficient& w, Complex lambda);

/// n-th derivative, n >= 1: n! times the integral of (t-lambda)^{-(n+1)}.
/// n = 0 falls back to eval_M.
Complex eval_M_deriv(const WeylCoefficient& w, Complex lambda, int n);

/// Boundary limit of Phi^{(n)}(lambda + i eps) as eps -> 0+ at real lambda,
/// evaluated through absolutely convergent integrals rather than an eps
/// limit.  Requires equal atom masses at lambda on both sides (HypothesesFail
/// otherwise); returns Divergent when the order-(n+1) absolute moment of
/// either measure diverges at lambda.
IntegralValue eval_phi_boundary(const PhiFunction& phi, double lambda, int n);

/// Phi(lambda) = M_plus - M_minus away from both supports.
Complex phi_value(const PhiFunction& phi, Complex lambda);

/// Phi^{(n)}(lambda) by derivative difference, away from both supports.
Complex phi_deriv(const PhiFunction& phi, Complex lambda, int n);

/// Largest violation over the samples of the Herglotz sign condition
/// Im lambda * Im M(lambda) >= 0 and of conjugate symmetry
/// M(conj lambda) = conj M(lambda).
double r_function_residual(const WeylCoefficient& w,
                           const std::vector<Complex>& samples);

/// Density recovery at real t: (1/pi) lim Im f(t + i eps), extrapolated to
/// eps = 0 over the schedule (default 1e-2 .. 1e-6, one point per decade).
/// Throws NoLimit when the extrapolation does not stabilize.
double stieltjes_invert(const std::function<Complex(Complex)>& f, double t,
                        std::vector<double> eps_schedule = {});

}  // namespace indefspec
