#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "indefspec/numeric/expr.hpp"
#include "indefspec/types.hpp"

namespace indefspec {

/// Sign-definite weight r(x) = sgn(x)|r(x)| with one turning point at 0,
/// given in closed form together with its decay exponents at the two
/// infinities: |r(x)| ~ c |x|^alpha.
struct WeightFunction {
  Expr r;  // signed value, variable x
  double alpha_plus = 0;
  double alpha_minus = 0;

  double operator()(double x) const { return r(x); }
};

std::vector<std::string> validate(const WeightFunction& w);

/// Both one-sided second moments of |r| diverge, so the maximal operator is
/// J-self-adjoint.  By exponent arithmetic: alpha >= -3 on each side.
bool check_jsa(const WeightFunction& w);

/// Integral of r over the line; Divergent when r is not integrable.
IntegralValue total_integral(const WeightFunction& w);

/// y1(x) = int_0^x int_s^inf r(t) dt ds, the generalized element attached to
/// the constant kernel function.  Throws InnerDivergent when the inner tail
/// integral does not converge.
double y1_eval(const WeightFunction& w, double x);

/// Weighted square norm int y1^2 |r|: Divergent or the finite value.
/// Decided by exponent arithmetic, confirmed by a growth fit of partial
/// integrals; a disagreement between the two is reported through the
/// verdict evidence.
IntegralValue y1_norm_divergence(const WeightFunction& w);

/// Outcome of the turning-point criticality test.  Optional fields are
/// unset when the question does not apply: zero_simple when 0 is not a
/// neutral eigenvalue, singular_critical_point when the operator is not
/// J-self-adjoint.
struct CriticalVerdict {
  bool zero_is_eigenvalue = false;
  bool eigenvector_neutral = false;
  std::optional<bool> zero_simple;
  std::optional<bool> singular_critical_point;
  std::vector<std::pair<std::string, std::string>> evidence;
};

CriticalVerdict critical_verdict(const WeightFunction& w);

}  // namespace indefspec
