#pragma once

#include <vector>

#include "indefspec/measure.hpp"
#include "indefspec/types.hpp"
#include "indefspec/weyl.hpp"

namespace indefspec {

/// One half of a model-space vector: a finite combination of the indicator of
/// the base point and of rational poles at it,
///   f(t) = indicator * [t == base] + sum_j poles[j-1] * (t-base)^{-j}
/// where each pole term is defined to vanish at t == base.  The `constant`
/// slot carries formal multiples of the function 1 produced by intermediate
/// algebra; it must be zero for membership in the weighted L^2 space.
struct ChainHalf {
  Complex base{0, 0};
  Complex indicator{0, 0};
  std::vector<Complex> poles;
  Complex constant{0, 0};

  static ChainHalf zero(Complex base_pt) {
    ChainHalf h;
    h.base = base_pt;
    return h;
  }
  static ChainHalf make_indicator(Complex base_pt, Complex coef = 1.0) {
    ChainHalf h = zero(base_pt);
    h.indicator = coef;
    return h;
  }
  static ChainHalf make_pole(Complex base_pt, int order, Complex coef = 1.0);

  int top_order() const;            // highest pole order with nonzero coefficient
  int bottom_order() const;         // lowest such order (0 when none)
  bool coefficients_zero() const;   // exact zero test on all slots
  Complex pole_coef(int order) const {
    return (order >= 1 && order <= int(poles.size())) ? poles[order - 1]
                                                      : Complex{0, 0};
  }
  void set_pole_coef(int order, Complex c);

  /// Value of the pole part plus constant at t != base.
  Complex eval_off_base(double t) const;

  /// this += scale * other; bases must agree.
  ChainHalf& add_scaled(const ChainHalf& other, Complex scale);
};

/// Model-space vector: one half per weight sign, sharing the base point.
struct ChainVector {
  ChainHalf plus;
  ChainHalf minus;
};

/// The model operator is determined by the same data as the Weyl-function
/// difference: a (measure, constant) pair per half.
using ModelOperator = PhiFunction;

/// Square-integrability of the half against the measure (certifies the pole
/// moments and requires a vanishing constant slot).
bool in_half_domain(const SpectralMeasure& m, const ChainHalf& v);

/// Regularized boundary value: the unique c with t*f(t) - c square-integrable.
/// On the basis: 0 for the indicator, 1 for the order-1 pole, 0 for higher
/// orders.  NotWellPosed when the measure has finite total mass; NotInDomain
/// when square-integrability fails.
Complex gamma0(const SpectralMeasure& m, const ChainHalf& v);

/// Second boundary value:
///   C*gamma0(v) + integral of ( v(t) - t*gamma0(v)/(1+t^2) ) dSigma.
/// DivergentMoment when a defining integral diverges.
Complex gamma1(const SpectralMeasure& m, double C, const ChainHalf& v);

/// Adjoint multiplication action t*f(t) - gamma0(f), expressed back in chain
/// coordinates (exact coefficient algebra; the formal constants cancel).
ChainHalf apply_tstar(const SpectralMeasure& m, const ChainHalf& v);

struct DomainCheck {
  bool ok = false;
  double g0_residual = 0;
  double g1_residual = 0;
};

/// Interface conditions joining the two halves: both boundary values must
/// match across the sign change.
DomainCheck in_model_domain(const ModelOperator& op, const ChainVector& v);

/// L^2 norm of the half against its measure.
double half_norm(const SpectralMeasure& m, const ChainHalf& v);

/// Inner product of two halves with the same base point.
Complex half_inner(const SpectralMeasure& m, const ChainHalf& f,
                   const ChainHalf& g);

/// Independent certificate for a claimed Jordan chain at lambda: entry n is
/// the worst of the chain-relation defect |(T*-lambda) chain[n] - chain[n-1]|
/// in the direct-sum norm and the two interface-condition residuals.
std::vector<double> jordan_residual(const ModelOperator& op, Complex lambda,
                                    const std::vector<ChainVector>& chain);

}  // namespace indefspec
