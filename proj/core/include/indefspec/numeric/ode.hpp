#pragma once

#include <functional>
#include <vector>

#include "indefspec/types.hpp"

namespace indefspec {

/// dy/dx = f(x, y) with complex state of fixed small dimension.
using OdeFn = std::function<void(double x, const Complex* y, Complex* dydx)>;

struct OdeOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  double h_init = 1e-3;
  double h_min = 1e-14;
  long max_steps = 40000000;
};

/// Adaptive Dormand-Prince 5(4) from x0 to x1 (either direction), advancing
/// y in place.  Throws Errc::numeric_failure when the controller stalls.
void integrate_ode(const OdeFn& f, int dim, double x0, double x1, Complex* y,
                   const OdeOptions& opt = {});

}  // namespace indefspec
