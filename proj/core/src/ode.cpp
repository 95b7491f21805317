#include "indefspec/numeric/ode.hpp"

#include <algorithm>
#include <cmath>

#include "indefspec/error.hpp"

namespace indefspec {

namespace {

// Dormand-Prince 5(4) tableau.
const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
const double a21 = 1.0 / 5;
const double a31 = 3.0 / 40, a32 = 9.0 / 40;
const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
             a54 = -212.0 / 729;
const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
             a64 = 49.0 / 176, a65 = -5103.0 / 18656;
const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
             b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded 4th order
const double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
             e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

}  // namespace

void integrate_ode(const OdeFn& f, int dim, double x0, double x1, Complex* y,
                   const OdeOptions& opt) {
  if (x0 == x1) return;
  const double dir = x1 > x0 ? 1.0 : -1.0;
  double x = x0;
  double h = dir * std::min(std::abs(opt.h_init), std::abs(x1 - x0));

  std::vector<Complex> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
      k7(dim), yt(dim), y5(dim);

  long steps = 0;
  while (dir * (x1 - x) > 0) {
    if (++steps > opt.max_steps)
      fail(Errc::numeric_failure, "ODE step limit exceeded");
    if (dir * (x + h - x1) > 0) h = x1 - x;

    f(x, y, k1.data());
    for (int i = 0; i < dim; ++i) yt[i] = y[i] + h * (a21 * k1[i]);
    f(x + c2 * h, yt.data(), k2.data());
    for (int i = 0; i < dim; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(x + c3 * h, yt.data(), k3.data());
    for (int i = 0; i < dim; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(x + c4 * h, yt.data(), k4.data());
    for (int i = 0; i < dim; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(x + c5 * h, yt.data(), k5.data());
    for (int i = 0; i < dim; ++i)
      yt[i] = y[i] +
              h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(x + h, yt.data(), k6.data());
    for (int i = 0; i < dim; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(x + h, y5.data(), k7.data());

    double err = 0;
    for (int i = 0; i < dim; ++i) {
      Complex y4 = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                               e6 * k6[i] + e7 * k7[i]);
      double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(y5[i] - y4) / sc);
    }

    if (err <= 1.0) {
      x += h;
      std::copy(y5.begin(), y5.end(), y);
    }
    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    fac = std::clamp(fac, 0.2, 5.0);
    h *= fac;
    if (std::abs(h) < opt.h_min)
      fail(Errc::numeric_failure, "ODE step size underflow");
  }
}

}  // namespace indefspec
