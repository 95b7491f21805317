#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "indefspec/types.hpp"

namespace indefspec {

using HoloFn = std::function<Complex(Complex)>;

/// Trapezoid average of f over the circle |z - c| = r.  Exact mean value of
/// an analytic function at c up to aliasing of the n-th Taylor coefficient,
/// so the error decays like (r / R)^n with R the distance to the nearest
/// singularity.
inline Complex circle_mean(const HoloFn& f, Complex c, double r, int n = 16) {
  Complex acc{0, 0};
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * M_PI * j / n;
    acc += f(c + Complex(r * std::cos(th), r * std::sin(th)));
  }
  return acc / double(n);
}

/// First `count` Taylor coefficients of f at c from Cauchy integrals on
/// |z - c| = r, computed with an n-point trapezoid rule.
inline std::vector<Complex> taylor_coefficients(const HoloFn& f, Complex c,
                                                double r, int count,
                                                int n = 64) {
  std::vector<Complex> samples(n);
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * M_PI * j / n;
    samples[j] = f(c + Complex(r * std::cos(th), r * std::sin(th)));
  }
  std::vector<Complex> coeff(count);
  for (int m = 0; m < count; ++m) {
    Complex acc{0, 0};
    for (int j = 0; j < n; ++j) {
      double th = 2.0 * M_PI * j / n;
      // e^{-i m th} / r^m
      acc += samples[j] * Complex(std::cos(m * th), -std::sin(m * th));
    }
    coeff[m] = acc / (double(n) * std::pow(r, m));
  }
  return coeff;
}

}  // namespace indefspec
