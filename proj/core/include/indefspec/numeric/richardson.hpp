#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "indefspec/types.hpp"

namespace indefspec {

/// Neville extrapolation of samples (h_i, v_i) to h = 0.  Returns the
/// extrapolated value; *stability reports the spread of the last tableau
/// column against the previous one (small means the limit stabilized).
inline Complex richardson_limit(const std::vector<double>& h,
                                const std::vector<Complex>& v,
                                double* stability = nullptr) {
  const size_t n = h.size();
  std::vector<Complex> t = v;
  Complex prev = t.empty() ? Complex{} : t.back();
  for (size_t m = 1; m < n; ++m) {
    for (size_t i = 0; i + m < n; ++i) {
      double den = h[i] - h[i + m];
      t[i] = (Complex(-h[i + m]) * t[i] + Complex(h[i]) * t[i + 1]) / den;
    }
    if (m + 1 < n) prev = t[0];
  }
  if (stability) *stability = n >= 2 ? std::abs(t[0] - prev) : kInf;
  return n ? t[0] : Complex{};
}

}  // namespace indefspec
