#include "indefspec/critical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <vector>

#include "indefspec/error.hpp"
#include "indefspec/numeric/quad.hpp"

namespace indefspec {

namespace {

double tail_integral(const WeightFunction& w, double from) {
  // int_from^inf r, shaped by the declared decay exponent
  auto f = [&w](double x) { return Complex(w(x), 0); };
  return integrate_shaped(f, from, kInf, 0, 0, w.alpha_plus, 1e-12)
      .value.real();
}

// integrand exponent of y1^2 |r| at infinity for one side
double y1_sq_exponent(double alpha) {
  if (alpha > -2) return 3 * alpha + 4;
  return alpha;  // y1 bounded
}

// Gauss-Legendre nodes on [-1,1], positive half; weight[i] pairs with x[i].
constexpr double kGl16X[8] = {0.0950125098376374, 0.2816035507792589,
                              0.4580167776572274, 0.6178762444026438,
                              0.7554044083550030, 0.8656312023878318,
                              0.9445750230732326, 0.9894009349916499};
constexpr double kGl16W[8] = {0.1894506104550685, 0.1826034150449236,
                              0.1691565193950025, 0.1495959888165767,
                              0.1246289712555339, 0.0951585116824928,
                              0.0622535239386479, 0.0271524594117541};
constexpr double kGl8X[4] = {0.1834346424956498, 0.5255324099163290,
                             0.7966664774136267, 0.9602898564975363};
constexpr double kGl8W[4] = {0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

template <class F>
double gl8(const F& g, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0;
  for (int i = 0; i < 4; ++i)
    s += kGl8W[i] * (g(c - h * kGl8X[i]) + g(c + h * kGl8X[i]));
  return s * h;
}

struct SweepResult {
  double p100 = 0;  // int_0^100 y1^2 |r| on this side
  double p1e4 = 0;
  double total = 0;  // up to x_top
};

// One half-line pass for int y1^2 |r|.  On either side, with u = |x|,
// |y1| = u T(u) + int_0^u t rho(t) dt where rho = |r| on that side and
// T(u) = int_u^inf rho; all three pieces accumulate monotonically over
// log-spaced panels, so no nested quadrature and no cancellation.  The
// tail beyond x_top is dropped (x_top is chosen so it is negligible) and
// T at the top edge uses the declared power decay.
SweepResult norm_sweep(const WeightFunction& w, int sgn, double x_top) {
  const double alpha = sgn > 0 ? w.alpha_plus : w.alpha_minus;
  auto rho = [&w, sgn](double u) { return std::abs(w(sgn * u)); };
  auto t_rho = [&rho](double u) { return u * rho(u); };

  std::vector<double> edges;
  for (int i = 0; i <= 8; ++i) edges.push_back(i / 8.0);
  const int decades =
      static_cast<int>(std::ceil(std::log10(std::max(x_top, 1e4))));
  for (int k = 1; k <= 8 * decades; ++k)
    edges.push_back(std::pow(10.0, k / 8.0));
  const size_t n = edges.size() - 1;

  std::vector<std::array<double, 16>> node(n), nrho(n);
  std::vector<double> panel_rho(n);
  for (size_t i = 0; i < n; ++i) {
    const double c = 0.5 * (edges[i] + edges[i + 1]);
    const double h = 0.5 * (edges[i + 1] - edges[i]);
    double pr = 0;
    for (int j = 0; j < 8; ++j) {
      node[i][j] = c - h * kGl16X[7 - j];
      node[i][15 - j] = c + h * kGl16X[7 - j];
    }
    for (int j = 0; j < 16; ++j) {
      nrho[i][j] = rho(node[i][j]);
      pr += kGl16W[j < 8 ? 7 - j : j - 8] * nrho[i][j];
    }
    panel_rho[i] = pr * h;
  }

  std::vector<double> tail(n + 1);
  tail[n] = rho(edges[n]) * edges[n] / std::abs(alpha + 1.0);
  for (size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + panel_rho[i];

  SweepResult out;
  double i2 = 0, acc = 0;
  for (size_t i = 0; i < n; ++i) {
    const double a = edges[i], b = edges[i + 1];
    const double h = 0.5 * (b - a);
    for (int j = 0; j < 16; ++j) {
      const double t = node[i][j];
      const double y = t * (tail[i + 1] + gl8(rho, t, b)) + i2 + gl8(t_rho, a, t);
      acc += kGl16W[j < 8 ? 7 - j : j - 8] * h * y * y * nrho[i][j];
    }
    double ptr = 0;
    for (int j = 0; j < 16; ++j)
      ptr += kGl16W[j < 8 ? 7 - j : j - 8] * node[i][j] * nrho[i][j];
    i2 += ptr * h;
    if (i + 1 == 24) out.p100 = acc;  // edge 8 + 16 is exactly 100
    if (i + 1 == 40) out.p1e4 = acc;  // edge 8 + 32 is exactly 1e4
  }
  out.total = acc;
  return out;
}

// truncation point where the remaining relative tail drops below ~1e-13
double sweep_top(double exponent) {
  return std::pow(10.0, std::min(13.0 / -(exponent + 1.0), 240.0));
}

int count_turning_points(const WeightFunction& w) {
  int flips = 0;
  double prev = 0;
  for (int i = -4096; i <= 4096; ++i) {
    const double v = w(i / 64.0);
    if (v == 0) continue;
    if (prev != 0 && (v > 0) != (prev > 0)) ++flips;
    prev = v;
  }
  return flips;
}

}  // namespace

std::vector<std::string> validate(const WeightFunction& w) {
  std::vector<std::string> issues;
  if (!w.r.valid()) {
    issues.push_back("weight expression missing");
    return issues;
  }
  for (double x : {8.0, 64.0, 512.0, 4096.0}) {
    if (!(w(x) > 0)) {
      issues.push_back("weight not positive deep into the right half-line");
      break;
    }
  }
  for (double x : {8.0, 64.0, 512.0, 4096.0}) {
    if (!(w(-x) < 0)) {
      issues.push_back("weight not negative deep into the left half-line");
      break;
    }
  }
  for (double x : {64.0, 512.0, 4096.0}) {
    const double fit_p = std::abs(w(x)) / std::pow(x, w.alpha_plus);
    const double fit_m = std::abs(w(-x)) / std::pow(x, w.alpha_minus);
    if (!(fit_p > 1e-6) || !(fit_p < 1e6) || !(fit_m > 1e-6) ||
        !(fit_m < 1e6)) {
      issues.push_back("declared decay exponents do not match the samples");
      break;
    }
  }
  return issues;
}

bool check_jsa(const WeightFunction& w) {
  return w.alpha_plus >= -3 && w.alpha_minus >= -3;
}

IntegralValue total_integral(const WeightFunction& w) {
  if (w.alpha_plus >= -1 || w.alpha_minus >= -1)
    return IntegralValue::divergent();
  // fold the two half-lines so near-odd weights cancel pointwise instead of
  // after two large one-sided integrals
  auto folded = [&w](double t) { return Complex(w(t) + w(-t), 0); };
  const double slow = std::max(w.alpha_plus, w.alpha_minus);
  const double v =
      integrate_shaped(folded, 0, kInf, 0, 0, slow, 1e-12).value.real();
  return IntegralValue::finite(v);
}

double y1_eval(const WeightFunction& w, double x) {
  if (w.alpha_plus >= -1)
    fail(Errc::inner_divergent, "tail of the weight is not integrable");
  if (x == 0) return 0.0;
  // the iterated integral collapses to two single ones by swapping the order
  auto t_times_r = [&w](double t) { return Complex(t * w(t), 0); };
  if (x > 0)
    return gk_adaptive(t_times_r, 0, x, 1e-12).value.real() +
           x * tail_integral(w, x);
  auto shifted = [&w, x](double t) { return Complex((t - x) * w(t), 0); };
  return -gk_adaptive(shifted, x, 0, 1e-12).value.real() +
         x * tail_integral(w, 0);
}

IntegralValue y1_norm_divergence(const WeightFunction& w) {
  if (w.alpha_plus >= -1 || w.alpha_minus >= -1)
    fail(Errc::hypotheses_fail, "weight must be integrable at both ends");
  const double ep = y1_sq_exponent(w.alpha_plus);
  const double em = y1_sq_exponent(w.alpha_minus);
  if (ep >= -1 - 1e-12 || em >= -1 - 1e-12)
    return IntegralValue::divergent();
  const double pos = norm_sweep(w, +1, sweep_top(ep)).total;
  const double neg = norm_sweep(w, -1, sweep_top(em)).total;
  return IntegralValue::finite(pos + neg);
}

namespace {

// growth of the partial weighted norms over X in {1e2,1e3,1e4}: slope of
// log P against log X separates growing from saturating
double partial_norm_slope(const WeightFunction& w) {
  const SweepResult p = norm_sweep(w, +1, 1e4);
  const SweepResult m = norm_sweep(w, -1, 1e4);
  const double p0 = std::max(p.p100 + m.p100, 1e-300);
  const double p2 = std::max(p.p1e4 + m.p1e4, 1e-300);
  return (std::log(p2) - std::log(p0)) / (std::log(1e4) - std::log(1e2));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

CriticalVerdict critical_verdict(const WeightFunction& w) {
  auto issues = validate(w);
  if (!issues.empty()) fail(Errc::invalid_spec, issues.front());

  CriticalVerdict v;
  v.evidence.emplace_back("alpha_plus", fmt(w.alpha_plus));
  v.evidence.emplace_back("alpha_minus", fmt(w.alpha_minus));
  v.evidence.emplace_back("turning_points",
                          std::to_string(count_turning_points(w)));

  const bool jsa = check_jsa(w);
  v.evidence.emplace_back("second_moments_infinite", jsa ? "yes" : "no");

  v.zero_is_eigenvalue = w.alpha_plus < -1 && w.alpha_minus < -1;
  if (v.zero_is_eigenvalue) {
    const IntegralValue total = total_integral(w);
    v.eigenvector_neutral =
        total.is_finite() && std::abs(total.value()) <= 1e-9;
    v.evidence.emplace_back(
        "total_integral",
        total.is_finite() ? fmt(total.real()) : "divergent");
  }

  if (v.zero_is_eigenvalue && v.eigenvector_neutral) {
    const IntegralValue norm = y1_norm_divergence(w);
    v.zero_simple = norm.is_divergent();
    v.evidence.emplace_back(
        "y1_weighted_norm",
        norm.is_divergent() ? "divergent" : fmt(norm.real()));
    const double slope = partial_norm_slope(w);
    v.evidence.emplace_back("partial_norm_slope", fmt(slope));
    const bool grows = slope > 0.05;
    if (grows != norm.is_divergent())
      v.evidence.emplace_back("warning",
                              "growth fit disagrees with exponent verdict");
  }

  if (!jsa) {
    v.singular_critical_point = std::nullopt;
    v.evidence.emplace_back("verdict", "not applicable");
  } else if (v.zero_is_eigenvalue && v.eigenvector_neutral &&
             v.zero_simple.has_value()) {
    v.singular_critical_point = *v.zero_simple;
  } else {
    v.singular_critical_point = false;
  }
  return v;
}

}  // namespace indefspec
