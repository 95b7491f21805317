#include "indefspec/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "indefspec/error.hpp"
#include "indefspec/numeric/ode.hpp"
#include "indefspec/numeric/quad.hpp"
#include "indefspec/numeric/richardson.hpp"

namespace indefspec {

// ---------------------------------------------------------------------------
// potential

struct PotentialSpec::Spline {
  std::vector<double> x, y, d2;

  double eval(double t) const {
    if (t <= x.front() || t >= x.back()) return 0.0;
    size_t hi = size_t(std::upper_bound(x.begin(), x.end(), t) - x.begin());
    const size_t lo = hi - 1;
    const double w = x[hi] - x[lo];
    const double a = (x[hi] - t) / w;
    const double b = (t - x[lo]) / w;
    return a * y[lo] + b * y[hi] +
           ((a * a * a - a) * d2[lo] + (b * b * b - b) * d2[hi]) * (w * w) /
               6.0;
  }
};

PotentialSpec PotentialSpec::closed_form(const std::string& text_in_x) {
  PotentialSpec p;
  p.q_ = Expr::parse(text_in_x, "x");
  p.text_ = text_in_x;
  return p;
}

PotentialSpec PotentialSpec::sampled(
    std::vector<std::array<double, 2>> points) {
  if (points.size() < 3)
    fail(Errc::invalid_spec, "sampled potential needs at least 3 points");
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  auto sp = std::make_shared<Spline>();
  for (const auto& pt : points) {
    if (!sp->x.empty() && pt[0] <= sp->x.back())
      fail(Errc::invalid_spec, "sample abscissae must be distinct");
    sp->x.push_back(pt[0]);
    sp->y.push_back(pt[1]);
  }
  // natural cubic spline second derivatives, standard tridiagonal sweep
  const size_t n = sp->x.size();
  sp->d2.assign(n, 0.0);
  std::vector<double> u(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double sig =
        (sp->x[i] - sp->x[i - 1]) / (sp->x[i + 1] - sp->x[i - 1]);
    const double p = sig * sp->d2[i - 1] + 2.0;
    sp->d2[i] = (sig - 1.0) / p;
    const double slope_hi =
        (sp->y[i + 1] - sp->y[i]) / (sp->x[i + 1] - sp->x[i]);
    const double slope_lo =
        (sp->y[i] - sp->y[i - 1]) / (sp->x[i] - sp->x[i - 1]);
    u[i] = (6.0 * (slope_hi - slope_lo) / (sp->x[i + 1] - sp->x[i - 1]) -
            sig * u[i - 1]) /
           p;
  }
  for (size_t i = n - 1; i-- > 1;) sp->d2[i] = sp->d2[i] * sp->d2[i + 1] + u[i];
  sp->d2[0] = sp->d2[n - 1] = 0.0;

  PotentialSpec p;
  p.spline_ = std::move(sp);
  p.text_ = "sampled";
  return p;
}

double PotentialSpec::operator()(double x) const {
  if (spline_) return spline_->eval(x);
  if (q_.valid()) return q_(x);
  return 0.0;
}

// ---------------------------------------------------------------------------
// Weyl disks

namespace {

// fundamental system (c, c', s, s') of y'' = (q - lam) y, renormalized by a
// common factor after every advance; the m-coefficient is scale invariant
struct FundState {
  Complex c{1, 0}, cp{0, 0}, s{0, 0}, sp{1, 0};

  void renormalize() {
    const double sc = std::max({std::abs(c), std::abs(cp), std::abs(s),
                                std::abs(sp), 1e-300});
    c /= sc;
    cp /= sc;
    s /= sc;
    sp /= sc;
  }
};

void advance(const PotentialSpec& q, Complex lam, double from, double to,
             FundState& st) {
  Complex y[4] = {st.c, st.cp, st.s, st.sp};
  OdeFn f = [&q, lam](double x, const Complex* v, Complex* d) {
    const Complex w = Complex(q(x), 0) - lam;
    d[0] = v[1];
    d[1] = w * v[0];
    d[2] = v[3];
    d[3] = w * v[2];
  };
  OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-14;
  const double step = to > from ? 1.0 : -1.0;
  for (double x = from; std::abs(to - x) > 1e-12;) {
    const double next =
        step > 0 ? std::min(x + 1.0, to) : std::max(x - 1.0, to);
    integrate_ode(f, 4, x, next, y, opt);
    const double sc = std::max({std::abs(y[0]), std::abs(y[1]),
                                std::abs(y[2]), std::abs(y[3]), 1e-300});
    for (auto& v : y) v /= sc;
    x = next;
  }
  st = {y[0], y[1], y[2], y[3]};
}

// circle traced by (s' - z s)/(c' - z c) over real z, via its center and the
// boundary point at z = infinity
struct Disk {
  Complex center;
  double radius;
};

std::optional<Disk> weyl_disk(const FundState& st) {
  const Complex a = -st.s, b = st.sp, cc = -st.c, d = st.cp;
  const Complex den = cc * std::conj(d) - std::conj(cc) * d;
  if (std::abs(den) < 1e-300) return std::nullopt;
  Disk out;
  out.center = (a * std::conj(d) - b * std::conj(cc)) / den;
  out.radius = std::abs(out.center - st.s / st.c);
  return out;
}

}  // namespace

WeylDiskResult m_numeric(const PotentialSpec& p, Side side, Complex lambda,
                         double x_max, double target) {
  const double sc = std::max(1.0, std::abs(lambda));
  if (lambda.imag() < -4e-12 * sc) {
    WeylDiskResult r = m_numeric(p, side, std::conj(lambda), x_max, target);
    r.m = std::conj(r.m);
    return r;
  }
  const bool real_mode = std::abs(lambda.imag()) <= 4e-12 * sc;
  // the negative half-line carries the reflected spectral parameter
  const Complex lam_eff = side == Side::plus ? lambda : -lambda;
  const double dir = side == Side::plus ? 1.0 : -1.0;

  FundState st;
  double x_cur = 0;
  Complex prev{0, 0};
  bool have_prev = false;
  for (double x_next = 1.0; x_cur < x_max; x_next = std::min(2 * x_next, x_max)) {
    advance(p, lam_eff, dir * x_cur, dir * x_next, st);
    x_cur = x_next;
    if (real_mode) {
      if (std::abs(st.c) < 1e-30) continue;
      const Complex ratio = st.s / st.c;
      if (have_prev) {
        const double drift = std::abs(ratio - prev);
        if (drift <= target * std::max(1.0, std::abs(ratio)))
          return {ratio, drift, x_cur};
      }
      prev = ratio;
      have_prev = true;
    } else {
      const auto disk = weyl_disk(st);
      if (disk && disk->radius <= target)
        return {disk->center, disk->radius, x_cur};
    }
    if (x_cur >= x_max) break;
  }
  fail(Errc::disk_too_large,
       "enclosure did not contract below target within the truncation radius");
}

double asymptotic_check(const PotentialSpec& p, Side side,
                        const std::vector<double>& radii) {
  double worst = 0;
  for (double r : radii) {
    const Complex lam(0, r);
    const Complex ref =
        Complex{0, 1} /
        std::sqrt(side == Side::plus ? lam : -lam);  // Herglotz branch
    const auto got = m_numeric(p, side, lam, 64.0, 1e-10);
    worst = std::max(worst, std::abs(got.m - ref) * r);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// turning-point ratio

RatioTest resolvent_nonempty_ratio(const Expr& r, const Expr& p) {
  auto ratio_at = [&](double x) {
    auto rf = [&r](double t) { return Complex(r(t), 0); };
    auto pf = [&p](double t) {
      const double v = p(t);
      if (!(v > 0)) fail(Errc::invalid_spec, "p must be positive near 0");
      return Complex(1.0 / v, 0);
    };
    const double num = gk_adaptive(rf, 0, x, 1e-12).value.real();
    const double den = gk_adaptive(pf, 0, x, 1e-12).value.real();
    if (den == 0) fail(Errc::numeric_failure, "degenerate denominator");
    return num / den;
  };

  RatioTest out;
  double lims[2];
  for (int side = 0; side < 2; ++side) {
    std::vector<double> hs;
    std::vector<Complex> vs;
    for (int k = 0; k < 7; ++k) {
      const double x = 0.1 * std::pow(2.0, -k);
      hs.push_back(x);
      vs.push_back(Complex(ratio_at(side == 0 ? x : -x), 0.0));
    }
    double stability = 0;
    const double lim = richardson_limit(hs, vs, &stability).real();
    if (!std::isfinite(lim) ||
        stability > 1e-6 * std::max(1.0, std::abs(lim)))
      fail(Errc::no_limit, "ratio limit does not settle under refinement");
    lims[side] = lim;
  }
  out.r_plus = lims[0];
  out.r_minus = -lims[1];
  out.certified = lims[0] > 1e-8 && lims[1] < -1e-8;
  return out;
}

}  // namespace indefspec
