#include "indefspec/infzone.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "indefspec/error.hpp"
#include "indefspec/measure.hpp"
#include "indefspec/numeric/circle.hpp"
#include "indefspec/numeric/rootfind.hpp"
#include "indefspec/numeric/summation.hpp"

namespace indefspec {

namespace {

constexpr int kLevelCap = 1 << 16;

double scale_of(Complex z) { return std::max(1.0, std::abs(z)); }

// Least-squares slope of log|v| against log j at deep indices; nullopt when
// the samples vanish.
std::optional<double> log_slope(const std::function<double(double)>& v) {
  std::vector<double> xs, ys;
  for (double j : {256.0, 512.0, 1024.0, 2048.0, 4096.0, 8192.0, 16384.0}) {
    const double val = std::abs(v(j));
    if (val > 1e-280) {
      xs.push_back(std::log(j));
      ys.push_back(std::log(val));
    }
  }
  if (xs.size() < 3) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double n = double(xs.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// level-N product engine

struct Engine {
  double mu0r = 0;
  std::vector<ZoneGap> gaps;  // resolved, 1-based index shifted to 0
  std::vector<double> coef;   // interpolation weight per gap, 0 if collapsed

  Complex g(Complex z) const {
    Complex p{1, 0};
    for (const auto& gp : gaps) p *= (gp.xi - z) / gp.mul;
    return p;
  }

  Complex f(Complex z) const {
    Complex p = z - mu0r;
    for (const auto& gp : gaps)
      p *= (z - gp.mul) * (z - gp.mur) / (gp.mul * gp.mul);
    return p;
  }

  // derivative of g at the node xi_j, product over the other factors
  double g_deriv_at_xi(size_t j) const {
    double p = -1.0 / gaps[j].mul;
    for (size_t i = 0; i < gaps.size(); ++i) {
      if (i == j) continue;
      p *= (gaps[i].xi - gaps[j].xi) / gaps[i].mul;
    }
    return p;
  }

  void check_at_xi(Complex z) const {
    for (const auto& gp : gaps) {
      if (gp.collapsed()) continue;
      if (std::abs(z - gp.xi) <= 1e-12 * std::max(1.0, std::abs(gp.xi)))
        fail(Errc::at_xi, "evaluation at an interpolation node of an open gap");
    }
  }

  Complex k(Complex z) const {
    check_at_xi(z);
    Complex s{0, 0};
    for (size_t j = 0; j < gaps.size(); ++j) {
      if (coef[j] == 0) continue;
      s += coef[j] / (z - gaps[j].xi);
    }
    return g(z) * s;
  }

  Complex h_raw(Complex z) const {
    const Complex kk = k(z);
    return (f(z) + kk * kk) / g(z);
  }

  // h is entire: near the xi nodes the quotient is evaluated by its circle
  // mean, elsewhere directly
  Complex h(Complex z) const {
    const double sc = scale_of(z);
    double d1 = kInf, d2 = kInf;
    for (const auto& gp : gaps) {
      const double d = std::abs(z - gp.xi);
      if (d < d1) {
        d2 = d1;
        d1 = d;
      } else {
        d2 = std::min(d2, d);
      }
    }
    if (d1 > 1e-3 * sc) return h_raw(z);
    const double r =
        std::min(d2 / 2, std::max(0.05 * sc, 8 * std::max(d1, 1e-8 * sc)));
    if (!(r >= 4 * d1) || !(r > 0))
      fail(Errc::numeric_failure, "interpolation nodes too close to separate");
    return circle_mean([this](Complex w) { return h_raw(w); }, z, r, 32);
  }
};

std::shared_ptr<Engine> build_engine(const ZoneSpec& z, int n) {
  auto issues = validate(z);
  if (!issues.empty()) fail(Errc::invalid_spec, issues.front());
  // levels past a finite gap list act as collapsed gaps: the products gain
  // factors of 1 and the interpolation sum gains nothing
  if (!z.tail.present()) n = std::min(n, int(z.gaps.size()));
  auto e = std::make_shared<Engine>();
  e->mu0r = z.mu0r;
  e->gaps.reserve(n);
  for (int j = 1; j <= n; ++j) e->gaps.push_back(gap_at(z, j));
  e->coef.assign(e->gaps.size(), 0.0);
  for (size_t j = 0; j < e->gaps.size(); ++j) {
    const auto& gp = e->gaps[j];
    if (gp.collapsed()) continue;
    const double mf = std::max(-e->f(Complex(gp.xi, 0)).real(), 0.0);
    e->coef[j] = gp.eps * std::sqrt(mf) / e->g_deriv_at_xi(j);
  }
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// spec plumbing

std::vector<std::string> validate(const ZoneSpec& z) {
  std::vector<std::string> issues;
  double prev = z.mu0r;
  for (size_t j = 0; j < z.gaps.size(); ++j) {
    const auto& g = z.gaps[j];
    const std::string tag = "gap " + std::to_string(j + 1) + ": ";
    if (!(g.mul > 0)) issues.push_back(tag + "left edge must be positive");
    if (!(g.mul > prev))
      issues.push_back(tag + "edges must increase strictly");
    if (g.mur < g.mul) issues.push_back(tag + "right edge below left edge");
    if (g.xi < g.mul || g.xi > g.mur)
      issues.push_back(tag + "node outside the gap");
    if (g.eps != 1 && g.eps != -1) issues.push_back(tag + "sign must be +-1");
    prev = g.mur;
  }
  if (z.truncation < 0) issues.push_back("negative truncation level");
  if (z.tail.present()) {
    if (!z.tail.width.valid())
      issues.push_back("tail needs both an edge and a width formula");
    else {
      const double j0 = double(z.gaps.size() + 1);
      if (!(z.tail.mul(j0) > prev))
        issues.push_back("tail edge does not continue past the listed gaps");
      for (double j : {j0, j0 + 7, j0 + 63}) {
        if (z.tail.width(j) < 0) {
          issues.push_back("tail width negative");
          break;
        }
      }
      const auto p = log_slope([&z](double j) { return z.tail.mul(j); });
      if (!p || *p <= 1.0)
        issues.push_back(
            "tail edges must grow faster than linearly for summability");
    }
  }
  return issues;
}

ZoneGap gap_at(const ZoneSpec& z, int j) {
  if (j < 1) fail(Errc::invalid_spec, "gap index is 1-based");
  if (j <= int(z.gaps.size())) return z.gaps[j - 1];
  if (!z.tail.present())
    fail(Errc::invalid_spec, "no gap data past the explicit list");
  ZoneGap g;
  g.mul = z.tail.mul(double(j));
  g.mur = g.mul + std::max(z.tail.width(double(j)), 0.0);
  g.xi = g.mul;
  g.eps = 1;
  return g;
}

int gap_count(const ZoneSpec& z) {
  return z.tail.present() ? kLevelCap : int(z.gaps.size());
}

double truncation_tail_bound(const ZoneSpec& z, int n, double scale) {
  if (!z.tail.present()) return 0.0;
  auto mul = [&z](double j) { return z.tail.mul(j); };
  auto width = [&z](double j) { return std::max(z.tail.width(j), 0.0); };

  const auto p_mul = log_slope(mul);
  if (!p_mul || *p_mul <= 1.0)
    fail(Errc::summability_uncertified,
         "tail edge growth does not certify the reciprocal sum");
  const auto p_area = log_slope(
      [&](double j) { return (mul(j) + width(j)) * width(j); });
  if (p_area && *p_area >= -1.0)
    fail(Errc::summability_uncertified,
         "tail gap areas do not certify the gap-length sum");

  auto term = [&](double j) { return (width(j) + 2 * scale) / mul(j); };
  const auto p_term = log_slope(term);
  if (!p_term) return 0.0;
  if (*p_term >= -1.0)
    fail(Errc::summability_uncertified, "tail terms decay too slowly");
  auto term_c = [&term](double j) { return Complex(term(j), 0.0); };
  return 4.0 * std::abs(em_tail(term_c, double(n + 1), -*p_term, 1e-14).value);
}

int resolve_level(const ZoneSpec& z, double scale) {
  const int base = int(z.gaps.size());
  if (!z.tail.present())
    return z.truncation > 0 ? std::min(z.truncation, base) : base;
  if (z.truncation > 0) return std::max(z.truncation, base);
  int n = std::max(base, 8);
  while (n < kLevelCap && truncation_tail_bound(z, n, scale) > 1e-10) n *= 2;
  return std::min(n, kLevelCap);
}

ZoneValues build_zone_functions(const ZoneSpec& z, Complex lambda, int n) {
  auto e = build_engine(z, n);
  e->check_at_xi(lambda);
  ZoneValues v;
  v.g = e->g(lambda);
  v.f = e->f(lambda);
  v.k = e->k(lambda);
  v.h = e->h(lambda);
  v.truncation_bound = truncation_tail_bound(z, n, scale_of(lambda));
  return v;
}

ZoneFunctionSet make_zone_function_set(const ZoneSpec& z, int n) {
  if (n <= 0) n = resolve_level(z, 64.0);
  auto e = build_engine(z, n);
  ZoneFunctionSet s;
  s.g = [e](Complex w) { return e->g(w); };
  s.f = [e](Complex w) { return e->f(w); };
  s.k = [e](Complex w) { return e->k(w); };
  s.h = [e](Complex w) { return e->h(w); };
  s.gaps = e->gaps;
  s.mu0r = e->mu0r;
  return s;
}

double identity_residual(const ZoneSpec& z, const std::vector<Complex>& samples,
                         int n) {
  auto e = build_engine(z, n);
  double worst = 0;
  for (Complex lam : samples) {
    e->check_at_xi(lam);
    const Complex kk = e->k(lam);
    const Complex fv = e->f(lam);
    const Complex r = e->h(lam) * e->g(lam) - kk * kk - fv;
    worst = std::max(worst, std::abs(r) / std::max(1.0, std::abs(fv)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// branch selection

namespace {

struct MValue {
  Complex m;
  Complex sqrt_f;
};

Complex m_formula(Complex g, Complex k, Complex s, Side side) {
  return side == Side::plus ? g / (k - Complex{0, 1} * s)
                            : -g / (k + Complex{0, 1} * s);
}

Complex m_cross(Complex k, Complex h, Complex s, Side side) {
  return side == Side::plus ? (k + Complex{0, 1} * s) / h
                            : -(k - Complex{0, 1} * s) / h;
}

MValue select_m(const ZoneFunctionSet& set, Complex lambda, Side side,
                bool joint);

// upper-half-plane evaluation: the square-root sign is fixed by the Herglotz
// property of the required half-line coefficients
MValue select_upper(const ZoneFunctionSet& set, Complex w, Side side,
                    bool joint) {
  const Complex g = set.g(w);
  const Complex k = set.k(w);
  const Complex f = set.f(w);
  const Complex s0 = std::sqrt(f);

  auto margin = [&](Complex s) {
    if (joint)
      return std::min(m_formula(g, k, s, Side::plus).imag(),
                      m_formula(g, k, s, Side::minus).imag());
    return m_formula(g, k, s, side).imag();
  };

  const Complex mA = m_formula(g, k, s0, side);
  const Complex mB = m_formula(g, k, -s0, side);
  if (std::abs(mA - mB) <= 1e-9 * std::max(1.0, std::abs(mA)))
    return {mA, s0};

  const double gA = margin(s0);
  const double gB = margin(-s0);
  const double band = 1e-13 * (1.0 + std::abs(mA) + std::abs(mB));
  if (std::abs(gA - gB) <= band)
    fail(Errc::branch_ambiguity, "square-root branches are indistinguishable");
  const Complex s = gA > gB ? s0 : -s0;
  const Complex m = gA > gB ? mA : mB;
  if (std::max(gA, gB) < -1e-9 * (1.0 + std::abs(m)))
    fail(Errc::branch_ambiguity,
         "no branch realizes the required Herglotz sign");
  return {m, s};
}

MValue select_m(const ZoneFunctionSet& set, Complex lambda, Side side,
                bool joint) {
  const double sc = scale_of(lambda);
  if (std::abs(lambda.imag()) <= 4e-12 * sc) {
    // boundary point: branch by continuity from just above the axis
    const Complex probe = Complex(lambda.real(), 1e-6 * sc);
    const MValue ref = select_upper(set, probe, side, joint);
    const Complex g = set.g(lambda);
    const Complex k = set.k(lambda);
    const Complex s0 = std::sqrt(set.f(lambda));
    const Complex mA = m_formula(g, k, s0, side);
    const Complex mB = m_formula(g, k, -s0, side);
    const bool okA = std::isfinite(mA.real()) && std::isfinite(mA.imag());
    const bool okB = std::isfinite(mB.real()) && std::isfinite(mB.imag());
    if (!okA && !okB)
      fail(Errc::numeric_failure, "evaluation at a pole of the coefficient");
    if (!okB || (okA && std::abs(mA - ref.m) <= std::abs(mB - ref.m)))
      return {mA, s0};
    return {mB, -s0};
  }
  if (lambda.imag() > 0) return select_upper(set, lambda, side, joint);
  MValue v = select_m(set, std::conj(lambda), side, joint);
  return {std::conj(v.m), std::conj(v.sqrt_f)};
}

MValue checked_m(const ZoneFunctionSet& set, Complex lambda, Side side,
                 bool joint) {
  const MValue v = select_m(set, lambda, side, joint);
  const Complex alt = m_cross(set.k(lambda), set.h(lambda), v.sqrt_f, side);
  if (std::abs(alt - v.m) > 1e-9 * std::max(1.0, std::abs(v.m)))
    fail(Errc::branch_ambiguity,
         "quotient forms of the coefficient disagree");
  return v;
}

}  // namespace

Complex m_from_set(const ZoneFunctionSet& s, Complex lambda, Side side,
                   bool joint) {
  return checked_m(s, lambda, side, joint).m;
}

Complex m_coefficient(const ZoneSpec& z, Complex lambda, Side side) {
  const int n = resolve_level(z, scale_of(lambda));
  return m_from_set(make_zone_function_set(z, n), lambda, side, true);
}

Complex indefinite_weyl(const ZoneSpec& z, Complex lambda, Side side) {
  return side == Side::plus ? m_coefficient(z, lambda, Side::plus)
                            : -m_coefficient(z, -lambda, Side::minus);
}

// ---------------------------------------------------------------------------
// bands and densities

std::vector<Interval> spectral_bands(const ZoneSpec& z, int n) {
  std::vector<Interval> bands;
  double lo = z.mu0r;
  for (int j = 1; j <= n; ++j) {
    const ZoneGap g = gap_at(z, j);
    if (!g.collapsed()) {
      bands.push_back({lo, g.mul});
      lo = g.mur;
    }
  }
  bands.push_back({lo, kInf});
  return bands;
}

namespace {

std::vector<Interval> set_bands(const ZoneFunctionSet& s) {
  std::vector<Interval> bands;
  double lo = s.mu0r;
  for (const auto& g : s.gaps) {
    if (!g.collapsed()) {
      bands.push_back({lo, g.mul});
      lo = g.mur;
    }
  }
  bands.push_back({lo, kInf});
  return bands;
}

bool in_bands(const std::vector<Interval>& bands, double x, double eps) {
  for (const auto& b : bands)
    if (x >= b.lo - eps && x <= b.hi + eps) return true;
  return false;
}

}  // namespace

double band_density_set(const ZoneFunctionSet& s, double t, Side side) {
  const double x = side == Side::plus ? t : -t;
  const double eps = 1e-9 * std::max(1.0, std::abs(x));
  if (!in_bands(set_bands(s), x, eps))
    fail(Errc::outside_band, "density requested off the spectral bands");
  const double fv = s.f(Complex(x, 0)).real();
  if (fv <= 0) return 0.0;
  const double hv = s.h(Complex(x, 0)).real();
  if (!(hv > 0))
    fail(Errc::numeric_failure, "nonpositive band denominator");
  return std::sqrt(fv) / (kPi * hv);
}

double band_density(const ZoneSpec& z, double t, Side side) {
  const int n = resolve_level(z, std::max(1.0, std::abs(t)));
  return band_density_set(make_zone_function_set(z, n), t, side);
}

// ---------------------------------------------------------------------------
// point spectrum of the half-line problems

namespace {

// real zeros of h inside the spectral gaps, in the h-variable
std::vector<double> h_zeros(const ZoneFunctionSet& set, Interval mu_window) {
  std::vector<Interval> regions;
  const double sc = std::max(1.0, std::max(std::abs(mu_window.lo),
                                           std::abs(mu_window.hi)));
  const double shrink = 1e-6 * sc;
  // below the spectrum
  if (mu_window.lo < set.mu0r - shrink)
    regions.push_back(
        {mu_window.lo, std::min(set.mu0r - shrink, mu_window.hi)});
  for (const auto& g : set.gaps) {
    if (g.collapsed()) continue;
    const double lo = std::max(g.mul + shrink, mu_window.lo);
    const double hi = std::min(g.mur - shrink, mu_window.hi);
    if (lo < hi) regions.push_back({lo, hi});
  }

  auto hr = [&set](double x) { return set.h(Complex(x, 0)).real(); };
  std::vector<double> zeros;
  RealRootOptions opt;
  for (const auto& reg : regions)
    for (double r : real_roots(hr, reg.lo, reg.hi, opt)) zeros.push_back(r);
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

// pole test: delta * m stabilizes at the residue for a genuine pole and
// collapses linearly otherwise
bool has_pole(const ZoneFunctionSet& set, double mu, Side side) {
  const double sc = std::max(1.0, std::abs(mu));
  const double d1 = 1e-5 * sc;
  const Complex m1 = m_from_set(set, Complex(mu, d1), side, false);
  const Complex m2 = m_from_set(set, Complex(mu, d1 / 2), side, false);
  const double r1 = d1 * std::abs(m1);
  const double r2 = (d1 / 2) * std::abs(m2);
  return r2 > 1e-10 && r2 >= 0.7 * r1;
}

Complex h_derivative(const ZoneFunctionSet& set, double mu) {
  if (set.h_deriv) return set.h_deriv(Complex(mu, 0));
  const double r = 0.1 * std::max(1.0, std::abs(mu));
  const auto c = taylor_coefficients(set.h, Complex(mu, 0), r, 2, 64);
  return c[1];
}

}  // namespace

std::vector<double> a0_discrete_set(const ZoneFunctionSet& s, Side side,
                                    Interval window) {
  const Interval mu_window = side == Side::plus
                                 ? window
                                 : Interval{-window.hi, -window.lo};
  std::vector<double> out;
  for (double mu : h_zeros(s, mu_window)) {
    if (!has_pole(s, mu, side)) continue;
    out.push_back(side == Side::plus ? mu : -mu);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> a0_discrete(const ZoneSpec& z, Side side, Interval window) {
  const double sc = std::max(std::abs(window.lo), std::abs(window.hi));
  const int n = resolve_level(z, std::max(1.0, sc));
  return a0_discrete_set(make_zone_function_set(z, n), side, window);
}

// ---------------------------------------------------------------------------
// measure reconstruction

WeylCoefficient reconstruct_weyl(const ZoneSpec& z, Side side,
                                 Interval window) {
  const double sc =
      std::max({1.0, std::abs(window.lo), std::abs(window.hi)});
  const int n = resolve_level(z, sc);
  auto set = make_zone_function_set(z, n);

  WeylCoefficient w;
  w.measure.total_mass_infinite = true;

  const auto bands = set_bands(set);
  int idx = 0;
  for (const auto& b : bands) {
    DensityPiece piece;
    piece.rho = [set, side](double t) {
      const double x = side == Side::plus ? t : -t;
      const double fv = std::max(set.f(Complex(x, 0)).real(), 0.0);
      if (fv == 0) return 0.0;
      return std::sqrt(fv) / (kPi * set.h(Complex(x, 0)).real());
    };
    piece.label = "band " + std::to_string(++idx);
    if (side == Side::plus) {
      piece.lo = b.lo;
      piece.hi = b.hi;
      piece.exp_lo = 0.5;
      piece.exp_hi = b.hi == kInf ? 0.0 : 0.5;
      piece.exp_inf = -0.5;
    } else {
      piece.lo = b.hi == kInf ? -kInf : -b.hi;
      piece.hi = -b.lo;
      piece.exp_lo = b.hi == kInf ? 0.0 : 0.5;
      piece.exp_hi = 0.5;
      piece.exp_inf = -0.5;
    }
    w.measure.densities.push_back(std::move(piece));
  }

  const Interval mu_window =
      side == Side::plus
          ? Interval{window.lo - 8, window.hi + 8}
          : Interval{-window.hi - 8, -window.lo + 8};
  for (double mu : h_zeros(set, mu_window)) {
    const double d = 1e-6 * std::max(1.0, std::abs(mu));
    const Complex m = m_from_set(set, Complex(mu, d), side, false);
    const Complex hv = set.h(Complex(mu, d));
    const double hp = h_derivative(set, mu).real();
    if (hp == 0) fail(Errc::numeric_failure, "degenerate denominator zero");
    const double mass = -((m * hv).real()) / hp;
    if (mass <= 1e-10) continue;
    w.measure.atoms.push_back({side == Side::plus ? mu : -mu, mass});
  }
  std::sort(w.measure.atoms.begin(), w.measure.atoms.end(),
            [](const Atom& a, const Atom& b) { return a.t < b.t; });

  const Complex at_i =
      side == Side::plus
          ? m_from_set(set, Complex(0, 1), Side::plus, false)
          : -m_from_set(set, Complex(0, -1), Side::minus, false);
  WeylCoefficient probe = w;
  probe.C = 0;
  w.C = (at_i - eval_M(probe, Complex(0, 1))).real();
  return w;
}

// ---------------------------------------------------------------------------
// full spectral picture

SpectrumReport indefinite_spectrum(const ZoneSpec& z, SpectrumRegion box,
                                   int k_max) {
  if (!(box.re_lo < box.re_hi)) fail(Errc::invalid_spec, "empty search box");
  const double sc =
      std::max({1.0, std::abs(box.re_lo), std::abs(box.re_hi)});
  const int n = resolve_level(z, sc);
  auto set = make_zone_function_set(z, n);

  SpectrumReport rep;
  rep.degenerate = false;
  for (const auto& b : spectral_bands(z, n)) {
    rep.essential.add(b);
    rep.essential.add({b.hi == kInf ? -kInf : -b.hi, -b.lo});
  }

  ModelOperator op;
  op.plus = reconstruct_weyl(z, Side::plus,
                             {box.re_lo - 2, box.re_hi + 2});
  op.minus = reconstruct_weyl(z, Side::minus,
                              {box.re_lo - 2, box.re_hi + 2});

  // no embedded point spectrum: band interiors and edges must sit in the
  // divergent class of the carrying measure
  const Interval re_range{box.re_lo, box.re_hi};
  for (Side side : {Side::plus, Side::minus}) {
    const SpectralMeasure& m =
        side == Side::plus ? op.plus.measure : op.minus.measure;
    for (const auto& b : set_bands(set)) {
      Interval seg = side == Side::plus
                         ? b
                         : Interval{b.hi == kInf ? -kInf : -b.hi, -b.lo};
      seg.lo = std::max(seg.lo, re_range.lo);
      seg.hi = std::min(seg.hi, re_range.hi);
      if (!(seg.hi - seg.lo > 1e-6)) continue;
      for (double frac : {0.12, 0.5, 0.88}) {
        const double t = seg.lo + frac * (seg.hi - seg.lo);
        if (classify_point(m, Complex(t, 0)) != PointClass::a0)
          fail(Errc::numeric_failure,
               "unexpected point class inside a spectral band");
      }
    }
  }

  PhiEvaluator phi;
  phi.value = [set](Complex lam) {
    return m_from_set(set, lam, Side::plus, false) +
           m_from_set(set, -lam, Side::minus, false);
  };
  phi.derivative = [&phi](Complex lam) {
    const double hstep = 1e-6 * std::max(1.0, std::abs(lam));
    return (phi.value(lam + hstep) - phi.value(lam - hstep)) / (2 * hstep);
  };

  const double shrink = 1e-6 * sc;
  std::vector<DiscretePoint> found;
  if (box.im_lo <= 0 && box.im_hi >= 0) {
    for (const auto& gap : rep.essential.gaps_within(re_range)) {
      SpectrumRegion r{gap.lo + shrink, gap.hi - shrink, 0, 0};
      if (!(r.re_lo < r.re_hi)) continue;
      for (auto& p : discrete_spectrum(op, r, k_max, &phi))
        found.push_back(p);
    }
  }
  if (box.im_hi > 1e-6) {
    SpectrumRegion r{box.re_lo, box.re_hi, std::max(box.im_lo, 1e-6),
                     box.im_hi};
    for (auto& p : discrete_spectrum(op, r, k_max, &phi)) found.push_back(p);
  }
  if (box.im_lo < -1e-6) {
    SpectrumRegion r{box.re_lo, box.re_hi, box.im_lo,
                     std::min(box.im_hi, -1e-6)};
    for (auto& p : discrete_spectrum(op, r, k_max, &phi)) found.push_back(p);
  }

  std::sort(found.begin(), found.end(),
            [](const DiscretePoint& a, const DiscretePoint& b) {
              if (a.lambda.real() != b.lambda.real())
                return a.lambda.real() < b.lambda.real();
              return a.lambda.imag() < b.lambda.imag();
            });
  rep.discrete = std::move(found);
  return rep;
}

}  // namespace indefspec
