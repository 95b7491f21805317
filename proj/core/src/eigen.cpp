#include "indefspec/eigen.hpp"

#include <algorithm>
#include <cmath>

#include "indefspec/error.hpp"
#include "indefspec/numeric/circle.hpp"
#include "indefspec/numeric/rootfind.hpp"
#include "indefspec/weyl.hpp"

namespace indefspec {

const char* eigen_case_name(EigenCase c) {
  switch (c) {
    case EigenCase::a0_side: return "a0-side";
    case EigenCase::ap_ap: return "ap-ap";
    case EigenCase::ar_ar: return "ar-ar";
    case EigenCase::mixed: return "mixed";
  }
  return "?";
}

std::string Multiplicity::str() const {
  switch (kind) {
    case Kind::finite: return std::to_string(k);
    case Kind::at_least: return ">=" + std::to_string(k);
    case Kind::infinite: return "infinite";
  }
  return "?";
}

namespace {

bool real_pt(Complex z) {
  return std::abs(z.imag()) <= 4e-12 * std::max(1.0, std::abs(z));
}

struct ZeroTest {
  bool zero;
  bool ambiguous;
};

ZeroTest test_zero(Complex v) {
  const double a = std::abs(v);
  const double tol = tolerances().zero_abs;
  return {a <= tol, a > 0.1 * tol && a <= 10.0 * tol};
}

}  // namespace

bool degenerate_check(const ModelOperator& op) {
  return measures_equal(op.plus.measure, op.minus.measure) &&
         nearly_equal(op.plus.C, op.minus.C);
}

IntervalUnion essential_spectrum(const SpectralMeasure& plus,
                                 const SpectralMeasure& minus) {
  return q_spectrum(plus).essential.unioned(q_spectrum(minus).essential);
}

// ---------------------------------------------------------------------------
// classification

EigenReport classify_eigenvalue(const ModelOperator& op, Complex lambda,
                                int k_max) {
  if (k_max < 1) fail(Errc::invalid_spec, "k_max must be at least 1");
  EigenReport rep;
  rep.lambda = lambda;

  const PointClass cp = classify_point(op.plus.measure, lambda);
  const PointClass cm = classify_point(op.minus.measure, lambda);
  rep.trace.push_back({std::string("point_class_plus=") + point_class_name(cp),
                       {0, 0},
                       true,
                       false});
  rep.trace.push_back(
      {std::string("point_class_minus=") + point_class_name(cm),
       {0, 0},
       true,
       false});

  if (cp == PointClass::a0 || cm == PointClass::a0)
    rep.kind = EigenCase::a0_side;
  else if (cp == PointClass::ap && cm == PointClass::ap)
    rep.kind = EigenCase::ap_ap;
  else if (cp == PointClass::ar && cm == PointClass::ar)
    rep.kind = EigenCase::ar_ar;
  else
    rep.kind = EigenCase::mixed;

  if (degenerate_check(op)) {
    if (real_pt(lambda)) {
      const IntervalUnion ess =
          essential_spectrum(op.plus.measure, op.minus.measure);
      if (ess.distance(lambda.real()) <= 1e-9)
        fail(Errc::degenerate,
             "identical halves: no classification on the essential set");
    }
    rep.is_eigenvalue = true;
    rep.geometric = 1;
    rep.algebraic = Multiplicity::infinite();
    rep.trace.push_back({"identical_halves", {0, 0}, true, false});
    return rep;
  }

  auto note = [&rep](std::string cond, Complex v, bool holds, bool amb) {
    rep.trace.push_back({std::move(cond), v, holds, amb});
    rep.ambiguous = rep.ambiguous || amb;
  };

  if (rep.kind == EigenCase::a0_side || rep.kind == EigenCase::mixed) {
    rep.is_eigenvalue = false;
    return rep;
  }

  const PhiFunction& phi = op;

  // boundary limit of the n-th derivative at real points, direct value off
  // the axis where everything is analytic
  auto phi_limit = [&](int n) -> Complex {
    if (real_pt(lambda)) {
      IntegralValue v = eval_phi_boundary(phi, lambda.real(), n);
      if (v.is_divergent())
        fail(Errc::hypotheses_fail, "boundary limit does not exist");
      return v.value();
    }
    return phi_deriv(phi, lambda, n);
  };
  auto moments_finite = [&](int j) -> bool {
    if (!real_pt(lambda)) return true;
    return chi_moment(op.plus.measure, lambda, j, true).is_finite() &&
           chi_moment(op.minus.measure, lambda, j, true).is_finite();
  };

  if (rep.kind == EigenCase::ap_ap) {
    rep.is_eigenvalue = true;
    rep.geometric = 1;

    const double mp = mass_at(op.plus.measure, lambda);
    const double mm = mass_at(op.minus.measure, lambda);
    const bool mass_eq = nearly_equal(mp, mm);
    note("atom_mass_plus", Complex(mp, 0), true, false);
    note("atom_mass_minus", Complex(mm, 0), true, false);
    note("atom_masses_equal", Complex(mp - mm, 0), mass_eq, false);

    const bool fin1 = moments_finite(1);
    note("second_moments_finite", {0, 0}, fin1, false);

    if (!mass_eq || !fin1) {
      rep.algebraic = Multiplicity::finite(1);
      return rep;
    }

    int k = 2;
    bool capped = true;
    while (k < k_max) {
      // extending the chain to length k+1 needs the order-k moments and a
      // vanishing boundary limit of the (k-2)-nd derivative
      const bool fink = moments_finite(k);
      note("moments_finite(order=" + std::to_string(k) + ")", {0, 0}, fink,
           false);
      if (!fink) {
        capped = false;
        break;
      }
      const Complex pv = phi_limit(k - 2);
      const ZeroTest zt = test_zero(pv);
      note("phi_limit(n=" + std::to_string(k - 2) + ")", pv, zt.zero,
           zt.ambiguous);
      if (!zt.zero) {
        capped = false;
        break;
      }
      ++k;
    }
    rep.algebraic =
        capped ? Multiplicity::at_least(k_max) : Multiplicity::finite(k);
    return rep;
  }

  // ar-ar
  {
    const Complex pv0 = phi_limit(0);
    const ZeroTest zt0 = test_zero(pv0);
    note("phi_limit(n=0)", pv0, zt0.zero, zt0.ambiguous);
    if (!zt0.zero) {
      rep.is_eigenvalue = false;
      return rep;
    }
    rep.is_eigenvalue = true;
    rep.geometric = 1;

    int k = 1;
    bool capped = true;
    while (k < k_max) {
      const bool fink = moments_finite(k + 1);
      note("moments_finite(order=" + std::to_string(k + 1) + ")", {0, 0},
           fink, false);
      if (!fink) {
        capped = false;
        break;
      }
      const Complex pv = phi_limit(k);
      const ZeroTest zt = test_zero(pv);
      note("phi_limit(n=" + std::to_string(k) + ")", pv, zt.zero,
           zt.ambiguous);
      if (!zt.zero) {
        capped = false;
        break;
      }
      ++k;
    }
    rep.algebraic =
        capped ? Multiplicity::at_least(k_max) : Multiplicity::finite(k);
    return rep;
  }
}

// ---------------------------------------------------------------------------
// support separation

namespace {

// Approach sides of an accumulating family: bit 1 = from above, bit 2 = from
// below, judged by sampling deep indices.
int approach_sides(const AtomFamily& f) {
  int sides = 0;
  const double a = *f.accumulation;
  for (long long k : {1LL << 10, 1LL << 12, 1LL << 14}) {
    if (f.range.contains(k)) {
      const double d = f.position(k) - a;
      if (d > 0) sides |= 1;
      if (d < 0) sides |= 2;
    }
    if (f.range.contains(-k)) {
      const double d = f.position(-k) - a;
      if (d > 0) sides |= 1;
      if (d < 0) sides |= 2;
    }
  }
  return sides;
}

// Does `other` have non-atomic support arbitrarily close to point a on the
// given sides?  Finitely many atoms never obstruct separation; densities and
// accumulating families do.
bool crowded_near(const SpectralMeasure& other, double a, int sides) {
  const double eps = 1e-9 * std::max(1.0, std::abs(a));
  for (const auto& p : other.densities) {
    const bool above = (p.hi > a + eps) && (p.lo <= a + eps);
    const bool below = (p.lo < a - eps) && (p.hi >= a - eps);
    if ((sides & 1) && above) return true;
    if ((sides & 2) && below) return true;
    // density starting or ending exactly at a crowds the matching side
    if ((sides & 1) && std::abs(p.lo - a) <= eps) return true;
    if ((sides & 2) && std::abs(p.hi - a) <= eps) return true;
  }
  for (const auto& g : other.families) {
    if (!g.accumulation) continue;
    if (std::abs(*g.accumulation - a) > eps) continue;
    if (approach_sides(g) & sides) return true;
  }
  return false;
}

}  // namespace

bool definitizable_check(const SpectralMeasure& plus,
                         const SpectralMeasure& minus) {
  const bool pa = support_unbounded_above(plus);
  const bool pb = support_unbounded_below(plus);
  const bool ma = support_unbounded_above(minus);
  const bool mb = support_unbounded_below(minus);
  if ((pa && ma) || (pb && mb)) return false;

  for (const auto& p : plus.densities) {
    for (const auto& q : minus.densities) {
      const double overlap = std::min(p.hi, q.hi) - std::max(p.lo, q.lo);
      if (overlap > 1e-9 * std::max(1.0, std::abs(p.lo))) return false;
    }
  }

  for (const auto& f : plus.families) {
    if (f.accumulation &&
        crowded_near(minus, *f.accumulation, approach_sides(f)))
      return false;
  }
  for (const auto& f : minus.families) {
    if (f.accumulation &&
        crowded_near(plus, *f.accumulation, approach_sides(f)))
      return false;
  }
  return true;
}

bool semibounded_flag(const SpectralMeasure& m) {
  return !support_unbounded_below(m) || !support_unbounded_above(m);
}

// ---------------------------------------------------------------------------
// discrete spectrum

namespace {

double nearest_support_distance(const ModelOperator& op, double x) {
  double d = kInf;
  for (const SpectralMeasure* m : {&op.plus.measure, &op.minus.measure}) {
    d = std::min(d, q_spectrum(*m, {x - 2, x + 2}).essential.distance(x));
    for (double w : {2.0, 16.0, 128.0}) {
      bool found = false;
      for (const auto& a : atoms_in(*m, {x - w, x + w})) {
        if (std::abs(a.t - x) <= 4e-12 * std::max(1.0, std::abs(x))) continue;
        d = std::min(d, std::abs(a.t - x));
        found = true;
      }
      if (found) break;
    }
    for (const auto& f : m->families)
      if (f.accumulation && std::abs(*f.accumulation - x) > 1e-12)
        d = std::min(d, std::abs(*f.accumulation - x));
  }
  return d;
}

int circle_winding(const std::function<Complex(Complex)>& f, Complex c,
                   double r, int n = 256) {
  double total = 0;
  Complex prev = f(c + Complex(r, 0));
  for (int i = 1; i <= n; ++i) {
    const double th = 2.0 * kPi * i / n;
    const Complex z = c + Complex(r * std::cos(th), r * std::sin(th));
    const Complex v = f(z);
    if (v == Complex{0, 0} || prev == Complex{0, 0})
      fail(Errc::numeric_failure, "zero on winding contour");
    total += std::arg(v / prev);
    prev = v;
  }
  return int(std::lround(total / (2.0 * kPi)));
}

// Vanishing order of holomorphic F at z0, from scaled Taylor coefficients on
// a circle of radius r.
int order_of_zero(const std::function<Complex(Complex)>& F, Complex z0,
                  double r, int max_order) {
  const int count = max_order + 2;
  const auto coef = taylor_coefficients(F, z0, r, count, 256);
  double scale = 0;
  for (int i = 0; i < 64; ++i) {
    const double th = 2.0 * kPi * i / 64;
    scale = std::max(scale,
                     std::abs(F(z0 + Complex(r * std::cos(th),
                                             r * std::sin(th)))));
  }
  if (scale <= 0) return max_order + 1;
  for (int j = 1; j < int(coef.size()); ++j) {
    if (std::abs(coef[j]) * std::pow(r, j) > 1e-9 * scale) return j;
  }
  return max_order + 1;
}

}  // namespace

std::vector<DiscretePoint> discrete_spectrum(const ModelOperator& op,
                                             SpectrumRegion region,
                                             int k_max,
                                             const PhiEvaluator* phi) {
  if (degenerate_check(op))
    fail(Errc::degenerate, "identical halves: spectrum is the whole plane");
  if (!(region.re_lo < region.re_hi))
    fail(Errc::invalid_spec, "empty region");

  const IntervalUnion ess =
      essential_spectrum(op.plus.measure, op.minus.measure);
  const bool touches_real =
      region.real_interval() || (region.im_lo <= 0 && region.im_hi >= 0);

  const double margin =
      1e-9 * std::max({1.0, std::abs(region.re_lo), std::abs(region.re_hi)});
  if (touches_real) {
    for (const auto& part : ess.parts()) {
      if (std::min(part.hi, region.re_hi + margin) >=
          std::max(part.lo, region.re_lo - margin))
        fail(Errc::region_touches_essential,
             "region meets the essential spectrum");
    }
  }

  std::function<Complex(Complex)> F;
  if (phi && phi->value)
    F = phi->value;
  else
    F = [&op](Complex z) { return phi_value(op, z); };

  std::function<Complex(Complex)> dF;
  if (phi && phi->derivative)
    dF = phi->derivative;
  else if (phi && phi->value) {
    auto base = phi->value;
    dF = [base](Complex z) {
      const double h = 1e-6 * std::max(1.0, std::abs(z));
      return (base(z + h) - base(z - h)) / (2.0 * h);
    };
  } else {
    dF = [&op](Complex z) { return phi_deriv(op, z, 1); };
  }

  std::vector<DiscretePoint> out;

  if (touches_real) {
    const Interval window{region.re_lo, region.re_hi};
    const auto ap = atoms_in(op.plus.measure, window);
    const auto am = atoms_in(op.minus.measure, window);

    // (a) common isolated atoms, scored through 1/M+ - 1/M-
    for (const auto& a : ap) {
      bool common = false;
      for (const auto& b : am)
        if (std::abs(a.t - b.t) <= 4e-12 * std::max(1.0, std::abs(a.t)))
          common = true;
      if (!common) continue;

      const double d = nearest_support_distance(op, a.t);
      double r = std::min(d / 4.0, 1.0);
      auto Mp = [&op](Complex z) { return eval_M(op.plus, z); };
      auto Mm = [&op](Complex z) { return eval_M(op.minus, z); };
      bool ok = false;
      for (int tries = 0; tries < 24 && r > 1e-12; ++tries, r /= 2) {
        if (circle_winding(Mp, Complex(a.t, 0), r) == -1 &&
            circle_winding(Mm, Complex(a.t, 0), r) == -1) {
          ok = true;
          break;
        }
      }
      if (!ok)
        fail(Errc::numeric_failure,
             "could not isolate the common atom from nearby zeros");
      auto G = [&](Complex z) { return 1.0 / Mp(z) - 1.0 / Mm(z); };
      const int order = order_of_zero(G, Complex(a.t, 0), r, k_max);
      out.push_back({Complex(a.t, 0),
                     order > k_max ? Multiplicity::at_least(k_max)
                                   : Multiplicity::finite(order),
                     false});
    }

    // (b) real zeros of Phi on gaps of the combined support
    IntervalUnion blocked = ess;
    for (const auto& a : ap) blocked.add_point(a.t);
    for (const auto& a : am) blocked.add_point(a.t);
    const double shrink = std::max(
        1e-9, 1e-9 * std::max(std::abs(region.re_lo), std::abs(region.re_hi)));
    for (const auto& gap : blocked.gaps_within(window)) {
      const double a = gap.lo + shrink;
      const double b = gap.hi - shrink;
      if (!(a < b)) continue;
      auto fr = [&F](double x) { return F(Complex(x, 0)).real(); };
      RealRootOptions opt;
      for (double root : real_roots(fr, a, b, opt)) {
        const double rloc =
            std::min({root - gap.lo, gap.hi - root, 0.5}) * 0.5;
        int order = 1;
        if (rloc > 1e-10)
          order = order_of_zero(F, Complex(root, 0), rloc, k_max);
        out.push_back({Complex(root, 0),
                       order > k_max ? Multiplicity::at_least(k_max)
                                     : Multiplicity::finite(order),
                       false});
      }
    }
  }

  // (c) nonreal zeros by winding counts, keeping clear of the axis
  if (!region.real_interval()) {
    ComplexRootOptions opt;
    if (region.im_hi > 1e-6) {
      const Complex lo(region.re_lo, std::max(region.im_lo, 1e-6));
      const Complex hi(region.re_hi, region.im_hi);
      for (const auto& root : complex_roots(F, dF, lo, hi, opt))
        out.push_back({root.z, Multiplicity::finite(root.multiplicity),
                       std::abs(root.z.imag()) < 1e-5});
    }
    if (region.im_lo < -1e-6) {
      // Phi(conj z) = conj Phi(z), so the lower box is searched as the
      // mirror image of an upper box; symmetric regions then produce
      // exactly conjugate root pairs.
      auto Fc = [&F](Complex z) { return std::conj(F(std::conj(z))); };
      auto dFc = [&dF](Complex z) { return std::conj(dF(std::conj(z))); };
      const Complex lo(region.re_lo, -std::min(region.im_hi, -1e-6));
      const Complex hi(region.re_hi, -region.im_lo);
      for (const auto& root : complex_roots(Fc, dFc, lo, hi, opt))
        out.push_back({std::conj(root.z),
                       Multiplicity::finite(root.multiplicity),
                       std::abs(root.z.imag()) < 1e-5});
    }
  }

  std::sort(out.begin(), out.end(),
            [](const DiscretePoint& x, const DiscretePoint& y) {
              if (x.lambda.real() != y.lambda.real())
                return x.lambda.real() < y.lambda.real();
              return x.lambda.imag() < y.lambda.imag();
            });
  return out;
}

SpectrumReport spectrum_report(const ModelOperator& op, SpectrumRegion region,
                               int k_max) {
  SpectrumReport rep;
  rep.degenerate = degenerate_check(op);
  rep.essential = essential_spectrum(op.plus.measure, op.minus.measure);
  if (!rep.degenerate) rep.discrete = discrete_spectrum(op, region, k_max);
  return rep;
}

// ---------------------------------------------------------------------------
// chain construction

namespace {

// Coefficient algebra solving (T* - lambda) y = prev for the pole part:
// pole orders shift up by one and the new first-order coefficient counters
// the previous indicator.
ChainHalf shift_up(const ChainHalf& prev) {
  ChainHalf out = ChainHalf::zero(prev.base);
  out.set_pole_coef(1, -prev.indicator);
  for (int j = 1; j <= int(prev.poles.size()); ++j)
    if (prev.poles[j - 1] != Complex{0, 0})
      out.set_pole_coef(j + 1, prev.poles[j - 1]);
  return out;
}

}  // namespace

std::vector<ChainVector> build_jordan_chain(const ModelOperator& op,
                                            Complex lambda, int length) {
  if (length < 1) fail(Errc::invalid_spec, "chain length must be positive");
  const double mp = mass_at(op.plus.measure, lambda);
  const double mm = mass_at(op.minus.measure, lambda);
  if ((mp > 0) != (mm > 0))
    fail(Errc::hypotheses_fail,
         "one-sided atom: no eigenvector in the chain family");

  std::vector<ChainVector> chain;
  chain.reserve(length);

  ChainVector y0;
  if (mp > 0) {
    y0.plus = ChainHalf::make_indicator(lambda, 1.0 / mp);
    y0.minus = ChainHalf::make_indicator(lambda, 1.0 / mm);
  } else {
    y0.plus = ChainHalf::make_pole(lambda, 1);
    y0.minus = ChainHalf::make_pole(lambda, 1);
  }
  chain.push_back(y0);

  for (int n = 1; n < length; ++n) {
    ChainVector y;
    y.plus = shift_up(chain[n - 1].plus);
    y.minus = shift_up(chain[n - 1].minus);
    if (mp > 0) {
      // free indicator coefficients fixed by the symmetric cross rule, which
      // makes the second interface condition hold identically
      const Complex g1m = gamma1(op.minus.measure, op.minus.C, y.minus);
      const Complex g1p = gamma1(op.plus.measure, op.plus.C, y.plus);
      y.plus.indicator = g1m / mp;
      y.minus.indicator = g1p / mm;
    }
    chain.push_back(y);
  }
  return chain;
}

}  // namespace indefspec
