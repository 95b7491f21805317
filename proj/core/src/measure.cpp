#include "indefspec/measure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "indefspec/error.hpp"
#include "indefspec/numeric/summation.hpp"

namespace indefspec {

namespace {

double match_eps(double scale) { return 4e-12 * std::max(1.0, std::abs(scale)); }

double edge_eps(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

bool finite_lo(const DensityPiece& p) { return std::isfinite(p.lo); }
bool finite_hi(const DensityPiece& p) { return std::isfinite(p.hi); }

long long max_abs_excluded(const IndexRange& r) {
  long long m = 0;
  for (long long e : r.exclude) m = std::max(m, std::llabs(e));
  return m;
}

}  // namespace

bool IndexRange::excluded(long long k) const {
  return std::find(exclude.begin(), exclude.end(), k) != exclude.end();
}

const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::a0: return "a0";
    case PointClass::ar: return "ar";
    case PointClass::ap: return "ap";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// symbolic divergence analysis

// Divergence of the integral against |t-s|^{-order} near real s, decided from
// declared local exponents.  Atoms exactly at s are assumed excluded.
bool locally_divergent_at(const SpectralMeasure& m, double s, double order) {
  if (order <= 0) return false;
  for (const auto& p : m.densities) {
    const double eps = edge_eps(s);
    if (finite_lo(p) && std::abs(s - p.lo) <= eps) {
      if (p.exp_lo - order <= -1.0) return true;
    } else if (finite_hi(p) && std::abs(s - p.hi) <= eps) {
      if (p.exp_hi - order <= -1.0) return true;
    } else if (s > p.lo && s < p.hi) {
      // interior point: local exponent 0
      if (-order <= -1.0) return true;
    }
  }
  for (const auto& f : m.families) {
    if (!f.accumulation) continue;
    if (std::abs(*f.accumulation - s) > edge_eps(s)) continue;
    // terms ~ k^{gamma + order*acc}
    if (f.weight_exponent + order * f.accumulation_exponent >= -1.0)
      return true;
  }
  return false;
}

namespace {

// Divergence of the absolutely-convergent tail at infinity for a kernel that
// decays like |t|^{-decay}.
bool tail_divergent_abs(const SpectralMeasure& m, double decay) {
  for (const auto& p : m.densities) {
    if (!finite_lo(p) || !finite_hi(p)) {
      if (p.exp_inf - decay >= -1.0) return true;
    }
  }
  for (const auto& f : m.families) {
    if (f.accumulation) {
      // all mass near a finite point; weights must sum
      if (f.weight_exponent >= -1.0) return true;
      continue;
    }
    if (f.range.unbounded_below() || f.range.unbounded_above()) {
      if (f.weight_exponent - f.position_growth * decay >= -1.0) return true;
    }
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// family summation: explicit core plus Euler-Maclaurin tails

namespace {

struct ComplexSum {
  Accumulator acc;
  void add(Complex z) { acc.add(z); }
  Complex value() const { return acc.total(); }
};

// Continuous extension of one family term in a given direction:
// dir=+1 evaluates at +kappa, dir=-1 at -kappa.
class TermFn {
 public:
  TermFn(const AtomFamily& f, const KernelSpec& k, int dir)
      : fam_(f), ker_(k), dir_(dir) {}
  Complex operator()(double kappa) const {
    const double x = dir_ * kappa;
    return fam_.weights(x) * ker_.f(fam_.positions(x));
  }

 private:
  const AtomFamily& fam_;
  const KernelSpec& ker_;
  int dir_;
};

// Log-log decay slope of |F| sampled past K.  Returns +inf when the function
// is numerically zero there.
double estimate_decay(const std::function<Complex(double)>& F, double K) {
  static const double mult[5] = {1.0, 1.4, 2.0, 2.8, 4.0};
  double lx[5], ly[5];
  int n = 0;
  bool all_tiny = true;
  for (double c : mult) {
    const double kappa = c * K;
    const double mag = std::abs(F(kappa));
    if (mag > 1e-280) {
      all_tiny = false;
      lx[n] = std::log(kappa);
      ly[n] = std::log(mag);
      ++n;
    }
  }
  if (all_tiny) return kInf;
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

QuadResult complex_em_tail(const std::function<Complex(double)>& F, double K,
                           double d, double tol) {
  QuadResult re = em_tail([&](double k) { return F(k).real(); }, K, d, tol);
  QuadResult im = em_tail([&](double k) { return F(k).imag(); }, K, d, tol);
  return {Complex(re.value.real(), im.value.real()), re.error + im.error,
          re.evals + im.evals};
}

struct FamilySum {
  Complex value;
  double error;
  bool divergent;  // principal sum failed to stabilize with decaying terms
};

// Smallest symmetric index radius after which tail terms are smooth: past all
// exclusions, past any index whose position lands near the kernel singularity,
// and (for accumulating families) well inside the approach region.
long long min_tail_radius(const AtomFamily& f, const KernelSpec& k) {
  long long K = 64;
  K = std::max(K, max_abs_excluded(f.range) + 2);
  if (k.singularity) {
    const double s = *k.singularity;
    if (f.accumulation) {
      const double a = *f.accumulation;
      const double gap = std::abs(a - s);
      if (gap > 0) {
        long long j = 1;
        int ok = 0;
        while (j < (1LL << 16) && ok < 16) {
          bool close = true;
          if (f.range.contains(j)) close = std::abs(f.position(j) - a) <= gap / 4;
          bool close_m = true;
          if (f.range.contains(-j)) close_m = std::abs(f.position(-j) - a) <= gap / 4;
          ok = (close && close_m) ? ok + 1 : 0;
          ++j;
        }
        K = std::max(K, j + 8);
      }
    } else {
      const double reach = 2.0 * (std::abs(s) + 1.0);
      long long j = 1;
      int ok = 0;
      while (j < (1LL << 16) && ok < 16) {
        bool far = true;
        if (f.range.contains(j)) far = std::abs(f.position(j)) >= reach;
        bool far_m = true;
        if (f.range.contains(-j)) far_m = std::abs(f.position(-j)) >= reach;
        ok = (far && far_m) ? ok + 1 : 0;
        ++j;
      }
      K = std::max(K, j + 8);
    }
  }
  return K;
}

Complex family_term(const AtomFamily& f, const KernelSpec& k, long long idx) {
  if (!f.range.contains(idx)) return {0, 0};
  const double t = f.position(idx);
  if (k.singularity && k.exclude_singularity_atom &&
      std::abs(t - *k.singularity) <= match_eps(*k.singularity))
    return {0, 0};
  return f.weight(idx) * k.f(t);
}

FamilySum sum_family(const AtomFamily& f, const KernelSpec& k, double tol) {
  const auto& r = f.range;

  // fully bounded range: explicit summation
  if (!r.unbounded_below() && !r.unbounded_above()) {
    if (r.hi - r.lo > 4000000)
      fail(Errc::non_convergent_tail, "bounded atom family too large to sum");
    ComplexSum acc;
    for (long long idx = r.lo; idx <= r.hi; ++idx)
      acc.add(family_term(f, k, idx));
    return {acc.value(), 1e-15 * std::abs(acc.value()), false};
  }

  const bool two_sided = r.unbounded_below() && r.unbounded_above();

  // tail function of the continuous index radius
  std::function<Complex(double)> F;
  if (two_sided) {
    TermFn up(f, k, +1), dn(f, k, -1);
    F = [up, dn](double kappa) { return up(kappa) + dn(kappa); };
  } else if (r.unbounded_above()) {
    F = TermFn(f, k, +1);
  } else {
    F = TermFn(f, k, -1);
  }

  long long K = min_tail_radius(f, k);
  if (!two_sided) {
    // explicit part must cover the bounded side up to radius K
    const long long anchor = r.unbounded_above() ? r.lo : r.hi;
    K = std::max(K, std::llabs(anchor) + 64);
  }

  ComplexSum acc;
  long long covered_lo = 0, covered_hi = -1;  // explicit indices summed so far
  auto extend = [&](long long new_lo, long long new_hi) {
    if (covered_hi < covered_lo) {
      for (long long idx = new_lo; idx <= new_hi; ++idx)
        acc.add(family_term(f, k, idx));
    } else {
      for (long long idx = new_lo; idx < covered_lo; ++idx)
        acc.add(family_term(f, k, idx));
      for (long long idx = covered_hi + 1; idx <= new_hi; ++idx)
        acc.add(family_term(f, k, idx));
    }
    covered_lo = new_lo;
    covered_hi = new_hi;
  };

  bool have_prev = false;
  Complex prev{0, 0};
  double last_d = 0;
  Complex candidate{0, 0};
  double cand_err = 0;

  for (int iter = 0; iter < 14 && K <= (1LL << 18); ++iter, K *= 2) {
    if (two_sided)
      extend(-K + 1, K - 1);
    else if (r.unbounded_above())
      extend(r.lo, K - 1);
    else
      extend(-K + 1, r.hi);

    const double d = estimate_decay(F, double(K));
    last_d = d;
    if (d == kInf) {
      return {acc.value(), 1e-15 * (1.0 + std::abs(acc.value())), false};
    }
    if (d <= 1.05) {
      have_prev = false;
      continue;  // not yet in the asymptotic regime, or genuinely divergent
    }
    QuadResult tail =
        complex_em_tail(F, double(K), std::min(d, 30.0), tol / 2);
    candidate = acc.value() + tail.value;
    cand_err = tail.error;
    if (have_prev) {
      const double drift = std::abs(candidate - prev);
      if (drift <= 4.0 * std::max(tol, 1e-14 * (1.0 + std::abs(candidate))))
        return {candidate, std::max(cand_err, drift), false};
    }
    prev = candidate;
    have_prev = true;
  }

  if (last_d <= 1.05) {
    if (k.absolute)
      fail(Errc::non_convergent_tail,
           "family tail decays too slowly to certify");
    return {Complex{0, 0}, 0, true};
  }
  if (have_prev) {
    // accept the deepest candidate when the drift is merely slow
    const double drift = std::abs(candidate - prev);
    if (drift <= 200.0 * std::max(tol, 1e-14))
      return {candidate, std::max(cand_err, drift), false};
  }
  fail(Errc::non_convergent_tail, "family tail failed to stabilize");
}

}  // namespace

// ---------------------------------------------------------------------------
// measure_integral

IntegralValue measure_integral(const SpectralMeasure& m, const KernelSpec& k,
                               double tol) {
  if (k.singularity) {
    if (!k.exclude_singularity_atom && mass_at(m, *k.singularity) > 0)
      return IntegralValue::divergent();
    if (locally_divergent_at(m, *k.singularity, k.sing_order))
      return IntegralValue::divergent();
  }
  if (k.absolute && tail_divergent_abs(m, k.decay))
    return IntegralValue::divergent();

  const int parts =
      std::max<int>(1, int(m.families.size() + m.densities.size()));
  const double tol_part = tol / parts;

  ComplexSum total;
  double err = 0;

  for (const auto& a : m.atoms) {
    if (k.singularity && k.exclude_singularity_atom &&
        std::abs(a.t - *k.singularity) <= match_eps(*k.singularity))
      continue;
    total.add(a.w * k.f(a.t));
  }

  for (const auto& f : m.families) {
    FamilySum s = sum_family(f, k, tol_part);
    if (s.divergent) return IntegralValue::divergent();
    total.add(s.value);
    err += s.error;
  }

  for (const auto& p : m.densities) {
    double eff_lo = p.exp_lo, eff_hi = p.exp_hi;
    const double eff_inf = p.exp_inf - k.decay;
    if (k.singularity) {
      const double s = *k.singularity;
      if (finite_lo(p) && std::abs(s - p.lo) <= edge_eps(s))
        eff_lo -= k.sing_order;
      else if (finite_hi(p) && std::abs(s - p.hi) <= edge_eps(s))
        eff_hi -= k.sing_order;
    }
    auto integrand = [&p, &k](double t) -> Complex { return p.rho(t) * k.f(t); };
    QuadResult q =
        integrate_shaped(integrand, p.lo, p.hi, eff_lo, eff_hi, eff_inf,
                         tol_part);
    total.add(q.value);
    err += q.error;
  }

  const Complex v = total.value();
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    fail(Errc::numeric_failure, "measure integral produced a non-finite value");
  (void)err;
  return IntegralValue::finite(v);
}

// ---------------------------------------------------------------------------
// operations

double mass_at(const SpectralMeasure& m, Complex lambda) {
  if (std::abs(lambda.imag()) > match_eps(std::abs(lambda))) return 0.0;
  const double x = lambda.real();
  const double eps = match_eps(x);
  double mass = 0;

  for (const auto& a : m.atoms)
    if (std::abs(a.t - x) <= eps) mass += a.w;

  for (const auto& f : m.families) {
    const auto& r = f.range;
    long long consec_far = 0;
    const long long cap = 1LL << 20;
    auto probe = [&](long long idx) -> bool {
      // returns true when this direction can stop
      if (!r.contains(idx)) return false;
      const double t = f.position(idx);
      if (std::abs(t - x) <= eps) mass += f.weight(idx);
      if (f.accumulation) {
        const double a = *f.accumulation;
        const double gap = std::abs(x - a);
        if (gap > eps && std::abs(t - a) < gap / 2) return true;
      } else {
        if (std::abs(t) > std::abs(x) + 10.0) return true;
      }
      return false;
    };
    // scan outward from 0 in both directions
    for (int dir = 0; dir < 2; ++dir) {
      const long long step = dir == 0 ? 1 : -1;
      long long idx = dir == 0 ? std::max(r.lo, 0LL) : std::min(r.hi, 0LL) - 1;
      consec_far = 0;
      for (long long n = 0; n < cap; ++n, idx += step) {
        if (idx < r.lo || idx > r.hi) break;
        consec_far = probe(idx) ? consec_far + 1 : 0;
        if (consec_far >= 64) break;
      }
    }
  }
  return mass;
}

namespace {

bool moment_divergent(const SpectralMeasure& m, double lambda, double order) {
  return locally_divergent_at(m, lambda, order) ||
         tail_divergent_abs(m, order);
}

}  // namespace

IntegralValue chi_moment(const SpectralMeasure& m, Complex lambda, int j,
                         bool absolute) {
  if (j < 1) fail(Errc::invalid_spec, "moment order must be at least 1");
  const double tol = tolerances().quadrature;
  KernelSpec k;
  k.absolute = absolute;
  const bool real_pt = std::abs(lambda.imag()) <= match_eps(std::abs(lambda));
  if (real_pt) {
    k.singularity = lambda.real();
    const double x = lambda.real();
    if (absolute) {
      k.sing_order = 2.0 * j;
      k.decay = 2.0 * j;
      k.f = [x, j](double t) -> Complex {
        return std::pow(std::abs(t - x), -2.0 * j);
      };
    } else {
      k.sing_order = double(j);
      k.decay = double(j);
      k.f = [x, j](double t) -> Complex { return std::pow(t - x, -double(j)); };
    }
  } else {
    k.sing_order = 0;
    if (absolute) {
      k.decay = 2.0 * j;
      k.f = [lambda, j](double t) -> Complex {
        return std::pow(std::abs(Complex(t, 0) - lambda), -2.0 * j);
      };
    } else {
      k.decay = double(j);
      k.f = [lambda, j](double t) -> Complex {
        return std::pow(Complex(t, 0) - lambda, Complex(-double(j), 0));
      };
    }
  }
  return measure_integral(m, k, tol);
}

PointClass classify_point(const SpectralMeasure& m, Complex lambda) {
  if (std::abs(lambda.imag()) > match_eps(std::abs(lambda)))
    return PointClass::ar;
  if (mass_at(m, lambda) > 0) return PointClass::ap;
  if (moment_divergent(m, lambda.real(), 2.0)) return PointClass::a0;
  return PointClass::ar;
}

std::vector<Atom> atoms_in(const SpectralMeasure& m, Interval window) {
  std::vector<Atom> out;
  for (const auto& a : m.atoms)
    if (window.contains(a.t)) out.push_back(a);

  for (const auto& f : m.families) {
    const auto& r = f.range;
    const long long cap = 1LL << 20;
    const std::size_t collect_cap = 10000;
    for (int dir = 0; dir < 2; ++dir) {
      const long long step = dir == 0 ? 1 : -1;
      long long idx = dir == 0 ? std::max(r.lo, 0LL) : std::min(r.hi, 0LL) - 1;
      int consec_out = 0;
      for (long long n = 0; n < cap && out.size() < collect_cap;
           ++n, idx += step) {
        if (idx < r.lo || idx > r.hi) break;
        if (!r.excluded(idx)) {
          const double t = f.position(idx);
          if (window.contains(t)) {
            out.push_back({t, f.weight(idx)});
            consec_out = 0;
          } else {
            bool escaping;
            if (f.accumulation) {
              const double a = *f.accumulation;
              const double dist =
                  a < window.lo ? window.lo - a
                                : (a > window.hi ? a - window.hi : 0.0);
              escaping = !window.contains(a) &&
                         std::abs(t - a) < 0.5 * std::max(1e-300, dist);
            } else {
              escaping = std::abs(t) > std::max(std::abs(window.lo),
                                                std::abs(window.hi)) +
                                           10.0;
            }
            consec_out = escaping ? consec_out + 1 : 0;
            if (consec_out >= 64) break;
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Atom& a, const Atom& b) { return a.t < b.t; });
  return out;
}

std::optional<double> density_exponent_at(const SpectralMeasure& m,
                                          double lambda) {
  const double eps = edge_eps(lambda);
  for (const auto& p : m.densities) {
    if (finite_lo(p) && std::abs(lambda - p.lo) <= eps) return p.exp_lo;
    if (finite_hi(p) && std::abs(lambda - p.hi) <= eps) return p.exp_hi;
    if (lambda > p.lo && lambda < p.hi) return 0.0;
  }
  return std::nullopt;
}

bool support_unbounded_above(const SpectralMeasure& m) {
  for (const auto& p : m.densities)
    if (!finite_hi(p)) return true;
  for (const auto& f : m.families) {
    if (f.accumulation) continue;
    if (f.range.unbounded_above() && f.position(1LL << 12) > 0) return true;
    if (f.range.unbounded_below() && f.position(-(1LL << 12)) > 0) return true;
  }
  return false;
}

bool support_unbounded_below(const SpectralMeasure& m) {
  for (const auto& p : m.densities)
    if (!finite_lo(p)) return true;
  for (const auto& f : m.families) {
    if (f.accumulation) continue;
    if (f.range.unbounded_above() && f.position(1LL << 12) < 0) return true;
    if (f.range.unbounded_below() && f.position(-(1LL << 12)) < 0) return true;
  }
  return false;
}

bool on_support(const SpectralMeasure& m, double lambda) {
  if (mass_at(m, lambda) > 0) return true;
  if (density_exponent_at(m, lambda)) return true;
  for (const auto& f : m.families)
    if (f.accumulation &&
        std::abs(*f.accumulation - lambda) <= edge_eps(lambda))
      return true;
  return false;
}

QSpectrum q_spectrum(const SpectralMeasure& m, Interval window) {
  QSpectrum out;
  out.window = window;
  std::vector<Interval> ess;
  for (const auto& p : m.densities) ess.push_back({p.lo, p.hi});
  for (const auto& f : m.families) {
    if (f.accumulation) {
      out.accumulation_points.push_back(*f.accumulation);
      ess.push_back({*f.accumulation, *f.accumulation});
    }
  }
  std::sort(out.accumulation_points.begin(), out.accumulation_points.end());
  out.essential = IntervalUnion(std::move(ess));

  for (const auto& a : atoms_in(m, window)) out.atoms_in_window.push_back(a.t);

  for (const auto& a : m.atoms) {
    if (a.t < window.lo) out.atoms_below_window = true;
    if (a.t > window.hi) out.atoms_above_window = true;
  }
  for (const auto& f : m.families) {
    if (f.accumulation) continue;
    if (f.range.unbounded_above()) {
      const double t = f.position(1LL << 12);
      (t > 0 ? out.atoms_above_window : out.atoms_below_window) = true;
    }
    if (f.range.unbounded_below()) {
      const double t = f.position(-(1LL << 12));
      (t > 0 ? out.atoms_above_window : out.atoms_below_window) = true;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// validate

bool infinite_mass_certified(const SpectralMeasure& m) {
  for (const auto& p : m.densities) {
    if ((!finite_lo(p) || !finite_hi(p)) && p.exp_inf >= -1.0) return true;
    if (finite_lo(p) && p.exp_lo <= -1.0) return true;
    if (finite_hi(p) && p.exp_hi <= -1.0) return true;
  }
  for (const auto& f : m.families) {
    if (f.accumulation) {
      if (f.weight_exponent >= -1.0) return true;
      continue;
    }
    if ((f.range.unbounded_below() || f.range.unbounded_above()) &&
        f.weight_exponent >= -1.0)
      return true;
  }
  return false;
}

std::vector<std::string> validate(const SpectralMeasure& m) {
  std::vector<std::string> bad;
  auto flag = [&bad](std::string s) { bad.push_back(std::move(s)); };

  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    const auto& a = m.atoms[i];
    if (!(a.w > 0)) flag("atom weight must be positive");
    if (!std::isfinite(a.t)) flag("atom position must be finite");
    for (std::size_t j = i + 1; j < m.atoms.size(); ++j)
      if (std::abs(a.t - m.atoms[j].t) <= match_eps(a.t))
        flag("duplicate atom position");
  }

  for (const auto& f : m.families) {
    const auto& r = f.range;
    if (r.lo > r.hi) flag("family index range is empty");
    const bool unbounded = r.unbounded_below() || r.unbounded_above();

    std::vector<long long> sample;
    for (long long k : {r.lo, r.lo + 1, -2LL, -1LL, 0LL, 1LL, 2LL, 7LL, 63LL,
                        1024LL, r.hi - 1, r.hi})
      if (k >= r.lo && k <= r.hi && !r.excluded(k) && std::llabs(k) < (1LL << 20))
        sample.push_back(k);
    for (long long k : sample) {
      if (!(f.weight(k) > 0)) {
        flag("family weight must be positive");
        break;
      }
    }
    for (long long k : sample) {
      if (!std::isfinite(f.position(k))) {
        flag("family position must be finite");
        break;
      }
    }

    if (f.accumulation) {
      if (f.accumulation_exponent <= 0)
        flag("accumulating family needs a positive approach exponent");
      if (f.weight_exponent >= -1.0)
        flag("accumulating family carries infinite mass near a finite point");
      if (unbounded) {
        // approach sampled at large indices
        for (long long k : {1LL << 10, 1LL << 14}) {
          if (r.contains(k) &&
              std::abs(f.position(k) - *f.accumulation) > 1.0)
            flag("family does not approach its declared accumulation point");
          if (r.contains(-k) &&
              std::abs(f.position(-k) - *f.accumulation) > 1.0)
            flag("family does not approach its declared accumulation point");
        }
      }
    } else if (unbounded) {
      if (f.position_growth <= 0)
        flag("unbounded family needs positive position growth");
      if (f.weight_exponent - 2.0 * f.position_growth >= -1.0)
        flag("family mass is not integrable against (1+t^2)^{-1}");
    }
  }

  for (std::size_t i = 0; i < m.densities.size(); ++i) {
    const auto& p = m.densities[i];
    if (!(p.lo < p.hi)) flag("density piece needs lo < hi");
    if (!p.rho) flag("density piece has no density function");
    if (finite_lo(p) && p.exp_lo <= -1.0)
      flag("density endpoint exponent <= -1 is not locally integrable");
    if (finite_hi(p) && p.exp_hi <= -1.0)
      flag("density endpoint exponent <= -1 is not locally integrable");
    if ((!finite_lo(p) || !finite_hi(p)) && p.exp_inf >= 1.0)
      flag("density tail is not integrable against (1+t^2)^{-1}");
    if (p.rho && p.lo < p.hi) {
      const double a = finite_lo(p) ? p.lo : std::min(p.hi - 2.0, -1.0);
      const double b = finite_hi(p) ? p.hi : std::max(p.lo + 2.0, 1.0);
      for (int s = 1; s <= 7; ++s) {
        const double t = a + (b - a) * s / 8.0;
        const double v = p.rho(t);
        if (!(v >= 0) || !std::isfinite(v)) {
          flag("density must be nonnegative and finite on piece interiors");
          break;
        }
      }
    }
    for (std::size_t j = i + 1; j < m.densities.size(); ++j) {
      const auto& q = m.densities[j];
      if (std::min(p.hi, q.hi) - std::max(p.lo, q.lo) >
          edge_eps(std::max(std::abs(p.lo), std::abs(q.lo))))
        flag("density pieces overlap");
    }
  }

  const bool inf_mass = infinite_mass_certified(m);
  if (m.total_mass_infinite && !inf_mass)
    flag("declared infinite total mass but no component certifies it");
  if (!m.total_mass_infinite && inf_mass)
    flag("declared finite total mass but a component is certified infinite");
  if (!inf_mass)
    flag("total mass is finite; the boundary functional is not well posed");

  return bad;
}

// ---------------------------------------------------------------------------
// structural comparison

namespace {

bool rel_eq(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

bool measures_equal(const SpectralMeasure& a, const SpectralMeasure& b) {
  if (a.atoms.size() != b.atoms.size()) return false;
  if (a.families.size() != b.families.size()) return false;
  if (a.densities.size() != b.densities.size()) return false;

  auto sorted_atoms = [](const SpectralMeasure& m) {
    auto v = m.atoms;
    std::sort(v.begin(), v.end(),
              [](const Atom& x, const Atom& y) { return x.t < y.t; });
    return v;
  };
  const auto aa = sorted_atoms(a), bb = sorted_atoms(b);
  for (std::size_t i = 0; i < aa.size(); ++i) {
    if (!rel_eq(aa[i].t, bb[i].t, 1e-10)) return false;
    if (!rel_eq(aa[i].w, bb[i].w, 1e-10)) return false;
  }

  for (std::size_t i = 0; i < a.families.size(); ++i) {
    const auto& fa = a.families[i];
    const auto& fb = b.families[i];
    if (fa.range.lo != fb.range.lo || fa.range.hi != fb.range.hi) return false;
    if (fa.range.exclude != fb.range.exclude) return false;
    for (long long k : {-1003LL, -101LL, -7LL, -2LL, -1LL, 0LL, 1LL, 2LL, 7LL,
                        101LL, 1003LL}) {
      if (!fa.range.contains(k)) continue;
      if (!rel_eq(fa.position(k), fb.position(k), 1e-10)) return false;
      if (!rel_eq(fa.weight(k), fb.weight(k), 1e-10)) return false;
    }
  }

  auto sorted_pieces = [](const SpectralMeasure& m) {
    auto v = m.densities;
    std::sort(v.begin(), v.end(),
              [](const DensityPiece& x, const DensityPiece& y) {
                return x.lo < y.lo;
              });
    return v;
  };
  const auto pa = sorted_pieces(a), pb = sorted_pieces(b);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const auto& x = pa[i];
    const auto& y = pb[i];
    if (std::isfinite(x.lo) != std::isfinite(y.lo)) return false;
    if (std::isfinite(x.hi) != std::isfinite(y.hi)) return false;
    if (std::isfinite(x.lo) && !rel_eq(x.lo, y.lo, 1e-10)) return false;
    if (std::isfinite(x.hi) && !rel_eq(x.hi, y.hi, 1e-10)) return false;
    if (!x.label.empty() && x.label == y.label) continue;
    const double a0 = std::isfinite(x.lo) ? x.lo : std::min(x.hi - 2.0, -1.0);
    const double b0 = std::isfinite(x.hi) ? x.hi : std::max(x.lo + 2.0, 1.0);
    for (int s = 1; s <= 15; ++s) {
      const double t = a0 + (b0 - a0) * s / 16.0;
      if (!rel_eq(x.rho(t), y.rho(t), 1e-9)) return false;
    }
  }
  return true;
}

}  // namespace indefspec
