#include "indefspec/numeric/rootfind.hpp"

#include <algorithm>
#include <cmath>

#include "indefspec/error.hpp"

namespace indefspec {

double bisect(const RealFn& f, double a, double b, double xtol) {
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (fa * fb > 0) fail(Errc::numeric_failure, "bisect: endpoints do not bracket");
  while (b - a > xtol * std::max(1.0, std::abs(a) + std::abs(b))) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    double fm = f(m);
    if (fm == 0) return m;
    if (fa * fm < 0) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

namespace {

void collect_roots(const RealFn& f, double a, double b, int depth,
                   const RealRootOptions& opt, std::vector<double>& out) {
  double width = b - a;
  double h = width * 1e-4;
  auto deriv = [&](double x) { return (f(x + h) - f(x - h)) / (2 * h); };
  double da = deriv(a + h), dm = deriv(0.5 * (a + b)), db = deriv(b - h);
  bool monotone = (da >= 0 && dm >= 0 && db >= 0) || (da <= 0 && dm <= 0 && db <= 0);

  if (monotone || width < opt.min_cell || depth >= opt.max_depth) {
    double fa = f(a), fb = f(b);
    if (fa == 0) {
      out.push_back(a);
    } else if (fb == 0) {
      out.push_back(b);
    } else if (fa * fb < 0) {
      out.push_back(bisect(f, a, b, opt.xtol));
    } else if (!monotone && width < opt.min_cell &&
               std::min(std::abs(fa), std::abs(fb)) < opt.zero_abs) {
      out.push_back(std::abs(fa) < std::abs(fb) ? a : b);  // tangential zero
    }
    return;
  }
  double m = 0.5 * (a + b);
  collect_roots(f, a, m, depth + 1, opt, out);
  collect_roots(f, m, b, depth + 1, opt, out);
}

}  // namespace

std::vector<double> real_roots(const RealFn& f, double a, double b,
                               const RealRootOptions& opt) {
  std::vector<double> out;
  if (!(a < b)) return out;
  collect_roots(f, a, b, 0, opt, out);
  std::sort(out.begin(), out.end());
  // merge duplicates found at shared cell boundaries
  std::vector<double> dedup;
  for (double r : out) {
    if (dedup.empty() ||
        std::abs(r - dedup.back()) > 10 * opt.xtol * std::max(1.0, std::abs(r)))
      dedup.push_back(r);
  }
  return dedup;
}

namespace {

// Polyline of boundary samples; refined until consecutive phase steps < pi/2.
int winding_along(const HoloFn& f, const std::vector<Complex>& corners) {
  struct Pt {
    Complex z;
    Complex fz;
  };
  double total = 0;
  for (size_t e = 0; e < corners.size(); ++e) {
    Complex z0 = corners[e];
    Complex z1 = corners[(e + 1) % corners.size()];
    std::vector<Pt> seg{{z0, f(z0)}, {z1, f(z1)}};
    // refine this edge
    bool changed = true;
    int guard = 0;
    while (changed && ++guard < 24) {
      changed = false;
      std::vector<Pt> next;
      next.reserve(seg.size() * 2);
      for (size_t i = 0; i + 1 < seg.size(); ++i) {
        next.push_back(seg[i]);
        Complex a = seg[i].fz, b = seg[i + 1].fz;
        if (std::abs(a) == 0 || std::abs(b) == 0)
          fail(Errc::numeric_failure, "winding: zero on contour");
        double dphi = std::abs(std::arg(b / a));
        double dip = std::min(std::abs(a), std::abs(b));
        if (dphi > M_PI / 2 || std::abs(b - a) > 4 * dip) {
          Complex mid = 0.5 * (seg[i].z + seg[i + 1].z);
          next.push_back({mid, f(mid)});
          changed = true;
        }
      }
      next.push_back(seg.back());
      if (next.size() > 20000)
        fail(Errc::numeric_failure, "winding: contour refinement exploded");
      seg = std::move(next);
    }
    for (size_t i = 0; i + 1 < seg.size(); ++i)
      total += std::arg(seg[i + 1].fz / seg[i].fz);
  }
  return (int)std::lround(total / (2 * M_PI));
}

}  // namespace

int winding_number(const HoloFn& f, Complex lo, Complex hi) {
  std::vector<Complex> corners{
      {lo.real(), lo.imag()}, {hi.real(), lo.imag()},
      {hi.real(), hi.imag()}, {lo.real(), hi.imag()}};
  return winding_along(f, corners);
}

namespace {

Complex newton_polish(const HoloFn& f, const HoloFn& fprime, Complex z0,
                      double scale, double tol, bool* ok) {
  Complex z = z0;
  *ok = false;
  for (int it = 0; it < 80; ++it) {
    Complex fz = f(z);
    Complex dz;
    if (fprime) {
      dz = fprime(z);
    } else {
      double h = 1e-6 * std::max(1.0, std::abs(z));
      dz = (f(z + Complex(h, 0)) - f(z - Complex(h, 0))) / (2 * h);
    }
    if (std::abs(dz) == 0) break;
    Complex step = fz / dz;
    z -= step;
    if (std::abs(step) < tol * std::max(1.0, scale)) {
      *ok = true;
      return z;
    }
  }
  return z;
}

int circle_multiplicity(const HoloFn& f, Complex z, double r) {
  std::vector<Complex> corners;
  const int n = 24;
  double total = 0;
  Complex prev = f(z + Complex(r, 0));
  for (int j = 1; j <= n; ++j) {
    double th = 2 * M_PI * j / n;
    Complex cur = f(z + Complex(r * std::cos(th), r * std::sin(th)));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return (int)std::lround(total / (2 * M_PI));
}

void root_subdivide(const HoloFn& f, const HoloFn& fprime, Complex lo,
                    Complex hi, int depth, const ComplexRootOptions& opt,
                    std::vector<ComplexRoot>& out) {
  int w;
  try {
    w = winding_number(f, lo, hi);
  } catch (const Error&) {
    // boundary too close to a zero: nudge the box outward slightly
    double jx = 1e-3 * (hi.real() - lo.real());
    double jy = 1e-3 * (hi.imag() - lo.imag());
    w = winding_number(f, lo - Complex(jx, jy), hi + Complex(jx, jy));
  }
  if (w == 0) return;

  Complex center = 0.5 * (lo + hi);
  double diam = std::abs(hi - lo);
  double scale = std::max(1.0, std::abs(center));

  if (w >= 1 && (diam < 0.1 * scale || depth >= opt.max_depth / 2)) {
    bool ok = false;
    Complex z = newton_polish(f, fprime, center, scale, opt.newton_tol, &ok);
    bool inside = z.real() > lo.real() && z.real() < hi.real() &&
                  z.imag() > lo.imag() && z.imag() < hi.imag();
    if (ok && inside) {
      double r = std::max(1e-9 * scale, 1e-4 * diam);
      int mult = circle_multiplicity(f, z, r);
      if (mult == w) {
        out.push_back({z, mult});
        return;
      }
      if (mult >= 1 && diam < opt.min_box * 100) {
        // cluster unresolved below box floor: report aggregate at center
        out.push_back({z, w});
        return;
      }
    }
  }
  if (depth >= opt.max_depth || diam < opt.min_box) {
    out.push_back({center, w});
    return;
  }
  double mx = 0.5 * (lo.real() + hi.real());
  double my = 0.5 * (lo.imag() + hi.imag());
  root_subdivide(f, fprime, lo, {mx, my}, depth + 1, opt, out);
  root_subdivide(f, fprime, {mx, lo.imag()}, {hi.real(), my}, depth + 1, opt, out);
  root_subdivide(f, fprime, {lo.real(), my}, {mx, hi.imag()}, depth + 1, opt, out);
  root_subdivide(f, fprime, {mx, my}, hi, depth + 1, opt, out);
}

}  // namespace

std::vector<ComplexRoot> complex_roots(const HoloFn& f, const HoloFn& fprime,
                                       Complex lo, Complex hi,
                                       const ComplexRootOptions& opt) {
  std::vector<ComplexRoot> out;
  root_subdivide(f, fprime, lo, hi, 0, opt, out);
  // dedupe roots that landed on shared subdivision boundaries
  std::vector<ComplexRoot> dedup;
  for (const auto& r : out) {
    bool merged = false;
    for (auto& d : dedup) {
      if (std::abs(r.z - d.z) < 1e-7 * std::max(1.0, std::abs(d.z))) {
        merged = true;
        break;
      }
    }
    if (!merged) dedup.push_back(r);
  }
  std::sort(dedup.begin(), dedup.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return dedup;
}

}  // namespace indefspec
