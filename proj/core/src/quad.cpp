#include "indefspec/numeric/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "indefspec/error.hpp"

namespace indefspec {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1,1].
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  Complex value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const ComplexFn& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  Complex fc = f(c);
  Complex kron = kWgk[7] * fc;
  Complex gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    Complex f1 = f(c - h * kXgk[i]);
    Complex f2 = f(c + h * kXgk[i]);
    kron += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
  }
  kron *= h;
  gauss *= h;
  double diff = std::abs(kron - gauss);
  // quadpack-style sharpened error estimate
  double err = diff;
  if (diff > 0) err = std::min(diff, 200.0 * diff * std::sqrt(diff));
  if (std::isnan(err)) err = kInf;
  return {a, b, kron, err};
}

}  // namespace

QuadResult gk_adaptive(const ComplexFn& f, double a, double b, double tol) {
  QuadResult out;
  if (a == b) return out;
  if (!(tol > 0)) tol = 1e-10;

  std::priority_queue<Segment> heap;
  Segment s0 = gk15(f, a, b);
  out.evals = 15;
  double total_err = s0.error;
  Complex total_val = s0.value;
  heap.push(s0);

  const int kMaxSegments = 4000;
  int n = 1;
  while (total_err > tol && n < kMaxSegments) {
    Segment worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted by rounding
      heap.push({worst.a, worst.b, worst.value, 0.0});
      continue;
    }
    Segment l = gk15(f, worst.a, mid);
    Segment r = gk15(f, mid, worst.b);
    out.evals += 30;
    total_val += l.value + r.value - worst.value;
    total_err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
    ++n;
  }

  // Re-accumulate from segments with compensated summation to curb cancellation.
  std::vector<Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  long double re = 0, im = 0, cre = 0, cim = 0, err = 0;
  for (const auto& s : segs) {
    long double yre = (long double)s.value.real() - cre;
    long double tre = re + yre;
    cre = (tre - re) - yre;
    re = tre;
    long double yim = (long double)s.value.imag() - cim;
    long double tim = im + yim;
    cim = (tim - im) - yim;
    im = tim;
    err += s.error;
  }
  out.value = Complex((double)re, (double)im);
  out.error = (double)err;
  return out;
}

namespace {

// Even stretching order making (t-a)^beta smooth after t = a + s^m.
int stretch_order(double beta) {
  double need = 4.0 / (beta + 1.0);
  int m = (int)std::ceil(need / 2.0) * 2;
  return std::max(2, std::min(m, 64));
}

// Integrate f over finite [a,b] where f ~ (t-a)^{exp_lo} at a and
// f ~ (b-t)^{exp_hi} at b.  Splits at the midpoint and stretches each half.
QuadResult finite_shaped(const ComplexFn& f, double a, double b,
                         double exp_lo, double exp_hi, double tol) {
  QuadResult out;
  if (!(a < b)) return out;
  const double mid = 0.5 * (a + b);
  const double half_tol = 0.5 * tol;

  auto one_side = [&](double from, double to, double beta, bool left) {
    // left: singular endpoint is `from`; otherwise `to`.
    if (beta == 0.0) {
      return left ? gk_adaptive(f, from, to, half_tol)
                  : gk_adaptive(f, from, to, half_tol);
    }
    if (!(beta > -1.0))
      fail(Errc::divergent_moment, "endpoint exponent <= -1 is not integrable");
    int m = stretch_order(beta);
    double len = std::abs(to - from);
    double smax = std::pow(len, 1.0 / m);
    if (left) {
      ComplexFn g = [&f, from, m](double s) {
        double sm = std::pow(s, m - 1);
        return f(from + sm * s) * (double(m) * sm);
      };
      return gk_adaptive(g, 0.0, smax, half_tol);
    }
    ComplexFn g = [&f, to, m](double s) {
      double sm = std::pow(s, m - 1);
      return f(to - sm * s) * (double(m) * sm);
    };
    return gk_adaptive(g, 0.0, smax, half_tol);
  };

  out += one_side(a, mid, exp_lo, true);
  out += one_side(mid, b, exp_hi, false);
  return out;
}

}  // namespace

QuadResult integrate_shaped(const ComplexFn& f, double lo, double hi,
                            double exp_lo, double exp_hi, double exp_inf,
                            double tol) {
  QuadResult out;
  if (lo >= hi) return out;
  const bool lo_inf = (lo == -kInf);
  const bool hi_inf = (hi == kInf);

  if (lo_inf || hi_inf) {
    if (!(exp_inf < -1.0))
      fail(Errc::divergent_moment, "decay exponent >= -1 at an infinite endpoint");
  }

  // Reduce to finite pieces plus mapped tails t = T - 1 + 1/u.
  auto upper_tail = [&](double T) {
    ComplexFn g = [&f, T](double u) {
      double t = T - 1.0 + 1.0 / u;
      return f(t) / (u * u);
    };
    // integrand ~ u^{-exp_inf - 2} at u -> 0+
    return finite_shaped(g, 0.0, 1.0, -exp_inf - 2.0, 0.0, tol / 3.0);
  };
  auto lower_tail = [&](double T) {
    ComplexFn g = [&f, T](double u) {
      double t = T + 1.0 - 1.0 / u;
      return f(t) / (u * u);
    };
    return finite_shaped(g, 0.0, 1.0, -exp_inf - 2.0, 0.0, tol / 3.0);
  };

  if (lo_inf && hi_inf) {
    out += lower_tail(-1.0);                                  // (-inf, -1]
    out += finite_shaped(f, -1.0, 1.0, 0.0, 0.0, tol / 3.0);  // [-1, 1]
    out += upper_tail(1.0);                                   // [1, inf)
    return out;
  }
  if (hi_inf) {
    double T = lo + std::max(1.0, std::abs(lo));
    out += finite_shaped(f, lo, T, exp_lo, 0.0, tol / 2.0);
    out += upper_tail(T);
    return out;
  }
  if (lo_inf) {
    double T = hi - std::max(1.0, std::abs(hi));
    out += lower_tail(T);
    out += finite_shaped(f, T, hi, 0.0, exp_hi, tol / 2.0);
    return out;
  }
  return finite_shaped(f, lo, hi, exp_lo, exp_hi, tol);
}

}  // namespace indefspec
