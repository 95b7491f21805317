#include "indefspec/modelop.hpp"

#include <algorithm>
#include <cmath>

#include "indefspec/error.hpp"

namespace indefspec {

namespace {

bool base_is_real(const ChainHalf& v) {
  return std::abs(v.base.imag()) <= 4e-12 * std::max(1.0, std::abs(v.base));
}

void require_same_base(Complex a, Complex b) {
  if (std::abs(a - b) > 4e-12 * std::max(1.0, std::abs(a)))
    fail(Errc::invalid_spec, "chain halves must share one base point");
}

}  // namespace

ChainHalf ChainHalf::make_pole(Complex base_pt, int order, Complex coef) {
  if (order < 1) fail(Errc::invalid_spec, "pole order must be at least 1");
  ChainHalf h = zero(base_pt);
  h.poles.assign(order, Complex{0, 0});
  h.poles[order - 1] = coef;
  return h;
}

int ChainHalf::top_order() const {
  for (int j = int(poles.size()); j >= 1; --j)
    if (poles[j - 1] != Complex{0, 0}) return j;
  return 0;
}

int ChainHalf::bottom_order() const {
  for (int j = 1; j <= int(poles.size()); ++j)
    if (poles[j - 1] != Complex{0, 0}) return j;
  return 0;
}

bool ChainHalf::coefficients_zero() const {
  if (indicator != Complex{0, 0} || constant != Complex{0, 0}) return false;
  return top_order() == 0;
}

void ChainHalf::set_pole_coef(int order, Complex c) {
  if (order < 1) fail(Errc::invalid_spec, "pole order must be at least 1");
  if (int(poles.size()) < order) poles.resize(order, Complex{0, 0});
  poles[order - 1] = c;
}

Complex ChainHalf::eval_off_base(double t) const {
  Complex acc = constant;
  const Complex d = Complex(t, 0) - base;
  Complex p{1, 0};
  for (const Complex& c : poles) {
    p /= d;
    acc += c * p;
  }
  return acc;
}

ChainHalf& ChainHalf::add_scaled(const ChainHalf& other, Complex scale) {
  require_same_base(base, other.base);
  indicator += scale * other.indicator;
  constant += scale * other.constant;
  if (poles.size() < other.poles.size())
    poles.resize(other.poles.size(), Complex{0, 0});
  for (std::size_t i = 0; i < other.poles.size(); ++i)
    poles[i] += scale * other.poles[i];
  return *this;
}

// ---------------------------------------------------------------------------

bool in_half_domain(const SpectralMeasure& m, const ChainHalf& v) {
  if (v.constant != Complex{0, 0}) return false;
  for (int j = 1; j <= int(v.poles.size()); ++j) {
    if (v.poles[j - 1] == Complex{0, 0}) continue;
    if (chi_moment(m, v.base, j, true).is_divergent()) return false;
  }
  return true;
}

Complex gamma0(const SpectralMeasure& m, const ChainHalf& v) {
  if (!infinite_mass_certified(m))
    fail(Errc::not_well_posed,
         "finite total mass leaves the boundary value non-unique");
  if (!in_half_domain(m, v))
    fail(Errc::not_in_domain, "vector is not square-integrable");
  return v.pole_coef(1);
}

Complex gamma1(const SpectralMeasure& m, double C, const ChainHalf& v) {
  if (!in_half_domain(m, v))
    fail(Errc::not_in_domain, "vector is not square-integrable");

  const double tol = tolerances().quadrature;
  Complex out{0, 0};

  if (v.indicator != Complex{0, 0})
    out += v.indicator * mass_at(m, v.base);

  const Complex c1 = v.pole_coef(1);
  if (c1 != Complex{0, 0}) {
    KernelSpec k;
    const Complex lambda = v.base;
    k.f = [lambda](double t) -> Complex {
      return (1.0 + t * lambda) / ((t - lambda) * (1.0 + t * t));
    };
    k.decay = 2;
    if (base_is_real(v)) {
      k.singularity = lambda.real();
      k.sing_order = 1;
    }
    IntegralValue iv = measure_integral(m, k, tol);
    if (iv.is_divergent())
      fail(Errc::divergent_moment, "first-order boundary integral diverges");
    Complex part = C + iv.value();
    const double mass = mass_at(m, v.base);
    if (mass > 0) part -= mass * lambda / (1.0 + lambda * lambda);
    out += c1 * part;
  }

  for (int j = 2; j <= int(v.poles.size()); ++j) {
    const Complex cj = v.poles[j - 1];
    if (cj == Complex{0, 0}) continue;
    IntegralValue iv = chi_moment(m, v.base, j, false);
    if (iv.is_divergent())
      fail(Errc::divergent_moment, "pole moment diverges");
    out += cj * iv.value();
  }
  return out;
}

ChainHalf apply_tstar(const SpectralMeasure& m, const ChainHalf& v) {
  if (!in_half_domain(m, v))
    fail(Errc::not_in_domain, "vector is not square-integrable");
  const Complex c = gamma0(m, v);
  ChainHalf out = ChainHalf::zero(v.base);
  out.indicator = v.indicator * v.base - c;
  const int top = v.top_order();
  if (top > 0) {
    out.poles.assign(top, Complex{0, 0});
    for (int j = 1; j <= top; ++j)
      out.poles[j - 1] = v.base * v.pole_coef(j) + v.pole_coef(j + 1);
  }
  return out;
}

DomainCheck in_model_domain(const ModelOperator& op, const ChainVector& v) {
  require_same_base(v.plus.base, v.minus.base);
  const Complex g0p = gamma0(op.plus.measure, v.plus);
  const Complex g0m = gamma0(op.minus.measure, v.minus);
  const Complex g1p = gamma1(op.plus.measure, op.plus.C, v.plus);
  const Complex g1m = gamma1(op.minus.measure, op.minus.C, v.minus);
  DomainCheck out;
  out.g0_residual = std::abs(g0p - g0m);
  out.g1_residual = std::abs(g1p - g1m);
  const double tol = tolerances().boundary_residual;
  out.ok = out.g0_residual <= tol && out.g1_residual <= tol;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double pole_norm_sq(const SpectralMeasure& m, const ChainHalf& v) {
  const int top = v.top_order();
  if (top == 0) return 0;
  KernelSpec k;
  ChainHalf pole_part = v;
  pole_part.indicator = 0;
  pole_part.constant = 0;
  k.f = [pole_part](double t) -> Complex {
    const Complex z = pole_part.eval_off_base(t);
    return std::norm(z);
  };
  k.absolute = true;
  k.sing_order = 2.0 * top;
  k.decay = 2.0 * v.bottom_order();
  if (std::abs(v.base.imag()) <= 4e-12 * std::max(1.0, std::abs(v.base)))
    k.singularity = v.base.real();
  IntegralValue iv = measure_integral(m, k, tolerances().quadrature);
  if (iv.is_divergent())
    fail(Errc::not_in_domain, "vector is not square-integrable");
  return iv.value().real();
}

}  // namespace

double half_norm(const SpectralMeasure& m, const ChainHalf& v) {
  if (v.constant != Complex{0, 0})
    fail(Errc::not_in_domain, "constant part is not square-integrable");
  double sq = pole_norm_sq(m, v);
  sq += std::norm(v.indicator) * mass_at(m, v.base);
  return std::sqrt(std::max(0.0, sq));
}

Complex half_inner(const SpectralMeasure& m, const ChainHalf& f,
                   const ChainHalf& g) {
  require_same_base(f.base, g.base);
  if (f.constant != Complex{0, 0} || g.constant != Complex{0, 0})
    fail(Errc::not_in_domain, "constant part is not square-integrable");

  Complex out = f.indicator * std::conj(g.indicator) * mass_at(m, f.base);
  const int tf = f.top_order();
  const int tg = g.top_order();
  if (tf == 0 || tg == 0) return out;

  ChainHalf fp = f, gp = g;
  fp.indicator = gp.indicator = 0;
  KernelSpec k;
  k.f = [fp, gp](double t) -> Complex {
    return fp.eval_off_base(t) * std::conj(gp.eval_off_base(t));
  };
  k.sing_order = double(tf + tg);
  k.decay = double(f.bottom_order() + g.bottom_order());
  if (std::abs(f.base.imag()) <= 4e-12 * std::max(1.0, std::abs(f.base)))
    k.singularity = f.base.real();
  IntegralValue iv = measure_integral(m, k, tolerances().quadrature);
  if (iv.is_divergent())
    fail(Errc::not_in_domain, "inner product integral diverges");
  return out + iv.value();
}

std::vector<double> jordan_residual(const ModelOperator& op, Complex lambda,
                                    const std::vector<ChainVector>& chain) {
  std::vector<double> out;
  out.reserve(chain.size());
  for (std::size_t n = 0; n < chain.size(); ++n) {
    const ChainVector& v = chain[n];
    require_same_base(v.plus.base, v.minus.base);

    double alg_sq = 0;
    for (int s = 0; s < 2; ++s) {
      const SpectralMeasure& m = s == 0 ? op.plus.measure : op.minus.measure;
      const ChainHalf& h = s == 0 ? v.plus : v.minus;
      ChainHalf w = apply_tstar(m, h);
      w.add_scaled(h, -lambda);
      if (n > 0)
        w.add_scaled(s == 0 ? chain[n - 1].plus : chain[n - 1].minus, -1.0);
      if (!w.coefficients_zero()) {
        const double nn = half_norm(m, w);
        alg_sq += nn * nn;
      }
    }

    const DomainCheck dc = in_model_domain(op, v);
    out.push_back(std::max({std::sqrt(alg_sq), dc.g0_residual,
                            dc.g1_residual}));
  }
  return out;
}

}  // namespace indefspec
