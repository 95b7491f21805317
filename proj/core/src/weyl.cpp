#include "indefspec/weyl.hpp"

#include <algorithm>
#include <cmath>

#include "indefspec/error.hpp"
#include "indefspec/numeric/richardson.hpp"

namespace indefspec {

namespace {

bool is_real_point(Complex lambda) {
  return std::abs(lambda.imag()) <= 4e-12 * std::max(1.0, std::abs(lambda));
}

// Local integrability of |t-lambda|^{-order} near a real evaluation point;
// OnSupport when it fails or an atom sits exactly there.
void require_off_support(const SpectralMeasure& m, double lambda,
                         double order) {
  if (mass_at(m, lambda) > 0)
    fail(Errc::on_support, "evaluation point carries an atom");
  if (locally_divergent_at(m, lambda, order))
    fail(Errc::on_support,
         "evaluation point lies on the support with positive local density");
}

KernelSpec herglotz_kernel(Complex lambda) {
  KernelSpec k;
  k.f = [lambda](double t) -> Complex {
    return (1.0 + t * lambda) / ((t - lambda) * (1.0 + t * t));
  };
  k.decay = 2;
  if (is_real_point(lambda)) {
    k.singularity = lambda.real();
    k.sing_order = 1;
  }
  return k;
}

}  // namespace

Complex eval_M(const WeylCoefficient& w, Complex lambda) {
  if (is_real_point(lambda))
    require_off_support(w.measure, lambda.real(), 1.0);
  IntegralValue v =
      measure_integral(w.measure, herglotz_kernel(lambda),
                       tolerances().quadrature);
  return w.C + v.value();
}

Complex eval_M_deriv(const WeylCoefficient& w, Complex lambda, int n) {
  if (n < 0) fail(Errc::invalid_spec, "derivative order must be nonnegative");
  if (n == 0) return eval_M(w, lambda);
  if (is_real_point(lambda))
    require_off_support(w.measure, lambda.real(), double(n + 1));
  KernelSpec k;
  const double order = double(n + 1);
  k.f = [lambda, order](double t) -> Complex {
    return std::pow(Complex(t, 0) - lambda, -order);
  };
  k.decay = order;
  if (is_real_point(lambda)) {
    k.singularity = lambda.real();
    k.sing_order = order;
  }
  IntegralValue v =
      measure_integral(w.measure, k, tolerances().quadrature);
  double factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  return factorial * v.value();
}

namespace {

// Regularized first boundary functional at real lambda:
//   C + integral over t != lambda of ( 1/(t-lambda) - t/(1+t^2) ) dSigma
// The full Herglotz kernel already excludes the atom at lambda through the
// kernel spec; the -t/(1+t^2) half must still see that atom, hence the
// explicit correction term.
Complex gamma1_first_moment(const WeylCoefficient& w, double lambda) {
  KernelSpec k = herglotz_kernel(Complex(lambda, 0));
  k.exclude_singularity_atom = true;
  IntegralValue v = measure_integral(w.measure, k, tolerances().quadrature);
  const double mass = mass_at(w.measure, Complex(lambda, 0));
  return w.C + v.value() - mass * lambda / (1.0 + lambda * lambda);
}

}  // namespace

IntegralValue eval_phi_boundary(const PhiFunction& phi, double lambda, int n) {
  if (n < 0) fail(Errc::invalid_spec, "derivative order must be nonnegative");
  const double mp = mass_at(phi.plus.measure, Complex(lambda, 0));
  const double mm = mass_at(phi.minus.measure, Complex(lambda, 0));
  if (!nearly_equal(mp, mm))
    fail(Errc::hypotheses_fail, "atom masses at lambda differ");

  const IntegralValue ap =
      chi_moment(phi.plus.measure, Complex(lambda, 0), n + 1, true);
  const IntegralValue am =
      chi_moment(phi.minus.measure, Complex(lambda, 0), n + 1, true);
  if (ap.is_divergent() || am.is_divergent())
    return IntegralValue::divergent();

  Complex diff;
  if (n == 0) {
    diff = gamma1_first_moment(phi.plus, lambda) -
           gamma1_first_moment(phi.minus, lambda);
  } else {
    const Complex gp =
        chi_moment(phi.plus.measure, Complex(lambda, 0), n + 1, false).value();
    const Complex gm =
        chi_moment(phi.minus.measure, Complex(lambda, 0), n + 1, false)
            .value();
    double factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    diff = factorial * (gp - gm);
  }
  return IntegralValue::finite(diff);
}

Complex phi_value(const PhiFunction& phi, Complex lambda) {
  return eval_M(phi.plus, lambda) - eval_M(phi.minus, lambda);
}

Complex phi_deriv(const PhiFunction& phi, Complex lambda, int n) {
  return eval_M_deriv(phi.plus, lambda, n) -
         eval_M_deriv(phi.minus, lambda, n);
}

double r_function_residual(const WeylCoefficient& w,
                           const std::vector<Complex>& samples) {
  double worst = 0;
  for (Complex z : samples) {
    if (is_real_point(z)) continue;
    const Complex mz = eval_M(w, z);
    worst = std::max(worst, -(mz.imag() * z.imag()));
    const Complex mc = eval_M(w, std::conj(z));
    worst = std::max(worst, std::abs(mc - std::conj(mz)));
  }
  return std::max(worst, 0.0);
}

double stieltjes_invert(const std::function<Complex(Complex)>& f, double t,
                        std::vector<double> eps_schedule) {
  if (eps_schedule.empty())
    eps_schedule = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  std::sort(eps_schedule.begin(), eps_schedule.end(), std::greater<>());
  std::vector<Complex> vals;
  vals.reserve(eps_schedule.size());
  for (double eps : eps_schedule)
    vals.push_back(Complex(f(Complex(t, eps)).imag() / kPi, 0.0));
  double stability = 0;
  const double lim = richardson_limit(eps_schedule, vals, &stability).real();
  if (!std::isfinite(lim) ||
      stability > 1e-6 * std::max(1.0, std::abs(lim)))
    fail(Errc::no_limit, "boundary values did not stabilize");
  return lim;
}

}  // namespace indefspec
