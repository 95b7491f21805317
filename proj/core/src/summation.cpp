#include "indefspec/numeric/summation.hpp"

#include <cmath>

namespace indefspec {

namespace {
PrecisionMode g_mode = PrecisionMode::standard;
Tolerances g_tol;
}  // namespace

PrecisionMode precision_mode() { return g_mode; }
void set_precision_mode(PrecisionMode m) { g_mode = m; }
Tolerances& tolerances() { return g_tol; }

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::on_support: return "OnSupport";
    case Errc::not_in_domain: return "NotInDomain";
    case Errc::not_well_posed: return "NotWellPosed";
    case Errc::hypotheses_fail: return "HypothesesFail";
    case Errc::divergent_moment: return "DivergentMoment";
    case Errc::non_convergent_tail: return "NonConvergentTail";
    case Errc::summability_uncertified: return "SummabilityUncertified";
    case Errc::at_xi: return "AtXi";
    case Errc::branch_ambiguity: return "BranchAmbiguity";
    case Errc::outside_band: return "OutsideBand";
    case Errc::disk_too_large: return "DiskTooLarge";
    case Errc::no_limit: return "NoLimit";
    case Errc::degenerate: return "Degenerate";
    case Errc::region_touches_essential: return "RegionTouchesEssential";
    case Errc::inner_divergent: return "InnerDivergent";
    case Errc::numeric_failure: return "NumericFailure";
  }
  return "UnknownError";
}

QuadResult em_tail(const std::function<Complex(double)>& g, double K, double d,
                   double tol) {
  QuadResult out;
  QuadResult integral = integrate_shaped(g, K, kInf, 0.0, 0.0, -d, tol / 2.0);

  // derivative corrections at K with a spacing resolving the decay scale
  double h = std::max(1.0, K / 64.0);
  Complex gm2 = g(K - 2 * h), gm1 = g(K - h), g0 = g(K), gp1 = g(K + h), gp2 = g(K + 2 * h);
  Complex d1 = (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * h);
  Complex d3 = (-gm2 + 2.0 * gm1 - 2.0 * gp1 + gp2) / (2.0 * h * h * h);

  out.value = integral.value + 0.5 * g0 - d1 / 12.0 + d3 / 720.0;
  // first omitted Euler-Maclaurin term is ~ g^(5)(K)/30240; estimate the
  // fifth derivative through the decay model g ~ c k^{-d}
  double g5_est = std::abs(g0) * std::abs(d * (d + 1) * (d + 2) * (d + 3) * (d + 4)) /
                  std::pow(K, 5.0);
  out.error = integral.error + g5_est / 30240.0 + std::abs(d3) * 1e-10;
  out.evals = integral.evals + 5;
  return out;
}

}  // namespace indefspec
