#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "indefspec/eigen.hpp"
#include "indefspec/interval.hpp"
#include "indefspec/numeric/expr.hpp"
#include "indefspec/types.hpp"
#include "indefspec/weyl.hpp"

namespace indefspec {

/// One spectral gap (mul, mur) with its Dirichlet-type point xi and sign.
/// Collapsed gaps (mul == mur == xi) are legal and contribute nothing to the
/// interpolation sum.
struct ZoneGap {
  double mul = 0;
  double mur = 0;
  double xi = 0;
  int eps = 1;

  bool collapsed() const { return mur <= mul; }
};

/// Closed-form continuation of the gap sequence past the explicit list, in
/// the index variable j: mul(j) gives the left edge, width(j) >= 0 the gap
/// length.  Tail gaps carry xi at the left edge, so they only enter the
/// products.
struct ZoneTail {
  Expr mul;
  Expr width;

  bool present() const { return mul.valid(); }
};

/// Band-edge data: bottom of the spectrum mu0r, gaps in increasing order,
/// optional tail formulas, and the truncation level (0 selects adaptively).
struct ZoneSpec {
  double mu0r = 0;
  std::vector<ZoneGap> gaps;
  ZoneTail tail;
  int truncation = 0;
};

/// Values of the four zone functions at one point, with a bound on the
/// relative truncation error of the level-N products.
struct ZoneValues {
  Complex g;
  Complex f;
  Complex k;
  Complex h;
  double truncation_bound = 0;
};

/// The four zone functions as callables, decoupled from ZoneSpec so closed
/// forms can be tested against the same spectral machinery.  h must stay
/// finite where g vanishes; the ZoneSpec-backed builder guarantees that by a
/// mean-value evaluation near the xi points.
struct ZoneFunctionSet {
  std::function<Complex(Complex)> g;
  std::function<Complex(Complex)> f;
  std::function<Complex(Complex)> k;
  std::function<Complex(Complex)> h;
  std::function<Complex(Complex)> h_deriv;  // optional; numeric fallback
  std::vector<ZoneGap> gaps;                // resolved gap list, may be empty
  double mu0r = 0;
};

std::vector<std::string> validate(const ZoneSpec& z);

/// Gap j (1-based), from the explicit list or the tail formulas.
ZoneGap gap_at(const ZoneSpec& z, int j);

/// Number of gaps carrying data: the explicit list, or INT_MAX with a tail.
int gap_count(const ZoneSpec& z);

/// Relative truncation error bound for the level-N products at |lambda| =
/// scale, summed from the tail formulas.  Zero for finite specs.  Throws
/// SummabilityUncertified when a tail is present but its sums cannot be
/// certified convergent.
double truncation_tail_bound(const ZoneSpec& z, int n, double scale);

/// Truncation level: the explicit value if set, otherwise doubled until the
/// tail bound at `scale` drops below 1e-10 (capped at 2^16).
int resolve_level(const ZoneSpec& z, double scale);

ZoneValues build_zone_functions(const ZoneSpec& z, Complex lambda, int n);

ZoneFunctionSet make_zone_function_set(const ZoneSpec& z, int n);

/// max over samples of |h g - k^2 - f| / max(1, |f|).
double identity_residual(const ZoneSpec& z, const std::vector<Complex>& samples,
                         int n);

/// Half-line Titchmarsh-Weyl coefficient m_{side}; branch of sqrt(f) chosen
/// so that both halves are Herglotz, cross-checked through the h-quotient
/// form.
Complex m_coefficient(const ZoneSpec& z, Complex lambda, Side side);
Complex m_from_set(const ZoneFunctionSet& s, Complex lambda, Side side,
                   bool joint_branch = true);

/// Weyl coefficient of the sign-indefinite operator: side-reflected m.
Complex indefinite_weyl(const ZoneSpec& z, Complex lambda, Side side);

/// Spectral density on the bands, sqrt(f)/(pi h) evaluated side-reflected;
/// zero at band edges, OutsideBand beyond them.
double band_density(const ZoneSpec& z, double t, Side side);
double band_density_set(const ZoneFunctionSet& s, double t, Side side);

/// Real eigenvalues of the definite half-line problem on the given side:
/// sign-reflected zeros of h in the spectral gaps at which the Weyl
/// coefficient genuinely has a pole.
std::vector<double> a0_discrete(const ZoneSpec& z, Side side,
                                Interval window = Interval{-64.0, 64.0});
std::vector<double> a0_discrete_set(const ZoneFunctionSet& s, Side side,
                                    Interval window = Interval{-64.0, 64.0});

/// Bands of the definite half-line operator at level n, ordered.
std::vector<Interval> spectral_bands(const ZoneSpec& z, int n);

/// Measure + constant whose Herglotz transform reproduces the side's Weyl
/// coefficient: band densities plus pole residues inside the window.
WeylCoefficient reconstruct_weyl(const ZoneSpec& z, Side side,
                                 Interval window = Interval{-64.0, 64.0});

/// Full spectral picture of the indefinite operator: reflected essential
/// bands, and the discrete set located through the zone functions directly.
SpectrumReport indefinite_spectrum(const ZoneSpec& z, SpectrumRegion box,
                                   int k_max = 32);

}  // namespace indefspec
