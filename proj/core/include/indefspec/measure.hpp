#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "indefspec/interval.hpp"
#include "indefspec/numeric/expr.hpp"
#include "indefspec/numeric/quad.hpp"
#include "indefspec/types.hpp"

namespace indefspec {

/// Explicit point mass.
struct Atom {
  double t = 0;
  double w = 0;
};

inline constexpr long long kIdxMin = -(1LL << 62);
inline constexpr long long kIdxMax = (1LL << 62);

/// Contiguous integer index range with finitely many exclusions.
struct IndexRange {
  long long lo = kIdxMin;
  long long hi = kIdxMax;
  std::vector<long long> exclude;

  bool unbounded_below() const { return lo <= kIdxMin; }
  bool unbounded_above() const { return hi >= kIdxMax; }
  bool excluded(long long k) const;
  bool contains(long long k) const {
    return k >= lo && k <= hi && !excluded(k);
  }
};

/// Rule-generated atom family: positions p(k) and weights w(k) in closed form
/// over an integer index, with declared tail behavior so truncation errors
/// are bounded analytically.
///
///  - weight_exponent:  w(k) is of order |k|^gamma for large |k|
///  - position_growth:  |p(k)| is of order |k|^rho (rho > 0) when the family
///    marches to infinity
///  - accumulation:     if set, p(k) -> a with |p(k) - a| of order
///    |k|^{-accumulation_exponent} instead
struct AtomFamily {
  Expr positions;
  Expr weights;
  IndexRange range;
  double weight_exponent = 0;
  double position_growth = 1.0;
  std::optional<double> accumulation;
  double accumulation_exponent = 1.0;

  double position(long long k) const { return positions(double(k)); }
  double weight(long long k) const { return weights(double(k)); }
};

/// Absolutely continuous piece: nonnegative density with declared local power
/// exponents at finite endpoints (rho ~ c (t-lo)^{exp_lo}, c (hi-t)^{exp_hi})
/// and decay exponent toward infinite endpoints (rho ~ c |t|^{exp_inf}).
struct DensityPiece {
  double lo = 0;
  double hi = 0;
  std::function<double(double)> rho;
  double exp_lo = 0;
  double exp_hi = 0;
  double exp_inf = -2;
  std::string label;  // structural identity for degenerate-pair comparison
};

/// Measure on the real line built from atoms, atom families, and density
/// pieces.  Admissible measures integrate (1+t^2)^{-1} finitely while having
/// infinite total mass; validate() reports violations of either condition.
struct SpectralMeasure {
  std::vector<Atom> atoms;
  std::vector<AtomFamily> families;
  std::vector<DensityPiece> densities;
  bool total_mass_infinite = true;
};

/// Trichotomy of a point relative to the measure's multiplication operator:
/// atoms (ap), square-integrable resolvent kernel (ar), or divergent second
/// moment (a0).
enum class PointClass { a0, ar, ap };
const char* point_class_name(PointClass c);

// ---------------------------------------------------------------------------
// kernel-vs-measure integration engine

/// Kernel with enough metadata to integrate it against a SpectralMeasure:
/// an optional singularity of declared order at a real point, and a declared
/// decay rate at infinity.  `absolute` marks kernels of the form
/// |t-s|^{-order}, which are nonnegative and never summed conditionally.
struct KernelSpec {
  std::function<Complex(double)> f;
  std::optional<double> singularity;  // real s where the kernel blows up
  double sing_order = 0;              // kernel ~ |t-s|^{-sing_order}
  double decay = 2;                   // kernel ~ |t|^{-decay} at infinity
  bool absolute = false;
  bool exclude_singularity_atom = true;  // drop an atom sitting exactly at s
};

/// Integral of the kernel against the measure.  Divergence is decided from
/// declared exponents; conditionally convergent sums are evaluated as
/// symmetric principal sums with Euler-Maclaurin tails.
IntegralValue measure_integral(const SpectralMeasure& m, const KernelSpec& k,
                               double tol);

/// True when the integral against |t-s|^{-order} diverges near real s
/// (atoms exactly at s excluded), decided from declared exponents.
bool locally_divergent_at(const SpectralMeasure& m, double s, double order);

// ---------------------------------------------------------------------------
// operations

/// Structural and summability diagnostics; empty means admissible.
std::vector<std::string> validate(const SpectralMeasure& m);

/// Mass of the atom at lambda (0 when none, and 0 off the real axis).
double mass_at(const SpectralMeasure& m, Complex lambda);

/// Moment of the measure restricted off lambda:
///   absolute: integral of |t-lambda|^{-2j}
///   signed:   integral of (t-lambda)^{-j} as a symmetric principal sum
/// Atoms exactly at real lambda are excluded in both variants.
IntegralValue chi_moment(const SpectralMeasure& m, Complex lambda, int j,
                         bool absolute);

PointClass classify_point(const SpectralMeasure& m, Complex lambda);

/// Spectrum of the multiplication operator by the independent variable.
struct QSpectrum {
  IntervalUnion essential;                  // density closures + accumulation points
  std::vector<double> accumulation_points;  // finite limit points of atoms
  std::vector<double> atoms_in_window;      // point spectrum within `window`
  Interval window;
  bool atoms_below_window = false;
  bool atoms_above_window = false;
};
QSpectrum q_spectrum(const SpectralMeasure& m,
                     Interval window = {-64.0, 64.0});

// ---------------------------------------------------------------------------
// support queries shared by several modules

/// Atoms (explicit and rule-generated) with positions inside the window.
std::vector<Atom> atoms_in(const SpectralMeasure& m, Interval window);

/// Local power exponent of the a.c. part at real lambda: 0 in a piece
/// interior, the declared endpoint exponent at a piece edge, nothing when
/// lambda is off every density closure.
std::optional<double> density_exponent_at(const SpectralMeasure& m,
                                          double lambda);

bool support_unbounded_above(const SpectralMeasure& m);
bool support_unbounded_below(const SpectralMeasure& m);

/// True when real lambda lies on the closed support (atom, density closure,
/// or accumulation point).
bool on_support(const SpectralMeasure& m, double lambda);

/// True when some component certifies infinite total mass from its declared
/// exponents.  Infinite mass is what makes the regularized boundary
/// functional single-valued.
bool infinite_mass_certified(const SpectralMeasure& m);

/// True when the two measures agree structurally: same atoms and weights,
/// same families over the same ranges (compared by sampling), same density
/// pieces (intervals, exponents, sampled values).
bool measures_equal(const SpectralMeasure& a, const SpectralMeasure& b);

}  // namespace indefspec
