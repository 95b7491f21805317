#pragma once

#include <functional>
#include <string>
#include <vector>

#include "indefspec/interval.hpp"
#include "indefspec/measure.hpp"
#include "indefspec/modelop.hpp"
#include "indefspec/types.hpp"

namespace indefspec {

/// Trichotomy pattern of the point relative to the two measures.
enum class EigenCase { a0_side, ap_ap, ar_ar, mixed };
const char* eigen_case_name(EigenCase c);

/// Algebraic multiplicity: an exact finite value, a lower bound when the
/// search cap was reached, or infinite (degenerate operator).
struct Multiplicity {
  enum class Kind { finite, at_least, infinite };
  Kind kind = Kind::finite;
  int k = 0;

  static Multiplicity finite(int n) { return {Kind::finite, n}; }
  static Multiplicity at_least(int n) { return {Kind::at_least, n}; }
  static Multiplicity infinite() { return {Kind::infinite, 0}; }
  bool operator==(const Multiplicity&) const = default;
  std::string str() const;
};

/// One recorded condition evaluation in the classification decision path.
struct TraceEntry {
  std::string condition;
  Complex value{0, 0};
  bool holds = false;
  bool ambiguous = false;  // zero test landed within 10x of tolerance
};

struct EigenReport {
  Complex lambda{0, 0};
  EigenCase kind = EigenCase::mixed;
  bool is_eigenvalue = false;
  int geometric = 0;  // 1 for every eigenvalue of this operator class
  Multiplicity algebraic = Multiplicity::finite(0);
  bool ambiguous = false;
  std::vector<TraceEntry> trace;
};

/// Rectangle in the spectral plane; a degenerate imaginary extent
/// (im_lo == im_hi == 0) means a real interval.
struct SpectrumRegion {
  double re_lo = 0;
  double re_hi = 0;
  double im_lo = 0;
  double im_hi = 0;
  bool real_interval() const { return im_lo == 0 && im_hi == 0; }
};

struct DiscretePoint {
  Complex lambda{0, 0};
  Multiplicity mult = Multiplicity::finite(1);
  bool near_real_boundary = false;  // found close to the search margin at R
};

struct SpectrumReport {
  IntervalUnion essential;
  std::vector<DiscretePoint> discrete;
  bool degenerate = false;
};

/// Holomorphic evaluator overrides used by callers that know Phi in closed
/// form; the default evaluates the Weyl-function difference.
struct PhiEvaluator {
  std::function<Complex(Complex)> value;
  std::function<Complex(Complex)> derivative;  // optional; difference quotient otherwise
};

/// True iff the two halves carry identical data, which collapses the
/// resolvent set to the empty set.
bool degenerate_check(const ModelOperator& op);

/// Full classification of lambda: trichotomy case, eigenvalue decision,
/// geometric and algebraic multiplicity, and the evaluated condition trail.
/// Throws Degenerate for a degenerate pair when lambda sits on the essential
/// spectrum (elsewhere the report says infinite multiplicity).
EigenReport classify_eigenvalue(const ModelOperator& op, Complex lambda,
                                int k_max = 32);

/// Union of the essential spectra of the two multiplication operators.
IntervalUnion essential_spectrum(const SpectralMeasure& plus,
                                 const SpectralMeasure& minus);

/// Isolated spectrum inside the region: common isolated atoms scored by the
/// vanishing order of 1/M_plus - 1/M_minus, and zeros of Phi in the joint
/// resolvent set (bisection on real gaps, winding counts off the axis).
/// The region must keep clear of the essential spectrum.
std::vector<DiscretePoint> discrete_spectrum(const ModelOperator& op,
                                             SpectrumRegion region,
                                             int k_max = 32,
                                             const PhiEvaluator* phi = nullptr);

/// True iff the two supports can be separated by finitely many real points.
bool definitizable_check(const SpectralMeasure& plus,
                         const SpectralMeasure& minus);

/// True iff the support is bounded below or above.
bool semibounded_flag(const SpectralMeasure& m);

/// Essential + discrete summary over a region.
SpectrumReport spectrum_report(const ModelOperator& op, SpectrumRegion region,
                               int k_max = 32);

/// Constructive chain of root vectors at lambda:
/// chain[0] is the eigenvector candidate, chain[n] solves the shifted
/// recurrence against chain[n-1], with free coefficients fixed by the
/// symmetric cross rule.  Purely algebraic apart from the boundary integrals
/// fixing the free coefficients.
std::vector<ChainVector> build_jordan_chain(const ModelOperator& op,
                                            Complex lambda, int length);

}  // namespace indefspec
