#pragma once

#include <functional>
#include <vector>

#include "indefspec/numeric/circle.hpp"
#include "indefspec/types.hpp"

namespace indefspec {

using RealFn = std::function<double(double)>;

/// Bisection refinement of a bracketed sign change.
double bisect(const RealFn& f, double a, double b, double xtol);

struct RealRootOptions {
  double min_cell = 1e-8;   // stop subdividing monotonicity cells below this
  double xtol = 1e-13;      // bisection width target
  double zero_abs = 1e-9;   // |f| threshold for tangential zeros
  int max_depth = 48;
};

/// Zeros of f on (a,b) located by monotone-cell subdivision: cells are split
/// until f' (central differences) keeps one sign, then sign changes are
/// bisected.  Tangential zeros where |f| dips under zero_abs at a cell
/// boundary are reported once.
std::vector<double> real_roots(const RealFn& f, double a, double b,
                               const RealRootOptions& opt = {});

/// Winding number of f along the rectangle [re(lo),re(hi)] x [im(lo),im(hi)],
/// by argument continuation with adaptive edge refinement.  Throws
/// Errc::numeric_failure if |f| vanishes on the boundary beyond refinement.
int winding_number(const HoloFn& f, Complex lo, Complex hi);

struct ComplexRoot {
  Complex z;
  int multiplicity;
};

struct ComplexRootOptions {
  double min_box = 1e-7;   // smallest box edge before forcing Newton
  double newton_tol = 5e-13;
  int max_depth = 40;
};

/// All zeros of f strictly inside the rectangle, with multiplicities from
/// winding counts; Newton-refined.  fprime may be empty (numeric derivative).
std::vector<ComplexRoot> complex_roots(const HoloFn& f, const HoloFn& fprime,
                                       Complex lo, Complex hi,
                                       const ComplexRootOptions& opt = {});

}  // namespace indefspec
