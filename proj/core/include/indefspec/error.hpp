#pragma once

#include <stdexcept>
#include <string>

namespace indefspec {

/// Failure categories surfaced by the library.  Each maps to a stable
/// name so CLI consumers can branch on it.
enum class Errc {
  invalid_spec,        // malformed or inconsistent input description
  on_support,          // evaluation point sits on the measure's support
  not_in_domain,       // vector fails an operator-domain membership test
  not_well_posed,      // boundary functional undefined (finite total mass)
  hypotheses_fail,     // preconditions of a boundary-limit formula violated
  divergent_moment,    // requested moment diverges; no finite value exists
  non_convergent_tail, // rule-generated family lacks a usable tail bound
  summability_uncertified, // zone data tail conditions cannot be certified
  at_xi,               // evaluation exactly at a removable-singularity node
  branch_ambiguity,    // square-root branch selection failed consistency
  outside_band,        // density requested off the absolutely continuous set
  disk_too_large,      // nested-disk contraction did not certify the target
  no_limit,            // extrapolation to a boundary value did not stabilize
  degenerate,          // coefficient pair is degenerate; request refused
  region_touches_essential, // search region intersects essential spectrum
  inner_divergent,     // inner integral of a nested construction diverges
  numeric_failure,     // integrator/root-finder failed to reach tolerance
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace indefspec
