#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace schatlab {

/// One acceptance check. `measured` is the worst observed deviation in the
/// units stated by `details`; `pass` already folds in `runtime_ok` for the
/// checks that carry a wall-clock budget. Nothing here depends on the clock
/// except `runtime_ok`, so reports are reproducible byte for byte.
struct CriterionResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string details;
  bool runtime_ok = true;
};

struct AcceptanceReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;

  bool all_pass() const;
};

/// The acceptance suite, one function per check, in report order. Each takes
/// the master seed and derives its own stream, so checks are independent and
/// individually rerunnable.
CriterionResult check_lattice_norms(std::uint64_t seed);
CriterionResult check_indicator_divergence();
CriterionResult check_support_dichotomy(std::uint64_t seed);
CriterionResult check_invariant_mass(std::uint64_t seed);
CriterionResult check_norm_inequalities(std::uint64_t seed);
CriterionResult check_svd_cross(std::uint64_t seed);
CriterionResult check_group_algebra(std::uint64_t seed);
CriterionResult check_commuting_grid();
CriterionResult check_functor_laws(std::uint64_t seed);

/// Runs the nine checks twice, byte-compares the two canonical
/// serializations (the determinism check), and returns the first pass plus
/// that tenth result.
AcceptanceReport run_acceptance(std::uint64_t seed);

inline constexpr std::uint64_t kDefaultSeed = 20260815;

}  // namespace schatlab
