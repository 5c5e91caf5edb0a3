#include <doctest.h>

#include "schatlab/verify.hpp"

using namespace schatlab;

// The full acceptance sweep lives in its own binary; here just the cheap
// criteria, to catch regressions from unit-level changes quickly.

TEST_CASE("indicator divergence criterion") {
  const CriterionResult r = check_indicator_divergence();
  CHECK(r.pass);
  CHECK(r.name == "indicator_divergence");
  CHECK(r.measured <= r.tolerance);
}

TEST_CASE("commuting grid criterion") {
  const CriterionResult r = check_commuting_grid();
  CHECK(r.pass);
  CHECK(r.measured == 0.0);
}

TEST_CASE("invariant mass criterion") {
  const CriterionResult r = check_invariant_mass(kDefaultSeed);
  CHECK(r.pass);
}

TEST_CASE("criteria carry printable diagnostics") {
  const CriterionResult r = check_indicator_divergence();
  CHECK_FALSE(r.details.empty());
  CHECK(r.runtime_ok);
}
