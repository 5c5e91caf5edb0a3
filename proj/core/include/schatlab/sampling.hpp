#pragma once

#include <cstdint>
#include <string_view>

#include "schatlab/group_rep.hpp"
#include "schatlab/linalg.hpp"
#include "schatlab/measure_space.hpp"

namespace schatlab {

/// Deterministic 64-bit generator (splitmix64 core). Unlike the standard
/// distributions, every derived quantity here is produced by fixed bit
/// arithmetic, so streams are reproducible across platforms and runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double next_double();
  double uniform(double lo, double hi);
  /// Inclusive bounds.
  long long uniform_int(long long lo, long long hi);
  std::size_t uniform_index(std::size_t n);
  bool bernoulli(double p_true);

  Complex unit_complex();
  Complex complex_in_annulus(double r_min, double r_max);
  Complex complex_in_box(double half_width);

  /// Independent child stream labeled by an integer.
  Rng split(std::uint64_t label);

 private:
  std::uint64_t state_;
};

/// Stable per-suite seed derivation (FNV-1a over the name mixed with the
/// master seed).
std::uint64_t derive_seed(std::uint64_t master, std::string_view suite);

/// Entries uniform in the centered square box of the given half width.
ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                            double half_width = 1.0);

/// Haar-ish unitary: orthonormalized random matrix.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

GroupFunction random_group_function(Rng& rng, const FiniteGroup& g,
                                    double half_width = 1.0);

/// Randomized mixed measure-space model for the membership dichotomy. All
/// breakpoints sit on the quarter-integer grid and nonzero magnitudes stay
/// inside [0.1, 2] (values) and [0.5, 2] (densities), so diffuse-support
/// integrals are either exactly zero or safely above the slope tolerance.
struct SampledModel {
  MeasureSpace space;
  SimpleFunction function;
  bool diffuse_support = false;  // ground truth at sampling time
};

SampledModel random_mixed_model(Rng& rng, int max_atoms = 10,
                                int max_pieces = 3);

}  // namespace schatlab
