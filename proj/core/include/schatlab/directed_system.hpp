#pragma once

#include <span>
#include <string>
#include <vector>

#include "schatlab/group_rep.hpp"
#include "schatlab/linalg.hpp"
#include "schatlab/measure_space.hpp"
#include "schatlab/multiplication_rep.hpp"
#include "schatlab/schatten.hpp"

namespace schatlab {

/// The p-independent skeleton shared by every node of one directed system:
/// the left-space coordinate basis, the connecting map into the vectorized
/// operator space, and a fixed orthonormal complement of its image serving
/// as the quotient coordinates. Sharing it makes the coordinate maps between
/// nodes at different p literally identical, so commutativity and coherence
/// checks can demand exact zeros.
class SequenceContext {
 public:
  /// Left space spanned by the atom indicators of the space; connecting map
  /// sends each to its truncated multiplication operator.
  static SequenceContext measure_context(const MeasureSpace& space,
                                         const TruncationSchedule& sched);

  /// Left space is the group algebra modulo ker(induce), realized on the
  /// delta-function complement picked by column-pivoted elimination.
  static SequenceContext group_context(const UnitaryRep& rep);

  const std::string& id() const { return id_; }
  std::size_t left_dim() const { return left_basis_.size(); }
  std::size_t mid_side() const { return mid_side_; }
  std::size_t mid_space_dim() const { return mid_side_ * mid_side_; }
  std::size_t quotient_dim() const { return quotient_dim_; }
  const std::vector<std::vector<Complex>>& left_basis() const {
    return left_basis_;
  }
  const ComplexMatrix& connecting() const { return connecting_; }
  const ComplexMatrix& quotient_basis() const { return quotient_basis_; }

 private:
  std::string id_;
  std::vector<std::vector<Complex>> left_basis_;
  ComplexMatrix connecting_;      // mid_space_dim x left_dim; empty if 0
  ComplexMatrix quotient_basis_;  // mid_space_dim x quotient_dim, orthonormal
  std::size_t mid_side_ = 0;
  std::size_t quotient_dim_ = 0;
};

/// One exact-sequence at exponent p: left space, its embedding into the
/// truncated operator space (row-major vectorization), and the quotient
/// coordinates. Fields are plain data so tests can corrupt them.
struct SequenceNode {
  PExponent p;
  std::vector<std::vector<Complex>> left_basis;
  std::size_t mid_side = 0;
  std::size_t mid_space_dim = 0;
  ComplexMatrix connecting_map;
  ComplexMatrix quotient_basis;
  std::size_t quotient_dim = 0;
  std::string context_id;
};

/// Throws std::domain_error if the connecting map is rank deficient (a
/// kernel that was not quotiented out of the left space).
SequenceNode build_node(const SequenceContext& ctx, PExponent p);

struct ContractionSample {
  std::string what;
  double norm_p = 0.0;
  double norm_q = 0.0;
  bool contractive = false;
};

struct SystemMorphism {
  PExponent source_p;
  PExponent target_q;
  ComplexMatrix left_map;   // identity on function coordinates; empty if 0
  ComplexMatrix right_map;  // identity on quotient coordinates; empty if 0
  bool mid_identity = true;
  bool squares_commute = false;  // both squares, exact zero residual
  double max_residual = 0.0;
  std::vector<ContractionSample> certificates;
};

/// Morphism between nodes of one context with source.p <= target.p. The mid
/// component is the identity inclusion; contractivity is certified on the
/// left-basis images plus any extra square samples supplied.
SystemMorphism build_morphism(const SequenceNode& source,
                              const SequenceNode& target,
                              std::span<const ComplexMatrix> extra_samples =
                                  {});

struct ExactnessReport {
  std::size_t rank = 0;
  bool injective = false;
  bool quotient_consistent = false;
  bool quotient_kills_image = false;
  double kill_residual = 0.0;

  bool pass() const {
    return injective && quotient_consistent && quotient_kills_image;
  }
};

ExactnessReport verify_exactness(const SequenceNode& node);

struct IndexedMorphism {
  std::size_t from = 0;
  std::size_t to = 0;
  SystemMorphism morphism;
};

struct DirectedSystem {
  std::vector<SequenceNode> nodes;        // grid order
  std::vector<IndexedMorphism> morphisms;  // every ordered pair from < to
};

/// Grid must be non-decreasing.
DirectedSystem build_directed_system(const SequenceContext& ctx,
                                     std::span<const PExponent> grid);

struct CoherenceReport {
  std::size_t triples = 0;
  double max_residual = 0.0;
  bool exact = false;
};

/// Composition coherence over every triple i <= j <= k of grid indices,
/// comparing composed left/right coordinate maps entrywise.
CoherenceReport verify_coherence(const DirectedSystem& system);

struct Fig2Column {
  std::string tag;  // "E_1", "E_1.5", ..., "E_0", "E_inf"
  bool collapsed_endpoint = false;
  SequenceNode node;
  ExactnessReport exactness;
};

struct Fig2Report {
  std::vector<Fig2Column> columns;
  std::vector<SystemMorphism> adjacent;
  CoherenceReport coherence;
  bool all_blocks_commute = false;
  double max_block_residual = 0.0;

  bool pass() const;
};

/// Builds the commuting grid over the given exponents. Infinity in the grid
/// expands into the two flagged endpoint columns E_0 and E_inf, which
/// coincide at finite truncation with the full matrix space; the flag
/// records the collapse.
Fig2Report verify_fig2(const SequenceContext& ctx,
                       std::span<const PExponent> grid);

struct FunctorLawReport {
  bool identity_ok = false;
  double identity_residual = 0.0;
  bool composition_ok = false;
  double composition_residual = 0.0;
  bool norms_ok = false;
  double max_norm_deviation = 0.0;
  std::size_t samples_checked = 0;

  bool pass() const { return identity_ok && composition_ok && norms_ok; }
};

/// Laws of the directed-system assignment on unitary intertwiners: rep2 and
/// rep3 are the conjugates of rep by u1 and then u2, the identity law is
/// checked on the samples, the composition law compares (u2 u1)-conjugation
/// with the two-step conjugation, and every Schatten norm over the grid must
/// be preserved within 1e-9 relative. Non-unitary u throws.
FunctorLawReport verify_functor_laws(const UnitaryRep& rep,
                                     const ComplexMatrix& u1,
                                     const ComplexMatrix& u2,
                                     std::span<const ComplexMatrix> samples,
                                     std::span<const PExponent> grid);

}  // namespace schatlab
