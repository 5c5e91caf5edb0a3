#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schatlab {

using Complex = std::complex<double>;

/// Half-open real interval [lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x < hi; }
  bool operator==(const Interval&) const = default;
};

/// Point mass: mu({label}) = mass, mass > 0.
struct AtomEntry {
  std::string label;
  double mass = 0.0;
};

struct DensitySegment {
  Interval sub;
  double value = 0.0;  // >= 0
};

/// Interval [a,b) carrying a piecewise-constant density against Lebesgue
/// measure. The density segments partition [a,b) exactly (endpoint doubles
/// must match bit for bit).
struct DiffusePiece {
  Interval interval;
  std::vector<DensitySegment> density;

  double measure() const;
};

/// Sigma-finite measure space given by a finite description: labeled point
/// masses plus pairwise-disjoint diffuse pieces. Validated on construction;
/// immutable afterwards, safe for concurrent reads.
class MeasureSpace {
 public:
  MeasureSpace() = default;
  MeasureSpace(std::vector<AtomEntry> atoms, std::vector<DiffusePiece> diffuse);

  const std::vector<AtomEntry>& atoms() const { return atoms_; }
  const std::vector<DiffusePiece>& diffuse() const { return diffuse_; }

  std::optional<std::size_t> atom_index(std::string_view label) const;

  double atom_measure() const;
  double diffuse_measure() const;
  double total_measure() const { return atom_measure() + diffuse_measure(); }

 private:
  std::vector<AtomEntry> atoms_;
  std::vector<DiffusePiece> diffuse_;  // sorted by interval.lo
  std::map<std::string, std::size_t, std::less<>> atom_lookup_;
};

struct ValueSegment {
  Interval sub;
  Complex value;
};

/// Complex values on a piece; the segments partition piece.interval exactly.
struct PieceValues {
  Interval interval;  // must equal the interval of a piece of the space
  std::vector<ValueSegment> values;
};

/// Complex simple function on a MeasureSpace. Atoms or pieces without an
/// entry are implicitly zero.
struct SimpleFunction {
  std::map<std::string, Complex> atom_values;
  std::vector<PieceValues> diffuse_values;

  static SimpleFunction indicator_of_atom(std::string label);
  static SimpleFunction indicator_of_piece(Interval piece_interval);
};

namespace detail {

/// Common refinement of a piece's density partition and the function's value
/// partition: consecutive segments with constant (density, value).
struct RefinedSegment {
  double lo = 0.0;
  double hi = 0.0;
  double density = 0.0;
  Complex value;
};

struct RefinedPiece {
  Interval interval;
  std::vector<RefinedSegment> segments;
};

/// Validates f against the space and merges partitions. Throws
/// std::domain_error on any function/space mismatch.
std::vector<RefinedPiece> refine(const MeasureSpace& space,
                                 const SimpleFunction& f);

}  // namespace detail

/// Closed-form integral of |f|^p over the whole space, p in [1, inf).
double integrate_abs_power(const MeasureSpace& space, const SimpleFunction& f,
                           double p);

/// Essential supremum of |f| over the space (zero-measure regions ignored).
double ess_sup(const MeasureSpace& space, const SimpleFunction& f);

/// Positive-density part of one diffuse piece.
struct DiffuseSupport {
  Interval piece;
  std::vector<Interval> support;  // segments with density > 0
  double measure = 0.0;
};

/// X = F u (union of atoms in D); pieces of zero total measure drop out of F.
struct Decomposition {
  std::vector<AtomEntry> atoms;          // D
  std::vector<DiffuseSupport> diffuse;   // F

  double atom_measure() const;
  double diffuse_measure() const;
};

Decomposition decompose(const MeasureSpace& space);

bool is_atomless(const MeasureSpace& space);

/// Outcome of the invariant-measure test on a finite group model where every
/// element is a singleton atom.
struct GroupInvarianceVerdict {
  bool invariant_counting = false;
  double scale = 0.0;  // the common mass when invariant_counting
};

/// InvariantCounting(c) iff all masses equal c. Throws on an empty group or
/// nonpositive masses.
GroupInvarianceVerdict check_group_invariance(std::size_t group_size,
                                              std::span<const double> masses);

/// Atoms "-N".."N" of unit mass, no diffuse part.
MeasureSpace integer_lattice(int n_max);

}  // namespace schatlab
