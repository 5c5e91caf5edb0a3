#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schatlab/linalg.hpp"
#include "schatlab/measure_space.hpp"
#include "schatlab/schatten.hpp"

namespace schatlab {

/// Basis element of the hybrid frame for L2(X): a normalized atom indicator
/// or a windowed exponential on the integer cell [n, n+1).
struct BasisLabel {
  enum class Kind { Atom, Gabor };
  Kind kind = Kind::Atom;
  std::string atom;
  long long n = 0;
  long long m = 0;

  static BasisLabel atom_label(std::string label);
  static BasisLabel gabor_label(long long n, long long m);
};

/// Finite window onto the hybrid basis: a prefix of the atom list (or all of
/// it), the cells [n_lo, n_lo+1), ..., [n_hi, n_hi+1), and modes |m| <= m_max
/// per cell. n_lo > n_hi means no cells.
struct TruncationSchedule {
  std::optional<std::size_t> atom_count;  // nullopt: all atoms
  long long n_lo = 0;
  long long n_hi = -1;
  long long m_max = 0;

  static TruncationSchedule atoms_only(
      std::optional<std::size_t> count = std::nullopt);
};

/// Cell range spanning every diffuse piece of the space, all atoms.
TruncationSchedule default_schedule(const MeasureSpace& space,
                                    long long m_max);

struct OperatorTruncation {
  ComplexMatrix matrix;
  std::vector<BasisLabel> labels;
  TruncationSchedule schedule;
  std::string provenance;
};

/// Integral of e^{2 pi i k x} over [a, b). Returns an exact complex zero for
/// k != 0 whenever k*(b-a) is an integer, via the phase-folded closed form
/// e^{i pi k (a+b)} sin(pi k (b-a)) / (pi k).
Complex oscillatory_unit_integral(long long k, double a, double b);

/// Matrix of the multiplication operator by f compressed to the scheduled
/// window. Atom rows are diagonal with entry f(x) (the mass cancels against
/// the indicator normalization). Each cell block carries
/// entry(m, m') = integral of f(x) d(x) e^{2 pi i (m - m') x} dx over the
/// cell when the windowed exponentials are exactly orthogonal there; cells
/// cut by piece boundaries or nonconstant density are first orthonormalized
/// through the Cholesky factor of their Gram matrix, so the block stays a
/// genuine compression. Cells of zero measure are dropped. Throws
/// std::domain_error when a cell Gram is numerically singular (sliver cell
/// with a deep mode window).
OperatorTruncation build_truncation(const MeasureSpace& space,
                                    const SimpleFunction& f,
                                    const TruncationSchedule& sched);

/// Partial trace sum of |f|^p against the scheduled basis, in closed form:
/// sum over scheduled atoms of |f(x)|^p plus (2M+1) times the integral of
/// |f|^p over each scheduled cell. Monotone non-decreasing in every schedule
/// parameter. Requires finite p >= 1.
double trace_power_partial(const MeasureSpace& space, const SimpleFunction& f,
                           double p, const TruncationSchedule& sched);

struct SchedulePoint {
  double size = 0.0;   // growing schedule parameter (mode cap or atom count)
  double value = 0.0;  // trace_power_partial at that size
};

struct DivergenceDiagnosis {
  bool diverges = false;
  double limit = 0.0;  // last partial (tail estimate) when converged
  double slope = 0.0;  // least-squares growth per unit size, last half
  double slope_tolerance = 0.0;
};

/// Slope test over the last floor(n/2) points; needs at least 4 points with
/// strictly increasing sizes. Default tolerance 1e-10 * (1 + max value).
DivergenceDiagnosis diagnose_divergence(std::span<const SchedulePoint> points,
                                        std::optional<double> slope_tolerance =
                                            std::nullopt);

/// Thrown by classify_numeric when the measured slope falls inside
/// [tolerance/2, 2*tolerance], too close to the decision line to call.
class InconclusiveDiagnostics : public std::runtime_error {
 public:
  InconclusiveDiagnostics(double slope, double tolerance);
  double slope() const { return slope_; }
  double tolerance() const { return tolerance_; }

 private:
  double slope_;
  double tolerance_;
};

enum class NotMemberReason { AtomicSupportViolation, PSumDiverges };

struct MembershipVerdict {
  bool member = false;
  double norm = 0.0;  // meaningful when member
  std::optional<NotMemberReason> reason;
  double slope = 0.0;            // numeric route only
  double slope_tolerance = 0.0;  // numeric route only
  std::string detail;
};

/// Membership by the support criterion: f belongs to the p-ideal (finite p)
/// iff it vanishes off the atoms up to measure zero, with norm
/// (sum over atoms |f(x)|^p)^(1/p). At p = inf every bounded f is a member
/// with norm ess sup |f|.
MembershipVerdict classify_exact(const MeasureSpace& space,
                                 const SimpleFunction& f, PExponent p);

/// Default doubling mode caps for the numeric route.
std::vector<long long> default_mode_family();

/// Numerical route: trace partials over a growing mode family, then the
/// divergence test. Agrees with classify_exact whenever it does not throw
/// InconclusiveDiagnostics. Finite p only. A supplied slope_tolerance
/// replaces the default scale-adaptive one.
MembershipVerdict classify_numeric(const MeasureSpace& space,
                                   const SimpleFunction& f, double p,
                                   std::span<const long long> mode_family,
                                   std::optional<double> slope_tolerance =
                                       std::nullopt);

MembershipVerdict classify_numeric(const MeasureSpace& space,
                                   const SimpleFunction& f, double p);

/// Truncated two-sided check that the integer-lattice ideal norm is the
/// sequence p-norm: builds the atoms-only truncation on {-N..N} and compares
/// schatten_norm against the direct sum, within 1e-12 relative.
/// values must hold 2N+1 entries ordered n = -N..N.
bool verify_lemma1(int n_max, std::span<const Complex> values, PExponent p);

}  // namespace schatlab
