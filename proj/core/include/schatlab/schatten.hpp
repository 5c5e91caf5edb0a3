#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "schatlab/linalg.hpp"

namespace schatlab {

/// Exponent p in [1, inf]. Stored as a double with +infinity for the
/// distinguished endpoint, so ordinary comparisons order the scale.
class PExponent {
 public:
  PExponent() = default;  // p = 2

  static PExponent finite(double v);
  static PExponent infinity();
  static PExponent parse(std::string_view text);  // number or "inf"

  bool is_infinite() const;
  double value() const { return value_; }

  /// Conjugate exponent: 1/p + 1/q = 1, with (1, inf) paired.
  PExponent dual() const;

  std::string to_string() const;

  friend bool operator==(PExponent a, PExponent b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(PExponent a, PExponent b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(PExponent a, PExponent b) {
    return a.value_ <= b.value_;
  }

 private:
  double value_ = 2.0;
};

double schatten_norm(const ComplexMatrix& a, PExponent p);

/// (Sum s_i^p)^(1/p) over an already computed singular value list, scaled to
/// avoid overflow; max for p = inf; 0^p = 0 by convention.
double schatten_norm_from_values(const std::vector<double>& s, PExponent p);

struct SchattenReport {
  PExponent p;
  double norm = 0.0;
  std::vector<double> singular_values;
  PExponent dual_exponent;
};

SchattenReport schatten_report(const ComplexMatrix& a, PExponent p);

/// Tr(B* A) for same-shape matrices.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

struct HolderWitness {
  ComplexMatrix b;
  double attained = 0.0;
};

/// Dual witness built from A = U S V*: B = U diag(s_i^{p-1}) V* normalized to
/// unit q-norm, degenerating to the polar part at p = 1 and the top singular
/// pair at p = inf. |hs_inner(A, B)| recovers the p-norm of A.
/// Throws on the zero matrix.
HolderWitness holder_witness(const ComplexMatrix& a, PExponent p);

/// Ideal bound check; mathematically always true, so false flags a bug.
bool verify_ideal_bound(const ComplexMatrix& x, const ComplexMatrix& t,
                        const ComplexMatrix& y, PExponent p);

struct ContainmentCertificate {
  SchattenReport from;  // exponent p
  SchattenReport to;    // exponent q >= p
  bool contractive = false;
};

/// Identity inclusion of the p-class into the q-class, certified by the
/// norm pair (the q-norm never exceeds the p-norm).
ContainmentCertificate containment_map(const ComplexMatrix& a, PExponent p,
                                       PExponent q);

}  // namespace schatlab
