#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "schatlab/linalg.hpp"
#include "schatlab/schatten.hpp"

namespace schatlab {

/// Finite group given by its Cayley table. The table, identity, inverses and
/// associativity are validated on construction; instances are immutable.
class FiniteGroup {
 public:
  /// table[i][j] = index of g_i * g_j. Labels default to "g0", "g1", ...
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table,
                       std::vector<std::string> labels = {});

  static FiniteGroup cyclic(std::size_t n);
  /// Dihedral group of order 2n: rotations r0..r{n-1}, reflections s0..s{n-1}.
  static FiniteGroup dihedral(std::size_t n);
  /// S3 realized as the symmetries of a triangle.
  static FiniteGroup symmetric3();
  static FiniteGroup direct_product(const FiniteGroup& a,
                                    const FiniteGroup& b);

  std::size_t order() const { return order_; }
  std::size_t op(std::size_t i, std::size_t j) const { return table_[i][j]; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

 private:
  std::size_t order_ = 0;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::string> labels_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// Element of the group algebra under counting measure: one complex value
/// per group element, indexed consistently with the Cayley table.
struct GroupFunction {
  std::vector<Complex> values;
};

GroupFunction delta(const FiniteGroup& g, std::size_t element);
GroupFunction convolve(const FiniteGroup& g, const GroupFunction& f,
                       const GroupFunction& h);
/// f*(x) = conj(f(x^{-1})).
GroupFunction involution(const FiniteGroup& g, const GroupFunction& f);

/// Unitary representation with one matrix per element; unitarity, the
/// homomorphism property over all pairs, and the identity image are checked
/// on construction (within 1e-10).
class UnitaryRep {
 public:
  UnitaryRep(FiniteGroup group, std::vector<ComplexMatrix> matrices);

  static UnitaryRep regular(const FiniteGroup& g);
  static UnitaryRep trivial(const FiniteGroup& g);
  /// One-dimensional rep from unimodular character values.
  static UnitaryRep one_dimensional(const FiniteGroup& g,
                                    std::vector<Complex> character);
  /// Fourier diagonalization of the regular rep of Z/n: element k maps to
  /// diag(e^{2 pi i j k / n}) over frequencies j = 0..n-1.
  static UnitaryRep dft_diagonal(std::size_t n);
  static UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b);

  const FiniteGroup& group() const { return group_; }
  std::size_t dimension() const { return dim_; }
  const ComplexMatrix& matrix(std::size_t element) const {
    return matrices_[element];
  }

 private:
  FiniteGroup group_;
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> matrices_;
};

/// x -> U pi(x) U* for unitary U; U is then a unitary intertwiner from rep
/// to the result by construction.
UnitaryRep conjugated(const UnitaryRep& rep, const ComplexMatrix& u);

/// Sum over x of f(x) pi(x): the group-algebra representation under counting
/// measure.
ComplexMatrix induce(const UnitaryRep& rep, const GroupFunction& f);

struct PullbackIdeal {
  PExponent p;
  std::vector<GroupFunction> kernel_basis;
  std::size_t quotient_dim = 0;
  std::string note;
};

/// In finite dimension every operator lies in every p-class, so the pullback
/// is the whole group algebra; the interesting data is ker(induce) and the
/// quotient dimension. Rank decisions at 1e-10 relative to the map scale.
PullbackIdeal pullback_ideal(const UnitaryRep& rep, PExponent p);

/// True iff max over x of the operator norm of U pi1(x) - pi2(x) U is at
/// most 1e-9.
bool verify_intertwiner(const ComplexMatrix& u, const UnitaryRep& rep1,
                        const UnitaryRep& rep2);

/// Unitary intertwiners preserve the pullback p-norms: compares the norms of
/// induce(rep1, f) and induce(rep2, f) within 1e-9 relative. Throws if U is
/// not a unitary intertwiner.
bool check_unitary_equiv_invariance(const UnitaryRep& rep1,
                                    const UnitaryRep& rep2,
                                    const ComplexMatrix& u,
                                    const GroupFunction& f, PExponent p);

}  // namespace schatlab
