#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace schatlab {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Dimensions are fixed at construction;
/// entries are mutable through at().
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Complex& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Complex>& data() const { return entries_; }

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(Complex c, const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double max_abs_entry(const ComplexMatrix& a);

/// Thin decomposition A = U diag(s) V* with k = min(rows, cols) columns in
/// both U and V and s descending. Columns of U paired with zero singular
/// values are zero vectors, not completed to an orthonormal frame.
struct SvdResult {
  ComplexMatrix u;
  std::vector<double> singular_values;
  ComplexMatrix v;
};

/// One-sided Jacobi. Throws std::domain_error on non-finite entries and
/// std::runtime_error if the sweep limit is exhausted before convergence.
SvdResult svd(const ComplexMatrix& a);

/// All min(rows, cols) singular values, descending.
std::vector<double> svd_values(const ComplexMatrix& a);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// Rank-revealing Householder QR with column pivoting of an m-by-n matrix:
/// A P = Q R with |r_00| >= |r_11| >= ... Rank decisions compare |r_kk|
/// against rel_tol times the largest initial column norm.
struct QrPivoted {
  ComplexMatrix r;                // min(m,n) x n, upper triangular rows
  std::vector<std::size_t> perm;  // column j of R is column perm[j] of A
  std::size_t rank = 0;
  double scale = 0.0;             // largest initial column norm
};

QrPivoted qr_column_pivoted(const ComplexMatrix& a, double rel_tol = 1e-10);

std::size_t matrix_rank(const ComplexMatrix& a, double rel_tol = 1e-10);

/// Orthonormal basis of the kernel of A as matrix columns (n x nullity).
ComplexMatrix nullspace_basis(const ComplexMatrix& a, double rel_tol = 1e-10);

/// Modified Gram-Schmidt with one reorthogonalization pass. Requires full
/// column rank; throws std::domain_error otherwise.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& a);

/// Square with U*U within tol of the identity, entrywise.
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

/// Upper-triangular R with A = R* R for Hermitian positive definite A.
/// Throws std::domain_error if a pivot falls at or below
/// rel_tol times the largest diagonal entry.
ComplexMatrix cholesky_upper(const ComplexMatrix& a, double rel_tol = 1e-12);

/// Solves L X = B by forward substitution, L lower triangular.
ComplexMatrix solve_lower_triangular(const ComplexMatrix& l,
                                     const ComplexMatrix& b);

}  // namespace schatlab
