#pragma once

#include <cstddef>
#include <vector>

#include "schatlab/linalg.hpp"

namespace schatlab {

/// Cross-check eigensolver, deliberately independent of the Jacobi SVD path:
/// characteristic polynomial by the Faddeev-LeVerrier recursion in extended
/// precision, roots isolated through the derivative chain and polished by
/// bisection plus Newton. Intended for Hermitian positive semidefinite input
/// of small dimension; returns all eigenvalues, descending, tiny negatives
/// clamped to zero.
std::vector<double> hermitian_psd_eigenvalues(const ComplexMatrix& a);

/// Largest singular value by power iteration on the Gram matrix with a fixed
/// deterministic start vector. Stops once the Rayleigh quotient is stable to
/// rel_tol or after max_iters.
double power_iteration_norm(const ComplexMatrix& a, double rel_tol = 1e-13,
                            std::size_t max_iters = 20000);

/// Composite Simpson approximation of the integral over [a, b] of
/// c * exp(2*pi*i*k*x) dx; quadrature reference for the closed-form
/// oscillatory integrals.
Complex simpson_oscillatory(double a, double b, double k, Complex c,
                            std::size_t panels = 2048);

}  // namespace schatlab
