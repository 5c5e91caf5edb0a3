#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "schatlab/linalg.hpp"
#include "schatlab/sampling.hpp"

using namespace schatlab;

namespace {

// Reference product: plain triple loop, no blocking, no reuse of the library
// kernel under test.
ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a.at(i, k) * b.at(k, j);
      c.at(i, j) = s;
    }
  return c;
}

ComplexMatrix naive_adjoint(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c.at(j, i) = std::conj(a.at(i, j));
  return c;
}

}  // namespace

TEST_CASE("matrix construction validates shapes") {
  CHECK_THROWS_AS(ComplexMatrix(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)),
                  std::invalid_argument);
  ComplexMatrix a(2, 3);
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(max_abs_entry(a) == 0.0);
  CHECK(ComplexMatrix().empty());
}

TEST_CASE("matmul and adjoint agree with the naive definitions") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng.uniform_index(6);
    const std::size_t k = 1 + rng.uniform_index(6);
    const std::size_t n = 1 + rng.uniform_index(6);
    const ComplexMatrix a = random_matrix(rng, m, k);
    const ComplexMatrix b = random_matrix(rng, k, n);
    CHECK(max_abs_entry(sub(matmul(a, b), naive_matmul(a, b))) == 0.0);
    CHECK(max_abs_entry(sub(adjoint(a), naive_adjoint(a))) == 0.0);
  }
  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("trace, add, sub, scale") {
  ComplexMatrix a(2, 2, {Complex(1, 2), Complex(0, 0),  //
                         Complex(0, 0), Complex(3, -1)});
  CHECK(trace(a) == Complex(4, 1));
  CHECK(max_abs_entry(sub(add(a, a), scale(2.0, a))) == 0.0);
  CHECK_THROWS_AS(trace(ComplexMatrix(2, 3)), std::invalid_argument);
  CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(1 + 4 + 9 + 1)));
}

TEST_CASE("svd reconstructs, orders, and transposes consistently") {
  Rng rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t m = 1 + rng.uniform_index(7);
    const std::size_t n = 1 + rng.uniform_index(7);
    const ComplexMatrix a = random_matrix(rng, m, n, 2.0);
    const SvdResult dec = svd(a);
    const std::size_t k = std::min(m, n);
    REQUIRE(dec.singular_values.size() == k);
    for (std::size_t i = 1; i < k; ++i)
      CHECK(dec.singular_values[i - 1] >= dec.singular_values[i]);

    ComplexMatrix us = dec.u;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j)
        us.at(i, j) *= dec.singular_values[j];
    const double scale_ref = std::max(1.0, frobenius_norm(a));
    CHECK(max_abs_entry(sub(matmul(us, adjoint(dec.v)), a)) <=
          1e-12 * scale_ref);

    // V always has orthonormal columns; U does wherever the singular value
    // is nonzero.
    const ComplexMatrix vtv = matmul(adjoint(dec.v), dec.v);
    CHECK(max_abs_entry(sub(vtv, ComplexMatrix::identity(k))) <= 1e-12);

    const std::vector<double> s_t = svd_values(adjoint(a));
    for (std::size_t i = 0; i < k; ++i)
      CHECK(dec.singular_values[i] ==
            doctest::Approx(s_t[i]).epsilon(1e-12));
  }
}

TEST_CASE("svd handles degenerate inputs") {
  CHECK(svd_values(ComplexMatrix(3, 2)) == std::vector<double>{0.0, 0.0});
  ComplexMatrix one(1, 1, {Complex(-3, 4)});
  CHECK(operator_norm(one) == doctest::Approx(5.0));
  ComplexMatrix bad(1, 1, {Complex(std::nan(""), 0)});
  CHECK_THROWS_AS(svd(bad), std::domain_error);
}

TEST_CASE("rank, nullspace, and pivoted qr") {
  Rng rng(13);
  // rank-2 matrix built from two outer products
  const ComplexMatrix x = random_matrix(rng, 5, 2);
  const ComplexMatrix y = random_matrix(rng, 2, 4);
  const ComplexMatrix a = matmul(x, y);
  CHECK(matrix_rank(a) == 2);

  const ComplexMatrix n = nullspace_basis(a);
  REQUIRE(n.rows() == 4);
  REQUIRE(n.cols() == 2);
  CHECK(max_abs_entry(matmul(a, n)) <= 1e-10 * frobenius_norm(a));
  CHECK(max_abs_entry(sub(matmul(adjoint(n), n), ComplexMatrix::identity(2))) <=
        1e-12);

  const ComplexMatrix full = random_matrix(rng, 4, 4);
  CHECK(matrix_rank(full) == 4);
  CHECK(nullspace_basis(full).empty());

  const QrPivoted qr = qr_column_pivoted(a);
  CHECK(qr.rank == 2);
  CHECK(qr.perm.size() == 4);
}

TEST_CASE("orthonormalize_columns rejects dependent columns") {
  Rng rng(14);
  const ComplexMatrix a = random_matrix(rng, 6, 3);
  const ComplexMatrix q = orthonormalize_columns(a);
  CHECK(max_abs_entry(sub(matmul(adjoint(q), q), ComplexMatrix::identity(3))) <=
        1e-12);

  ComplexMatrix dep(4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    dep.at(i, 0) = Complex(1.0, 0.0);
    dep.at(i, 1) = Complex(2.0, 0.0);
  }
  CHECK_THROWS_AS(orthonormalize_columns(dep), std::domain_error);
}

TEST_CASE("is_unitary") {
  CHECK(is_unitary(ComplexMatrix::identity(4)));
  ComplexMatrix a = ComplexMatrix::identity(4);
  a.at(0, 0) = Complex(1.5, 0.0);
  CHECK_FALSE(is_unitary(a));
  CHECK_FALSE(is_unitary(ComplexMatrix(2, 3)));
}

TEST_CASE("cholesky factor and triangular solve") {
  ComplexMatrix a(2, 2, {Complex(4, 0), Complex(2, 0),  //
                         Complex(2, 0), Complex(3, 0)});
  const ComplexMatrix r = cholesky_upper(a);
  CHECK(r.at(0, 0) == Complex(2, 0));
  CHECK(r.at(0, 1) == Complex(1, 0));
  CHECK(r.at(1, 0) == Complex(0, 0));
  CHECK(std::abs(r.at(1, 1) - Complex(std::sqrt(2.0), 0)) <= 1e-15);
  CHECK(max_abs_entry(sub(matmul(adjoint(r), r), a)) <= 1e-15);

  // complex Hermitian PD round trip
  Rng rng(15);
  const ComplexMatrix b = random_matrix(rng, 4, 4);
  ComplexMatrix g = matmul(adjoint(b), b);
  for (std::size_t i = 0; i < 4; ++i) g.at(i, i) += 1.0;
  const ComplexMatrix rg = cholesky_upper(g);
  CHECK(max_abs_entry(sub(matmul(adjoint(rg), rg), g)) <=
        1e-12 * max_abs_entry(g));

  ComplexMatrix npd(2, 2, {Complex(1, 0), Complex(2, 0),  //
                           Complex(2, 0), Complex(1, 0)});
  CHECK_THROWS_AS(cholesky_upper(npd), std::domain_error);

  const ComplexMatrix l = adjoint(rg);
  const ComplexMatrix rhs = random_matrix(rng, 4, 3);
  const ComplexMatrix xsol = solve_lower_triangular(l, rhs);
  CHECK(max_abs_entry(sub(matmul(l, xsol), rhs)) <= 1e-12);
}
