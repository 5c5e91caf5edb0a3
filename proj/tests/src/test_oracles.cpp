#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "schatlab/oracles.hpp"
#include "schatlab/sampling.hpp"

using namespace schatlab;

TEST_CASE("charpoly eigenvalues on explicit spectra") {
  ComplexMatrix d(3, 3);
  d.at(0, 0) = Complex(1.0, 0.0);
  d.at(1, 1) = Complex(5.0, 0.0);
  d.at(2, 2) = Complex(0.0, 0.0);
  const std::vector<double> lam = hermitian_psd_eigenvalues(d);
  REQUIRE(lam.size() == 3);
  CHECK(std::abs(lam[0] - 5.0) <= 1e-12);
  CHECK(std::abs(lam[1] - 1.0) <= 1e-12);
  CHECK(std::abs(lam[2]) <= 1e-12);

  CHECK(hermitian_psd_eigenvalues(ComplexMatrix(1, 1, {Complex(2.5, 0.0)}))[0] ==
        doctest::Approx(2.5));
  CHECK_THROWS_AS(hermitian_psd_eigenvalues(ComplexMatrix(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("charpoly eigenvalues survive repeated roots") {
  // rotate diag(2, 2, 1) by a fixed unitary; the double eigenvalue forces
  // the derivative-chain isolation path
  ComplexMatrix d(3, 3);
  d.at(0, 0) = Complex(2.0, 0.0);
  d.at(1, 1) = Complex(2.0, 0.0);
  d.at(2, 2) = Complex(1.0, 0.0);
  Rng rng(51);
  const ComplexMatrix u = random_unitary(rng, 3);
  const ComplexMatrix a = matmul(matmul(u, d), adjoint(u));
  const std::vector<double> lam = hermitian_psd_eigenvalues(a);
  REQUIRE(lam.size() == 3);
  CHECK(std::abs(lam[0] - 2.0) <= 1e-8);
  CHECK(std::abs(lam[1] - 2.0) <= 1e-8);
  CHECK(std::abs(lam[2] - 1.0) <= 1e-8);
}

TEST_CASE("gram spectra match the svd route") {
  Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + rng.uniform_index(4);
    const std::size_t n = 2 + rng.uniform_index(4);
    const ComplexMatrix a = random_matrix(rng, m, n);
    const ComplexMatrix gram =
        m <= n ? matmul(a, adjoint(a)) : matmul(adjoint(a), a);
    const std::vector<double> lam = hermitian_psd_eigenvalues(gram);
    const std::vector<double> s = svd_values(a);
    const double scale = std::max(1.0, s.empty() ? 0.0 : s[0] * s[0]);
    REQUIRE(lam.size() == std::min(m, n));
    for (std::size_t i = 0; i < lam.size(); ++i)
      CHECK(std::abs(lam[i] - s[i] * s[i]) <= 1e-10 * scale);
  }
}

TEST_CASE("power iteration reproduces the operator norm") {
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a =
        random_matrix(rng, 1 + rng.uniform_index(7), 1 + rng.uniform_index(7));
    const double ref = operator_norm(a);
    CHECK(std::abs(power_iteration_norm(a) - ref) <= 1e-9 * (1.0 + ref));
  }
  CHECK(power_iteration_norm(ComplexMatrix(3, 2)) == 0.0);
}

TEST_CASE("simpson quadrature on closed forms") {
  // k = 0 integrates the constant
  const Complex flat = simpson_oscillatory(0.0, 2.0, 0.0, Complex(1.5, -0.5));
  CHECK(std::abs(flat - Complex(3.0, -1.0)) <= 1e-12);

  // against the antiderivative for k != 0
  const double k = 3.0;
  const double a = 0.2, b = 1.1;
  const Complex i2pik(0.0, 2.0 * std::numbers::pi * k);
  const Complex exact =
      (std::exp(i2pik * b) - std::exp(i2pik * a)) / i2pik;
  CHECK(std::abs(simpson_oscillatory(a, b, k, 1.0) - exact) <= 1e-10);

  CHECK_THROWS_AS(simpson_oscillatory(1.0, 0.0, 1.0, 1.0),
                  std::invalid_argument);
}
