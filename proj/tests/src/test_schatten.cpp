#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "schatlab/sampling.hpp"
#include "schatlab/schatten.hpp"

using namespace schatlab;

TEST_CASE("exponent parsing, duals, formatting") {
  CHECK(PExponent::parse("2").value() == 2.0);
  CHECK(PExponent::parse("inf").is_infinite());
  CHECK(PExponent::parse("1.5").value() == 1.5);
  CHECK_THROWS_AS(PExponent::parse("fast"), std::invalid_argument);
  CHECK_THROWS_AS(PExponent::finite(0.5), std::invalid_argument);
  CHECK_THROWS_AS(PExponent::finite(-1.0), std::invalid_argument);

  CHECK(PExponent::finite(1.0).dual().is_infinite());
  CHECK(PExponent::infinity().dual().value() == 1.0);
  CHECK(PExponent::finite(2.0).dual().value() == 2.0);
  CHECK(PExponent::finite(1.5).dual().value() == doctest::Approx(3.0));
  CHECK(PExponent::finite(3.0).dual().value() == doctest::Approx(1.5));

  CHECK(PExponent::finite(1.5).to_string() == "1.5");
  CHECK(PExponent::finite(2.0).to_string() == "2");
  CHECK(PExponent::infinity().to_string() == "inf");
  CHECK(PExponent::finite(1.0) < PExponent::infinity());
}

TEST_CASE("schatten norms of a fixed diagonal model") {
  // phases must not matter: entries 3e^{i t} and 4i have moduli 3 and 4
  ComplexMatrix a(2, 2);
  a.at(0, 0) = Complex(3.0 * std::cos(0.8), 3.0 * std::sin(0.8));
  a.at(1, 1) = Complex(0.0, 4.0);

  CHECK(schatten_norm(a, PExponent::finite(1.0)) == doctest::Approx(7.0));
  CHECK(schatten_norm(a, PExponent::finite(2.0)) == doctest::Approx(5.0));
  CHECK(schatten_norm(a, PExponent::infinity()) == doctest::Approx(4.0));
  CHECK(schatten_norm(a, PExponent::finite(3.0)) ==
        doctest::Approx(std::pow(27.0 + 64.0, 1.0 / 3.0)));

  const SchattenReport rep = schatten_report(a, PExponent::finite(1.0));
  CHECK(rep.dual_exponent.is_infinite());
  REQUIRE(rep.singular_values.size() == 2);
  CHECK(rep.singular_values[0] == doctest::Approx(4.0));
}

TEST_CASE("schatten_norm_from_values scales against overflow") {
  const std::vector<double> huge{1e200, 1e200};
  const double n2 = schatten_norm_from_values(huge, PExponent::finite(2.0));
  CHECK(std::isfinite(n2));
  CHECK(n2 == doctest::Approx(1e200 * std::sqrt(2.0)));
  CHECK(schatten_norm_from_values({}, PExponent::finite(1.0)) == 0.0);
  CHECK(schatten_norm_from_values({0.0, 0.0}, PExponent::infinity()) == 0.0);
}

TEST_CASE("hs inner product") {
  ComplexMatrix a(1, 2, {Complex(1, 1), Complex(2, 0)});
  ComplexMatrix b(1, 2, {Complex(0, 1), Complex(1, 0)});
  // Tr(B* A) = conj(i)(1+i) + conj(1)*2 = (1 - i) + 2
  CHECK(hs_inner(a, b) == Complex(3.0, -1.0));
  CHECK_THROWS_AS(hs_inner(a, ComplexMatrix(2, 1)), std::invalid_argument);
}

TEST_CASE("holder witness attains the norm across the exponent scale") {
  Rng rng(21);
  const PExponent grid[] = {PExponent::finite(1.0), PExponent::finite(1.5),
                            PExponent::finite(2.0), PExponent::finite(3.0),
                            PExponent::infinity()};
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a =
        random_matrix(rng, 2 + rng.uniform_index(4), 2 + rng.uniform_index(4));
    for (PExponent p : grid) {
      const double np = schatten_norm(a, p);
      const HolderWitness w = holder_witness(a, p);
      CHECK(std::abs(w.attained - np) <= 1e-8 * (1.0 + np));
      CHECK(std::abs(std::abs(hs_inner(a, w.b)) - np) <= 1e-8 * (1.0 + np));
      const double dual_norm = schatten_norm(w.b, p.dual());
      CHECK(std::abs(dual_norm - 1.0) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(holder_witness(ComplexMatrix(2, 2), PExponent::finite(2.0)),
                  std::invalid_argument);
}

TEST_CASE("ideal bound and containment") {
  Rng rng(22);
  const ComplexMatrix x = random_matrix(rng, 3, 4);
  const ComplexMatrix t = random_matrix(rng, 4, 5);
  const ComplexMatrix y = random_matrix(rng, 5, 2);
  for (double pv : {1.0, 1.5, 2.0, 3.0})
    CHECK(verify_ideal_bound(x, t, y, PExponent::finite(pv)));
  CHECK(verify_ideal_bound(x, t, y, PExponent::infinity()));

  const ComplexMatrix a = random_matrix(rng, 4, 4);
  const ContainmentCertificate cert =
      containment_map(a, PExponent::finite(1.0), PExponent::finite(3.0));
  CHECK(cert.contractive);
  CHECK(cert.to.norm <= cert.from.norm + 1e-12);
  CHECK_THROWS_AS(
      containment_map(a, PExponent::finite(3.0), PExponent::finite(2.0)),
      std::invalid_argument);
}

TEST_CASE("triangle inequality and unitary invariance, sampled") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(4);
    const ComplexMatrix a = random_matrix(rng, n, n);
    const ComplexMatrix b = random_matrix(rng, n, n);
    const ComplexMatrix u = random_unitary(rng, n);
    for (double pv : {1.0, 1.5, 2.0, 3.0}) {
      const PExponent p = PExponent::finite(pv);
      CHECK(schatten_norm(add(a, b), p) <=
            schatten_norm(a, p) + schatten_norm(b, p) + 1e-10);
      CHECK(std::abs(schatten_norm(matmul(matmul(u, a), adjoint(u)), p) -
                     schatten_norm(a, p)) <= 1e-9);
    }
  }
}
