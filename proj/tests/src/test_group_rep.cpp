#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "schatlab/group_rep.hpp"
#include "schatlab/sampling.hpp"

using namespace schatlab;

namespace {

// smallest loop with identity and inverses that fails associativity:
// (a*b)*b = d while a*(b*b) = a
std::vector<std::vector<std::size_t>> nonassociative_loop() {
  return {{0, 1, 2, 3, 4},
          {1, 0, 3, 4, 2},
          {2, 4, 0, 1, 3},
          {3, 2, 4, 0, 1},
          {4, 3, 1, 2, 0}};
}

GroupFunction from_values(std::vector<Complex> v) {
  GroupFunction f;
  f.values = std::move(v);
  return f;
}

}  // namespace

TEST_CASE("builtin groups") {
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  CHECK(z4.order() == 4);
  CHECK(z4.identity() == 0);
  CHECK(z4.inverse(1) == 3);
  CHECK(z4.op(2, 3) == 1);
  CHECK(z4.labels()[2] == "2");

  const FiniteGroup d3 = FiniteGroup::dihedral(3);
  CHECK(d3.order() == 6);
  CHECK(d3.labels()[0] == "r0");
  CHECK(d3.labels()[3] == "s0");
  // reflections are involutions
  for (std::size_t k = 3; k < 6; ++k) CHECK(d3.op(k, k) == 0);
  CHECK(d3 == FiniteGroup::symmetric3());

  const FiniteGroup v4 =
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(v4.order() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(v4.inverse(k) == k);
}

TEST_CASE("cayley table validation") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}), std::invalid_argument);
  // Latin square without a two-sided identity
  CHECK_THROWS_AS(FiniteGroup({{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup{nonassociative_loop()}, std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 0}}, {"e"}), std::invalid_argument);
}

TEST_CASE("group algebra operations") {
  const FiniteGroup g = FiniteGroup::dihedral(4);
  const GroupFunction f = from_values({Complex(1, 0), Complex(0, 2),
                                       Complex(-1, 1), Complex(0.5, 0),
                                       Complex(0, 0), Complex(2, -1),
                                       Complex(0, 0), Complex(1, 1)});

  // delta at the identity is the convolution unit, on both sides
  const GroupFunction e = delta(g, g.identity());
  const GroupFunction left = convolve(g, e, f);
  const GroupFunction right = convolve(g, f, e);
  for (std::size_t x = 0; x < g.order(); ++x) {
    CHECK(left.values[x] == f.values[x]);
    CHECK(right.values[x] == f.values[x]);
  }

  // deltas convolve along the table
  const GroupFunction prod = convolve(g, delta(g, 3), delta(g, 5));
  for (std::size_t x = 0; x < g.order(); ++x)
    CHECK(prod.values[x] == (x == g.op(3, 5) ? Complex(1, 0) : Complex(0, 0)));

  const GroupFunction star = involution(g, f);
  for (std::size_t x = 0; x < g.order(); ++x)
    CHECK(star.values[x] == std::conj(f.values[g.inverse(x)]));
  const GroupFunction twice = involution(g, star);
  for (std::size_t x = 0; x < g.order(); ++x)
    CHECK(twice.values[x] == f.values[x]);
}

TEST_CASE("representation constructors validate") {
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const UnitaryRep reg = UnitaryRep::regular(z3);
  CHECK(reg.dimension() == 3);

  // swapping pi(1) and pi(2) of Z/3 composes with inversion, still a rep;
  // the same swap on Z/4 genuinely breaks the homomorphism property
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  const UnitaryRep reg4 = UnitaryRep::regular(z4);
  std::vector<ComplexMatrix> twisted{reg4.matrix(0), reg4.matrix(2),
                                     reg4.matrix(1), reg4.matrix(3)};
  CHECK_THROWS_AS(UnitaryRep(z4, twisted), std::invalid_argument);

  std::vector<ComplexMatrix> stretched{
      ComplexMatrix::identity(1),
      ComplexMatrix(1, 1, {Complex(2.0, 0.0)}),
      ComplexMatrix(1, 1, {Complex(0.5, 0.0)})};
  CHECK_THROWS_AS(UnitaryRep(z3, stretched), std::invalid_argument);

  CHECK_THROWS_AS(
      UnitaryRep::one_dimensional(z3, {Complex(1, 0), Complex(1, 0)}),
      std::invalid_argument);

  // sign character of Z/2 and its direct sum with the regular rep
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const UnitaryRep sign =
      UnitaryRep::one_dimensional(z2, {Complex(1, 0), Complex(-1, 0)});
  const UnitaryRep both = UnitaryRep::direct_sum(sign, UnitaryRep::regular(z2));
  CHECK(both.dimension() == 3);
}

TEST_CASE("induce is the group algebra representation") {
  const FiniteGroup g = FiniteGroup::symmetric3();
  const UnitaryRep reg = UnitaryRep::regular(g);
  Rng rng(31);

  CHECK(max_abs_entry(sub(induce(reg, delta(g, g.identity())),
                          ComplexMatrix::identity(6))) == 0.0);

  for (int trial = 0; trial < 8; ++trial) {
    const GroupFunction f = random_group_function(rng, g);
    const GroupFunction h = random_group_function(rng, g);

    // convolution goes to composition
    const ComplexMatrix lhs = induce(reg, convolve(g, f, h));
    const ComplexMatrix rhs = matmul(induce(reg, f), induce(reg, h));
    CHECK(max_abs_entry(sub(lhs, rhs)) <= 1e-12);

    // involution goes to the adjoint
    CHECK(max_abs_entry(sub(induce(reg, involution(g, f)),
                            adjoint(induce(reg, f)))) <= 1e-12);

    // the regular rep is free: Frobenius norm squared is |G| times the
    // squared two-norm of the symbol
    double sq = 0.0;
    for (const Complex& v : f.values) sq += std::norm(v);
    CHECK(schatten_norm(induce(reg, f), PExponent::finite(2.0)) ==
          doctest::Approx(std::sqrt(6.0 * sq)));
  }
}

TEST_CASE("fourier transform intertwines the regular and diagonal models") {
  for (std::size_t n : {2, 3, 5, 8}) {
    const FiniteGroup zn = FiniteGroup::cyclic(n);
    const UnitaryRep reg = UnitaryRep::regular(zn);
    const UnitaryRep dft = UnitaryRep::dft_diagonal(n);

    ComplexMatrix u(n, n);
    const double tau = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        u.at(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                                tau * static_cast<double>(j * k));
    REQUIRE(is_unitary(u, 1e-9));
    CHECK(verify_intertwiner(u, reg, dft));

    Rng rng(32 + n);
    const GroupFunction f = random_group_function(rng, zn);
    for (double pv : {1.0, 2.0, 3.0})
      CHECK(check_unitary_equiv_invariance(reg, dft, u, f,
                                           PExponent::finite(pv)));
  }

  // a unitary that fails to intertwine is rejected rather than measured
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const UnitaryRep reg = UnitaryRep::regular(z3);
  const UnitaryRep dft = UnitaryRep::dft_diagonal(3);
  GroupFunction f = from_values({Complex(1, 0), Complex(0, 1), Complex(2, 0)});
  CHECK_THROWS_AS(check_unitary_equiv_invariance(
                      reg, dft, ComplexMatrix::identity(3), f,
                      PExponent::finite(2.0)),
                  std::invalid_argument);
}

TEST_CASE("pullback ideals across representations") {
  const FiniteGroup z5 = FiniteGroup::cyclic(5);

  const PullbackIdeal reg = pullback_ideal(UnitaryRep::regular(z5),
                                           PExponent::finite(2.0));
  CHECK(reg.kernel_basis.empty());
  CHECK(reg.quotient_dim == 5);

  const PullbackIdeal triv = pullback_ideal(UnitaryRep::trivial(z5),
                                            PExponent::finite(1.0));
  CHECK(triv.kernel_basis.size() == 4);
  CHECK(triv.quotient_dim == 1);
  for (const GroupFunction& k : triv.kernel_basis)
    CHECK(operator_norm(induce(UnitaryRep::trivial(z5), k)) <= 1e-9);
  CHECK_FALSE(triv.note.empty());

  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const UnitaryRep sign =
      UnitaryRep::one_dimensional(z2, {Complex(1, 0), Complex(-1, 0)});
  const PullbackIdeal signed_ideal = pullback_ideal(sign, PExponent::infinity());
  CHECK(signed_ideal.kernel_basis.size() == 1);
  CHECK(signed_ideal.quotient_dim == 1);

  // summing with the regular rep restores injectivity
  const PullbackIdeal summed = pullback_ideal(
      UnitaryRep::direct_sum(sign, UnitaryRep::regular(z2)),
      PExponent::finite(2.0));
  CHECK(summed.kernel_basis.empty());
  CHECK(summed.quotient_dim == 2);
}

TEST_CASE("conjugation produces certified intertwiners") {
  const FiniteGroup g = FiniteGroup::dihedral(3);
  const UnitaryRep reg = UnitaryRep::regular(g);
  Rng rng(33);
  const ComplexMatrix u = random_unitary(rng, 6);
  const UnitaryRep conj_rep = conjugated(reg, u);
  CHECK(verify_intertwiner(u, reg, conj_rep));
  CHECK_FALSE(verify_intertwiner(ComplexMatrix::identity(6), reg, conj_rep));
}
