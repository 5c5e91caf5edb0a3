#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "schatlab/directed_system.hpp"
#include "schatlab/sampling.hpp"

using namespace schatlab;

namespace {

SequenceContext small_measure_context() {
  MeasureSpace space({{"a", 1.0}, {"b", 2.0}},
                     {{{0.0, 1.0}, {{{0.0, 1.0}, 1.0}}}});
  return SequenceContext::measure_context(space, default_schedule(space, 2));
}

const PExponent kGrid[] = {PExponent::finite(1.0), PExponent::finite(1.5),
                           PExponent::finite(2.0)};

}  // namespace

TEST_CASE("measure context dimensions") {
  const SequenceContext ctx = small_measure_context();
  CHECK(ctx.left_dim() == 2);
  CHECK(ctx.mid_side() == 2 + 5);
  CHECK(ctx.mid_space_dim() == 49);
  CHECK(ctx.quotient_dim() == 47);
  CHECK(ctx.connecting().rows() == 49);
  CHECK(ctx.connecting().cols() == 2);
  CHECK_FALSE(ctx.id().empty());

  // quotient columns are orthonormal and annihilate the image
  const ComplexMatrix q = ctx.quotient_basis();
  CHECK(max_abs_entry(sub(matmul(adjoint(q), q),
                          ComplexMatrix::identity(47))) <= 1e-12);
  CHECK(max_abs_entry(matmul(adjoint(q), ctx.connecting())) <= 1e-10);
}

TEST_CASE("nodes, morphisms, exactness") {
  const SequenceContext ctx = small_measure_context();
  const SequenceNode n1 = build_node(ctx, PExponent::finite(1.0));
  const SequenceNode n2 = build_node(ctx, PExponent::finite(2.0));
  CHECK(n1.context_id == ctx.id());
  CHECK(n1.quotient_dim == 47);

  const ExactnessReport ex = verify_exactness(n1);
  CHECK(ex.pass());
  CHECK(ex.rank == 2);
  CHECK(ex.kill_residual <= 1e-10);

  const SystemMorphism m = build_morphism(n1, n2);
  CHECK(m.squares_commute);
  CHECK(m.max_residual == 0.0);
  CHECK(m.mid_identity);
  REQUIRE_FALSE(m.certificates.empty());
  for (const ContractionSample& c : m.certificates) {
    CHECK(c.contractive);
    CHECK(c.norm_q <= c.norm_p + 1e-12);
  }

  CHECK_THROWS_AS(build_morphism(n2, n1), std::invalid_argument);
}

TEST_CASE("corrupted nodes fail exactness") {
  const SequenceContext ctx = small_measure_context();

  SequenceNode bent = build_node(ctx, PExponent::finite(2.0));
  bent.quotient_basis.at(0, 0) += Complex(0.5, 0.0);
  bent.quotient_basis.at(1, 0) += Complex(0.5, 0.0);
  const ExactnessReport broken = verify_exactness(bent);
  CHECK_FALSE(broken.pass());

  SequenceNode flat = build_node(ctx, PExponent::finite(2.0));
  flat.connecting_map = ComplexMatrix(flat.mid_space_dim, 2);
  const ExactnessReport collapsed = verify_exactness(flat);
  CHECK_FALSE(collapsed.injective);
  CHECK_FALSE(collapsed.pass());
}

TEST_CASE("directed system coherence is exact on shared coordinates") {
  const SequenceContext ctx = small_measure_context();
  const DirectedSystem sys = build_directed_system(ctx, kGrid);
  REQUIRE(sys.nodes.size() == 3);
  CHECK(sys.morphisms.size() == 3);

  const CoherenceReport coh = verify_coherence(sys);
  CHECK(coh.exact);
  CHECK(coh.triples == 1);
  CHECK(coh.max_residual == 0.0);

  const PExponent bad[] = {PExponent::finite(2.0), PExponent::finite(1.0)};
  CHECK_THROWS_AS(build_directed_system(ctx, bad), std::invalid_argument);
}

TEST_CASE("grid over the full exponent scale, measure source") {
  const SequenceContext ctx = small_measure_context();
  const PExponent grid[] = {PExponent::finite(1.0), PExponent::finite(1.5),
                            PExponent::finite(2.0), PExponent::finite(3.0),
                            PExponent::infinity()};
  const Fig2Report rep = verify_fig2(ctx, grid);
  REQUIRE(rep.columns.size() == 6);
  CHECK(rep.columns[0].tag == "E_1");
  CHECK(rep.columns[3].tag == "E_3");
  CHECK(rep.columns[4].tag == "E_0");
  CHECK(rep.columns[5].tag == "E_inf");
  CHECK(rep.columns[4].collapsed_endpoint);
  CHECK(rep.columns[5].collapsed_endpoint);
  CHECK_FALSE(rep.columns[0].collapsed_endpoint);
  CHECK(rep.adjacent.size() == 5);
  CHECK(rep.all_blocks_commute);
  CHECK(rep.max_block_residual == 0.0);
  CHECK(rep.pass());
}

TEST_CASE("group context round trip") {
  const UnitaryRep rep = UnitaryRep::regular(FiniteGroup::cyclic(4));
  const SequenceContext ctx = SequenceContext::group_context(rep);
  CHECK(ctx.left_dim() == 4);
  CHECK(ctx.mid_side() == 4);
  CHECK(ctx.quotient_dim() == 12);

  const PExponent grid[] = {PExponent::finite(1.0), PExponent::finite(2.0),
                            PExponent::finite(3.0)};
  const Fig2Report fig = verify_fig2(ctx, grid);
  CHECK(fig.columns.size() == 3);
  CHECK(fig.pass());

  // the trivial rep has a fat kernel; the context quotients it away
  const SequenceContext squeezed =
      SequenceContext::group_context(UnitaryRep::trivial(FiniteGroup::cyclic(3)));
  CHECK(squeezed.left_dim() == 1);
  CHECK(squeezed.mid_side() == 1);
  CHECK(squeezed.quotient_dim() == 0);
  const SequenceNode node = build_node(squeezed, PExponent::finite(2.0));
  CHECK(verify_exactness(node).pass());
}

TEST_CASE("functor laws on conjugated representations") {
  const UnitaryRep rep = UnitaryRep::regular(FiniteGroup::cyclic(4));
  Rng rng(41);
  const ComplexMatrix u1 = random_unitary(rng, 4);
  const ComplexMatrix u2 = random_unitary(rng, 4);
  const std::vector<ComplexMatrix> samples{random_matrix(rng, 4, 4),
                                           random_matrix(rng, 4, 4)};
  const PExponent grid[] = {PExponent::finite(1.0), PExponent::finite(2.0),
                            PExponent::infinity()};
  const FunctorLawReport law = verify_functor_laws(rep, u1, u2, samples, grid);
  CHECK(law.pass());
  CHECK(law.samples_checked == 2);
  CHECK(law.max_norm_deviation <= 1e-9);

  ComplexMatrix shear = ComplexMatrix::identity(4);
  shear.at(0, 1) = Complex(0.7, 0.0);
  CHECK_THROWS_AS(verify_functor_laws(rep, shear, u2, samples, grid),
                  std::invalid_argument);
}
