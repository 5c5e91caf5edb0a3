#include "schatlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schatlab/directed_system.hpp"
#include "schatlab/group_rep.hpp"
#include "schatlab/json_io.hpp"
#include "schatlab/linalg.hpp"
#include "schatlab/measure_space.hpp"
#include "schatlab/multiplication_rep.hpp"
#include "schatlab/oracles.hpp"
#include "schatlab/sampling.hpp"
#include "schatlab/schatten.hpp"

namespace schatlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<PExponent> full_grid() {
  return {PExponent::finite(1.0), PExponent::finite(1.5),
          PExponent::finite(2.0), PExponent::finite(3.0),
          PExponent::infinity()};
}

/// Naive sequence-space norm, the independent reference for the lattice
/// check: direct summation, no scaling tricks.
double lp_norm(std::span<const Complex> values, PExponent p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (const Complex& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (const Complex& v : values) {
    const double a = std::abs(v);
    if (a > 0.0) s += std::pow(a, p.value());
  }
  return s == 0.0 ? 0.0 : std::pow(s, 1.0 / p.value());
}

}  // namespace

bool AcceptanceReport::all_pass() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.pass; });
}

CriterionResult check_lattice_norms(std::uint64_t seed) {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(seed, "lattice-norms"));
  const int n_max = 20;
  const MeasureSpace lattice = integer_lattice(n_max);
  const auto grid = full_grid();

  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> values(2 * n_max + 1);
    for (auto& v : values)
      v = rng.bernoulli(0.2) ? Complex(0.0, 0.0) : rng.complex_in_box(2.0);

    SimpleFunction f;
    for (int n = -n_max; n <= n_max; ++n)
      f.atom_values.emplace(std::to_string(n), values[n + n_max]);
    const OperatorTruncation trunc =
        build_truncation(lattice, f, TruncationSchedule::atoms_only());

    for (PExponent p : grid) {
      const double lhs = schatten_norm(trunc.matrix, p);
      const double rhs = lp_norm(values, p);
      const double rel =
          rhs == 0.0 ? std::fabs(lhs) : std::fabs(lhs - rhs) / rhs;
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-12 && verify_lemma1(n_max, values, p);
    }
  }

  CriterionResult r;
  r.name = "lattice_norms";
  r.runtime_ok = seconds_since(t0) < 10.0;
  r.measured = worst;
  r.tolerance = 1e-12;
  r.pass = ok && r.runtime_ok;
  r.details =
      "200 random sequences on {-20..20} at p in {1,1.5,2,3,inf}: worst "
      "relative gap between the diagonal-window norm and the sequence norm "
      "is " +
      fmt(worst) + " (budget 10 s)";
  return r;
}

CriterionResult check_indicator_divergence() {
  const auto t0 = Clock::now();
  const MeasureSpace space(
      {}, {DiffusePiece{{0.0, 1.0}, {DensitySegment{{0.0, 1.0}, 1.0}}}});
  const SimpleFunction f = SimpleFunction::indicator_of_piece({0.0, 1.0});

  bool ok = true;
  double worst_partial = 0.0;
  std::vector<SchedulePoint> points;
  for (long long m : default_mode_family()) {
    const double partial =
        trace_power_partial(space, f, 1.0, default_schedule(space, m));
    const double expected = static_cast<double>(2 * m + 1);
    worst_partial = std::max(worst_partial, std::fabs(partial - expected));
    points.push_back({static_cast<double>(m), partial});
  }
  ok = ok && worst_partial <= 1e-12;

  const DivergenceDiagnosis diag = diagnose_divergence(points);
  const double slope_gap = std::fabs(diag.slope - 2.0);
  ok = ok && diag.diverges && slope_gap <= 1e-9;

  const MembershipVerdict v = classify_numeric(space, f, 1.0);
  ok = ok && !v.member && v.reason == NotMemberReason::PSumDiverges;

  CriterionResult r;
  r.name = "indicator_divergence";
  r.runtime_ok = seconds_since(t0) < 1.0;
  r.measured = std::max(worst_partial, slope_gap);
  r.tolerance = 1e-9;
  r.pass = ok && r.runtime_ok;
  r.details =
      "unit-density indicator at p=1: window sums match 2M+1 within " +
      fmt(worst_partial) + ", growth slope off by " + fmt(slope_gap) +
      ", verdict " + (v.member ? "member" : "not a member") +
      " (budget 1 s)";
  return r;
}

CriterionResult check_support_dichotomy(std::uint64_t seed) {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(seed, "support-dichotomy"));
  const double ps[] = {1.0, 2.0, 3.0};

  int mismatches = 0;
  int inconclusive = 0;
  double worst_norm_gap = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const SampledModel model = random_mixed_model(rng);
    for (double p : ps) {
      const MembershipVerdict exact =
          classify_exact(model.space, model.function, PExponent::finite(p));
      if (exact.member != !model.diffuse_support) {
        ++mismatches;
        continue;
      }
      try {
        const MembershipVerdict numeric =
            classify_numeric(model.space, model.function, p);
        if (numeric.member != exact.member) {
          ++mismatches;
        } else if (numeric.member) {
          const double scale = std::max(exact.norm, 1.0);
          worst_norm_gap = std::max(
              worst_norm_gap, std::fabs(numeric.norm - exact.norm) / scale);
        }
      } catch (const InconclusiveDiagnostics&) {
        ++inconclusive;
      }
    }
  }

  CriterionResult r;
  r.name = "support_dichotomy";
  r.runtime_ok = seconds_since(t0) < 60.0;
  r.measured = static_cast<double>(mismatches + inconclusive);
  r.tolerance = 0.0;
  r.pass = mismatches == 0 && inconclusive == 0 && worst_norm_gap <= 1e-12 &&
           r.runtime_ok;
  r.details = "500 random mixed spaces at p in {1,2,3}: " +
              std::to_string(mismatches) + " exact/numeric disagreements, " +
              std::to_string(inconclusive) +
              " inconclusive, worst member-norm gap " + fmt(worst_norm_gap) +
              " (budget 60 s)";
  return r;
}

CriterionResult check_invariant_mass(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "invariant-mass"));

  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 24));
    const bool intend_equal = rng.bernoulli(0.5);
    const double c = rng.uniform(0.25, 4.0);
    std::vector<double> masses(n);
    for (double& m : masses) m = intend_equal ? c : rng.uniform(0.25, 4.0);

    bool expect_equal = true;
    for (double m : masses) expect_equal = expect_equal && m == masses[0];

    const GroupInvarianceVerdict v = check_group_invariance(n, masses);
    if (v.invariant_counting != expect_equal) ++failures;
    if (expect_equal && v.scale != masses[0]) ++failures;
  }

  CriterionResult r;
  r.name = "invariant_mass";
  r.measured = static_cast<double>(failures);
  r.tolerance = 0.0;
  r.pass = failures == 0;
  r.details =
      "200 singleton-mass group models of order up to 24: invariant-counting "
      "verdict and exact scale failed " +
      std::to_string(failures) + " times";
  return r;
}

CriterionResult check_norm_inequalities(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "norm-inequalities"));
  const auto grid = full_grid();
  const std::size_t g = grid.size();  // duals pair up as i <-> g-1-i

  double worst_slack = -1.0;  // max of lhs - rhs over every inequality
  double worst_witness = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const ComplexMatrix a = random_matrix(rng, m, n);
    const ComplexMatrix b = random_matrix(rng, m, n);

    const std::vector<double> sa = svd_values(a);
    const std::vector<double> sb = svd_values(b);
    const std::vector<double> sab = svd_values(add(a, b));
    std::vector<double> na(g), nb(g), nab(g);
    for (std::size_t i = 0; i < g; ++i) {
      na[i] = schatten_norm_from_values(sa, grid[i]);
      nb[i] = schatten_norm_from_values(sb, grid[i]);
      nab[i] = schatten_norm_from_values(sab, grid[i]);
    }

    const double pairing = std::abs(hs_inner(a, b));
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t k = i + 1; k < g; ++k)
        worst_slack = std::max(worst_slack, na[k] - na[i]);
      worst_slack = std::max(worst_slack, nab[i] - (na[i] + nb[i]));
      worst_slack = std::max(worst_slack, pairing - na[i] * nb[g - 1 - i]);
    }

    const std::size_t k1 = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const std::size_t k2 = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const ComplexMatrix x = random_matrix(rng, k1, m);
    const ComplexMatrix y = random_matrix(rng, n, k2);
    const double x_op = operator_norm(x);
    const double y_op = operator_norm(y);
    const std::vector<double> sxay = svd_values(matmul(matmul(x, a), y));
    for (std::size_t i = 0; i < g; ++i) {
      worst_slack = std::max(worst_slack, schatten_norm_from_values(sxay, grid[i]) -
                                              x_op * na[i] * y_op);
      ok = ok && verify_ideal_bound(x, a, y, grid[i]);
    }

    for (double p : {1.5, 2.0, 3.0}) {
      const double norm_p = schatten_norm_from_values(sa, PExponent::finite(p));
      if (norm_p == 0.0) continue;
      const HolderWitness w = holder_witness(a, PExponent::finite(p));
      worst_witness =
          std::max(worst_witness, std::fabs(w.attained - norm_p) / norm_p);
      const double unit = schatten_norm(w.b, PExponent::finite(p).dual());
      worst_witness = std::max(worst_witness, std::fabs(unit - 1.0));
    }
  }
  ok = ok && worst_slack <= 1e-9 && worst_witness <= 1e-8;

  CriterionResult r;
  r.name = "norm_inequalities";
  r.measured = worst_slack;
  r.tolerance = 1e-9;
  r.pass = ok;
  r.details =
      "1000 random matrices up to 8x8: worst slack across monotonicity, "
      "triangle, pairing and ideal bounds is " +
      fmt(worst_slack) + "; dual witness off by " + fmt(worst_witness) +
      " relative (tolerance 1e-8)";
  return r;
}

CriterionResult check_svd_cross(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "svd-cross"));

  double worst_eig = 0.0;
  double worst_unitary = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform_int(1, 6));
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    const ComplexMatrix a = random_matrix(rng, m, n);

    const std::vector<double> s = svd_values(a);
    const ComplexMatrix gram =
        n <= m ? matmul(adjoint(a), a) : matmul(a, adjoint(a));
    const std::vector<double> lam = hermitian_psd_eigenvalues(gram);
    ok = ok && lam.size() == s.size();

    double scale = 1e-12;
    if (!lam.empty()) scale = std::max(scale, lam[0]);
    if (!s.empty()) scale = std::max(scale, s[0] * s[0]);
    for (std::size_t i = 0; i < std::min(lam.size(), s.size()); ++i)
      worst_eig = std::max(worst_eig,
                           std::fabs(s[i] * s[i] - lam[i]) / scale);

    const ComplexMatrix u = random_unitary(rng, m);
    const ComplexMatrix v = random_unitary(rng, n);
    const std::vector<double> s2 = svd_values(matmul(matmul(u, a), v));
    for (std::size_t i = 0; i < s.size(); ++i)
      worst_unitary = std::max(worst_unitary, std::fabs(s2[i] - s[i]));
  }
  ok = ok && worst_eig <= 1e-10 && worst_unitary <= 1e-10;

  CriterionResult r;
  r.name = "svd_cross_check";
  r.measured = worst_eig;
  r.tolerance = 1e-10;
  r.pass = ok;
  r.details =
      "500 random matrices up to 6x6: squared singular values vs the "
      "characteristic-polynomial eigenvalues of the Gram matrix differ by " +
      fmt(worst_eig) + " relative; unitary invariance off by " +
      fmt(worst_unitary);
  return r;
}

CriterionResult check_group_algebra(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "group-algebra"));

  std::vector<std::pair<std::string, FiniteGroup>> groups;
  for (std::size_t n = 1; n <= 8; ++n)
    groups.emplace_back("Z/" + std::to_string(n), FiniteGroup::cyclic(n));
  groups.emplace_back("S3", FiniteGroup::symmetric3());
  groups.emplace_back("D4", FiniteGroup::dihedral(4));

  double worst = 0.0;
  int rank_failures = 0;
  const PExponent p2 = PExponent::finite(2.0);
  for (const auto& [name, g] : groups) {
    const UnitaryRep reg = UnitaryRep::regular(g);
    for (int trial = 0; trial < 100; ++trial) {
      const GroupFunction f = random_group_function(rng, g);
      const GroupFunction h = random_group_function(rng, g);
      const ComplexMatrix lhs = induce(reg, convolve(g, f, h));
      const ComplexMatrix rhs = matmul(induce(reg, f), induce(reg, h));
      worst = std::max(worst, max_abs_entry(sub(lhs, rhs)));
      const ComplexMatrix star = induce(reg, involution(g, f));
      worst = std::max(worst, max_abs_entry(sub(star, adjoint(induce(reg, f)))));
    }

    const auto expect_kernel = [&](const UnitaryRep& rep,
                                   std::size_t expected) {
      const PullbackIdeal ideal = pullback_ideal(rep, p2);
      if (ideal.kernel_basis.size() != expected ||
          ideal.kernel_basis.size() + ideal.quotient_dim != g.order())
        ++rank_failures;
    };
    expect_kernel(reg, 0);
    expect_kernel(UnitaryRep::trivial(g), g.order() - 1);
    if (name.starts_with("Z/")) {
      expect_kernel(UnitaryRep::dft_diagonal(g.order()), 0);
      if (g.order() % 2 == 0) {
        std::vector<Complex> sign(g.order());
        for (std::size_t k = 0; k < g.order(); ++k)
          sign[k] = (k % 2 == 0) ? 1.0 : -1.0;
        expect_kernel(UnitaryRep::one_dimensional(g, std::move(sign)),
                      g.order() - 1);
      }
    } else {
      // reflections negate, rotations fix: the parity character
      std::vector<Complex> sign(g.order());
      for (std::size_t k = 0; k < g.order(); ++k)
        sign[k] = (k < g.order() / 2) ? 1.0 : -1.0;
      expect_kernel(UnitaryRep::one_dimensional(g, std::move(sign)),
                    g.order() - 1);
    }
  }
  const bool ok = worst <= 1e-9 && rank_failures == 0;

  CriterionResult r;
  r.name = "group_algebra_map";
  r.measured = worst;
  r.tolerance = 1e-9;
  r.pass = ok;
  r.details =
      "cyclic orders 1..8, S3, D4 with 100 random pairs each: worst entry "
      "gap between convolution/involution images and matrix "
      "products/adjoints is " +
      fmt(worst) + "; kernel dimensions missed rank-nullity " +
      std::to_string(rank_failures) + " times";
  return r;
}

CriterionResult check_commuting_grid() {
  const auto grid = full_grid();

  const MeasureSpace space(
      {{"a", 1.0}, {"b", 2.0}},
      {DiffusePiece{{0.0, 1.0}, {DensitySegment{{0.0, 1.0}, 1.0}}}});
  const SequenceContext mctx =
      SequenceContext::measure_context(space, default_schedule(space, 2));
  const SequenceContext gctx =
      SequenceContext::group_context(UnitaryRep::regular(FiniteGroup::cyclic(4)));

  bool ok = true;
  double worst = 0.0;
  std::size_t columns = 0;
  for (const SequenceContext* ctx : {&mctx, &gctx}) {
    const Fig2Report rep = verify_fig2(*ctx, grid);
    ok = ok && rep.pass() && rep.all_blocks_commute && rep.coherence.exact;
    for (const auto& col : rep.columns) ok = ok && col.exactness.pass();
    for (const auto& m : rep.adjacent) ok = ok && m.squares_commute;
    worst = std::max({worst, rep.max_block_residual,
                      rep.coherence.max_residual});
    columns += rep.columns.size();
  }
  ok = ok && worst == 0.0;

  CriterionResult r;
  r.name = "commuting_grid";
  r.measured = worst;
  r.tolerance = 0.0;
  r.pass = ok;
  r.details =
      "atoms+diffuse window and order-4 cyclic regular window over p in "
      "{1,1.5,2,3,inf} (" +
      std::to_string(columns) +
      " columns incl. the collapsed endpoints): all blocks commute with "
      "residual " +
      fmt(worst) + ", every column exact, composition coherent";
  return r;
}

CriterionResult check_functor_laws(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "functor-laws"));
  const auto grid = full_grid();

  const std::vector<UnitaryRep> bases = {
      UnitaryRep::regular(FiniteGroup::cyclic(4)),
      UnitaryRep::regular(FiniteGroup::cyclic(6)),
      UnitaryRep::regular(FiniteGroup::symmetric3())};

  bool ok = true;
  double worst = 0.0;
  std::size_t operators = 0;
  for (int pair = 0; pair < 50; ++pair) {
    const UnitaryRep& rep = bases[static_cast<std::size_t>(pair) % bases.size()];
    const std::size_t d = rep.dimension();
    const ComplexMatrix u1 = random_unitary(rng, d);
    const ComplexMatrix u2 = random_unitary(rng, d);
    const std::vector<ComplexMatrix> samples = {random_matrix(rng, d, d),
                                                random_matrix(rng, d, d)};
    const FunctorLawReport rep_report =
        verify_functor_laws(rep, u1, u2, samples, grid);
    ok = ok && rep_report.pass();
    worst = std::max({worst, rep_report.identity_residual,
                      rep_report.composition_residual,
                      rep_report.max_norm_deviation});
    operators += samples.size();
  }

  CriterionResult r;
  r.name = "functor_laws";
  r.measured = worst;
  r.tolerance = 1e-9;
  r.pass = ok && worst <= 1e-9;
  r.details =
      "50 unitary-intertwiner pairs on regular windows of dimension 4 and 6: "
      "identity/composition residuals and norm drift across " +
      std::to_string(operators) + " operators peak at " + fmt(worst);
  return r;
}

namespace {

std::vector<CriterionResult> run_nine(std::uint64_t seed) {
  return {check_lattice_norms(seed),     check_indicator_divergence(),
          check_support_dichotomy(seed), check_invariant_mass(seed),
          check_norm_inequalities(seed), check_svd_cross(seed),
          check_group_algebra(seed),     check_commuting_grid(),
          check_functor_laws(seed)};
}

}  // namespace

AcceptanceReport run_acceptance(std::uint64_t seed) {
  AcceptanceReport report;
  report.seed = seed;
  report.criteria = run_nine(seed);

  const std::string first = criteria_to_json(report.criteria).dump();
  const std::string second = criteria_to_json(run_nine(seed)).dump();

  CriterionResult det;
  det.name = "determinism";
  det.pass = first == second;
  det.measured = det.pass ? 0.0 : 1.0;
  det.tolerance = 0.0;
  det.details =
      det.pass ? "two same-seed passes serialized to identical bytes (" +
                     std::to_string(first.size()) + " bytes)"
               : "same-seed passes produced different bytes";
  report.criteria.push_back(std::move(det));
  return report;
}

}  // namespace schatlab
