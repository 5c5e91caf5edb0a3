#include "schatlab/directed_system.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace schatlab {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kContractTol = 1e-10;
constexpr double kLawTol = 1e-9;

std::string next_context_id(const char* kind, std::size_t left,
                            std::size_t side) {
  static std::atomic<unsigned long long> counter{0};
  std::ostringstream s;
  s << kind << "#" << counter.fetch_add(1) << "(left=" << left
    << ",side=" << side << ")";
  return s.str();
}

std::vector<Complex> vectorize(const ComplexMatrix& m) {
  return m.data();  // row-major already
}

ComplexMatrix unvectorize(const ComplexMatrix& columns, std::size_t col,
                          std::size_t side) {
  ComplexMatrix m(side, side);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j)
      m.at(i, j) = columns.at(i * side + j, col);
  return m;
}

double entrywise_max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("entrywise comparison: shape mismatch");
  if (a.empty()) return 0.0;
  return max_abs_entry(sub(a, b));
}

}  // namespace

SequenceContext SequenceContext::measure_context(
    const MeasureSpace& space, const TruncationSchedule& sched) {
  SequenceContext ctx;

  const OperatorTruncation zero =
      build_truncation(space, SimpleFunction{}, sched);
  ctx.mid_side_ = zero.matrix.rows();
  const std::size_t mid2 = ctx.mid_side_ * ctx.mid_side_;
  const std::size_t natoms = space.atoms().size();

  if (natoms > 0) {
    ctx.connecting_ = ComplexMatrix(mid2, natoms);
    for (std::size_t a = 0; a < natoms; ++a) {
      std::vector<Complex> coord(natoms, Complex(0.0, 0.0));
      coord[a] = Complex(1.0, 0.0);
      ctx.left_basis_.push_back(std::move(coord));

      const SimpleFunction indicator =
          SimpleFunction::indicator_of_atom(space.atoms()[a].label);
      const OperatorTruncation tr = build_truncation(space, indicator, sched);
      const std::vector<Complex> v = vectorize(tr.matrix);
      for (std::size_t i = 0; i < mid2; ++i) ctx.connecting_.at(i, a) = v[i];
    }
    ctx.quotient_basis_ = nullspace_basis(adjoint(ctx.connecting_), kRankTol);
    ctx.quotient_dim_ =
        ctx.quotient_basis_.empty() ? 0 : ctx.quotient_basis_.cols();
  } else {
    ctx.quotient_basis_ = ComplexMatrix::identity(mid2);
    ctx.quotient_dim_ = mid2;
  }

  ctx.id_ = next_context_id("measure", natoms, ctx.mid_side_);
  return ctx;
}

SequenceContext SequenceContext::group_context(const UnitaryRep& rep) {
  SequenceContext ctx;
  const std::size_t n = rep.group().order();
  const std::size_t d = rep.dimension();
  ctx.mid_side_ = d;
  const std::size_t mid2 = d * d;

  ComplexMatrix map(mid2, n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::vector<Complex> v = vectorize(rep.matrix(x));
    for (std::size_t i = 0; i < mid2; ++i) map.at(i, x) = v[i];
  }

  const QrPivoted qr = qr_column_pivoted(map, kRankTol);
  ctx.connecting_ = ComplexMatrix(mid2, qr.rank);
  for (std::size_t c = 0; c < qr.rank; ++c) {
    const std::size_t element = qr.perm[c];
    std::vector<Complex> coord(n, Complex(0.0, 0.0));
    coord[element] = Complex(1.0, 0.0);
    ctx.left_basis_.push_back(std::move(coord));
    for (std::size_t i = 0; i < mid2; ++i)
      ctx.connecting_.at(i, c) = map.at(i, element);
  }

  if (qr.rank > 0) {
    ctx.quotient_basis_ = nullspace_basis(adjoint(ctx.connecting_), kRankTol);
    ctx.quotient_dim_ =
        ctx.quotient_basis_.empty() ? 0 : ctx.quotient_basis_.cols();
  } else {
    ctx.quotient_basis_ = ComplexMatrix::identity(mid2);
    ctx.quotient_dim_ = mid2;
  }

  ctx.id_ = next_context_id("group", ctx.left_basis_.size(), d);
  return ctx;
}

SequenceNode build_node(const SequenceContext& ctx, PExponent p) {
  SequenceNode node;
  node.p = p;
  node.left_basis = ctx.left_basis();
  node.mid_side = ctx.mid_side();
  node.mid_space_dim = ctx.mid_space_dim();
  node.connecting_map = ctx.connecting();
  node.quotient_basis = ctx.quotient_basis();
  node.quotient_dim = ctx.quotient_dim();
  node.context_id = ctx.id();

  if (!node.connecting_map.empty() &&
      matrix_rank(node.connecting_map, kRankTol) != node.left_basis.size())
    throw std::domain_error(
        "build_node: connecting map is rank deficient; the left space still "
        "contains kernel directions");
  return node;
}

SystemMorphism build_morphism(const SequenceNode& source,
                              const SequenceNode& target,
                              std::span<const ComplexMatrix> extra_samples) {
  if (source.context_id != target.context_id)
    throw std::invalid_argument("build_morphism: context mismatch");
  if (!(source.p <= target.p))
    throw std::invalid_argument("build_morphism: requires source p <= target p");

  SystemMorphism m;
  m.source_p = source.p;
  m.target_q = target.p;
  const std::size_t left_dim = source.left_basis.size();
  if (left_dim > 0) m.left_map = ComplexMatrix::identity(left_dim);
  if (source.quotient_dim > 0)
    m.right_map = ComplexMatrix::identity(source.quotient_dim);

  // Square D0 -> D1: connecting_q . left = mid . connecting_p, with identity
  // left and mid components. Square D1 -> D2 likewise on the quotient
  // coordinates.
  double residual = 0.0;
  residual = std::max(
      residual, entrywise_max_diff(source.connecting_map,
                                   target.connecting_map));
  residual = std::max(
      residual,
      entrywise_max_diff(source.quotient_basis, target.quotient_basis));
  m.max_residual = residual;
  m.squares_commute = residual == 0.0;

  auto certify = [&](const ComplexMatrix& op, std::string what) {
    ContractionSample s;
    s.what = std::move(what);
    const std::vector<double> sv = svd_values(op);
    s.norm_p = schatten_norm_from_values(sv, source.p);
    s.norm_q = schatten_norm_from_values(sv, target.p);
    s.contractive = s.norm_q <= s.norm_p + kContractTol;
    m.certificates.push_back(std::move(s));
  };

  for (std::size_t c = 0; c < left_dim; ++c)
    certify(unvectorize(source.connecting_map, c, source.mid_side),
            "basis[" + std::to_string(c) + "]");
  for (std::size_t s = 0; s < extra_samples.size(); ++s) {
    if (extra_samples[s].rows() != source.mid_side ||
        extra_samples[s].cols() != source.mid_side)
      throw std::invalid_argument(
          "build_morphism: sample shape must match the mid space");
    certify(extra_samples[s], "sample[" + std::to_string(s) + "]");
  }
  return m;
}

ExactnessReport verify_exactness(const SequenceNode& node) {
  ExactnessReport r;
  const std::size_t left_dim = node.left_basis.size();
  r.rank = node.connecting_map.empty()
               ? 0
               : matrix_rank(node.connecting_map, kRankTol);
  r.injective = r.rank == left_dim;
  r.quotient_consistent =
      node.quotient_dim == node.mid_space_dim - r.rank;

  if (node.connecting_map.empty() || node.quotient_basis.empty()) {
    r.kill_residual = 0.0;
    r.quotient_kills_image = true;
    return r;
  }
  const ComplexMatrix killed =
      matmul(adjoint(node.quotient_basis), node.connecting_map);
  r.kill_residual = max_abs_entry(killed);
  const double scale = std::max(1.0, max_abs_entry(node.connecting_map));
  r.quotient_kills_image = r.kill_residual <= kRankTol * scale;
  return r;
}

DirectedSystem build_directed_system(const SequenceContext& ctx,
                                     std::span<const PExponent> grid) {
  if (grid.empty())
    throw std::invalid_argument("build_directed_system: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i - 1] <= grid[i]))
      throw std::invalid_argument(
          "build_directed_system: grid must be non-decreasing");

  DirectedSystem sys;
  sys.nodes.reserve(grid.size());
  for (PExponent p : grid) sys.nodes.push_back(build_node(ctx, p));
  for (std::size_t i = 0; i < sys.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < sys.nodes.size(); ++j)
      sys.morphisms.push_back(
          {i, j, build_morphism(sys.nodes[i], sys.nodes[j])});
  return sys;
}

namespace {

const SystemMorphism& find_morphism(const DirectedSystem& sys,
                                    std::size_t from, std::size_t to) {
  for (const auto& m : sys.morphisms)
    if (m.from == from && m.to == to) return m.morphism;
  throw std::logic_error("directed system is missing a morphism");
}

double compose_residual(const ComplexMatrix& second, const ComplexMatrix& first,
                        const ComplexMatrix& direct) {
  if (direct.empty()) return 0.0;
  return max_abs_entry(sub(matmul(second, first), direct));
}

}  // namespace

CoherenceReport verify_coherence(const DirectedSystem& sys) {
  CoherenceReport r;
  const std::size_t n = sys.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const SystemMorphism& ij = find_morphism(sys, i, j);
        const SystemMorphism& jk = find_morphism(sys, j, k);
        const SystemMorphism& ik = find_morphism(sys, i, k);
        r.max_residual = std::max(
            r.max_residual,
            compose_residual(jk.left_map, ij.left_map, ik.left_map));
        r.max_residual = std::max(
            r.max_residual,
            compose_residual(jk.right_map, ij.right_map, ik.right_map));
        ++r.triples;
      }
    }
  }
  r.exact = r.max_residual == 0.0;
  return r;
}

bool Fig2Report::pass() const {
  if (!all_blocks_commute || !coherence.exact) return false;
  for (const auto& col : columns)
    if (!col.exactness.pass()) return false;
  for (const auto& m : adjacent)
    for (const auto& c : m.certificates)
      if (!c.contractive) return false;
  return true;
}

Fig2Report verify_fig2(const SequenceContext& ctx,
                       std::span<const PExponent> grid) {
  if (grid.empty()) throw std::invalid_argument("verify_fig2: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i - 1] <= grid[i]))
      throw std::invalid_argument("verify_fig2: grid must be non-decreasing");

  Fig2Report report;
  for (PExponent p : grid) {
    if (p.is_infinite()) continue;
    Fig2Column col;
    col.tag = "E_" + p.to_string();
    col.node = build_node(ctx, p);
    col.exactness = verify_exactness(col.node);
    report.columns.push_back(std::move(col));
  }
  const bool has_inf =
      !grid.empty() && grid.back().is_infinite();
  if (has_inf) {
    for (const char* tag : {"E_0", "E_inf"}) {
      Fig2Column col;
      col.tag = tag;
      col.collapsed_endpoint = true;
      col.node = build_node(ctx, PExponent::infinity());
      col.exactness = verify_exactness(col.node);
      report.columns.push_back(std::move(col));
    }
  }
  if (report.columns.empty())
    throw std::invalid_argument("verify_fig2: grid selects no columns");

  report.all_blocks_commute = true;
  for (std::size_t i = 0; i + 1 < report.columns.size(); ++i) {
    SystemMorphism m = build_morphism(report.columns[i].node,
                                      report.columns[i + 1].node);
    report.max_block_residual =
        std::max(report.max_block_residual, m.max_residual);
    report.all_blocks_commute =
        report.all_blocks_commute && m.squares_commute;
    report.adjacent.push_back(std::move(m));
  }

  // Coherence across the full column list, endpoints included.
  DirectedSystem sys;
  for (const auto& col : report.columns) sys.nodes.push_back(col.node);
  for (std::size_t i = 0; i < sys.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < sys.nodes.size(); ++j)
      sys.morphisms.push_back(
          {i, j, build_morphism(sys.nodes[i], sys.nodes[j])});
  report.coherence = verify_coherence(sys);
  return report;
}

FunctorLawReport verify_functor_laws(const UnitaryRep& rep,
                                     const ComplexMatrix& u1,
                                     const ComplexMatrix& u2,
                                     std::span<const ComplexMatrix> samples,
                                     std::span<const PExponent> grid) {
  if (!is_unitary(u1, 1e-10) || !is_unitary(u2, 1e-10))
    throw std::invalid_argument(
        "verify_functor_laws: intertwiners must be unitary");

  const UnitaryRep rep2 = conjugated(rep, u1);
  const UnitaryRep rep3 = conjugated(rep2, u2);
  if (!verify_intertwiner(u1, rep, rep2) ||
      !verify_intertwiner(u2, rep2, rep3))
    throw std::invalid_argument(
        "verify_functor_laws: conjugation did not produce intertwiners");

  FunctorLawReport r;
  const std::size_t d = rep.dimension();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix u21 = matmul(u2, u1);
  const ComplexMatrix u1h = adjoint(u1);
  const ComplexMatrix u2h = adjoint(u2);
  const ComplexMatrix u21h = adjoint(u21);

  for (const ComplexMatrix& t : samples) {
    if (t.rows() != d || t.cols() != d)
      throw std::invalid_argument(
          "verify_functor_laws: sample shape must match the representation");

    const ComplexMatrix ident = matmul(matmul(id, t), adjoint(id));
    r.identity_residual =
        std::max(r.identity_residual, max_abs_entry(sub(ident, t)));

    const ComplexMatrix one_step = matmul(matmul(u21, t), u21h);
    const ComplexMatrix two_step =
        matmul(matmul(u2, matmul(matmul(u1, t), u1h)), u2h);
    r.composition_residual = std::max(r.composition_residual,
                                      max_abs_entry(sub(one_step, two_step)));

    const std::vector<double> sv_t = svd_values(t);
    const std::vector<double> sv_c = svd_values(matmul(matmul(u1, t), u1h));
    for (PExponent p : grid) {
      const double np = schatten_norm_from_values(sv_t, p);
      const double nc = schatten_norm_from_values(sv_c, p);
      const double dev =
          np == 0.0 ? nc : std::abs(np - nc) / np;
      r.max_norm_deviation = std::max(r.max_norm_deviation, dev);
    }
    ++r.samples_checked;
  }

  r.identity_ok = r.identity_residual <= kLawTol;
  r.composition_ok = r.composition_residual <= kLawTol;
  r.norms_ok = r.max_norm_deviation <= kLawTol;
  return r;
}

}  // namespace schatlab
