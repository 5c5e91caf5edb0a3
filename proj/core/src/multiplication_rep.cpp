#include "schatlab/multiplication_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace schatlab {

namespace {

constexpr double kLemma1Tol = 1e-12;
constexpr double kSlopeTolUnit = 1e-10;

struct CellSegment {
  double lo = 0.0;
  double hi = 0.0;
  double density = 0.0;
  Complex value;
};

std::vector<CellSegment> clip_to_cell(
    const std::vector<detail::RefinedPiece>& refined, long long n) {
  const double cell_lo = static_cast<double>(n);
  const double cell_hi = static_cast<double>(n + 1);
  std::vector<CellSegment> out;
  for (const auto& piece : refined) {
    if (piece.interval.hi <= cell_lo || piece.interval.lo >= cell_hi) continue;
    for (const auto& seg : piece.segments) {
      const double lo = std::max(seg.lo, cell_lo);
      const double hi = std::min(seg.hi, cell_hi);
      if (lo < hi) out.push_back({lo, hi, seg.density, seg.value});
    }
  }
  return out;
}

double segments_measure(const std::vector<CellSegment>& segs) {
  double m = 0.0;
  for (const auto& s : segs) m += s.density * (s.hi - s.lo);
  return m;
}

ComplexMatrix transpose_plain(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
  return t;
}

/// One cell's compression block over modes |m| <= M (dimension 2M+1).
ComplexMatrix cell_block(const std::vector<CellSegment>& segs, long long n,
                         long long m_max) {
  const std::size_t dim = static_cast<std::size_t>(2 * m_max + 1);

  // A constant value on the cell's support compresses to a scalar matrix
  // regardless of how the windowed exponentials overlap.
  bool constant = true;
  bool seen = false;
  Complex v0;
  for (const auto& s : segs) {
    if (s.density <= 0.0) continue;
    if (!seen) {
      v0 = s.value;
      seen = true;
    } else if (s.value != v0) {
      constant = false;
      break;
    }
  }
  if (constant) {
    ComplexMatrix b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) b.at(i, i) = v0;
    return b;
  }

  // Both the Gram matrix and the raw operator matrix are Toeplitz in the
  // mode difference k = m' - m; one coefficient per k suffices.
  const std::size_t ncoef = static_cast<std::size_t>(4 * m_max + 1);
  std::vector<Complex> gcoef(ncoef), tcoef(ncoef);

  // Gram coefficients see only the density; merging adjacent equal-density
  // runs keeps full-cell Grams exactly diagonal even when the value
  // partition cuts the cell.
  std::vector<CellSegment> runs;
  for (const auto& s : segs) {
    if (s.density <= 0.0) continue;
    if (!runs.empty() && runs.back().hi == s.lo &&
        runs.back().density == s.density)
      runs.back().hi = s.hi;
    else
      runs.push_back(s);
  }

  for (long long k = -2 * m_max; k <= 2 * m_max; ++k) {
    const std::size_t idx = static_cast<std::size_t>(k + 2 * m_max);
    Complex g(0.0, 0.0), t(0.0, 0.0);
    for (const auto& r : runs)
      g += r.density * oscillatory_unit_integral(k, r.lo, r.hi);
    for (const auto& s : segs)
      if (s.density > 0.0 && s.value != Complex(0.0, 0.0))
        t += s.density * s.value * oscillatory_unit_integral(k, s.lo, s.hi);
    gcoef[idx] = g;
    tcoef[idx] = t;
  }

  const auto coef = [&](long long k) {
    return static_cast<std::size_t>(k + 2 * m_max);
  };

  bool gram_diagonal = true;
  for (long long k = -2 * m_max; k <= 2 * m_max; ++k)
    if (k != 0 && gcoef[coef(k)] != Complex(0.0, 0.0)) {
      gram_diagonal = false;
      break;
    }

  if (gram_diagonal) {
    const double nu = gcoef[coef(0)].real();
    ComplexMatrix b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        b.at(i, j) = tcoef[coef(static_cast<long long>(i) -
                                static_cast<long long>(j))] /
                     nu;
    return b;
  }

  // General cell: orthonormalize through the Cholesky factor of the Gram
  // so the emitted block is the compression against a genuine orthonormal
  // family.
  ComplexMatrix s_mat(dim, dim), t_mat(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const long long k =
          static_cast<long long>(j) - static_cast<long long>(i);
      s_mat.at(i, j) = gcoef[coef(k)];
      t_mat.at(i, j) = tcoef[coef(k)];
    }
  }

  ComplexMatrix r;
  try {
    r = cholesky_upper(s_mat);
  } catch (const std::domain_error&) {
    std::ostringstream msg;
    msg << "build_truncation: cell Gram numerically singular at n=" << n
        << " with m_max=" << m_max << "; shrink the mode window";
    throw std::domain_error(msg.str());
  }
  const ComplexMatrix rh = adjoint(r);
  const ComplexMatrix y = solve_lower_triangular(rh, t_mat);
  const ComplexMatrix a = adjoint(solve_lower_triangular(rh, adjoint(y)));
  return transpose_plain(a);
}

}  // namespace

BasisLabel BasisLabel::atom_label(std::string label) {
  BasisLabel b;
  b.kind = Kind::Atom;
  b.atom = std::move(label);
  return b;
}

BasisLabel BasisLabel::gabor_label(long long n, long long m) {
  BasisLabel b;
  b.kind = Kind::Gabor;
  b.n = n;
  b.m = m;
  return b;
}

TruncationSchedule TruncationSchedule::atoms_only(
    std::optional<std::size_t> count) {
  TruncationSchedule s;
  s.atom_count = count;
  return s;
}

TruncationSchedule default_schedule(const MeasureSpace& space,
                                    long long m_max) {
  TruncationSchedule s;
  s.m_max = m_max;
  if (space.diffuse().empty()) return s;
  double lo = space.diffuse().front().interval.lo;
  double hi = space.diffuse().front().interval.hi;
  for (const auto& piece : space.diffuse()) {
    lo = std::min(lo, piece.interval.lo);
    hi = std::max(hi, piece.interval.hi);
  }
  s.n_lo = static_cast<long long>(std::floor(lo));
  s.n_hi = static_cast<long long>(std::ceil(hi)) - 1;
  return s;
}

Complex oscillatory_unit_integral(long long k, double a, double b) {
  if (!(b >= a))
    throw std::invalid_argument("oscillatory_unit_integral: requires b >= a");
  if (k == 0) return Complex(b - a, 0.0);

  const double t = static_cast<double>(k) * (b - a);
  const double r = std::rint(t);
  double s = 0.0;
  if (t != r) {
    s = std::sin(std::numbers::pi * (t - r));
    if (static_cast<long long>(r) % 2 != 0) s = -s;
  }
  if (s == 0.0) return Complex(0.0, 0.0);

  const double phase = std::numbers::pi * static_cast<double>(k) * (a + b);
  const double mag = s / (std::numbers::pi * static_cast<double>(k));
  return Complex(std::cos(phase) * mag, std::sin(phase) * mag);
}

OperatorTruncation build_truncation(const MeasureSpace& space,
                                    const SimpleFunction& f,
                                    const TruncationSchedule& sched) {
  if (sched.m_max < 0)
    throw std::invalid_argument("build_truncation: m_max must be >= 0");
  auto refined = detail::refine(space, f);

  const std::size_t atom_total = space.atoms().size();
  const std::size_t atom_count =
      sched.atom_count ? std::min(*sched.atom_count, atom_total) : atom_total;

  struct CellData {
    long long n;
    ComplexMatrix block;
  };
  std::vector<CellData> cells;
  for (long long n = sched.n_lo; n <= sched.n_hi; ++n) {
    auto segs = clip_to_cell(refined, n);
    if (segs.empty() || segments_measure(segs) <= 0.0) continue;
    cells.push_back({n, cell_block(segs, n, sched.m_max)});
  }

  const std::size_t modes = static_cast<std::size_t>(2 * sched.m_max + 1);
  const std::size_t dim = atom_count + cells.size() * modes;
  if (dim == 0)
    throw std::domain_error(
        "build_truncation: schedule selects no basis elements");

  OperatorTruncation out;
  out.schedule = sched;
  out.labels.reserve(dim);
  out.matrix = ComplexMatrix(dim, dim);

  for (std::size_t i = 0; i < atom_count; ++i) {
    const std::string& label = space.atoms()[i].label;
    out.labels.push_back(BasisLabel::atom_label(label));
    auto it = f.atom_values.find(label);
    if (it != f.atom_values.end()) out.matrix.at(i, i) = it->second;
  }

  std::size_t offset = atom_count;
  for (const auto& cell : cells) {
    for (long long m = -sched.m_max; m <= sched.m_max; ++m)
      out.labels.push_back(BasisLabel::gabor_label(cell.n, m));
    for (std::size_t i = 0; i < modes; ++i)
      for (std::size_t j = 0; j < modes; ++j)
        out.matrix.at(offset + i, offset + j) = cell.block.at(i, j);
    offset += modes;
  }
  return out;
}

double trace_power_partial(const MeasureSpace& space, const SimpleFunction& f,
                           double p, const TruncationSchedule& sched) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("trace_power_partial: p must be in [1, inf)");
  if (sched.m_max < 0)
    throw std::invalid_argument("trace_power_partial: m_max must be >= 0");
  auto refined = detail::refine(space, f);

  const std::size_t atom_total = space.atoms().size();
  const std::size_t atom_count =
      sched.atom_count ? std::min(*sched.atom_count, atom_total) : atom_total;

  double atoms_sum = 0.0;
  for (std::size_t i = 0; i < atom_count; ++i) {
    auto it = f.atom_values.find(space.atoms()[i].label);
    if (it == f.atom_values.end()) continue;
    const double a = std::abs(it->second);
    if (a > 0.0) atoms_sum += std::pow(a, p);
  }

  double cells_sum = 0.0;
  for (long long n = sched.n_lo; n <= sched.n_hi; ++n) {
    for (const auto& seg : clip_to_cell(refined, n)) {
      const double a = std::abs(seg.value);
      if (a > 0.0 && seg.density > 0.0)
        cells_sum += std::pow(a, p) * seg.density * (seg.hi - seg.lo);
    }
  }

  return atoms_sum +
         static_cast<double>(2 * sched.m_max + 1) * cells_sum;
}

DivergenceDiagnosis diagnose_divergence(std::span<const SchedulePoint> points,
                                        std::optional<double> slope_tolerance) {
  if (points.size() < 4)
    throw std::invalid_argument(
        "diagnose_divergence: need at least 4 schedule points");
  double scale = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !(points[i].size > points[i - 1].size))
      throw std::invalid_argument(
          "diagnose_divergence: schedule sizes must be strictly increasing");
    scale = std::max(scale, std::abs(points[i].value));
  }

  DivergenceDiagnosis d;
  d.slope_tolerance =
      slope_tolerance.value_or(kSlopeTolUnit * (1.0 + scale));

  const std::size_t h = points.size() / 2;
  const auto tail = points.subspan(points.size() - h);
  double ms = 0.0, mv = 0.0;
  for (const auto& pt : tail) {
    ms += pt.size;
    mv += pt.value;
  }
  ms /= static_cast<double>(h);
  mv /= static_cast<double>(h);
  double num = 0.0, den = 0.0;
  for (const auto& pt : tail) {
    num += (pt.size - ms) * (pt.value - mv);
    den += (pt.size - ms) * (pt.size - ms);
  }
  d.slope = num / den;
  d.diverges = d.slope > d.slope_tolerance;
  d.limit = points.back().value;
  return d;
}

InconclusiveDiagnostics::InconclusiveDiagnostics(double slope,
                                                 double tolerance)
    : std::runtime_error("divergence slope " + std::to_string(slope) +
                         " falls inside the undecidable band around " +
                         std::to_string(tolerance)),
      slope_(slope),
      tolerance_(tolerance) {}

MembershipVerdict classify_exact(const MeasureSpace& space,
                                 const SimpleFunction& f, PExponent p) {
  auto refined = detail::refine(space, f);

  MembershipVerdict v;
  if (p.is_infinite()) {
    v.member = true;
    v.norm = ess_sup(space, f);
    return v;
  }

  for (const auto& piece : refined) {
    for (const auto& seg : piece.segments) {
      if (seg.density > 0.0 && std::abs(seg.value) > 0.0) {
        v.member = false;
        v.reason = NotMemberReason::AtomicSupportViolation;
        std::ostringstream msg;
        msg << "f is nonzero on [" << seg.lo << ", " << seg.hi
            << ") where the diffuse density is " << seg.density;
        v.detail = msg.str();
        return v;
      }
    }
  }

  double sum = 0.0;
  for (const auto& [label, value] : f.atom_values) {
    (void)label;
    const double a = std::abs(value);
    if (a > 0.0) sum += std::pow(a, p.value());
  }
  v.member = true;
  v.norm = sum == 0.0 ? 0.0 : std::pow(sum, 1.0 / p.value());
  return v;
}

std::vector<long long> default_mode_family() { return {4, 8, 16, 32, 64}; }

MembershipVerdict classify_numeric(const MeasureSpace& space,
                                   const SimpleFunction& f, double p,
                                   std::span<const long long> mode_family,
                                   std::optional<double> slope_tolerance) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("classify_numeric: p must be in [1, inf)");
  if (mode_family.size() < 4)
    throw std::invalid_argument(
        "classify_numeric: need at least 4 schedule sizes");

  std::vector<SchedulePoint> points;
  points.reserve(mode_family.size());
  for (long long m : mode_family) {
    TruncationSchedule sched = default_schedule(space, m);
    points.push_back({static_cast<double>(m),
                      trace_power_partial(space, f, p, sched)});
  }

  DivergenceDiagnosis diag = diagnose_divergence(points, slope_tolerance);
  if (diag.slope >= 0.5 * diag.slope_tolerance &&
      diag.slope <= 2.0 * diag.slope_tolerance)
    throw InconclusiveDiagnostics(diag.slope, diag.slope_tolerance);

  MembershipVerdict v;
  v.slope = diag.slope;
  v.slope_tolerance = diag.slope_tolerance;
  if (diag.diverges) {
    v.member = false;
    v.reason = NotMemberReason::PSumDiverges;
    std::ostringstream msg;
    msg << "trace partials grow at " << diag.slope << " per mode";
    v.detail = msg.str();
  } else {
    v.member = true;
    v.norm = diag.limit == 0.0 ? 0.0 : std::pow(diag.limit, 1.0 / p);
  }
  return v;
}

MembershipVerdict classify_numeric(const MeasureSpace& space,
                                   const SimpleFunction& f, double p) {
  auto family = default_mode_family();
  return classify_numeric(space, f, p, family);
}

bool verify_lemma1(int n_max, std::span<const Complex> values, PExponent p) {
  const std::size_t expected = 2 * static_cast<std::size_t>(n_max) + 1;
  if (n_max < 0 || values.size() != expected)
    throw std::invalid_argument(
        "verify_lemma1: need one value per point of {-N..N}");

  MeasureSpace space = integer_lattice(n_max);
  SimpleFunction f;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int n = -n_max + static_cast<int>(i);
    if (values[i] != Complex(0.0, 0.0))
      f.atom_values.emplace(std::to_string(n), values[i]);
  }

  OperatorTruncation tr =
      build_truncation(space, f, TruncationSchedule::atoms_only());
  const double lhs = schatten_norm(tr.matrix, p);

  std::vector<double> mags;
  mags.reserve(values.size());
  for (const Complex& v : values) mags.push_back(std::abs(v));
  const double rhs = schatten_norm_from_values(mags, p);

  if (rhs == 0.0) return lhs == 0.0;
  return std::abs(lhs - rhs) <= kLemma1Tol * rhs;
}

}  // namespace schatlab
