#include "schatlab/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace schatlab {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

bool finite(double x) { return std::isfinite(x); }

/// Checks that segs' [sub.lo, sub.hi) tile [interval.lo, interval.hi) with
/// exactly matching endpoint doubles.
template <typename Seg>
void check_partition(const Interval& interval, const std::vector<Seg>& segs,
                     const char* what) {
  require(!segs.empty(), std::string(what) + ": empty partition");
  require(segs.front().sub.lo == interval.lo,
          std::string(what) + ": partition does not start at interval.lo");
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Interval& s = segs[i].sub;
    require(finite(s.lo) && finite(s.hi) && s.lo < s.hi,
            std::string(what) + ": degenerate segment");
    if (i + 1 < segs.size())
      require(s.hi == segs[i + 1].sub.lo,
              std::string(what) + ": gap or overlap between segments");
  }
  require(segs.back().sub.hi == interval.hi,
          std::string(what) + ": partition does not end at interval.hi");
}

}  // namespace

double DiffusePiece::measure() const {
  double m = 0.0;
  for (const auto& seg : density) m += seg.value * seg.sub.length();
  return m;
}

MeasureSpace::MeasureSpace(std::vector<AtomEntry> atoms,
                           std::vector<DiffusePiece> diffuse)
    : atoms_(std::move(atoms)), diffuse_(std::move(diffuse)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const AtomEntry& a = atoms_[i];
    require(!a.label.empty(), "atom label must be nonempty");
    require(finite(a.mass) && a.mass > 0.0, "atom mass must be positive");
    auto [it, inserted] = atom_lookup_.emplace(a.label, i);
    (void)it;
    require(inserted, "duplicate atom label: " + a.label);
  }
  std::sort(diffuse_.begin(), diffuse_.end(),
            [](const DiffusePiece& a, const DiffusePiece& b) {
              return a.interval.lo < b.interval.lo;
            });
  for (std::size_t i = 0; i < diffuse_.size(); ++i) {
    const DiffusePiece& p = diffuse_[i];
    require(finite(p.interval.lo) && finite(p.interval.hi) &&
                p.interval.lo < p.interval.hi,
            "diffuse piece must be a nondegenerate finite interval");
    check_partition(p.interval, p.density, "density");
    for (const auto& seg : p.density)
      require(finite(seg.value) && seg.value >= 0.0,
              "density must be finite and nonnegative");
    if (i + 1 < diffuse_.size())
      require(p.interval.hi <= diffuse_[i + 1].interval.lo,
              "diffuse pieces must be pairwise disjoint");
  }
}

std::optional<std::size_t> MeasureSpace::atom_index(
    std::string_view label) const {
  auto it = atom_lookup_.find(label);
  if (it == atom_lookup_.end()) return std::nullopt;
  return it->second;
}

double MeasureSpace::atom_measure() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass;
  return m;
}

double MeasureSpace::diffuse_measure() const {
  double m = 0.0;
  for (const auto& p : diffuse_) m += p.measure();
  return m;
}

SimpleFunction SimpleFunction::indicator_of_atom(std::string label) {
  SimpleFunction f;
  f.atom_values.emplace(std::move(label), Complex(1.0, 0.0));
  return f;
}

SimpleFunction SimpleFunction::indicator_of_piece(Interval piece_interval) {
  SimpleFunction f;
  f.diffuse_values.push_back(
      {piece_interval, {{piece_interval, Complex(1.0, 0.0)}}});
  return f;
}

namespace detail {

std::vector<RefinedPiece> refine(const MeasureSpace& space,
                                 const SimpleFunction& f) {
  for (const auto& [label, v] : f.atom_values) {
    (void)v;
    if (!space.atom_index(label))
      throw std::domain_error("function references unknown atom: " + label);
  }

  std::vector<RefinedPiece> out;
  out.reserve(space.diffuse().size());
  std::vector<bool> claimed(f.diffuse_values.size(), false);

  for (const auto& piece : space.diffuse()) {
    const PieceValues* pv = nullptr;
    for (std::size_t i = 0; i < f.diffuse_values.size(); ++i) {
      if (f.diffuse_values[i].interval == piece.interval) {
        if (claimed[i])
          throw std::domain_error("duplicate values for one diffuse piece");
        claimed[i] = true;
        pv = &f.diffuse_values[i];
        break;
      }
    }

    RefinedPiece rp;
    rp.interval = piece.interval;

    if (!pv) {
      for (const auto& seg : piece.density)
        rp.segments.push_back(
            {seg.sub.lo, seg.sub.hi, seg.value, Complex(0.0, 0.0)});
      out.push_back(std::move(rp));
      continue;
    }

    try {
      check_partition(piece.interval, pv->values, "values");
    } catch (const std::invalid_argument& e) {
      throw std::domain_error(e.what());
    }

    // Merge the two breakpoint chains. Both partitions share the piece
    // endpoints exactly, so a simple two-pointer sweep suffices.
    std::size_t di = 0, vi = 0;
    double lo = piece.interval.lo;
    while (lo < piece.interval.hi) {
      const DensitySegment& d = piece.density[di];
      const ValueSegment& v = pv->values[vi];
      double hi = std::min(d.sub.hi, v.sub.hi);
      rp.segments.push_back({lo, hi, d.value, v.value});
      if (d.sub.hi == hi) ++di;
      if (v.sub.hi == hi) ++vi;
      lo = hi;
    }
    out.push_back(std::move(rp));
  }

  for (std::size_t i = 0; i < claimed.size(); ++i)
    if (!claimed[i])
      throw std::domain_error(
          "function values on an interval that is not a piece of the space");

  return out;
}

}  // namespace detail

double integrate_abs_power(const MeasureSpace& space, const SimpleFunction& f,
                           double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("integrate_abs_power: p must be in [1, inf)");
  auto refined = detail::refine(space, f);

  double total = 0.0;
  for (const auto& [label, value] : f.atom_values) {
    const auto idx = space.atom_index(label);
    const double a = std::abs(value);
    if (a > 0.0) total += std::pow(a, p) * space.atoms()[*idx].mass;
  }
  for (const auto& piece : refined) {
    for (const auto& seg : piece.segments) {
      const double a = std::abs(seg.value);
      if (a > 0.0 && seg.density > 0.0)
        total += std::pow(a, p) * seg.density * (seg.hi - seg.lo);
    }
  }
  return total;
}

double ess_sup(const MeasureSpace& space, const SimpleFunction& f) {
  auto refined = detail::refine(space, f);
  double sup = 0.0;
  for (const auto& [label, value] : f.atom_values) {
    (void)label;
    sup = std::max(sup, std::abs(value));
  }
  for (const auto& piece : refined)
    for (const auto& seg : piece.segments)
      if (seg.density > 0.0) sup = std::max(sup, std::abs(seg.value));
  return sup;
}

double Decomposition::atom_measure() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.mass;
  return m;
}

double Decomposition::diffuse_measure() const {
  double m = 0.0;
  for (const auto& d : diffuse) m += d.measure;
  return m;
}

Decomposition decompose(const MeasureSpace& space) {
  Decomposition d;
  d.atoms = space.atoms();
  for (const auto& piece : space.diffuse()) {
    DiffuseSupport s;
    s.piece = piece.interval;
    for (const auto& seg : piece.density) {
      if (seg.value <= 0.0) continue;
      s.measure += seg.value * seg.sub.length();
      if (!s.support.empty() && s.support.back().hi == seg.sub.lo)
        s.support.back().hi = seg.sub.hi;
      else
        s.support.push_back(seg.sub);
    }
    if (s.measure > 0.0) d.diffuse.push_back(std::move(s));
  }
  return d;
}

bool is_atomless(const MeasureSpace& space) { return space.atoms().empty(); }

GroupInvarianceVerdict check_group_invariance(std::size_t group_size,
                                              std::span<const double> masses) {
  if (group_size == 0)
    throw std::invalid_argument("check_group_invariance: empty group");
  if (masses.size() != group_size)
    throw std::invalid_argument(
        "check_group_invariance: one mass per group element required");
  double lo = masses[0], hi = masses[0];
  for (double m : masses) {
    if (!(m > 0.0) || !std::isfinite(m))
      throw std::invalid_argument(
          "check_group_invariance: masses must be positive and finite");
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  GroupInvarianceVerdict v;
  v.invariant_counting = (lo == hi);
  v.scale = v.invariant_counting ? lo : 0.0;
  return v;
}

MeasureSpace integer_lattice(int n_max) {
  if (n_max < 0)
    throw std::invalid_argument("integer_lattice: n_max must be >= 0");
  std::vector<AtomEntry> atoms;
  atoms.reserve(2 * static_cast<std::size_t>(n_max) + 1);
  for (int n = -n_max; n <= n_max; ++n)
    atoms.push_back({std::to_string(n), 1.0});
  return MeasureSpace(std::move(atoms), {});
}

}  // namespace schatlab
