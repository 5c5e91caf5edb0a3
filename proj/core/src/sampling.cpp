#include "schatlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace schatlab {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

long long Rng::uniform_int(long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long long>(next_u64());  // full range
  return lo + static_cast<long long>(next_u64() % span);
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  return static_cast<std::size_t>(next_u64() % n);
}

bool Rng::bernoulli(double p_true) { return next_double() < p_true; }

Complex Rng::unit_complex() {
  const double theta = uniform(0.0, 2.0 * std::numbers::pi);
  return {std::cos(theta), std::sin(theta)};
}

Complex Rng::complex_in_annulus(double r_min, double r_max) {
  return uniform(r_min, r_max) * unit_complex();
}

Complex Rng::complex_in_box(double half_width) {
  const double re = uniform(-half_width, half_width);
  const double im = uniform(-half_width, half_width);
  return {re, im};
}

Rng Rng::split(std::uint64_t label) {
  return Rng(mix64(next_u64() ^ (label * 0x9FB21C651E98DF25ULL)));
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view suite) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a 64
  for (unsigned char c : suite) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return mix64(master ^ mix64(h));
}

ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                            double half_width) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = rng.complex_in_box(half_width);
  return m;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    try {
      return orthonormalize_columns(random_matrix(rng, n, n));
    } catch (const std::domain_error&) {
      // near-singular draw, retry with fresh entries
    }
  }
  throw std::runtime_error("random_unitary: repeated singular draws");
}

GroupFunction random_group_function(Rng& rng, const FiniteGroup& g,
                                    double half_width) {
  GroupFunction f;
  f.values.resize(g.order());
  for (auto& v : f.values) v = rng.complex_in_box(half_width);
  return f;
}

SampledModel random_mixed_model(Rng& rng, int max_atoms, int max_pieces) {
  const long long n_atoms = rng.uniform_int(0, max_atoms);
  std::vector<AtomEntry> atoms;
  atoms.reserve(static_cast<std::size_t>(n_atoms));
  for (long long i = 0; i < n_atoms; ++i)
    atoms.push_back({"a" + std::to_string(i), rng.uniform(0.25, 4.0)});

  const long long n_pieces = rng.uniform_int(0, max_pieces);
  std::vector<DiffusePiece> pieces;
  std::vector<PieceValues> piece_values;
  bool diffuse_support = false;

  for (long long i = 0; i < n_pieces; ++i) {
    // Pieces live on well-separated quarter-grid intervals so every endpoint
    // double is exact and pieces stay disjoint.
    const double x0 = 10.0 * static_cast<double>(i);
    const long long quarters = rng.uniform_int(1, 8);
    const long long n_segs =
        rng.uniform_int(1, std::min<long long>(3, quarters));

    std::vector<long long> cuts;
    {
      std::vector<long long> cand;
      for (long long c = 1; c < quarters; ++c) cand.push_back(c);
      for (long long k = 0; k + 1 < n_segs; ++k) {
        const std::size_t j = rng.uniform_index(cand.size());
        cuts.push_back(cand[j]);
        cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(j));
      }
      std::sort(cuts.begin(), cuts.end());
    }
    std::vector<double> bounds{x0};
    for (long long c : cuts) bounds.push_back(x0 + 0.25 * static_cast<double>(c));
    bounds.push_back(x0 + 0.25 * static_cast<double>(quarters));

    DiffusePiece piece;
    piece.interval = {bounds.front(), bounds.back()};
    PieceValues pv;
    pv.interval = piece.interval;
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
      const Interval sub{bounds[s], bounds[s + 1]};
      // Densities and values are either exactly zero or bounded away from
      // zero, so the diffuse-support ground truth is unambiguous and the
      // divergence slope clears its tolerance band by orders of magnitude.
      const double density = rng.bernoulli(0.25) ? 0.0 : rng.uniform(0.5, 2.0);
      const Complex value = rng.bernoulli(0.5)
                                ? Complex(0.0, 0.0)
                                : rng.complex_in_annulus(0.1, 2.0);
      piece.density.push_back({sub, density});
      pv.values.push_back({sub, value});
      if (density > 0.0 && std::abs(value) > 0.0) diffuse_support = true;
    }
    pieces.push_back(std::move(piece));
    piece_values.push_back(std::move(pv));
  }

  SimpleFunction f;
  for (const auto& a : atoms) {
    if (rng.bernoulli(0.25)) continue;  // leave implicitly zero
    f.atom_values.emplace(a.label, rng.complex_in_box(2.0));
  }
  f.diffuse_values = std::move(piece_values);

  return SampledModel{MeasureSpace(std::move(atoms), std::move(pieces)),
                      std::move(f), diffuse_support};
}

}  // namespace schatlab
