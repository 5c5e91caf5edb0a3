#include "schatlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace schatlab {

namespace {

constexpr double kJacobiPairTol = 1e-13;  // |<u,v>| <= tol * |u||v| per pair
constexpr int kJacobiMaxSweeps = 60;

void require_dims(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

double column_norm_sq(const ComplexMatrix& w, std::size_t col,
                      std::size_t from_row = 0) {
  double s = 0.0;
  for (std::size_t i = from_row; i < w.rows(); ++i) s += std::norm(w.at(i, col));
  return s;
}

Complex column_inner(const ComplexMatrix& w, std::size_t p, std::size_t q) {
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < w.rows(); ++i)
    s += std::conj(w.at(i, p)) * w.at(i, q);
  return s;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
  require_dims(rows > 0 && cols > 0, "matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require_dims(rows > 0 && cols > 0, "matrix dimensions must be positive");
  require_dims(entries_.size() == rows * cols,
               "entry count must equal rows*cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Complex(1.0, 0.0);
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : entries_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_dims(a.cols() == b.rows(), "matmul: inner dimensions must agree");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.at(i, j) += aik * b.at(k, j);
    }
  }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c.at(j, i) = std::conj(a.at(i, j));
  return c;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_dims(a.rows() == b.rows() && a.cols() == b.cols(),
               "add: shape mismatch");
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) += b.at(i, j);
  return c;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_dims(a.rows() == b.rows() && a.cols() == b.cols(),
               "sub: shape mismatch");
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) -= b.at(i, j);
  return c;
}

ComplexMatrix scale(Complex c, const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) *= c;
  return out;
}

Complex trace(const ComplexMatrix& a) {
  require_dims(a.rows() == a.cols(), "trace: matrix must be square");
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) t += a.at(i, i);
  return t;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_entry(const ComplexMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

SvdResult svd(const ComplexMatrix& a) {
  if (!a.all_finite())
    throw std::domain_error("svd: matrix has non-finite entries");

  if (a.rows() < a.cols()) {
    SvdResult t = svd(adjoint(a));
    return {std::move(t.v), std::move(t.singular_values), std::move(t.u)};
  }

  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);

  // Inner products this far below the matrix scale are rounding debris; the
  // relative pair criterion alone can cycle forever on them once columns of
  // a rank-deficient input have been reduced to the round-off floor.
  double fro_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) fro_sq += column_norm_sq(w, j);
  const double negligible = fro_sq * 1e-30;

  // One-sided Jacobi: orthogonalize column pairs of W by right rotations,
  // accumulating them into V so that W = A * V throughout.
  int sweeps = 0;
  for (; sweeps < kJacobiMaxSweeps; ++sweeps) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double app = column_norm_sq(w, p);
        const double aqq = column_norm_sq(w, q);
        const Complex apq = column_inner(w, p, q);
        const double off = std::abs(apq);
        if (off <= kJacobiPairTol * std::sqrt(app * aqq) ||
            off <= negligible)
          continue;
        rotated = true;

        // Phase out the inner product, then rotate through the real angle
        // that annihilates it (Rutishauser's stable form).
        const Complex phase = apq / off;  // <w_p, e^{-i arg} w_q> = off > 0
        const double zeta = (aqq - app) / (2.0 * off);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        const Complex conj_phase = std::conj(phase);

        for (std::size_t i = 0; i < m; ++i) {
          const Complex wp = w.at(i, p);
          const Complex wq = conj_phase * w.at(i, q);
          w.at(i, p) = cs * wp - sn * wq;
          w.at(i, q) = sn * wp + cs * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vp = v.at(i, p);
          const Complex vq = conj_phase * v.at(i, q);
          v.at(i, p) = cs * vp - sn * vq;
          v.at(i, q) = sn * vp + cs * vq;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweeps == kJacobiMaxSweeps)
    throw std::runtime_error("svd: Jacobi sweeps did not converge");

  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = std::sqrt(column_norm_sq(w, j));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return s[x] > s[y]; });

  SvdResult out;
  out.u = ComplexMatrix(m, n);
  out.v = ComplexMatrix(n, n);
  out.singular_values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = s[src];
    if (s[src] > 0.0)
      for (std::size_t i = 0; i < m; ++i)
        out.u.at(i, j) = w.at(i, src) / s[src];
    for (std::size_t i = 0; i < n; ++i) out.v.at(i, j) = v.at(i, src);
  }
  return out;
}

std::vector<double> svd_values(const ComplexMatrix& a) {
  return svd(a).singular_values;
}

double operator_norm(const ComplexMatrix& a) {
  auto s = svd_values(a);
  return s.empty() ? 0.0 : s.front();
}

QrPivoted qr_column_pivoted(const ComplexMatrix& a, double rel_tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t steps = std::min(m, n);
  ComplexMatrix w = a;

  QrPivoted out;
  out.perm.resize(n);
  std::iota(out.perm.begin(), out.perm.end(), 0);
  for (std::size_t j = 0; j < n; ++j)
    out.scale = std::max(out.scale, std::sqrt(column_norm_sq(w, j)));

  std::size_t rank = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t best = k;
    double best_norm = 0.0;
    for (std::size_t j = k; j < n; ++j) {
      const double nj = std::sqrt(column_norm_sq(w, j, k));
      if (nj > best_norm) {
        best_norm = nj;
        best = j;
      }
    }
    if (best_norm <= rel_tol * out.scale) break;

    if (best != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(w.at(i, k), w.at(i, best));
      std::swap(out.perm[k], out.perm[best]);
    }

    // Householder reflection clearing column k below the diagonal.
    const Complex x0 = w.at(k, k);
    const double ax0 = std::abs(x0);
    const Complex phase = ax0 > 0.0 ? x0 / ax0 : Complex(1.0, 0.0);
    const Complex alpha = -phase * best_norm;

    std::vector<Complex> hv(m - k);
    for (std::size_t i = k; i < m; ++i) hv[i - k] = w.at(i, k);
    hv[0] -= alpha;
    double vnorm_sq = 0.0;
    for (const Complex& z : hv) vnorm_sq += std::norm(z);

    if (vnorm_sq > 0.0) {
      for (std::size_t j = k; j < n; ++j) {
        Complex dot(0.0, 0.0);
        for (std::size_t i = k; i < m; ++i)
          dot += std::conj(hv[i - k]) * w.at(i, j);
        const Complex f = 2.0 * dot / vnorm_sq;
        for (std::size_t i = k; i < m; ++i) w.at(i, j) -= f * hv[i - k];
      }
    }
    w.at(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) w.at(i, k) = Complex(0.0, 0.0);
    ++rank;
  }

  out.rank = rank;
  out.r = ComplexMatrix(steps, n);
  for (std::size_t i = 0; i < steps; ++i)
    for (std::size_t j = i; j < n; ++j) out.r.at(i, j) = w.at(i, j);
  return out;
}

std::size_t matrix_rank(const ComplexMatrix& a, double rel_tol) {
  return qr_column_pivoted(a, rel_tol).rank;
}

ComplexMatrix nullspace_basis(const ComplexMatrix& a, double rel_tol) {
  const std::size_t n = a.cols();
  QrPivoted qr = qr_column_pivoted(a, rel_tol);
  const std::size_t r = qr.rank;
  const std::size_t nullity = n - r;
  if (nullity == 0) return ComplexMatrix();

  ComplexMatrix basis(n, nullity);
  for (std::size_t f = 0; f < nullity; ++f) {
    const std::size_t free_col = r + f;
    // Back-substitute R11 z = -R[:, free_col].
    std::vector<Complex> z(r);
    for (std::size_t ii = r; ii-- > 0;) {
      Complex s = -qr.r.at(ii, free_col);
      for (std::size_t jj = ii + 1; jj < r; ++jj) s -= qr.r.at(ii, jj) * z[jj];
      z[ii] = s / qr.r.at(ii, ii);
    }
    for (std::size_t i = 0; i < r; ++i) basis.at(qr.perm[i], f) = z[i];
    basis.at(qr.perm[free_col], f) = Complex(1.0, 0.0);
  }
  return orthonormalize_columns(basis);
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& a) {
  ComplexMatrix q = a;
  const std::size_t m = q.rows();
  const std::size_t n = q.cols();
  double scale0 = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    scale0 = std::max(scale0, std::sqrt(column_norm_sq(q, j)));

  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const Complex proj = column_inner(q, k, j);
        for (std::size_t i = 0; i < m; ++i) q.at(i, j) -= proj * q.at(i, k);
      }
    }
    const double nj = std::sqrt(column_norm_sq(q, j));
    if (nj <= 1e-10 * scale0)
      throw std::domain_error(
          "orthonormalize_columns: columns are not linearly independent");
    for (std::size_t i = 0; i < m; ++i) q.at(i, j) /= nj;
  }
  return q;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexMatrix gram = matmul(adjoint(u), u);
  const ComplexMatrix dev = sub(gram, ComplexMatrix::identity(u.rows()));
  return max_abs_entry(dev) <= tol;
}

ComplexMatrix cholesky_upper(const ComplexMatrix& a, double rel_tol) {
  require_dims(a.rows() == a.cols(), "cholesky_upper: matrix must be square");
  const std::size_t n = a.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    max_diag = std::max(max_diag, a.at(i, i).real());

  ComplexMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = a.at(i, i).real();
    for (std::size_t k = 0; k < i; ++k) d -= std::norm(r.at(k, i));
    if (!(d > rel_tol * max_diag))
      throw std::domain_error(
          "cholesky_upper: matrix is not numerically positive definite");
    const double rii = std::sqrt(d);
    r.at(i, i) = rii;
    for (std::size_t j = i + 1; j < n; ++j) {
      Complex s = a.at(i, j);
      for (std::size_t k = 0; k < i; ++k)
        s -= std::conj(r.at(k, i)) * r.at(k, j);
      r.at(i, j) = s / rii;
    }
  }
  return r;
}

ComplexMatrix solve_lower_triangular(const ComplexMatrix& l,
                                     const ComplexMatrix& b) {
  require_dims(l.rows() == l.cols(), "solve_lower_triangular: L must be square");
  require_dims(l.rows() == b.rows(), "solve_lower_triangular: shape mismatch");
  const std::size_t n = l.rows();
  ComplexMatrix x(b.rows(), b.cols());
  for (std::size_t col = 0; col < b.cols(); ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = b.at(i, col);
      for (std::size_t k = 0; k < i; ++k) s -= l.at(i, k) * x.at(k, col);
      if (l.at(i, i) == Complex(0.0, 0.0))
        throw std::domain_error("solve_lower_triangular: singular diagonal");
      x.at(i, col) = s / l.at(i, i);
    }
  }
  return x;
}

}  // namespace schatlab
