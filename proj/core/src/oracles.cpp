#include "schatlab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace schatlab {

namespace {

using LD = long double;
using CLD = std::complex<long double>;
using Poly = std::vector<LD>;  // ascending coefficients, monic throughout

LD eval(const Poly& p, LD x) {
  LD acc = 0.0L;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{0.0L};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k)
    d[k - 1] = static_cast<LD>(k) * p[k];
  return d;
}

/// Removes the root r; quotient stays monic. Forward recurrence, stable when
/// roots are extracted largest first.
Poly deflate(const Poly& p, LD r) {
  const std::size_t m = p.size() - 1;
  Poly q(m);
  q[m - 1] = p[m];
  for (std::size_t k = m - 1; k >= 1; --k) q[k - 1] = p[k] + r * q[k];
  return q;
}

LD coeff_scale(const Poly& p) {
  LD s = 0.0L;
  for (LD c : p) s += std::fabs(c);
  return s;
}

/// Bisection to machine width, then a few guarded Newton steps. Requires a
/// sign change on [a, b].
LD refine_root(const Poly& p, const Poly& dp, LD a, LD b) {
  LD fa = eval(p, a);
  for (int it = 0; it < 140; ++it) {
    const LD mid = 0.5L * (a + b);
    if (mid == a || mid == b) break;
    const LD fm = eval(p, mid);
    if (fm == 0.0L) return mid;
    if ((fm < 0.0L) == (fa < 0.0L)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  LD x = 0.5L * (a + b);
  for (int it = 0; it < 4; ++it) {
    const LD d = eval(dp, x);
    if (d == 0.0L) break;
    const LD y = x - eval(p, x) / d;
    if (!(y >= a && y <= b)) break;
    x = y;
  }
  return x;
}

/// All real roots of a polynomial whose roots are known (up to rounding of
/// the coefficients) to be real: the critical points of p partition the line
/// into monotone pieces, so sign changes pin simple roots and near-zero
/// values at critical points flag even-multiplicity ones.
std::vector<LD> real_roots(const Poly& p, LD lo, LD hi) {
  const std::size_t deg = p.size() - 1;
  std::vector<LD> roots;
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.push_back(-p[0] / p[1]);
    return roots;
  }
  const Poly dp = derivative(p);
  std::vector<LD> crit = real_roots(dp, lo, hi);
  std::erase_if(crit, [&](LD c) { return c < lo || c > hi; });
  std::sort(crit.begin(), crit.end());

  std::vector<LD> pts{lo};
  pts.insert(pts.end(), crit.begin(), crit.end());
  pts.push_back(hi);

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const LD x0 = pts[i], x1 = pts[i + 1];
    if (!(x0 < x1)) continue;
    const LD f0 = eval(p, x0), f1 = eval(p, x1);
    if (f0 == 0.0L) roots.push_back(x0);
    if (f1 == 0.0L && i + 2 == pts.size()) roots.push_back(x1);
    if (f0 != 0.0L && f1 != 0.0L && (f0 < 0.0L) != (f1 < 0.0L))
      roots.push_back(refine_root(p, dp, x0, x1));
  }
  const LD touch_tol = 1e-13L * (coeff_scale(p) + 1.0L);
  for (LD c : crit)
    if (std::fabs(eval(p, c)) <= touch_tol) roots.push_back(c);

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](LD a, LD b) { return std::fabs(a - b) < 1e-12L; }),
              roots.end());
  return roots;
}

}  // namespace

std::vector<double> hermitian_psd_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hermitian_psd_eigenvalues: matrix not square");
  const std::size_t n = a.rows();

  std::vector<CLD> h(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = a.at(i, j), w = std::conj(a.at(j, i));
      h[i * n + j] = 0.5L * CLD(static_cast<LD>(z.real()) + w.real(),
                                static_cast<LD>(z.imag()) + w.imag());
    }

  LD upper = 0.0L;  // Gershgorin bound on the largest eigenvalue
  for (std::size_t i = 0; i < n; ++i) {
    LD row = h[i * n + i].real();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) row += std::abs(h[i * n + j]);
    upper = std::max(upper, row);
  }
  if (!(upper > 0.0L)) return std::vector<double>(n, 0.0);
  for (auto& z : h) z /= upper;

  // Faddeev-LeVerrier: coeff[n] = 1, M_0 = I,
  // c_{n-k} = -tr(H M_{k-1}) / k, M_k = H M_{k-1} + c_{n-k} I.
  Poly coeff(n + 1, 0.0L);
  coeff[n] = 1.0L;
  std::vector<CLD> m(n * n, CLD(0.0L, 0.0L));
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = CLD(1.0L, 0.0L);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<CLD> hm(n * n, CLD(0.0L, 0.0L));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        const CLD hil = h[i * n + l];
        if (hil == CLD(0.0L, 0.0L)) continue;
        for (std::size_t j = 0; j < n; ++j) hm[i * n + j] += hil * m[l * n + j];
      }
    CLD tr(0.0L, 0.0L);
    for (std::size_t i = 0; i < n; ++i) tr += hm[i * n + i];
    const LD c = -tr.real() / static_cast<LD>(k);
    coeff[n - k] = c;
    m = std::move(hm);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += c;
  }

  // Extract the n roots largest-first, deflating after each one. Scaled
  // eigenvalues live in [0, 1]; the margin absorbs rounding.
  std::vector<double> out;
  out.reserve(n);
  Poly p = coeff;
  for (std::size_t k = n; k >= 1; --k) {
    LD r = 0.0L;
    if (k == 1) {
      r = -p[0] / p[1];
    } else {
      const std::vector<LD> cands = real_roots(p, -0.25L, 1.25L);
      if (!cands.empty()) r = cands.back();
    }
    out.push_back(static_cast<double>(std::max(r, 0.0L) * upper));
    if (k > 1) p = deflate(p, r);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double power_iteration_norm(const ComplexMatrix& a, double rel_tol,
                            std::size_t max_iters) {
  const bool use_cols = a.cols() <= a.rows();
  const ComplexMatrix g =
      use_cols ? matmul(adjoint(a), a) : matmul(a, adjoint(a));
  const std::size_t k = g.rows();

  std::vector<Complex> v(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double t = static_cast<double>(i);
    v[i] = {std::cos(0.7 * t + 0.3), std::sin(1.3 * t + 0.1)};
  }
  double nv = 0.0;
  for (const Complex& z : v) nv += std::norm(z);
  nv = std::sqrt(nv);
  for (Complex& z : v) z /= nv;

  double rho = 0.0;
  bool have_prev = false;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::vector<Complex> w(k, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) w[i] += g.at(i, j) * v[j];
    double next = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      next += (std::conj(v[i]) * w[i]).real();
    double nw = 0.0;
    for (const Complex& z : w) nw += std::norm(z);
    nw = std::sqrt(nw);
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < k; ++i) v[i] = w[i] / nw;
    if (have_prev && std::fabs(next - rho) <= rel_tol * std::max(next, 1e-300)) {
      rho = next;
      break;
    }
    rho = next;
    have_prev = true;
  }
  return std::sqrt(std::max(rho, 0.0));
}

Complex simpson_oscillatory(double a, double b, double k, Complex c,
                            std::size_t panels) {
  if (!(b >= a))
    throw std::invalid_argument("simpson_oscillatory: requires b >= a");
  if (a == b) return {0.0, 0.0};
  const std::size_t n = 2 * std::max<std::size_t>(panels, 1);
  const double h = (b - a) / static_cast<double>(n);
  const auto wave = [&](double x) {
    const double t = 2.0 * std::numbers::pi * k * x;
    return Complex(std::cos(t), std::sin(t));
  };
  Complex s = wave(a) + wave(b);
  for (std::size_t i = 1; i < n; ++i)
    s += wave(a + static_cast<double>(i) * h) * ((i % 2 != 0) ? 4.0 : 2.0);
  return c * s * (h / 3.0);
}

}  // namespace schatlab
