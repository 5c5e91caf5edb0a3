#include "schatlab/schatten.hpp"

#include <cmath>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace schatlab {

namespace {
constexpr double kIdealTol = 1e-9;
constexpr double kContainTol = 1e-10;
}  // namespace

PExponent PExponent::finite(double v) {
  if (!std::isfinite(v) || v < 1.0)
    throw std::invalid_argument("p exponent must be finite and >= 1");
  PExponent p;
  p.value_ = v;
  return p;
}

PExponent PExponent::infinity() {
  PExponent p;
  p.value_ = std::numeric_limits<double>::infinity();
  return p;
}

PExponent PExponent::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("cannot parse p exponent: " +
                                std::string(text));
  return finite(v);
}

bool PExponent::is_infinite() const { return std::isinf(value_); }

PExponent PExponent::dual() const {
  if (is_infinite()) return finite(1.0);
  if (value_ == 1.0) return infinity();
  return finite(value_ / (value_ - 1.0));
}

std::string PExponent::to_string() const {
  if (is_infinite()) return "inf";
  std::string s = std::to_string(value_);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

double schatten_norm_from_values(const std::vector<double>& s, PExponent p) {
  double top = 0.0;
  for (double v : s) top = std::max(top, v);
  if (top == 0.0) return 0.0;
  if (p.is_infinite()) return top;
  double sum = 0.0;
  for (double v : s)
    if (v > 0.0) sum += std::pow(v / top, p.value());
  return top * std::pow(sum, 1.0 / p.value());
}

double schatten_norm(const ComplexMatrix& a, PExponent p) {
  return schatten_norm_from_values(svd_values(a), p);
}

SchattenReport schatten_report(const ComplexMatrix& a, PExponent p) {
  SchattenReport r;
  r.p = p;
  r.singular_values = svd_values(a);
  r.norm = schatten_norm_from_values(r.singular_values, p);
  r.dual_exponent = p.dual();
  return r;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: shape mismatch");
  return trace(matmul(adjoint(b), a));
}

HolderWitness holder_witness(const ComplexMatrix& a, PExponent p) {
  SvdResult dec = svd(a);
  const std::size_t k = dec.singular_values.size();
  std::size_t r = 0;
  while (r < k && dec.singular_values[r] > 0.0) ++r;
  if (r == 0) throw std::invalid_argument("holder_witness: zero matrix");

  // Diagonal weights s_i^{p-1}, the extremal element of the dual ball up to
  // normalization. p = 1 gives the polar part, p = inf the top pair.
  std::vector<double> w(k, 0.0);
  if (p.is_infinite()) {
    w[0] = 1.0;
  } else {
    for (std::size_t i = 0; i < r; ++i)
      w[i] = std::pow(dec.singular_values[i], p.value() - 1.0);
  }
  const double normalizer = schatten_norm_from_values(w, p.dual());
  ComplexMatrix diag(k, k);
  for (std::size_t i = 0; i < k; ++i) diag.at(i, i) = w[i] / normalizer;

  HolderWitness out;
  out.b = matmul(matmul(dec.u, diag), adjoint(dec.v));
  out.attained = std::abs(hs_inner(a, out.b));
  return out;
}

bool verify_ideal_bound(const ComplexMatrix& x, const ComplexMatrix& t,
                        const ComplexMatrix& y, PExponent p) {
  const double lhs = schatten_norm(matmul(matmul(x, t), y), p);
  const double rhs = operator_norm(x) * schatten_norm(t, p) * operator_norm(y);
  return lhs <= rhs + kIdealTol;
}

ContainmentCertificate containment_map(const ComplexMatrix& a, PExponent p,
                                       PExponent q) {
  if (!(p <= q))
    throw std::invalid_argument("containment_map: requires p <= q");
  ContainmentCertificate cert;
  std::vector<double> s = svd_values(a);
  cert.from.p = p;
  cert.from.singular_values = s;
  cert.from.norm = schatten_norm_from_values(s, p);
  cert.from.dual_exponent = p.dual();
  cert.to.p = q;
  cert.to.singular_values = std::move(s);
  cert.to.norm = schatten_norm_from_values(cert.to.singular_values, q);
  cert.to.dual_exponent = q.dual();
  cert.contractive = cert.to.norm <= cert.from.norm + kContainTol;
  return cert;
}

}  // namespace schatlab
