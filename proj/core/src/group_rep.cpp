#include "schatlab/group_rep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schatlab {

namespace {

constexpr double kRepTol = 1e-10;
constexpr double kIntertwinerTol = 1e-9;
constexpr double kNormEqualTol = 1e-9;

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table,
                         std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
  order_ = table_.size();
  require(order_ > 0, "group order must be positive");
  for (const auto& row : table_) {
    require(row.size() == order_, "Cayley table must be square");
    for (std::size_t v : row)
      require(v < order_, "Cayley table entry out of range");
  }

  // Latin square: each row and each column is a permutation.
  for (std::size_t i = 0; i < order_; ++i) {
    std::vector<bool> seen_row(order_, false), seen_col(order_, false);
    for (std::size_t j = 0; j < order_; ++j) {
      require(!seen_row[table_[i][j]], "Cayley table row repeats an element");
      seen_row[table_[i][j]] = true;
      require(!seen_col[table_[j][i]],
              "Cayley table column repeats an element");
      seen_col[table_[j][i]] = true;
    }
  }

  bool found_identity = false;
  for (std::size_t e = 0; e < order_; ++e) {
    bool ok = true;
    for (std::size_t j = 0; j < order_ && ok; ++j)
      ok = table_[e][j] == j && table_[j][e] == j;
    if (ok) {
      identity_ = e;
      found_identity = true;
      break;
    }
  }
  require(found_identity, "Cayley table has no two-sided identity");

  inverse_.resize(order_);
  for (std::size_t i = 0; i < order_; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < order_; ++j) {
      if (table_[i][j] == identity_ && table_[j][i] == identity_) {
        inverse_[i] = j;
        found = true;
        break;
      }
    }
    require(found, "Cayley table element without a two-sided inverse");
  }

  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j)
      for (std::size_t k = 0; k < order_; ++k)
        require(table_[table_[i][j]][k] == table_[i][table_[j][k]],
                "Cayley table is not associative");

  if (labels_.empty()) {
    labels_.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i)
      labels_.push_back("g" + std::to_string(i));
  }
  require(labels_.size() == order_, "one label per group element required");
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  require(n > 0, "cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  require(n > 0, "dihedral parameter must be positive");
  const std::size_t order = 2 * n;
  // Element eps*n + k encodes s^eps r^k with s r^k s = r^{-k}.
  std::vector<std::vector<std::size_t>> table(order,
                                              std::vector<std::size_t>(order));
  std::vector<std::string> labels(order);
  for (std::size_t e1 = 0; e1 < 2; ++e1) {
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      const std::size_t i = e1 * n + k1;
      labels[i] = (e1 ? "s" : "r") + std::to_string(k1);
      for (std::size_t e2 = 0; e2 < 2; ++e2) {
        for (std::size_t k2 = 0; k2 < n; ++k2) {
          const std::size_t j = e2 * n + k2;
          const std::size_t eps = (e1 + e2) % 2;
          const std::size_t k =
              e2 == 0 ? (k1 + k2) % n : (n - k1 % n + k2) % n;
          table[i][j] = eps * n + k;
        }
      }
    }
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

FiniteGroup FiniteGroup::symmetric3() { return dihedral(3); }

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a,
                                        const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  const std::size_t order = na * nb;
  std::vector<std::vector<std::size_t>> table(order,
                                              std::vector<std::size_t>(order));
  std::vector<std::string> labels(order);
  for (std::size_t i1 = 0; i1 < na; ++i1) {
    for (std::size_t i2 = 0; i2 < nb; ++i2) {
      const std::size_t i = i1 * nb + i2;
      labels[i] = "(" + a.labels()[i1] + "," + b.labels()[i2] + ")";
      for (std::size_t j1 = 0; j1 < na; ++j1)
        for (std::size_t j2 = 0; j2 < nb; ++j2)
          table[i][j1 * nb + j2] = a.op(i1, j1) * nb + b.op(i2, j2);
    }
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

GroupFunction delta(const FiniteGroup& g, std::size_t element) {
  require(element < g.order(), "delta: element index out of range");
  GroupFunction f;
  f.values.assign(g.order(), Complex(0.0, 0.0));
  f.values[element] = Complex(1.0, 0.0);
  return f;
}

GroupFunction convolve(const FiniteGroup& g, const GroupFunction& f,
                       const GroupFunction& h) {
  require(f.values.size() == g.order() && h.values.size() == g.order(),
          "convolve: functions must live on the group");
  GroupFunction out;
  out.values.assign(g.order(), Complex(0.0, 0.0));
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y)
      out.values[x] += f.values[y] * h.values[g.op(g.inverse(y), x)];
  return out;
}

GroupFunction involution(const FiniteGroup& g, const GroupFunction& f) {
  require(f.values.size() == g.order(),
          "involution: function must live on the group");
  GroupFunction out;
  out.values.resize(g.order());
  for (std::size_t x = 0; x < g.order(); ++x)
    out.values[x] = std::conj(f.values[g.inverse(x)]);
  return out;
}

UnitaryRep::UnitaryRep(FiniteGroup group, std::vector<ComplexMatrix> matrices)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
  require(matrices_.size() == group_.order(),
          "one matrix per group element required");
  dim_ = matrices_.front().rows();
  require(dim_ > 0, "representation dimension must be positive");
  for (const auto& m : matrices_) {
    require(m.rows() == dim_ && m.cols() == dim_,
            "all representation matrices must share one square shape");
    require(is_unitary(m, kRepTol), "representation matrix is not unitary");
  }
  const ComplexMatrix id = ComplexMatrix::identity(dim_);
  require(max_abs_entry(sub(matrices_[group_.identity()], id)) <= kRepTol,
          "identity element must map to the identity matrix");
  for (std::size_t i = 0; i < group_.order(); ++i) {
    for (std::size_t j = 0; j < group_.order(); ++j) {
      const ComplexMatrix prod = matmul(matrices_[i], matrices_[j]);
      if (max_abs_entry(sub(prod, matrices_[group_.op(i, j)])) > kRepTol)
        throw std::invalid_argument(
            "matrices do not satisfy the homomorphism property");
    }
  }
}

UnitaryRep UnitaryRep::regular(const FiniteGroup& g) {
  std::vector<ComplexMatrix> mats;
  mats.reserve(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    ComplexMatrix m(g.order(), g.order());
    for (std::size_t j = 0; j < g.order(); ++j)
      m.at(g.op(x, j), j) = Complex(1.0, 0.0);
    mats.push_back(std::move(m));
  }
  return UnitaryRep(g, std::move(mats));
}

UnitaryRep UnitaryRep::trivial(const FiniteGroup& g) {
  std::vector<Complex> character(g.order(), Complex(1.0, 0.0));
  return one_dimensional(g, std::move(character));
}

UnitaryRep UnitaryRep::one_dimensional(const FiniteGroup& g,
                                       std::vector<Complex> character) {
  require(character.size() == g.order(),
          "one character value per group element required");
  std::vector<ComplexMatrix> mats;
  mats.reserve(g.order());
  for (const Complex& c : character)
    mats.push_back(ComplexMatrix(1, 1, {c}));
  return UnitaryRep(g, std::move(mats));
}

UnitaryRep UnitaryRep::dft_diagonal(std::size_t n) {
  FiniteGroup g = FiniteGroup::cyclic(n);
  std::vector<ComplexMatrix> mats;
  mats.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi *
                           static_cast<double>(j * k % n) /
                           static_cast<double>(n);
      m.at(j, j) = Complex(std::cos(angle), std::sin(angle));
    }
    mats.push_back(std::move(m));
  }
  return UnitaryRep(std::move(g), std::move(mats));
}

UnitaryRep UnitaryRep::direct_sum(const UnitaryRep& a, const UnitaryRep& b) {
  require(a.group() == b.group(), "direct_sum: representations of one group");
  const std::size_t da = a.dimension(), db = b.dimension();
  std::vector<ComplexMatrix> mats;
  mats.reserve(a.group().order());
  for (std::size_t x = 0; x < a.group().order(); ++x) {
    ComplexMatrix m(da + db, da + db);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) m.at(i, j) = a.matrix(x).at(i, j);
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < db; ++j)
        m.at(da + i, da + j) = b.matrix(x).at(i, j);
    mats.push_back(std::move(m));
  }
  return UnitaryRep(a.group(), std::move(mats));
}

UnitaryRep conjugated(const UnitaryRep& rep, const ComplexMatrix& u) {
  require(u.rows() == rep.dimension() && u.cols() == rep.dimension(),
          "conjugated: U must be square of the representation dimension");
  require(is_unitary(u, kRepTol), "conjugated: U must be unitary");
  const ComplexMatrix uh = adjoint(u);
  std::vector<ComplexMatrix> mats;
  mats.reserve(rep.group().order());
  for (std::size_t x = 0; x < rep.group().order(); ++x)
    mats.push_back(matmul(matmul(u, rep.matrix(x)), uh));
  return UnitaryRep(rep.group(), std::move(mats));
}

ComplexMatrix induce(const UnitaryRep& rep, const GroupFunction& f) {
  require(f.values.size() == rep.group().order(),
          "induce: function must live on the representation's group");
  ComplexMatrix out(rep.dimension(), rep.dimension());
  for (std::size_t x = 0; x < rep.group().order(); ++x) {
    const Complex c = f.values[x];
    if (c == Complex(0.0, 0.0)) continue;
    const ComplexMatrix& m = rep.matrix(x);
    for (std::size_t i = 0; i < rep.dimension(); ++i)
      for (std::size_t j = 0; j < rep.dimension(); ++j)
        out.at(i, j) += c * m.at(i, j);
  }
  return out;
}

PullbackIdeal pullback_ideal(const UnitaryRep& rep, PExponent p) {
  const std::size_t n = rep.group().order();
  const std::size_t d = rep.dimension();

  // Columns are the vectorized images of the delta functions.
  ComplexMatrix map(d * d, n);
  for (std::size_t x = 0; x < n; ++x) {
    const ComplexMatrix& m = rep.matrix(x);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        map.at(i * d + j, x) = m.at(i, j);
  }

  PullbackIdeal out;
  out.p = p;
  const ComplexMatrix basis = nullspace_basis(map, 1e-10);
  const std::size_t nullity = basis.empty() ? 0 : basis.cols();
  for (std::size_t k = 0; k < nullity; ++k) {
    GroupFunction f;
    f.values.resize(n);
    for (std::size_t x = 0; x < n; ++x) f.values[x] = basis.at(x, k);
    out.kernel_basis.push_back(std::move(f));
  }
  out.quotient_dim = n - nullity;
  out.note =
      "finite dimension: every operator is p-summable, so the pullback is "
      "the whole group algebra; reported data is ker(induce) and its "
      "codimension";
  return out;
}

bool verify_intertwiner(const ComplexMatrix& u, const UnitaryRep& rep1,
                        const UnitaryRep& rep2) {
  require(rep1.group() == rep2.group(),
          "verify_intertwiner: representations of one group");
  require(u.rows() == rep2.dimension() && u.cols() == rep1.dimension(),
          "verify_intertwiner: U must map dim(rep1) to dim(rep2)");
  double worst = 0.0;
  for (std::size_t x = 0; x < rep1.group().order(); ++x) {
    const ComplexMatrix lhs = matmul(u, rep1.matrix(x));
    const ComplexMatrix rhs = matmul(rep2.matrix(x), u);
    worst = std::max(worst, operator_norm(sub(lhs, rhs)));
    if (worst > kIntertwinerTol) return false;
  }
  return worst <= kIntertwinerTol;
}

bool check_unitary_equiv_invariance(const UnitaryRep& rep1,
                                    const UnitaryRep& rep2,
                                    const ComplexMatrix& u,
                                    const GroupFunction& f, PExponent p) {
  require(u.rows() == u.cols() && is_unitary(u, kRepTol),
          "check_unitary_equiv_invariance: U must be unitary");
  if (!verify_intertwiner(u, rep1, rep2))
    throw std::invalid_argument(
        "check_unitary_equiv_invariance: U does not intertwine the "
        "representations");
  const double n1 = schatten_norm(induce(rep1, f), p);
  const double n2 = schatten_norm(induce(rep2, f), p);
  const double denom = std::max(n1, n2);
  if (denom == 0.0) return true;
  return std::abs(n1 - n2) <= kNormEqualTol * denom;
}

}  // namespace schatlab
