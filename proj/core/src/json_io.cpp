#include "schatlab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace schatlab {

namespace {

std::string child(const std::string& path, const std::string& key) {
  return path + "." + key;
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(path, std::string("missing field '") + key + "'");
  return *it;
}

const Json* opt_field(const Json& j, const char* key,
                      const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

std::size_t size_field(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ParseError(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

void check_schema(const Json& j, const std::string& path) {
  const Json& s = field(j, "schema", path);
  if (!s.is_number_integer() ||
      s.get<long long>() != static_cast<long long>(kSchemaVersion))
    throw ParseError(child(path, "schema"),
                     "unsupported schema version, expected 1");
}

Interval parse_interval(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(path, "expected an interval [lo, hi]");
  return {number(j[0], at(path, 0)), number(j[1], at(path, 1))};
}

/// Shared shape for density and value partitions: either one scalar for the
/// whole interval or a list of {"interval", "value"} segments.
template <typename Scalar, typename ParseScalar>
std::vector<std::pair<Interval, Scalar>> parse_segments(
    const Json& j, const Interval& whole, const std::string& path,
    ParseScalar&& parse_scalar) {
  std::vector<std::pair<Interval, Scalar>> out;
  if (!j.is_array()) {
    out.emplace_back(whole, parse_scalar(j, path));
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    const Json& seg = j[i];
    const Interval sub = parse_interval(field(seg, "interval", p),
                                        child(p, "interval"));
    out.emplace_back(sub,
                     parse_scalar(field(seg, "value", p), child(p, "value")));
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

Json load_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw ParseError("$", "cannot open file: " + file.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("$", std::string("invalid JSON in ") + file.string() +
                              ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& file,
                     const std::string& contents) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

Complex parse_complex(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2)
    return {number(j[0], at(path, 0)), number(j[1], at(path, 1))};
  throw ParseError(path, "expected a complex value: number or [re, im]");
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json double_to_json(double v) {
  if (std::isnan(v)) return Json("nan");
  if (std::isinf(v)) return Json(v > 0 ? "inf" : "-inf");
  return Json(v);
}

Json p_to_json(PExponent p) {
  if (p.is_infinite()) return Json("inf");
  return Json(p.value());
}

PExponent parse_p(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return PExponent::parse(j.get<std::string>());
    if (j.is_number()) return PExponent::finite(j.get<double>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path, "expected an exponent: number in [1, inf) or \"inf\"");
}

MeasureSpace parse_space(const Json& j) {
  const std::string root = "$";
  check_schema(j, root);

  std::vector<AtomEntry> atoms;
  if (const Json* ja = opt_field(j, "atoms", root)) {
    if (!ja->is_array()) throw ParseError(child(root, "atoms"), "expected an array");
    for (std::size_t i = 0; i < ja->size(); ++i) {
      const std::string p = at(child(root, "atoms"), i);
      atoms.push_back({text(field((*ja)[i], "label", p), child(p, "label")),
                       number(field((*ja)[i], "mass", p), child(p, "mass"))});
    }
  }

  std::vector<DiffusePiece> pieces;
  if (const Json* jd = opt_field(j, "diffuse", root)) {
    if (!jd->is_array())
      throw ParseError(child(root, "diffuse"), "expected an array");
    for (std::size_t i = 0; i < jd->size(); ++i) {
      const std::string p = at(child(root, "diffuse"), i);
      DiffusePiece piece;
      piece.interval = parse_interval(field((*jd)[i], "interval", p),
                                      child(p, "interval"));
      const auto segs = parse_segments<double>(
          field((*jd)[i], "density", p), piece.interval, child(p, "density"),
          [](const Json& v, const std::string& vp) { return number(v, vp); });
      for (const auto& [sub, value] : segs)
        piece.density.push_back({sub, value});
      pieces.push_back(std::move(piece));
    }
  }

  try {
    return MeasureSpace(std::move(atoms), std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw ParseError(root, e.what());
  }
}

SimpleFunction parse_function(const Json& j) {
  const std::string root = "$";
  check_schema(j, root);

  SimpleFunction f;
  if (const Json* ja = opt_field(j, "atom_values", root)) {
    if (!ja->is_object())
      throw ParseError(child(root, "atom_values"), "expected an object");
    for (auto it = ja->begin(); it != ja->end(); ++it)
      f.atom_values.emplace(
          it.key(),
          parse_complex(it.value(), child(child(root, "atom_values"), it.key())));
  }
  if (const Json* jd = opt_field(j, "diffuse_values", root)) {
    if (!jd->is_array())
      throw ParseError(child(root, "diffuse_values"), "expected an array");
    for (std::size_t i = 0; i < jd->size(); ++i) {
      const std::string p = at(child(root, "diffuse_values"), i);
      PieceValues pv;
      pv.interval = parse_interval(field((*jd)[i], "interval", p),
                                   child(p, "interval"));
      const auto segs = parse_segments<Complex>(
          field((*jd)[i], "values", p), pv.interval, child(p, "values"),
          [](const Json& v, const std::string& vp) {
            return parse_complex(v, vp);
          });
      for (const auto& [sub, value] : segs) pv.values.push_back({sub, value});
      f.diffuse_values.push_back(std::move(pv));
    }
  }
  return f;
}

GroupModel parse_group(const Json& j) {
  const std::string root = "$";
  check_schema(j, root);

  const Json* jn = opt_field(j, "cyclic", root);
  const Json* jd = opt_field(j, "dihedral", root);
  const Json* js = opt_field(j, "s3", root);
  const Json* jt = opt_field(j, "table", root);
  const int given = (jn != nullptr) + (jd != nullptr) + (js != nullptr) +
                    (jt != nullptr);
  if (given != 1)
    throw ParseError(root,
                     "exactly one of 'cyclic', 'dihedral', 's3', 'table' "
                     "must be given");

  constexpr std::size_t kMaxOrder = 128;  // table validation is cubic
  auto build_group = [&]() -> FiniteGroup {
    try {
      if (jn) {
        const std::size_t n = size_field(*jn, child(root, "cyclic"));
        if (n == 0 || n > kMaxOrder)
          throw ParseError(child(root, "cyclic"), "order must be in [1, 128]");
        return FiniteGroup::cyclic(n);
      }
      if (jd) {
        const std::size_t n = size_field(*jd, child(root, "dihedral"));
        if (n == 0 || 2 * n > kMaxOrder)
          throw ParseError(child(root, "dihedral"),
                           "order 2n must be in [2, 128]");
        return FiniteGroup::dihedral(n);
      }
      if (js) {
        if (!js->is_boolean() || !js->get<bool>())
          throw ParseError(child(root, "s3"), "expected true");
        return FiniteGroup::symmetric3();
      }
      const std::string tp = child(root, "table");
      if (!jt->is_array() || jt->empty() || jt->size() > kMaxOrder)
        throw ParseError(tp, "expected a Cayley table with order in [1, 128]");
      std::vector<std::vector<std::size_t>> table;
      for (std::size_t i = 0; i < jt->size(); ++i) {
        const Json& row = (*jt)[i];
        if (!row.is_array() || row.size() != jt->size())
          throw ParseError(at(tp, i), "table rows must be square");
        std::vector<std::size_t> r;
        for (std::size_t k = 0; k < row.size(); ++k) {
          const std::size_t v = size_field(row[k], at(at(tp, i), k));
          if (v >= jt->size())
            throw ParseError(at(at(tp, i), k), "index out of range");
          r.push_back(v);
        }
        table.push_back(std::move(r));
      }
      std::vector<std::string> labels;
      if (const Json* jl = opt_field(j, "labels", root)) {
        if (!jl->is_array() || jl->size() != table.size())
          throw ParseError(child(root, "labels"),
                           "expected one label per element");
        for (std::size_t i = 0; i < jl->size(); ++i)
          labels.push_back(text((*jl)[i], at(child(root, "labels"), i)));
      }
      return FiniteGroup(std::move(table), std::move(labels));
    } catch (const std::invalid_argument& e) {
      throw ParseError(root, e.what());
    }
  };
  FiniteGroup group = build_group();

  std::string kind = "regular";
  const Json* jr = opt_field(j, "rep", root);
  const std::string rp = child(root, "rep");
  try {
    if (jr == nullptr || (jr->is_string() && jr->get<std::string>() == "regular"))
      return {group, UnitaryRep::regular(group), "regular"};
    if (jr->is_string()) {
      kind = jr->get<std::string>();
      if (kind == "trivial") return {group, UnitaryRep::trivial(group), kind};
      if (kind == "dft") {
        if (!jn)
          throw ParseError(rp, "'dft' requires a group given as 'cyclic'");
        return {group, UnitaryRep::dft_diagonal(group.order()), kind};
      }
      throw ParseError(rp, "unknown rep '" + kind +
                               "', expected regular|trivial|dft or an object");
    }
    if (jr->is_object()) {
      if (const Json* jc = opt_field(*jr, "character", rp)) {
        std::vector<Complex> chi;
        if (!jc->is_array() || jc->size() != group.order())
          throw ParseError(child(rp, "character"),
                           "expected one value per element");
        for (std::size_t i = 0; i < jc->size(); ++i)
          chi.push_back(parse_complex((*jc)[i], at(child(rp, "character"), i)));
        return {group, UnitaryRep::one_dimensional(group, std::move(chi)),
                "character"};
      }
      if (const Json* jm = opt_field(*jr, "matrices", rp)) {
        if (!jm->is_array() || jm->size() != group.order())
          throw ParseError(child(rp, "matrices"),
                           "expected one matrix per element");
        std::vector<ComplexMatrix> mats;
        for (std::size_t i = 0; i < jm->size(); ++i)
          mats.push_back(parse_matrix((*jm)[i], at(child(rp, "matrices"), i)));
        return {group, UnitaryRep(group, std::move(mats)), "matrices"};
      }
      throw ParseError(rp, "expected 'character' or 'matrices'");
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(rp, e.what());
  }
  throw ParseError(rp, "expected a string or an object");
}

GroupFunction parse_group_function(const Json& j) {
  const std::string root = "$";
  check_schema(j, root);
  const Json& jv = field(j, "values", root);
  if (!jv.is_array())
    throw ParseError(child(root, "values"), "expected an array");
  GroupFunction f;
  for (std::size_t i = 0; i < jv.size(); ++i)
    f.values.push_back(parse_complex(jv[i], at(child(root, "values"), i)));
  return f;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(complex_to_json(m.at(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix parse_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw ParseError(path, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Complex> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.empty())
      throw ParseError(at(path, i), "expected a nonempty row");
    if (i == 0)
      cols = row.size();
    else if (row.size() != cols)
      throw ParseError(at(path, i), "ragged rows");
    for (std::size_t k = 0; k < cols; ++k)
      entries.push_back(parse_complex(row[k], at(at(path, i), k)));
  }
  return ComplexMatrix(rows, cols, entries);
}

Json schatten_report_to_json(const SchattenReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["p"] = p_to_json(r.p);
  j["dual_exponent"] = p_to_json(r.dual_exponent);
  j["norm"] = double_to_json(r.norm);
  Json vals = Json::array();
  for (double s : r.singular_values) vals.push_back(double_to_json(s));
  j["singular_values"] = std::move(vals);
  return j;
}

Json verdict_to_json(const MembershipVerdict& v) {
  Json j;
  j["member"] = v.member;
  j["norm"] = v.member ? double_to_json(v.norm) : Json(nullptr);
  if (v.reason) {
    j["reason"] = *v.reason == NotMemberReason::AtomicSupportViolation
                      ? "atomic-support-violation"
                      : "p-sum-diverges";
  } else {
    j["reason"] = nullptr;
  }
  j["slope"] = double_to_json(v.slope);
  j["slope_tolerance"] = double_to_json(v.slope_tolerance);
  j["detail"] = v.detail;
  return j;
}

Json divergence_to_json(const DivergenceDiagnosis& d,
                        const std::vector<SchedulePoint>& points) {
  Json j;
  Json pts = Json::array();
  for (const auto& pt : points) {
    Json e;
    e["size"] = double_to_json(pt.size);
    e["value"] = double_to_json(pt.value);
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  j["diverges"] = d.diverges;
  j["limit"] = double_to_json(d.limit);
  j["slope"] = double_to_json(d.slope);
  j["slope_tolerance"] = double_to_json(d.slope_tolerance);
  return j;
}

Json fig2_to_json(const Fig2Report& r) {
  Json j;
  Json cols = Json::array();
  for (const auto& c : r.columns) {
    Json e;
    e["tag"] = c.tag;
    e["collapsed_endpoint"] = c.collapsed_endpoint;
    e["p"] = p_to_json(c.node.p);
    e["left_dim"] = c.node.left_basis.size();
    e["mid_side"] = c.node.mid_side;
    e["quotient_dim"] = c.node.quotient_dim;
    Json x;
    x["rank"] = c.exactness.rank;
    x["injective"] = c.exactness.injective;
    x["quotient_consistent"] = c.exactness.quotient_consistent;
    x["quotient_kills_image"] = c.exactness.quotient_kills_image;
    x["kill_residual"] = double_to_json(c.exactness.kill_residual);
    x["pass"] = c.exactness.pass();
    e["exactness"] = std::move(x);
    cols.push_back(std::move(e));
  }
  j["columns"] = std::move(cols);

  Json morphs = Json::array();
  for (const auto& m : r.adjacent) {
    Json e;
    e["source_p"] = p_to_json(m.source_p);
    e["target_q"] = p_to_json(m.target_q);
    e["mid_identity"] = m.mid_identity;
    e["squares_commute"] = m.squares_commute;
    e["max_residual"] = double_to_json(m.max_residual);
    Json certs = Json::array();
    for (const auto& c : m.certificates) {
      Json ce;
      ce["what"] = c.what;
      ce["norm_p"] = double_to_json(c.norm_p);
      ce["norm_q"] = double_to_json(c.norm_q);
      ce["contractive"] = c.contractive;
      certs.push_back(std::move(ce));
    }
    e["certificates"] = std::move(certs);
    morphs.push_back(std::move(e));
  }
  j["adjacent"] = std::move(morphs);

  Json coh;
  coh["triples"] = r.coherence.triples;
  coh["max_residual"] = double_to_json(r.coherence.max_residual);
  coh["exact"] = r.coherence.exact;
  j["coherence"] = std::move(coh);

  j["all_blocks_commute"] = r.all_blocks_commute;
  j["max_block_residual"] = double_to_json(r.max_block_residual);
  j["pass"] = r.pass();
  return j;
}

Json functor_to_json(const FunctorLawReport& r) {
  Json j;
  j["identity_ok"] = r.identity_ok;
  j["identity_residual"] = double_to_json(r.identity_residual);
  j["composition_ok"] = r.composition_ok;
  j["composition_residual"] = double_to_json(r.composition_residual);
  j["norms_ok"] = r.norms_ok;
  j["max_norm_deviation"] = double_to_json(r.max_norm_deviation);
  j["samples_checked"] = r.samples_checked;
  j["pass"] = r.pass();
  return j;
}

Json criteria_to_json(const std::vector<CriterionResult>& criteria) {
  Json arr = Json::array();
  for (const auto& c : criteria) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["measured"] = double_to_json(c.measured);
    e["tolerance"] = double_to_json(c.tolerance);
    e["details"] = c.details;
    e["runtime_ok"] = c.runtime_ok;
    arr.push_back(std::move(e));
  }
  return arr;
}

Json acceptance_to_json(const AcceptanceReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["seed"] = r.seed;
  j["criteria"] = criteria_to_json(r.criteria);
  j["all_pass"] = r.all_pass();
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace schatlab
