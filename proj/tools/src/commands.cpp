#include "schatlab_cli/commands.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "schatlab/directed_system.hpp"
#include "schatlab/group_rep.hpp"
#include "schatlab/json_io.hpp"
#include "schatlab/measure_space.hpp"
#include "schatlab/multiplication_rep.hpp"
#include "schatlab/schatten.hpp"
#include "schatlab/verify.hpp"

namespace schatlab::cli {

namespace {

/// Command-line level mistakes (bad flag combinations, malformed lists).
class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string space_file;
  std::string function_file;
  std::string group_file;
  std::string p_text = "2";
  std::string p_grid_text = "1,1.5,2,3,inf";
  std::string modes_text;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::string out_path;
  double slope_tol_value = 0.0;
  bool slope_tol_set = false;

  std::optional<double> slope_tol() const {
    if (!slope_tol_set) return std::nullopt;
    return slope_tol_value;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<long long> parse_modes(const std::string& text,
                                   std::size_t min_count) {
  std::vector<long long> modes;
  for (const std::string& item : split_list(text)) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--modes: '" + item + "' is not an integer");
    }
    if (used != item.size() || v <= 0)
      throw UsageError("--modes: '" + item + "' is not a positive integer");
    if (!modes.empty() && v <= modes.back())
      throw UsageError("--modes must be strictly increasing");
    modes.push_back(v);
  }
  if (modes.size() < min_count)
    throw UsageError("--modes needs at least " + std::to_string(min_count) +
                     " values");
  return modes;
}

PExponent parse_p_text(const std::string& text) {
  try {
    return PExponent::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--p: ") + e.what());
  }
}

std::vector<PExponent> parse_grid(const std::string& text) {
  std::vector<PExponent> grid;
  for (const std::string& item : split_list(text)) {
    try {
      grid.push_back(PExponent::parse(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--p-grid: ") + e.what());
    }
    if (grid.size() > 1 && !(grid[grid.size() - 2] <= grid.back()))
      throw UsageError("--p-grid must be non-decreasing");
  }
  return grid;
}

void emit_text(const std::string& text, const Options& o, std::ostream& out) {
  out << text;
  if (!o.out_path.empty()) write_text_file(o.out_path, text);
}

void emit(const Json& j, const Options& o, std::ostream& out) {
  emit_text(canonical_dump(j), o, out);
}

void require_json_format(const Options& o) {
  if (o.format != "json")
    throw UsageError("this command only supports --format json");
}

Json modes_to_json(const std::vector<long long>& modes) {
  Json arr = Json::array();
  for (long long m : modes) arr.push_back(m);
  return arr;
}

Json tolerances_json(const Options& o) {
  Json t;
  t["slope"] = o.slope_tol_set ? Json(o.slope_tol_value) : Json("default");
  return t;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_classify(const Options& o, std::ostream& out) {
  require_json_format(o);
  const MeasureSpace space = parse_space(load_json_file(o.space_file));
  const SimpleFunction f = parse_function(load_json_file(o.function_file));
  const PExponent p = parse_p_text(o.p_text);
  const std::vector<long long> modes =
      o.modes_text.empty() ? default_mode_family() : parse_modes(o.modes_text, 4);

  Json rep;
  rep["schema"] = kSchemaVersion;
  rep["command"] = "classify";
  rep["p"] = p_to_json(p);
  rep["modes"] = modes_to_json(modes);
  rep["tolerances"] = tolerances_json(o);
  const MembershipVerdict exact = classify_exact(space, f, p);
  rep["exact"] = verdict_to_json(exact);

  if (p.is_infinite()) {
    // every bounded function belongs at the top endpoint; there is no
    // growing-window route to race against
    rep["numeric"] = nullptr;
    rep["numeric_skipped"] = true;
    rep["inconclusive"] = false;
    rep["agreement"] = true;
    emit(rep, o, out);
    return kExitOk;
  }
  rep["numeric_skipped"] = false;

  try {
    const MembershipVerdict numeric =
        classify_numeric(space, f, p.value(), modes, o.slope_tol());
    rep["numeric"] = verdict_to_json(numeric);
    rep["inconclusive"] = false;
    const bool agree = numeric.member == exact.member;
    rep["agreement"] = agree;
    emit(rep, o, out);
    return agree ? kExitOk : kExitInputError;
  } catch (const InconclusiveDiagnostics& e) {
    Json numeric;
    numeric["inconclusive"] = true;
    numeric["slope"] = double_to_json(e.slope());
    numeric["slope_tolerance"] = double_to_json(e.tolerance());
    rep["numeric"] = std::move(numeric);
    rep["inconclusive"] = true;
    rep["agreement"] = nullptr;
    emit(rep, o, out);
    return kExitInconclusive;
  }
}

int cmd_norm(const Options& o, std::ostream& out) {
  require_json_format(o);
  const MeasureSpace space = parse_space(load_json_file(o.space_file));
  const SimpleFunction f = parse_function(load_json_file(o.function_file));
  const PExponent p = parse_p_text(o.p_text);
  const long long m_max =
      o.modes_text.empty() ? 8 : parse_modes(o.modes_text, 1).back();

  const TruncationSchedule sched = default_schedule(space, m_max);
  const OperatorTruncation trunc = build_truncation(space, f, sched);

  Json rep;
  rep["schema"] = kSchemaVersion;
  rep["command"] = "norm";
  rep["p"] = p_to_json(p);
  Json js;
  js["atom_count"] = sched.atom_count ? Json(*sched.atom_count) : Json(nullptr);
  js["n_lo"] = sched.n_lo;
  js["n_hi"] = sched.n_hi;
  js["m_max"] = sched.m_max;
  rep["schedule"] = std::move(js);
  rep["dimension"] = trunc.matrix.rows();
  rep["window"] = schatten_report_to_json(schatten_report(trunc.matrix, p));
  rep["exact"] = verdict_to_json(classify_exact(space, f, p));
  emit(rep, o, out);
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.format != "json" && o.format != "csv")
    throw UsageError("--format must be json or csv");
  const MeasureSpace space = parse_space(load_json_file(o.space_file));
  const SimpleFunction f = parse_function(load_json_file(o.function_file));
  const std::vector<PExponent> grid = parse_grid(o.p_grid_text);

  struct Row {
    PExponent p;
    bool member;
    double norm;  // +inf when not a member
  };
  std::vector<Row> rows;
  for (PExponent p : grid) {
    const MembershipVerdict v = classify_exact(space, f, p);
    rows.push_back(
        {p, v.member,
         v.member ? v.norm : std::numeric_limits<double>::infinity()});
  }

  bool non_increasing = true;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (std::isinf(rows[i].norm)) continue;
    if (std::isinf(rows[i + 1].norm) ||
        rows[i + 1].norm > rows[i].norm + 1e-12 * (1.0 + rows[i].norm))
      non_increasing = false;
  }

  if (o.format == "csv") {
    std::string csv = "p,member,norm\n";
    for (const Row& r : rows)
      csv += r.p.to_string() + "," + (r.member ? "true" : "false") + "," +
             format_number(r.norm) + "\n";
    emit_text(csv, o, out);
  } else {
    Json rep;
    rep["schema"] = kSchemaVersion;
    rep["command"] = "sweep";
    Json jrows = Json::array();
    for (const Row& r : rows) {
      Json e;
      e["p"] = p_to_json(r.p);
      e["member"] = r.member;
      e["norm"] = double_to_json(r.norm);
      jrows.push_back(std::move(e));
    }
    rep["rows"] = std::move(jrows);
    rep["non_increasing"] = non_increasing;
    emit(rep, o, out);
  }
  return non_increasing ? kExitOk : kExitInputError;
}

int cmd_diverge(const Options& o, std::ostream& out) {
  require_json_format(o);
  const MeasureSpace space = parse_space(load_json_file(o.space_file));
  const SimpleFunction f = parse_function(load_json_file(o.function_file));
  const PExponent p = parse_p_text(o.p_text);
  if (p.is_infinite())
    throw UsageError("diverge requires a finite exponent");
  const std::vector<long long> modes =
      o.modes_text.empty() ? default_mode_family() : parse_modes(o.modes_text, 4);

  std::vector<SchedulePoint> points;
  for (long long m : modes)
    points.push_back(
        {static_cast<double>(m),
         trace_power_partial(space, f, p.value(), default_schedule(space, m))});
  const DivergenceDiagnosis diag = diagnose_divergence(points, o.slope_tol());
  const bool within_band = diag.slope >= 0.5 * diag.slope_tolerance &&
                           diag.slope <= 2.0 * diag.slope_tolerance;

  Json rep;
  rep["schema"] = kSchemaVersion;
  rep["command"] = "diverge";
  rep["p"] = p_to_json(p);
  rep["modes"] = modes_to_json(modes);
  rep["tolerances"] = tolerances_json(o);
  rep["diagnosis"] = divergence_to_json(diag, points);
  rep["within_band"] = within_band;
  emit(rep, o, out);
  return within_band ? kExitInconclusive : kExitOk;
}

int cmd_group(const Options& o, std::ostream& out) {
  require_json_format(o);
  const GroupModel model = parse_group(load_json_file(o.group_file));
  const PExponent p = parse_p_text(o.p_text);
  const FiniteGroup& g = model.group;

  Json rep;
  rep["schema"] = kSchemaVersion;
  rep["command"] = "group";
  rep["order"] = g.order();
  Json labels = Json::array();
  for (const std::string& l : g.labels()) labels.push_back(l);
  rep["labels"] = std::move(labels);
  rep["rep_kind"] = model.rep_kind;
  rep["rep_dimension"] = model.rep.dimension();
  rep["p"] = p_to_json(p);

  const PullbackIdeal ideal = pullback_ideal(model.rep, p);
  Json jideal;
  jideal["kernel_dim"] = ideal.kernel_basis.size();
  jideal["quotient_dim"] = ideal.quotient_dim;
  jideal["note"] = ideal.note;
  Json basis = Json::array();
  for (const GroupFunction& k : ideal.kernel_basis) {
    Json vec = Json::array();
    for (Complex z : k.values) vec.push_back(complex_to_json(z));
    basis.push_back(std::move(vec));
  }
  jideal["kernel_basis"] = std::move(basis);
  rep["pullback"] = std::move(jideal);

  if (!o.function_file.empty()) {
    const GroupFunction f = parse_group_function(load_json_file(o.function_file));
    if (f.values.size() != g.order())
      throw ParseError("$.values", "expected one value per group element (" +
                                       std::to_string(g.order()) + ")");
    const ComplexMatrix op = induce(model.rep, f);
    rep["induced"] = schatten_report_to_json(schatten_report(op, p));
    rep["involution_residual"] = double_to_json(
        max_abs_entry(sub(induce(model.rep, involution(g, f)), adjoint(op))));
  }
  emit(rep, o, out);
  return kExitOk;
}

int cmd_fig2(const Options& o, std::ostream& out) {
  require_json_format(o);
  const bool have_space = !o.space_file.empty();
  const bool have_group = !o.group_file.empty();
  if (have_space == have_group)
    throw UsageError("fig2 needs exactly one of --space or --group");
  const std::vector<PExponent> grid = parse_grid(o.p_grid_text);

  Json rep;
  rep["schema"] = kSchemaVersion;
  rep["command"] = "fig2";
  Json jgrid = Json::array();
  for (PExponent p : grid) jgrid.push_back(p_to_json(p));
  rep["grid"] = std::move(jgrid);

  Fig2Report fig = [&] {
    if (have_space) {
      const MeasureSpace space = parse_space(load_json_file(o.space_file));
      const long long m_max =
          o.modes_text.empty() ? 2 : parse_modes(o.modes_text, 1).back();
      rep["source"] = "measure";
      return verify_fig2(
          SequenceContext::measure_context(space, default_schedule(space, m_max)),
          grid);
    }
    const GroupModel model = parse_group(load_json_file(o.group_file));
    rep["source"] = "group";
    return verify_fig2(SequenceContext::group_context(model.rep), grid);
  }();

  rep["report"] = fig2_to_json(fig);
  emit(rep, o, out);
  return fig.pass() ? kExitOk : kExitInputError;
}

int cmd_verify_all(const Options& o, std::ostream& out, std::ostream& err) {
  require_json_format(o);
  const AcceptanceReport report = run_acceptance(o.seed);
  for (const CriterionResult& c : report.criteria)
    err << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";

  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "verify-all";
  j["seed"] = report.seed;
  j["criteria"] = criteria_to_json(report.criteria);
  j["all_pass"] = report.all_pass();
  emit(j, o, out);
  return report.all_pass() ? kExitOk : kExitInputError;
}

int fail(const std::string& message, const std::string* path,
         const Options& o, std::ostream& out, std::ostream& err) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["error"] = message;
  j["path"] = path ? Json(*path) : Json(nullptr);
  try {
    emit(j, o, out);
  } catch (const std::exception&) {
    // the error envelope could not be written to --out; stdout already has it
  }
  err << "error: " << message << "\n";
  return kExitInputError;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"membership, norms and commuting windows for p-class ideals",
               "schatlab"};
  app.require_subcommand(1);

  const auto add_io = [&](CLI::App* sub, bool csv_ok) {
    sub->add_option("--format", o.format,
                    csv_ok ? "json or csv" : "json (the only format here)")
        ->default_val("json");
    sub->add_option("--out", o.out_path, "also write the report to this file");
  };
  const auto add_space_function = [&](CLI::App* sub) {
    sub->add_option("--space", o.space_file, "measure space JSON file")
        ->required();
    sub->add_option("--function", o.function_file, "simple function JSON file")
        ->required();
  };
  const auto add_slope_tol = [&](CLI::App* sub) {
    sub->add_option("--slope-tol", o.slope_tol_value,
                    "override the divergence slope tolerance")
        ->each([&](const std::string&) { o.slope_tol_set = true; });
  };

  CLI::App* classify = app.add_subcommand(
      "classify", "exact and numeric membership verdicts for one exponent");
  add_space_function(classify);
  classify->add_option("--p", o.p_text, "exponent in [1, inf) or 'inf'");
  classify->add_option("--modes", o.modes_text,
                       "comma list of mode caps (at least 4)");
  add_slope_tol(classify);
  add_io(classify, false);

  CLI::App* norm = app.add_subcommand(
      "norm", "singular values and p-norm of the windowed operator");
  add_space_function(norm);
  norm->add_option("--p", o.p_text, "exponent in [1, inf) or 'inf'");
  norm->add_option("--modes", o.modes_text,
                   "mode caps; the largest sets the window");
  add_io(norm, false);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "exact norms across a non-decreasing exponent grid");
  add_space_function(sweep);
  sweep->add_option("--p-grid", o.p_grid_text, "comma list, e.g. 1,2,inf");
  add_io(sweep, true);

  CLI::App* diverge = app.add_subcommand(
      "diverge", "trace partial sums and the divergence slope test");
  add_space_function(diverge);
  diverge->add_option("--p", o.p_text, "finite exponent in [1, inf)");
  diverge->add_option("--modes", o.modes_text,
                      "comma list of mode caps (at least 4)");
  add_slope_tol(diverge);
  add_io(diverge, false);

  CLI::App* group = app.add_subcommand(
      "group", "group-algebra pullback: kernel, quotient, induced operator");
  group->add_option("--group", o.group_file, "group JSON file")->required();
  group->add_option("--function", o.function_file,
                    "group function JSON file (optional)");
  group->add_option("--p", o.p_text, "exponent in [1, inf) or 'inf'");
  add_io(group, false);

  CLI::App* fig2 = app.add_subcommand(
      "fig2", "commuting grid of exact sequences across the exponent scale");
  fig2->add_option("--space", o.space_file, "measure space JSON file");
  fig2->add_option("--group", o.group_file, "group JSON file");
  fig2->add_option("--p-grid", o.p_grid_text, "comma list, e.g. 1,2,inf");
  fig2->add_option("--modes", o.modes_text,
                   "mode caps; the largest sets the window (measure source)");
  add_io(fig2, false);

  CLI::App* verify = app.add_subcommand(
      "verify-all", "run the full acceptance suite and report per criterion");
  verify->add_option("--seed", o.seed, "master seed for the randomized checks");
  add_io(verify, false);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("schatlab");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (app.got_subcommand(classify)) return cmd_classify(o, out);
    if (app.got_subcommand(norm)) return cmd_norm(o, out);
    if (app.got_subcommand(sweep)) return cmd_sweep(o, out);
    if (app.got_subcommand(diverge)) return cmd_diverge(o, out);
    if (app.got_subcommand(group)) return cmd_group(o, out);
    if (app.got_subcommand(fig2)) return cmd_fig2(o, out);
    if (app.got_subcommand(verify)) return cmd_verify_all(o, out, err);
    err << "error: no command selected\n";
    return kExitInputError;
  } catch (const ParseError& e) {
    const std::string path = e.path();
    return fail(e.what(), &path, o, out, err);
  } catch (const std::exception& e) {
    return fail(e.what(), nullptr, o, out, err);
  }
}

}  // namespace schatlab::cli
