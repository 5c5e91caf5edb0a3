#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "schatlab/directed_system.hpp"
#include "schatlab/group_rep.hpp"
#include "schatlab/linalg.hpp"
#include "schatlab/measure_space.hpp"
#include "schatlab/multiplication_rep.hpp"
#include "schatlab/schatten.hpp"
#include "schatlab/verify.hpp"

namespace schatlab {

/// Insertion-ordered documents keep report layout (and therefore bytes)
/// stable across runs.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Input-file violation with the JSON path where it was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Throws ParseError for unreadable files and syntax errors.
Json load_json_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file,
                     const std::string& text);

// Complex scalars are encoded as a plain number (real) or [re, im]; outputs
// always use the two-element form. Exponents serialize as a number or "inf".
Complex parse_complex(const Json& j, const std::string& path);
Json complex_to_json(Complex z);
Json double_to_json(double v);
Json p_to_json(PExponent p);
PExponent parse_p(const Json& j, const std::string& path);

/// Measure space document: {"schema": 1, "atoms": [{"label", "mass"}...],
/// "diffuse": [{"interval": [a,b], "density": <number or segment list>}...]}.
MeasureSpace parse_space(const Json& j);

/// Simple function document: {"schema": 1, "atom_values": {label: complex},
/// "diffuse_values": [{"interval": [a,b], "values": <complex or segments>}]}.
SimpleFunction parse_function(const Json& j);

/// Group document: exactly one of "cyclic": n, "dihedral": n, "s3": true or
/// "table": [[...]] (with optional "labels"), plus optional "rep": "regular"
/// (default) | "trivial" | "dft" | {"character": [...]} | {"matrices": [...]}.
struct GroupModel {
  FiniteGroup group;
  UnitaryRep rep;
  std::string rep_kind;
};
GroupModel parse_group(const Json& j);

/// Group-algebra element: {"schema": 1, "values": [complex, ...]} in Cayley
/// table order.
GroupFunction parse_group_function(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);  // array of rows of [re, im]
ComplexMatrix parse_matrix(const Json& j, const std::string& path);

Json schatten_report_to_json(const SchattenReport& r);
Json verdict_to_json(const MembershipVerdict& v);
Json divergence_to_json(const DivergenceDiagnosis& d,
                        const std::vector<SchedulePoint>& points);
Json fig2_to_json(const Fig2Report& r);
Json functor_to_json(const FunctorLawReport& r);
Json criteria_to_json(const std::vector<CriterionResult>& criteria);
Json acceptance_to_json(const AcceptanceReport& r);

/// Fixed rendering used everywhere a report is written out: two-space
/// indent plus trailing newline, so identical documents are identical bytes.
std::string canonical_dump(const Json& j);

}  // namespace schatlab
