#pragma once

// File formats: scan CSV, solution JSON, OBJ/CSV meshes, symmetry-curve CSV,
// and the key=value integrator config. Writes go through a temp file + rename.

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dscmc/integrator.hpp"
#include "dscmc/mesh.hpp"
#include "dscmc/period.hpp"

namespace dscmc {

/// Shortest decimal that reads back to the same double; nan, inf, -inf otherwise.
std::string format_double(double x);

/// Writes `content` to `path` via a sibling temp file and rename. Throws IoError.
void write_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// Header "c,f1,f2,admissible_hint"; gaps print f1, f2 as nan.
std::string scan_csv(const ScanResult& scan);

struct SolutionRecord {
  std::string schema_version = "1";
  double a = 0;
  double c = 0;
  double f = 0;
  int epsilon = 0;
  double alpha = 0;
  double beta = 0;
  double su11_residual = 0;
  std::string end_type;
  std::complex<double> m;
  double eigenvalue_mismatch = 0;
  std::string created;  // ISO 8601 UTC, metadata only
  double rel_tol = 0;
  double abs_tol = 0;

  bool operator==(const SolutionRecord&) const = default;
};

template <typename Real>
SolutionRecord make_record(const PeriodSolution<Real>& sol, const std::string& created);

nlohmann::ordered_json to_json(const SolutionRecord& rec);
/// Throws IoError on a missing field or a schema_version other than "1".
SolutionRecord record_from_json(const nlohmann::ordered_json& j);
SolutionRecord parse_record(const std::string& text);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ" (SOURCE_DATE_EPOCH wins if set).
std::string utc_timestamp();

template <typename Real>
std::string mesh_obj(const SurfaceMesh<Real>& mesh);

template <typename Real>
std::string mesh_csv(const SurfaceMesh<Real>& mesh);

std::string curves_csv(const std::vector<Polyline>& curves);

/// Integrator settings for the two precisions.
struct RunConfig {
  IntegratorConfig standard = IntegratorConfig::standard();
  IntegratorConfig extended = IntegratorConfig::extended();
};

/// key = value lines, '#' comments. Keys: rel_tol, abs_tol, max_steps,
/// initial_step, method (dp54 | extrapolation), and the same with a quad_ prefix.
/// Throws DomainError on unknown keys or bad values.
RunConfig parse_config(const std::string& text, RunConfig base = {});

}  // namespace dscmc
