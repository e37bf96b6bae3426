#include "dscmc/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "dscmc/errors.hpp"

namespace dscmc {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scan_csv(const ScanResult& scan) {
  std::string out = "c,f1,f2,admissible_hint\n";
  for (const auto& r : scan.records) {
    out += format_double(r.c) + ',' + format_double(r.f1) + ',' + format_double(r.f2) + ',' +
           (r.admissible_hint ? "true" : "false") + '\n';
  }
  return out;
}

template <typename Real>
SolutionRecord make_record(const PeriodSolution<Real>& sol, const std::string& created) {
  SolutionRecord rec;
  rec.a = to_double(sol.a);
  rec.c = to_double(sol.c);
  rec.f = to_double(sol.f);
  rec.epsilon = sol.epsilon;
  rec.alpha = to_double(sol.alpha);
  rec.beta = to_double(sol.beta);
  rec.su11_residual = to_double(sol.su11_residual);
  rec.end_type = to_string(sol.end.end_type);
  rec.m = to_double(sol.end.m);
  rec.eigenvalue_mismatch = to_double(sol.end.eigenvalue_mismatch);
  rec.created = created;
  rec.rel_tol = sol.integrator.rel_tol;
  rec.abs_tol = sol.integrator.abs_tol;
  return rec;
}

nlohmann::ordered_json to_json(const SolutionRecord& rec) {
  nlohmann::ordered_json j;
  j["schema_version"] = rec.schema_version;
  j["a"] = rec.a;
  j["c"] = rec.c;
  j["f"] = rec.f;
  j["epsilon"] = rec.epsilon;
  j["alpha"] = rec.alpha;
  j["beta"] = rec.beta;
  j["su11_residual"] = rec.su11_residual;
  j["end_type"] = rec.end_type;
  j["m"] = {{"re", rec.m.real()}, {"im", rec.m.imag()}};
  j["eigenvalue_mismatch"] = rec.eigenvalue_mismatch;
  j["timestamps"] = {{"created", rec.created}};
  j["integrator"] = {{"rel_tol", rec.rel_tol}, {"abs_tol", rec.abs_tol}};
  return j;
}

SolutionRecord record_from_json(const nlohmann::ordered_json& j) {
  try {
    SolutionRecord rec;
    rec.schema_version = j.at("schema_version").get<std::string>();
    if (rec.schema_version != "1") throw IoError("unsupported schema_version " + rec.schema_version);
    rec.a = j.at("a").get<double>();
    rec.c = j.at("c").get<double>();
    rec.f = j.at("f").get<double>();
    rec.epsilon = j.at("epsilon").get<int>();
    rec.alpha = j.at("alpha").get<double>();
    rec.beta = j.at("beta").get<double>();
    rec.su11_residual = j.at("su11_residual").get<double>();
    rec.end_type = j.at("end_type").get<std::string>();
    rec.m = {j.at("m").at("re").get<double>(), j.at("m").at("im").get<double>()};
    rec.eigenvalue_mismatch = j.at("eigenvalue_mismatch").get<double>();
    rec.created = j.at("timestamps").at("created").get<std::string>();
    rec.rel_tol = j.at("integrator").at("rel_tol").get<double>();
    rec.abs_tol = j.at("integrator").at("abs_tol").get<double>();
    return rec;
  } catch (const nlohmann::ordered_json::exception& e) {
    throw IoError(std::string("malformed solution record: ") + e.what());
  }
}

SolutionRecord parse_record(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::ordered_json::exception& e) {
    throw IoError(std::string("solution record is not valid JSON: ") + e.what());
  }
  return record_from_json(j);
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    long long t = 0;
    const auto res = std::from_chars(epoch, epoch + std::strlen(epoch), t);
    if (res.ec == std::errc() && *res.ptr == '\0') now = static_cast<std::time_t>(t);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename Real>
std::string mesh_obj(const SurfaceMesh<Real>& mesh) {
  std::string out;
  for (const auto& s : mesh.samples)
    out += "v " + format_double(to_double(s.Y.y1)) + ' ' + format_double(to_double(s.Y.y2)) + ' ' +
           format_double(to_double(s.Y.y3)) + '\n';
  for (const auto& t : mesh.triangles)
    out += "f " + std::to_string(t[0] + 1) + ' ' + std::to_string(t[1] + 1) + ' ' + std::to_string(t[2] + 1) + '\n';
  return out;
}

template <typename Real>
std::string mesh_csv(const SurfaceMesh<Real>& mesh) {
  std::string out = "sheet,ring,slot,z_re,z_im,x0,x1,x2,x3,y1,y2,y3,g_abs,singular\n";
  for (const auto& s : mesh.samples) {
    const auto z = to_double(s.param.z);
    out += std::to_string(s.sheet) + ',' + std::to_string(s.ring) + ',' + std::to_string(s.slot) + ',' +
           format_double(z.real()) + ',' + format_double(z.imag()) + ',' + format_double(to_double(s.X.x0)) +
           ',' + format_double(to_double(s.X.x1)) + ',' + format_double(to_double(s.X.x2)) + ',' +
           format_double(to_double(s.X.x3)) + ',' + format_double(to_double(s.Y.y1)) + ',' +
           format_double(to_double(s.Y.y2)) + ',' + format_double(to_double(s.Y.y3)) + ',' +
           format_double(to_double(s.g_abs)) + ',' + (s.singular ? "1" : "0") + '\n';
  }
  return out;
}

std::string curves_csv(const std::vector<Polyline>& curves) {
  std::string out = "curve_id,y1,y2,y3\n";
  for (std::size_t id = 0; id < curves.size(); ++id)
    for (const auto& p : curves[id])
      out += std::to_string(id) + ',' + format_double(p[0]) + ',' + format_double(p[1]) + ',' +
             format_double(p[2]) + '\n';
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  double x = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), x);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    throw DomainError("config: " + key + " expects a number, got '" + value + "'");
  return x;
}

}  // namespace

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    IntegratorConfig* cfg = &base.standard;
    if (key.rfind("quad_", 0) == 0) {
      cfg = &base.extended;
      key = key.substr(5);
    }
    if (key == "rel_tol") cfg->rel_tol = parse_number(key, value);
    else if (key == "abs_tol") cfg->abs_tol = parse_number(key, value);
    else if (key == "initial_step") cfg->initial_step = parse_number(key, value);
    else if (key == "max_steps") cfg->max_steps = static_cast<long>(parse_number(key, value));
    else if (key == "method") {
      if (value == "dp54") cfg->method = Method::DormandPrince54;
      else if (value == "extrapolation") cfg->method = Method::Extrapolation;
      else throw DomainError("config: unknown method '" + value + "'");
    } else {
      throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  base.standard.validate();
  base.extended.validate();
  return base;
}

template SolutionRecord make_record<double>(const PeriodSolution<double>&, const std::string&);
template SolutionRecord make_record<Quad>(const PeriodSolution<Quad>&, const std::string&);
template std::string mesh_obj<double>(const SurfaceMesh<double>&);
template std::string mesh_obj<Quad>(const SurfaceMesh<Quad>&);
template std::string mesh_csv<double>(const SurfaceMesh<double>&);
template std::string mesh_csv<Quad>(const SurfaceMesh<Quad>&);

}  // namespace dscmc
