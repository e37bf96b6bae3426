#include "dscmc/cli.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dscmc/curve.hpp"
#include "dscmc/ends.hpp"
#include "dscmc/errors.hpp"
#include "dscmc/geometry.hpp"
#include "dscmc/io.hpp"
#include "dscmc/linalg2c.hpp"
#include "dscmc/mesh.hpp"
#include "dscmc/monodromy.hpp"
#include "dscmc/period.hpp"
#include "dscmc/transport.hpp"

namespace dscmc {

namespace {

std::string fmt(double x) { return format_double(x); }
std::string fmt(const Quad& x) { return format_double(to_double(x)); }

std::string fmt(std::complex<double> z) {
  std::string s = fmt(z.real());
  s += z.imag() < 0 || std::signbit(z.imag()) ? " - " : " + ";
  s += fmt(std::abs(z.imag())) + "i";
  return s;
}
std::string fmt(const Complex<Quad>& z) { return fmt(to_double(z)); }

struct GlobalFlags {
  std::string config_path;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;

  RunConfig resolve() const {
    RunConfig rc;
    if (!config_path.empty()) rc = parse_config(read_file(config_path));
    if (rel_tol) rc.standard.rel_tol = *rel_tol;
    if (abs_tol) rc.standard.abs_tol = *abs_tol;
    rc.standard.validate();
    return rc;
  }
};

SolveOptions solve_options(const RunConfig& rc, double tol_c = kDefaultTolC) {
  SolveOptions opts;
  opts.tol_c = tol_c;
  opts.scan_cfg = rc.standard;
  opts.verify_cfg = rc.extended;
  return opts;
}

void print_solution(std::ostream& out, const PeriodSolution<Quad>& sol) {
  out << "a = " << fmt(sol.a) << "\n"
      << "c = " << fmt(sol.c) << "\n"
      << "f = " << fmt(sol.f) << "\n"
      << "epsilon = " << sol.epsilon << "\n"
      << "alpha = " << fmt(sol.alpha) << "\n"
      << "beta = " << fmt(sol.beta) << "\n";
  for (int j = 0; j < 3; ++j) out << "loop " << j + 1 << " su11_distance = " << fmt(sol.loop_residuals[j]) << "\n";
  out << "su11_residual = " << fmt(sol.su11_residual) << "\n"
      << "end_type = " << to_string(sol.end.end_type) << "\n"
      << "m = " << fmt(sol.end.m) << "\n"
      << "eigenvalue_mismatch = " << fmt(sol.end.eigenvalue_mismatch) << "\n";
}

// ---- scan

struct ScanFlags {
  double a = 2;
  double c_min = -9;
  double c_max = 4;
  int steps = 2600;
  std::string out_path;
  bool no_refine = false;
};

int cmd_scan(const ScanFlags& f, const RunConfig& rc, std::ostream& out) {
  const auto scan = scan_c(f.a, f.c_min, f.c_max, f.steps, rc.standard);
  if (!f.out_path.empty()) write_atomic(f.out_path, scan_csv(scan));

  int crossings = 0, poles = 0, admissible = 0;
  for (const auto& b : scan.brackets) {
    out << "bracket [" << fmt(b.c_lo) << ", " << fmt(b.c_hi) << "] hint "
        << (b.admissible_hint ? "admissible" : "not-admissible");
    if (!f.no_refine) {
      try {
        const auto r = refine_root<double>(f.a, b.c_lo, b.c_hi, kDefaultTolC, rc.standard);
        out << " root " << fmt(r.c) << " " << to_string(r.kind);
        if (r.kind == RootKind::Crossing) {
          ++crossings;
          const bool ok = std::abs(r.f) > 1;
          admissible += ok ? 1 : 0;
          out << " f " << fmt(r.f) << (ok ? " admissible" : " not-admissible");
        } else {
          ++poles;
        }
      } catch (const LostBracket& e) {
        out << " refinement failed: " << e.what();
      }
    }
    out << "\n";
  }
  out << "brackets: " << scan.brackets.size();
  if (!f.no_refine)
    out << " (crossings " << crossings << ", poles " << poles << ", admissible " << admissible << ")";
  out << "\n";
  return kExitOk;
}

// ---- solve

struct SolveFlags {
  double a = 2;
  double c0 = 0;
  double c1 = 0;
  double tol_c = kDefaultTolC;
  std::string json_path;
};

int cmd_solve(const SolveFlags& f, const RunConfig& rc, std::ostream& out) {
  const auto sol = solve_period(f.a, std::min(f.c0, f.c1), std::max(f.c0, f.c1), solve_options(rc, f.tol_c));
  const std::string json = to_json(make_record(sol, utc_timestamp())).dump(2) + "\n";
  if (f.json_path.empty()) {
    out << json;
  } else {
    write_atomic(f.json_path, json);
    print_solution(out, sol);
  }
  return kExitOk;
}

// ---- classify

struct ClassifyFlags {
  double a = 2;
  double c = 0;
  bool json = false;
};

int cmd_classify(const ClassifyFlags& f, const RunConfig& rc, std::ostream& out) {
  CurveParams<double>{f.a, f.c}.validate();
  CurveParams<double>{f.a, f.c}.require_nonzero_c();
  const Quad a(f.a), c(f.c);
  const auto predicted = classify_end<Quad>(a, c);
  const auto plus = end_loop_check<Quad>(a, c, +1, rc.extended);
  const auto minus = end_loop_check<Quad>(a, c, -1, rc.extended);
  const double mismatch = std::max(to_double(plus.eigenvalue_mismatch), to_double(minus.eigenvalue_mismatch));

  if (f.json) {
    auto pair = [](const std::pair<Complex<Quad>, Complex<Quad>>& p) {
      const auto x = to_double(p.first), y = to_double(p.second);
      return nlohmann::ordered_json::array({{{"re", x.real()}, {"im", x.imag()}}, {{"re", y.real()}, {"im", y.imag()}}});
    };
    const auto m = to_double(predicted.m);
    nlohmann::ordered_json j;
    j["a"] = f.a;
    j["c"] = f.c;
    j["m"] = {{"re", m.real()}, {"im", m.imag()}};
    j["end_type"] = to_string(predicted.end_type);
    j["predicted_eigenvalues"] = pair(predicted.predicted_eigenvalues);
    j["measured_eigenvalues_plus"] = pair(plus.measured_eigenvalues);
    j["measured_eigenvalues_minus"] = pair(minus.measured_eigenvalues);
    j["eigenvalue_mismatch"] = mismatch;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "a = " << fmt(f.a) << "\n"
      << "c = " << fmt(f.c) << "\n"
      << "m = " << fmt(predicted.m) << "\n"
      << "end_type = " << to_string(predicted.end_type) << "\n"
      << "predicted = " << fmt(predicted.predicted_eigenvalues.first) << ", "
      << fmt(predicted.predicted_eigenvalues.second) << "\n"
      << "measured (end +) = " << fmt(plus.measured_eigenvalues.first) << ", "
      << fmt(plus.measured_eigenvalues.second) << "\n"
      << "measured (end -) = " << fmt(minus.measured_eigenvalues.first) << ", "
      << fmt(minus.measured_eigenvalues.second) << "\n"
      << "eigenvalue_mismatch = " << fmt(mismatch) << "\n";
  return kExitOk;
}

// ---- mesh

struct MeshFlags {
  double a = 2;
  double c = 0;
  int nu = 16;
  int nv = 16;
  double r_max_factor = 12;
  std::string out_path;
  std::string format = "obj";
  std::string curves_path;
};

int cmd_mesh(const MeshFlags& f, const RunConfig& rc, std::ostream& out) {
  const auto sol = solve_near(f.a, f.c, solve_options(rc));
  MeshOptions opts;
  opts.nu = f.nu;
  opts.nv = f.nv;
  opts.r_max_factor = f.r_max_factor;
  const auto mesh = build_mesh<Quad>(sol, opts, rc.extended);
  write_atomic(f.out_path, f.format == "csv" ? mesh_csv(mesh) : mesh_obj(mesh));
  std::size_t curve_count = 0;
  if (!f.curves_path.empty()) {
    const auto curves = symmetry_curves(mesh);
    curve_count = curves.size();
    write_atomic(f.curves_path, curves_csv(curves));
  }
  out << "c = " << fmt(sol.c) << "\n"
      << "samples = " << mesh.samples.size() << "\n"
      << "triangles = " << mesh.triangles.size() << " (of " << mesh.all_triangles.size() << ")\n"
      << "holes = " << mesh.holes << "\n";
  if (!f.curves_path.empty()) out << "curves = " << curve_count << "\n";
  return kExitOk;
}

// ---- verify

struct VerifyFlags {
  double a = 2;
  double c = 0;
  bool deep = false;
};

struct CheckRow {
  std::string name;
  bool pass;
  std::string value;
  std::string limit;
};

class CheckTable {
 public:
  void add(std::string name, double value, double limit) {
    rows_.push_back({std::move(name), value < limit, fmt(value), "< " + fmt(limit)});
  }
  void fail(std::string name, const std::string& why) { rows_.push_back({std::move(name), false, why, ""}); }

  // Runs `body`; library errors become a failed row instead of aborting the suite.
  void run(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      fail(name, e.what());
    }
  }

  bool all_pass() const {
    for (const auto& r : rows_)
      if (!r.pass) return false;
    return !rows_.empty();
  }

  void print(std::ostream& out) const {
    std::size_t w = 5;
    for (const auto& r : rows_) w = std::max(w, r.name.size());
    for (const auto& r : rows_) {
      out << (r.pass ? "PASS  " : "FAIL  ") << r.name << std::string(w - r.name.size() + 2, ' ') << r.value;
      if (!r.limit.empty()) out << "  (" << r.limit << ")";
      out << "\n";
    }
  }

 private:
  std::vector<CheckRow> rows_;
};

Mat2<Quad> lift_matrix() {
  const Complex<Quad> p(1.3), q(Quad(0.4), Quad(0.2)), r(Quad(0), Quad(-0.3));
  return mat2<Quad>(p, q, r, (Complex<Quad>(1) + q * r) / p);
}

CurvePoint<Quad> point_on_sheet(const Quad& a, const Quad& c, std::complex<double> z) {
  PathSpec<Quad> seg;
  seg.start = base_point<Quad>();
  seg.waypoints = {Complex<Quad>(0), complex_cast<Quad>(z)};
  return transport_w(seg, CurveParams<Quad>{a, c});
}

int cmd_verify(const VerifyFlags& f, const RunConfig& rc, std::ostream& out) {
  CurveParams<double>{f.a, f.c}.validate();
  CurveParams<double>{f.a, f.c}.require_nonzero_c();
  const IntegratorConfig& qcfg = rc.extended;
  CheckTable table;

  std::optional<PeriodSolution<Quad>> sol;
  try {
    sol = solve_near(f.a, f.c, solve_options(rc));
    table.add("gauge su11_residual", to_double(sol->su11_residual), kTolSU11);
  } catch (const NotAdmissible& e) {
    table.fail("gauge su11_residual", std::string("no admissible root: ") + e.what());
  } catch (const VerificationFailed& e) {
    table.fail("gauge su11_residual", e.what());
  } catch (const LostBracket& e) {
    table.fail("gauge su11_residual", std::string("no root near c: ") + e.what());
  }

  // Everything below is evaluated at the refined root when there is one.
  const Quad a(f.a);
  const Quad c = sol ? sol->c : Quad(f.c);
  const CurveParams<Quad> params{a, c};
  out << "a = " << fmt(a) << "\nc = " << fmt(c) << "\n";

  std::optional<MonodromyTriple<Quad>> phi;
  table.run("monodromy", [&] {
    phi = assemble_monodromies(half_path_frames<Quad>(params, qcfg));
    double det = 0, psi = 0;
    for (int j = 1; j <= 3; ++j) det = std::max(det, to_double(abs(det2<Quad>((*phi)[j]) - Quad(1))));
    table.add("det Phi_j = 1", det, kTolDet);
    psi = std::max(to_double(lemma_psi_form_residual(phi->Phi2)), to_double(lemma_psi_form_residual(phi->Phi3)));
    table.add("form Phi_2, Phi_3", psi, kTolForm);
    table.add("form Phi_1", to_double(lemma_phi_form_residual(phi->Phi1)), kTolForm);
    table.add("Phi_3 from Phi_2", to_double(phi3_pattern_residual(phi->Phi2, phi->Phi3)), kTolForm);
  });
  if (phi) {
    table.run("symmetry vs direct", [&] {
      const auto direct = direct_monodromies<Quad>(params, qcfg);
      double worst = 0;
      for (int j = 1; j <= 3; ++j) {
        const double scale = std::max(1.0, to_double(max_abs((*phi)[j])));
        worst = std::max(worst, to_double(max_abs_diff((*phi)[j], direct[j])) / scale);
      }
      table.add("symmetry vs direct", worst, 1e-6);
    });
  }
  table.run("lift independence", [&] {
    const auto paths = canonical_paths<Quad>(a);
    const auto B = lift_matrix();
    double worst = 0;
    for (const auto* loop : {&paths.gamma1, &paths.gamma2, &paths.gamma3})
      worst = std::max(worst, to_double(lift_independence_check(params, *loop, B, qcfg)));
    table.add("lift independence", worst, 1e-7);
  });
  table.run("end eigenvalues", [&] {
    double worst = 0;
    for (int end : {+1, -1}) worst = std::max(worst, to_double(end_loop_check<Quad>(a, c, end, qcfg).eigenvalue_mismatch));
    table.add("end eigenvalues", worst, kTolEigen);
  });
  table.run("scalar ODE", [&] {
    const auto paths = canonical_paths<Quad>(a);
    double worst = 0;
    for (const auto* p : {&paths.c1, &paths.c2}) worst = std::max(worst, to_double(scalar_ode_residual(*p, params, 32, qcfg)));
    table.add("scalar ODE", worst, 1e-8);
  });

  // Frame-level identities hold for any gauge; use the identity when there is no solution.
  PeriodSolution<Quad> frame_sol;
  if (sol) {
    frame_sol = *sol;
  } else {
    frame_sol.a = a;
    frame_sol.c = c;
    frame_sol.P = identity2<Quad>();
  }
  table.run("Schwarzian", [&] {
    const auto p = point_on_sheet(a, c, {2.5, 1.0});
    table.add("Schwarzian (h = 1e-3)", to_double(schwarzian_check(frame_sol, p, Quad(1e-3), qcfg)), 1e-4);
  });
  table.run("Small formula", [&] {
    double worst = 0;
    for (auto z : {std::complex<double>(0.3, 0.4), std::complex<double>(-0.5, 0.2), std::complex<double>(2.5, 1.0)})
      worst = std::max(worst, to_double(small_formula_check(frame_sol, point_on_sheet(a, c, z), qcfg)));
    table.add("Small formula", worst, 1e-5);
  });

  if (f.deep && phi) {
    // Double-precision reference at ten times tighter tolerances, against the quad triple.
    table.run("deep reference", [&] {
      IntegratorConfig fine = rc.standard;
      fine.rel_tol /= 10;
      fine.abs_tol /= 10;
      const CurveParams<double> pd{f.a, to_double(c)};
      const auto ref = assemble_monodromies(half_path_frames<double>(pd, fine));
      double worst = 0;
      for (int j = 1; j <= 3; ++j) {
        const auto q = mat2_cast<double>((*phi)[j]);
        worst = std::max(worst, max_abs_diff(ref[j], q) / std::max(1.0, max_abs(q)));
      }
      table.add("deep reference", worst, 1e-6);
    });
  }

  table.print(out);
  const bool ok = table.all_pass();
  out << (ok ? "all checks pass" : "some checks failed") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int exit_code_for(const std::exception_ptr& ep, std::ostream& err) {
  try {
    std::rethrow_exception(ep);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotAdmissible& e) {
    err << "not admissible: " << e.what() << "\n";
    return kExitNotAdmissible;
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const ResonantExponent& e) {
    err << "resonant exponent: " << e.what() << "\n";
    return kExitResonant;
  } catch (const EigenvalueMismatch& e) {
    err << "eigenvalue mismatch: " << e.what() << "\n";
    return kExitEigenMismatch;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "integration failure: " << e.what() << "\n";
    return kExitIntegration;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIntegration;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"CMC-1 catenoid faces in de Sitter 3-space: scan, solve, classify, mesh, verify", "dscmc"};
  app.require_subcommand(1);

  GlobalFlags global;
  app.add_option("--config", global.config_path, "key = value integrator settings");
  app.add_option("--rel-tol", global.rel_tol, "relative tolerance (double precision)");
  app.add_option("--abs-tol", global.abs_tol, "absolute tolerance (double precision)");

  ScanFlags scan;
  auto* scan_cmd = app.add_subcommand("scan", "sample f1, f2 over a c grid and report sign changes");
  scan_cmd->add_option("--a", scan.a)->required();
  scan_cmd->add_option("--c-min", scan.c_min);
  scan_cmd->add_option("--c-max", scan.c_max);
  scan_cmd->add_option("--steps", scan.steps);
  scan_cmd->add_option("--out", scan.out_path, "scan CSV");
  scan_cmd->add_flag("--no-refine", scan.no_refine, "list brackets without refining them");

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "refine a root, solve the gauge and verify");
  solve_cmd->add_option("--a", solve.a)->required();
  solve_cmd->add_option("--c0", solve.c0)->required();
  solve_cmd->add_option("--c1", solve.c1)->required();
  solve_cmd->add_option("--tol-c", solve.tol_c);
  solve_cmd->add_option("--json", solve.json_path, "solution record path (stdout if omitted)");

  ClassifyFlags classify;
  auto* classify_cmd = app.add_subcommand("classify", "indicial exponent and end monodromy");
  classify_cmd->add_option("--a", classify.a)->required();
  classify_cmd->add_option("--c", classify.c)->required();
  classify_cmd->add_flag("--json", classify.json);

  MeshFlags mesh;
  auto* mesh_cmd = app.add_subcommand("mesh", "sample the face in the hollow-ball model");
  mesh_cmd->add_option("--a", mesh.a)->required();
  mesh_cmd->add_option("--c", mesh.c, "approximate root")->required();
  mesh_cmd->add_option("--nu", mesh.nu);
  mesh_cmd->add_option("--nv", mesh.nv);
  mesh_cmd->add_option("--r-max-factor", mesh.r_max_factor);
  mesh_cmd->add_option("--out", mesh.out_path)->required();
  mesh_cmd->add_option("--format", mesh.format)->check(CLI::IsMember({"obj", "csv"}));
  mesh_cmd->add_option("--curves", mesh.curves_path, "symmetry-curve CSV");

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite at (a, c)");
  verify_cmd->add_option("--a", verify.a)->required();
  verify_cmd->add_option("--c", verify.c)->required();
  verify_cmd->add_flag("--deep", verify.deep, "add a tighter-tolerance reference integration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const RunConfig rc = global.resolve();
    if (*scan_cmd) return cmd_scan(scan, rc, out);
    if (*solve_cmd) return cmd_solve(solve, rc, out);
    if (*classify_cmd) return cmd_classify(classify, rc, out);
    if (*mesh_cmd) return cmd_mesh(mesh, rc, out);
    if (*verify_cmd) return cmd_verify(verify, rc, out);
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
  return kExitUsage;
}

}  // namespace dscmc
