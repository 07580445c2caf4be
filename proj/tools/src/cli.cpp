#include "cornerq_cli/cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "cornerq/construct.hpp"
#include "cornerq/errors.hpp"
#include "cornerq/expression.hpp"
#include "cornerq/parallel.hpp"
#include "cornerq/serialize.hpp"
#include "cornerq/verify.hpp"

namespace cornerq::cli {
namespace {

constexpr double kTable1TermwiseTolerance = 1e-8;
constexpr double kTable1FdTolerance = 1e-4;
constexpr double kMaxRapidity = 2.0;
constexpr double kFlatGaussBonnetTolerance = 1e-10;

struct UsageError : Error {
  using Error::Error;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

int axis_index(const std::string& name) {
  if (name == "x" || name == "1") return 0;
  if (name == "y" || name == "2") return 1;
  if (name == "z" || name == "3") return 2;
  throw UsageError("unknown axis '" + name + "' (expected x, y or z)");
}

// "axis:value"
std::pair<int, double> axis_value(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("expected axis:value, got '" + spec + "'");
  const int axis = axis_index(spec.substr(0, colon));
  const std::string number = spec.substr(colon + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(number, &used);
  } catch (const std::exception&) {
    throw UsageError("bad number in '" + spec + "'");
  }
  if (used != number.size() || !std::isfinite(v)) throw UsageError("bad number in '" + spec + "'");
  return {axis, v};
}

struct Slice {
  double alpha = 0.9;
  double theta = 0.4;
};

Slice parse_slice(const std::string& spec) {
  Slice s;
  bool have_alpha = false;
  bool have_theta = false;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bad slice entry '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string number = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(number, &used);
    } catch (const std::exception&) {
      throw UsageError("bad slice value '" + item + "'");
    }
    if (used != number.size() || !std::isfinite(v)) throw UsageError("bad slice value '" + item + "'");
    if (key == "alpha" && !have_alpha) {
      s.alpha = v;
      have_alpha = true;
    } else if (key == "theta" && !have_theta) {
      s.theta = v;
      have_theta = true;
    } else {
      throw UsageError("bad slice key '" + key + "'");
    }
  }
  if (!have_alpha || !have_theta) throw UsageError("slice needs alpha=A,theta=T");
  if (s.alpha < 0.0 || s.alpha > kPi) throw UsageError("slice alpha must lie in [0, pi]");
  return s;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& spec) {
  static const std::regex re(R"(^([0-9]+)x([0-9]+)$)");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw UsageError("grid must look like RxP, got '" + spec + "'");
  const auto r = std::stoul(m[1].str());
  const auto p = std::stoul(m[2].str());
  if (r < 2 || p < 2 || r > 100000 || p > 100000) throw UsageError("grid sizes must lie in [2, 100000]");
  return {r, p};
}

std::optional<BoundaryData> data_of(const Solution& sol) {
  if (sol.psi_expression.empty() || sol.phi_n_expression.empty() || !sol.transforms.empty()) return std::nullopt;
  return BoundaryData{profile_from_expression(sol.psi_expression, "phi"),
                      profile_from_expression(sol.phi_n_expression, "r")};
}

Solution load_solution(const std::string& path) {
  try {
    return solution_from_json(read_text_file(path));
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string cell(double v) { return std::isfinite(v) ? format_number(v) : std::string(); }

template <class F>
double guarded(F&& f) {
  try {
    return f();
  } catch (const DomainError&) {
    return std::nan("");
  } catch (const NumericError&) {
    return std::nan("");
  }
}

int cmd_table1(int k_max, const std::string& out_path, std::ostream& out) {
  if (k_max < 0) throw UsageError("--kmax must be non-negative");
  const Table1Report termwise = verify_table1(k_max);
  const Table1Report fd = verify_table1_fd(k_max);
  const bool pass = termwise.passes(kTable1TermwiseTolerance) && fd.passes(kTable1FdTolerance);
  const std::string json = table1_to_json(termwise, kTable1TermwiseTolerance, fd, kTable1FdTolerance);
  if (!out_path.empty()) {
    write_text_file(out_path, json);
    out << "table1 k_max=" << k_max << " termwise=" << format_number(termwise.sup)
        << " fd=" << format_number(fd.sup) << (pass ? " PASS" : " FAIL") << "\n";
  } else {
    out << json;
  }
  return pass ? kSuccess : kVerificationFailure;
}

int cmd_build(const std::string& psi_text, const std::string& phi_text, const Config& cfg, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  BoundaryData data{profile_from_expression(psi_text, "phi"), profile_from_expression(phi_text, "r")};
  BuildOptions opt;
  opt.omega1_terms = cfg.n_terms;
  Solution sol;
  try {
    sol = build_solution(data, opt);
  } catch (const ConstraintViolation& e) {
    err << "constraint violation: " << e.what() << "\n"
        << "  nu_M psi = " << format_number(e.measured_m) << " (expected pi/4)\n"
        << "  nu_N phi_N - phi_N = " << format_number(e.measured_n) << " (expected pi/4)\n";
    return kConstraintViolation;
  }
  const std::string json = solution_to_json(sol);
  const auto& d = sol.diagnostics;
  std::ostream& log = out_path.empty() ? err : out;
  log << "constraint nu_M psi - pi/4 = " << format_number(d.constraints.m - kPi / 4.0) << "\n"
      << "constraint nu_N phi_N - phi_N - pi/4 = " << format_number(d.constraints.n - kPi / 4.0) << "\n"
      << "modes v1=" << sol.v1.size() << " v2=" << sol.v2.size()
      << " coefficient_mass=" << format_number(sol.coefficient_mass()) << "\n"
      << "omega on Sigma = " << format_number(d.sigma_value) << "\n"
      << "sup |mu_M omega - psi| = " << format_number(d.residual_mu_M) << "\n"
      << "sup |mu_N omega - phi_N| = " << format_number(d.residual_mu_N) << "\n";
  emit(json, out_path, out);
  return kSuccess;
}

int cmd_verify(const std::string& file, const Config& cfg, const std::string& out_path, const std::string& csv_path,
               std::ostream& out) {
  const Solution sol = load_solution(file);
  const FieldPtr omega = sol.field();
  ResidualConfig rc = cfg.residual_config();
  rc.data = data_of(sol);
  Verification v;
  v.omega1_terms = sol.omega1_terms;
  v.residuals = residual_report(*omega, rc);
  v.gauss_bonnet = gauss_bonnet(*omega, cfg.gauss_bonnet_config());
  v.gauss_bonnet_tolerance = cfg.tolerances.gauss_bonnet;
  OpOptions hops;
  hops.fd.h = cfg.h;
  hops.fd.h_tangential = cfg.h;
  v.corner_H = corner_H_compatibility(*omega, 4, hops);

  for (const auto& c : v.residuals.conditions) {
    out << c.condition << " sup=" << format_number(c.sup) << " tol=" << format_number(c.tolerance)
        << (c.pass ? " PASS" : " FAIL") << "\n";
  }
  out << "gauss_bonnet corner=" << format_number(v.gauss_bonnet.corner)
      << " faces=" << format_number(v.gauss_bonnet.face_M + v.gauss_bonnet.face_N)
      << " interior=" << format_number(v.gauss_bonnet.interior) << (v.gauss_bonnet_pass() ? " PASS" : " FAIL") << "\n";
  out << "corner_mean_curvature sup_M=" << format_number(v.corner_H.sup_M)
      << " sup_N=" << format_number(v.corner_H.sup_N) << "\n";
  if (!out_path.empty()) write_text_file(out_path, verification_to_json(v));
  if (!csv_path.empty()) write_text_file(csv_path, report_to_csv(v.residuals));
  out << (v.pass() ? "PASS" : "FAIL") << "\n";
  return v.pass() ? kSuccess : kVerificationFailure;
}

int cmd_act(const std::string& file, const std::vector<std::string>& boosts, const std::vector<std::string>& rotations,
            int lambdas, const std::string& out_path, std::ostream& out) {
  Solution sol = load_solution(file);
  if (boosts.empty() && rotations.empty() && lambdas == 0) throw UsageError("act needs --boost, --rotate or --lambda");
  for (const auto& b : boosts) {
    const auto [axis, s] = axis_value(b);
    if (std::abs(s) > kMaxRapidity) throw UsageError("rapidity must satisfy |s| <= 2");
    sol.transforms.push_back(ConfElement::boost(axis, s));
  }
  for (const auto& r : rotations) {
    const auto [axis, t] = axis_value(r);
    sol.transforms.push_back(ConfElement::rotation(axis, t));
  }
  for (int i = 0; i < lambdas; ++i) sol.transforms.push_back(ConfElement::lambda());
  emit(solution_to_json(sol), out_path, out);
  return kSuccess;
}

int cmd_gauss_bonnet(const std::string& file, bool flat, const Config& cfg, const std::string& out_path,
                     std::ostream& out) {
  const GaussBonnetConfig gcfg = cfg.gauss_bonnet_config();
  Verification v;
  v.gauss_bonnet_tolerance = flat ? kFlatGaussBonnetTolerance : cfg.tolerances.gauss_bonnet;
  if (flat) {
    v.gauss_bonnet = gauss_bonnet_flat(gcfg);
  } else {
    if (file.empty()) throw UsageError("gauss-bonnet needs a solution file or --flat");
    const Solution sol = load_solution(file);
    v.gauss_bonnet = gauss_bonnet(*sol.field(), gcfg);
  }
  const double total_error = std::abs(v.gauss_bonnet.total - 4.0 * kPi * kPi);
  const bool pass = flat ? total_error < kFlatGaussBonnetTolerance : v.gauss_bonnet_pass();
  const std::string json = gauss_bonnet_to_json(v.gauss_bonnet, v.gauss_bonnet_tolerance, pass);
  if (out_path.empty()) {
    out << json;
  } else {
    write_text_file(out_path, json);
    out << "total=" << format_number(v.gauss_bonnet.total) << (pass ? " PASS" : " FAIL") << "\n";
  }
  return pass ? kSuccess : kVerificationFailure;
}

int cmd_sample(const std::string& file, const std::string& grid, const std::string& slice_spec, const Config& cfg,
               const std::string& out_path, std::ostream& out) {
  const auto [nr, np] = parse_grid(grid);
  const Slice slice = parse_slice(slice_spec);
  const Solution sol = load_solution(file);
  const FieldPtr omega = sol.field();
  OpOptions ops;
  ops.fd.h = cfg.h;
  ops.fd.h_tangential = cfg.h;
  ops.fd.corner_delta = cfg.delta;
  const Curvatures curv = curvatures(*omega, ops);
  const std::size_t n = nr * np;
  constexpr std::size_t kColumns = 4;
  std::vector<std::array<double, kColumns>> rows(n);
  parallel_map(n, [&](std::size_t i) {
    const double rho = static_cast<double>(i / np + 1) / static_cast<double>(nr);
    const double phi = kHalfPi * static_cast<double>(i % np) / static_cast<double>(np - 1);
    const Point4 p = Point4::from_spherical({rho, phi, slice.alpha, slice.theta});
    const bool on_m = i / np + 1 == nr;
    const bool on_n = i % np == np - 1;
    auto& r = rows[i];
    r.fill(std::nan(""));
    r[0] = guarded([&] { return omega->value(p.cartesian()); });
    if (!on_m && !on_n) r[1] = guarded([&] { return curv.Q(p); });
    if (on_m && !on_n) r[2] = guarded([&] { return curv.T_M(p); });
    if (on_n && !on_m) r[2] = guarded([&] { return curv.T_N(p); });
    if (on_m && on_n) r[3] = guarded([&] { return curv.U(p); });
    return 0.0;
  });
  std::string csv = "rho,phi,alpha,theta,omega,Qtilde,Ttilde,Utilde\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = static_cast<double>(i / np + 1) / static_cast<double>(nr);
    const double phi = kHalfPi * static_cast<double>(i % np) / static_cast<double>(np - 1);
    csv += format_number(rho) + "," + format_number(phi) + "," + format_number(slice.alpha) + "," +
           format_number(slice.theta);
    for (double v : rows[i]) csv += "," + cell(v);
    csv += "\n";
  }
  emit(csv, out_path, out);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Q-curvature corner boundary problem on the half-ball", "cornerq"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  int terms = 0;
  double delta = 0.0;
  app.add_option("--config", config_path, "JSON configuration file");

  auto* table1 = app.add_subcommand("table1", "Check the basis operator table");
  int k_max = 20;
  std::string out_path;
  table1->add_option("--kmax", k_max, "Highest degree")->capture_default_str();
  table1->add_option("--out", out_path, "JSON report path");

  auto* build = app.add_subcommand("build", "Build a solution from boundary data");
  std::string psi_text;
  std::string phi_text;
  build->add_option("--psi", psi_text, "psi(phi) on the spherical face")->required();
  build->add_option("--phi-n", phi_text, "phi_N(r) on the flat face")->required();
  build->add_option("--terms", terms, "Terms of the omega_1 series");
  build->add_option("--out", out_path, "Solution JSON path");

  auto* verify = app.add_subcommand("verify", "Residual, Gauss-Bonnet and corner reports");
  std::string file;
  std::string csv_path;
  verify->add_option("file", file, "Solution JSON")->required();
  verify->add_option("--delta", delta, "Corner exclusion band");
  verify->add_option("--out", out_path, "JSON report path");
  verify->add_option("--csv", csv_path, "Per-node residual CSV path");

  auto* act = app.add_subcommand("act", "Append a conformal transformation");
  std::vector<std::string> boosts;
  std::vector<std::string> rotations;
  act->add_option("file", file, "Solution JSON")->required();
  act->add_option("--boost", boosts, "axis:rapidity with |rapidity| <= 2")->allow_extra_args(false);
  act->add_option("--rotate", rotations, "axis:angle")->allow_extra_args(false);
  auto* lambda_flag = act->add_flag("--lambda", "Append the face swap");
  act->add_option("--out", out_path, "Solution JSON path");

  auto* gb = app.add_subcommand("gauss-bonnet", "Gauss-Bonnet accounting");
  bool flat = false;
  gb->add_option("file", file, "Solution JSON");
  gb->add_flag("--flat", flat, "Use the flat metric");
  gb->add_option("--out", out_path, "JSON report path");

  auto* sample = app.add_subcommand("sample", "Dump omega and curvatures on a slice");
  std::string grid = "100x100";
  std::string slice_spec = "alpha=0.9,theta=0.4";
  sample->add_option("file", file, "Solution JSON")->required();
  sample->add_option("--grid", grid, "RxP")->capture_default_str();
  sample->add_option("--slice", slice_spec, "alpha=A,theta=T")->capture_default_str();
  sample->add_option("--out", out_path, "CSV path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    Config cfg;
    if (!config_path.empty()) cfg = config_from_json(read_text_file(config_path));
    if (terms != 0) cfg.n_terms = terms;
    if (delta != 0.0) cfg.delta = delta;
    cfg.validate();
    if (cfg.threads > 0) set_default_thread_count(static_cast<std::size_t>(cfg.threads));
    if (out_path.empty() && !cfg.report_path.empty() && (verify->parsed() || gb->parsed())) out_path = cfg.report_path;
    if (csv_path.empty()) csv_path = cfg.csv_path;

    if (table1->parsed()) return cmd_table1(k_max, out_path, out);
    if (build->parsed()) return cmd_build(psi_text, phi_text, cfg, out_path, out, err);
    if (verify->parsed()) return cmd_verify(file, cfg, out_path, csv_path, out);
    if (act->parsed()) {
      return cmd_act(file, boosts, rotations, static_cast<int>(lambda_flag->count()), out_path, out);
    }
    if (gb->parsed()) return cmd_gauss_bonnet(file, flat, cfg, out_path, out);
    if (sample->parsed()) return cmd_sample(file, grid, slice_spec, cfg, out_path, out);
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << "\n";
    return kConstraintViolation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kUsage;
}

}  // namespace cornerq::cli
