#include "cornerq/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cornerq/errors.hpp"

namespace cornerq {
namespace {

using nlohmann::json;

void emit(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += ", ";
          emit(j[i], out, indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        emit(j[i], out, indent, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string dump(const json& j) {
  std::string out;
  emit(j, out, 2, 0);
  out += "\n";
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad value for \"") + key + "\": " + e.what(), 0);
  }
}

json number(double x) {
  // Non-finite values have no JSON form.
  if (!std::isfinite(x)) return json(nullptr);
  return json(x);
}

json to_json(const LorentzMatrix& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (double v : r) row.push_back(number(v));
    rows.push_back(row);
  }
  return rows;
}

json fd_json(const FDScheme& fd) {
  return json{{"h", fd.h},
              {"h_tangential", fd.h_tangential},
              {"h_interior", fd.h_interior},
              {"boundary_nodes", fd.boundary_nodes},
              {"richardson", fd.richardson},
              {"corner_delta", fd.corner_delta}};
}

json orders_json(const GridOrders& o) {
  return json{{"radial", o.radial}, {"polar", o.polar}, {"alpha", o.alpha}, {"theta", o.theta}};
}

json report_json(const ResidualReport& r) {
  json conditions = json::array();
  for (const auto& c : r.conditions) {
    conditions.push_back(json{{"condition", c.condition},
                              {"region", region_name(c.region)},
                              {"nodes", c.nodes},
                              {"sup", number(c.sup)},
                              {"l2", number(c.l2)},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
  }
  const auto& g = r.grid;
  return json{{"pass", r.pass()},
              {"delta", r.delta},
              {"p2_target", r.p2_target},
              {"fd", fd_json(r.fd)},
              {"grid",
               {{"phi", {g.phi_min, g.phi_max}},
                {"rho", {g.rho_min, g.rho_max}},
                {"n_phi", g.n_phi},
                {"n_rho", g.n_rho},
                {"n_interior", g.n_interior},
                {"n_sigma", g.n_sigma},
                {"axisymmetric", g.axisymmetric}}},
              {"conditions", conditions}};
}

json gauss_bonnet_json(const GaussBonnet& gb, double tolerance, bool pass) {
  return json{{"interior", number(gb.interior)},
              {"face_M", number(gb.face_M)},
              {"face_N", number(gb.face_N)},
              {"corner", number(gb.corner)},
              {"total", number(gb.total)},
              {"linear_defect", number(gb.linear_defect())},
              {"tolerance", tolerance},
              {"pass", pass}};
}

json table1_json(const Table1Report& r, double tol) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back(json{{"k", e.k}, {"family", e.family}, {"quantity", e.quantity}, {"error", number(e.sup)}});
  }
  return json{{"sup", number(r.sup)}, {"tolerance", tol}, {"pass", r.passes(tol)}, {"entries", entries}};
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

std::string solution_to_json(const Solution& sol) {
  json transforms = json::array();
  for (const auto& t : sol.transforms) {
    if (t.lambda_exp % 2 == 0 || t.L != lorentz_identity()) {
      transforms.push_back(json{{"type", "lorentz"}, {"matrix", to_json(t.L)}});
    }
    if (t.lambda_exp % 2 != 0) transforms.push_back(json{{"type", "lambda"}});
  }
  const auto& d = sol.diagnostics;
  json j{{"omega1_terms", sol.omega1_terms},
         {"sigma_offset", sol.sigma_offset},
         {"v1", sol.v1},
         {"v2", sol.v2},
         {"data", {{"psi", sol.psi_expression}, {"phiN", sol.phi_n_expression}}},
         {"tolerances", {{"constraint", sol.constraint_tolerance}}},
         {"transforms", transforms},
         {"diagnostics",
          {{"constraint_M", number(d.constraints.m)},
           {"constraint_N", number(d.constraints.n)},
           {"sigma_value", number(d.sigma_value)},
           {"mu_M_v1", number(d.mu_M_v1)},
           {"residual_mu_M", number(d.residual_mu_M)},
           {"residual_mu_N", number(d.residual_mu_N)}}}};
  return dump(j);
}

Solution solution_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("solution must be a JSON object", 0);
  for (const char* key : {"omega1_terms", "v1", "v2"}) {
    if (!j.contains(key)) throw ParseError(std::string("solution is missing \"") + key + "\"", 0);
  }
  Solution sol;
  sol.omega1_terms = get<int>(j, "omega1_terms", kDefaultOmega1Terms);
  if (sol.omega1_terms < 0) throw ParseError("omega1_terms must be non-negative", 0);
  sol.v1 = get<std::vector<double>>(j, "v1", {});
  sol.v2 = get<std::vector<double>>(j, "v2", {});
  if (j.contains("sigma_offset")) {
    sol.sigma_offset = get<double>(j, "sigma_offset", 0.0);
  } else if (sol.omega1_terms > 0) {
    sol.sigma_offset = -2.0 * kPi * u1_sigma_value(sol.omega1_terms);
  }
  if (j.contains("data")) {
    const json& data = j.at("data");
    sol.psi_expression = get<std::string>(data, "psi", "");
    sol.phi_n_expression = get<std::string>(data, "phiN", "");
  }
  if (j.contains("tolerances")) sol.constraint_tolerance = get<double>(j.at("tolerances"), "constraint", 1e-8);
  if (j.contains("diagnostics")) {
    const json& d = j.at("diagnostics");
    const auto value = [&](const char* key) { return d.contains(key) && d.at(key).is_number() ? d.at(key).get<double>() : 0.0; };
    sol.diagnostics.constraints = {value("constraint_M"), value("constraint_N")};
    sol.diagnostics.sigma_value = value("sigma_value");
    sol.diagnostics.mu_M_v1 = value("mu_M_v1");
    sol.diagnostics.residual_mu_M = value("residual_mu_M");
    sol.diagnostics.residual_mu_N = value("residual_mu_N");
  }
  for (const json& t : get<json>(j, "transforms", json::array())) {
    const std::string type = get<std::string>(t, "type", "");
    if (type == "lambda") {
      sol.transforms.push_back(ConfElement::lambda());
    } else if (type == "lorentz") {
      const auto rows = get<std::vector<std::vector<double>>>(t, "matrix", {});
      if (rows.size() != 4) throw ParseError("lorentz matrix must be 4x4", 0);
      ConfElement e;
      for (std::size_t r = 0; r < 4; ++r) {
        if (rows[r].size() != 4) throw ParseError("lorentz matrix must be 4x4", 0);
        for (std::size_t c = 0; c < 4; ++c) e.L[r][c] = rows[r][c];
      }
      try {
        validate(e, 1e-9);
      } catch (const DomainError& err) {
        throw ParseError(err.what(), 0);
      }
      sol.transforms.push_back(e);
    } else {
      throw ParseError("unknown transform type \"" + type + "\"", 0);
    }
  }
  return sol;
}

std::string table1_to_json(const Table1Report& termwise, double tol_termwise, const Table1Report& fd, double tol_fd) {
  const bool pass = termwise.passes(tol_termwise) && fd.passes(tol_fd);
  return dump(json{{"k_max", termwise.k_max},
                   {"pass", pass},
                   {"termwise", table1_json(termwise, tol_termwise)},
                   {"finite_difference", table1_json(fd, tol_fd)}});
}

std::string report_to_json(const ResidualReport& report) { return dump(report_json(report)); }

std::string report_to_csv(const ResidualReport& report) {
  std::string out = "region,rho,phi,alpha,theta,condition,residual\n";
  for (const auto& n : report.nodes) {
    out += region_name(n.region);
    for (double v : {n.at.rho, n.at.phi, n.at.alpha, n.at.theta}) out += "," + format_number(v);
    out += "," + n.condition + "," + format_number(n.residual) + "\n";
  }
  return out;
}

bool Verification::gauss_bonnet_pass() const {
  const double target = 4.0 * kPi * kPi;
  const bool corner_ok = std::abs(gauss_bonnet.corner - target) / target < gauss_bonnet_tolerance;
  const bool faces_ok = std::abs(gauss_bonnet.face_M + gauss_bonnet.face_N) < gauss_bonnet_tolerance;
  return corner_ok && faces_ok && std::abs(gauss_bonnet.interior) < gauss_bonnet_tolerance;
}

std::string verification_to_json(const Verification& v) {
  json corner = json::array();
  for (std::size_t i = 0; i < v.corner_H.points.size(); ++i) {
    const Spherical s = v.corner_H.points[i].spherical();
    corner.push_back(json{{"alpha", s.alpha},
                          {"theta", s.theta},
                          {"residual_M", number(v.corner_H.residual_M[i])},
                          {"residual_N", number(v.corner_H.residual_N[i])}});
  }
  return dump(json{{"pass", v.pass()},
                   {"omega1_terms", v.omega1_terms},
                   {"residuals", report_json(v.residuals)},
                   {"gauss_bonnet", gauss_bonnet_json(v.gauss_bonnet, v.gauss_bonnet_tolerance, v.gauss_bonnet_pass())},
                   {"corner_mean_curvature",
                    {{"sup_M", number(v.corner_H.sup_M)}, {"sup_N", number(v.corner_H.sup_N)}, {"points", corner}}}});
}

std::string gauss_bonnet_to_json(const GaussBonnet& gb, double tolerance, bool pass) {
  return dump(gauss_bonnet_json(gb, tolerance, pass));
}

void Config::validate() const {
  const auto positive = [](double x, const char* what) {
    if (!(x > 0.0)) throw DomainError(std::string("config: ") + what + " must be positive");
  };
  positive(n_terms, "N_terms");
  positive(static_cast<double>(orders.radial), "orders.radial");
  positive(static_cast<double>(orders.polar), "orders.polar");
  positive(static_cast<double>(orders.alpha), "orders.alpha");
  positive(static_cast<double>(orders.theta), "orders.theta");
  positive(h, "h");
  positive(delta, "delta");
  for (double t : {tolerances.P4, tolerances.P3M, tolerances.P3N, tolerances.P2, tolerances.data, tolerances.corner,
                   tolerances.gauss_bonnet}) {
    positive(t, "tolerance");
  }
  if (threads < 0) throw DomainError("config: threads must be non-negative");
}

ResidualConfig Config::residual_config() const {
  ResidualConfig rc;
  rc.ops.fd.h = h;
  rc.ops.fd.h_tangential = h;
  rc.ops.fd.corner_delta = delta;
  rc.delta = delta;
  rc.tol_P4 = tolerances.P4;
  rc.tol_P3M = tolerances.P3M;
  rc.tol_P3N = tolerances.P3N;
  rc.tol_P2 = tolerances.P2;
  rc.tol_data = tolerances.data;
  rc.tol_corner = tolerances.corner;
  return rc;
}

GaussBonnetConfig Config::gauss_bonnet_config() const {
  GaussBonnetConfig gb;
  gb.ops.fd.h = h;
  gb.ops.fd.h_tangential = h;
  gb.faces_general = orders;
  return gb;
}

std::string config_to_json(const Config& cfg) {
  const auto& t = cfg.tolerances;
  return dump(json{{"N_terms", cfg.n_terms},
                   {"orders", orders_json(cfg.orders)},
                   {"h", cfg.h},
                   {"delta", cfg.delta},
                   {"tolerances",
                    {{"P4", t.P4},
                     {"P3M", t.P3M},
                     {"P3N", t.P3N},
                     {"P2", t.P2},
                     {"data", t.data},
                     {"corner", t.corner},
                     {"gauss_bonnet", t.gauss_bonnet}}},
                   {"threads", cfg.threads},
                   {"outputs", {{"report", cfg.report_path}, {"csv", cfg.csv_path}}}});
}

Config config_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("config must be a JSON object", 0);
  Config c;
  c.n_terms = get<int>(j, "N_terms", c.n_terms);
  if (j.contains("orders")) {
    const json& o = j.at("orders");
    c.orders.radial = get<std::size_t>(o, "radial", c.orders.radial);
    c.orders.polar = get<std::size_t>(o, "polar", c.orders.polar);
    c.orders.alpha = get<std::size_t>(o, "alpha", c.orders.alpha);
    c.orders.theta = get<std::size_t>(o, "theta", c.orders.theta);
  }
  c.h = get<double>(j, "h", c.h);
  c.delta = get<double>(j, "delta", c.delta);
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    auto& d = c.tolerances;
    d.P4 = get<double>(t, "P4", d.P4);
    d.P3M = get<double>(t, "P3M", d.P3M);
    d.P3N = get<double>(t, "P3N", d.P3N);
    d.P2 = get<double>(t, "P2", d.P2);
    d.data = get<double>(t, "data", d.data);
    d.corner = get<double>(t, "corner", d.corner);
    d.gauss_bonnet = get<double>(t, "gauss_bonnet", d.gauss_bonnet);
  }
  c.threads = get<int>(j, "threads", c.threads);
  if (j.contains("outputs")) {
    c.report_path = get<std::string>(j.at("outputs"), "report", c.report_path);
    c.csv_path = get<std::string>(j.at("outputs"), "csv", c.csv_path);
  }
  c.validate();
  return c;
}

}  // namespace cornerq
