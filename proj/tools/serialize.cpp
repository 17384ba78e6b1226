#include "serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace minvset::tool {
namespace {

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && (j.size() == 1 || j.size() == 2)) {
    const double re = j[0].get<double>();
    const double im = j.size() == 2 ? j[1].get<double>() : 0.0;
    return Complex(re, im);
  }
  throw ParseError("expected a number or an [re, im] pair, got: " + j.dump());
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a coefficient list, got: " + j.dump());
  std::vector<Complex> coeffs;
  coeffs.reserve(j.size());
  for (const auto& c : j) coeffs.push_back(complex_from_json(c));
  return Poly(std::move(coeffs));
}

}  // namespace

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json poly_to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(complex_to_json(c));
  return out;
}

Json operator_to_json(const DiffOp& t, const std::string& name) {
  Json out;
  if (!name.empty()) out["name"] = name;
  Json coeffs = Json::array();
  for (int j = 0; j <= t.order(); ++j) coeffs.push_back(poly_to_json(t.coeff(j)));
  out["coeffs"] = std::move(coeffs);
  return out;
}

DiffOp operator_from_json(const Json& j, std::string* name) {
  if (!j.is_object() || !j.contains("coeffs")) {
    throw ParseError("operator spec must be an object with a \"coeffs\" field");
  }
  if (name && j.contains("name") && j["name"].is_string()) *name = j["name"].get<std::string>();
  const Json& coeffs = j["coeffs"];
  if (!coeffs.is_array()) throw ParseError("\"coeffs\" must be a list of coefficient lists");
  std::vector<Poly> qs;
  qs.reserve(coeffs.size());
  for (const auto& q : coeffs) qs.push_back(poly_from_json(q));
  DiffOp t(std::move(qs));
  if (t.is_zero()) throw ParseError("operator has no nonzero coefficients");
  return t;
}

DiffOp load_operator_file(const std::string& path, std::string* name) {
  Json j;
  try {
    std::istringstream in(read_file(path));
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return operator_from_json(j, name);
}

Json bipoly_to_json(const BiPoly& b) {
  Json out;
  out["deg_x"] = b.deg_x();
  out["deg_z"] = b.deg_z();
  Json rows = Json::array();
  for (int i = 0; i <= std::max(b.deg_x(), 0); ++i) {
    Json row = Json::array();
    for (int s = 0; s <= std::max(b.deg_z(), 0); ++s) row.push_back(complex_to_json(b.coeff(i, s)));
    rows.push_back(std::move(row));
  }
  out["coeffs"] = std::move(rows);
  return out;
}

BiPoly bipoly_from_json(const Json& j) {
  const Json& rows = j.is_object() && j.contains("coeffs") ? j["coeffs"] : j;
  if (!rows.is_array()) throw ParseError("bivariate spec must carry a nested \"coeffs\" array");
  // rows[i][s] = coefficient of x^i z^s; convert to z-major storage.
  std::size_t zcount = 0;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("bivariate rows must be arrays");
    zcount = std::max(zcount, row.size());
  }
  std::vector<std::vector<Complex>> zmajor(zcount, std::vector<Complex>(rows.size(), Complex()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t s = 0; s < rows[i].size(); ++s) {
      zmajor[s][i] = complex_from_json(rows[i][s]);
    }
  }
  std::vector<Poly> zc;
  zc.reserve(zcount);
  for (auto& col : zmajor) zc.emplace_back(std::move(col));
  return BiPoly(std::move(zc));
}

Json config_to_json(const IterationConfig& cfg) {
  Json out;
  out["max_iter"] = cfg.max_iter;
  out["r_max"] = cfg.r_max;
  out["eps"] = cfg.eps;
  out["stall_window"] = cfg.stall_window;
  out["tau_samples"] = cfg.tau_samples;
  out["rng_seed"] = cfg.rng_seed;
  out["root_tol"] = cfg.root_tol;
  return out;
}

IterationConfig config_from_json(const Json& j) {
  IterationConfig cfg;
  if (j.contains("max_iter")) cfg.max_iter = j["max_iter"].get<int>();
  if (j.contains("r_max")) cfg.r_max = j["r_max"].get<double>();
  if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
  if (j.contains("stall_window")) cfg.stall_window = j["stall_window"].get<int>();
  if (j.contains("tau_samples")) cfg.tau_samples = j["tau_samples"].get<int>();
  if (j.contains("rng_seed")) cfg.rng_seed = j["rng_seed"].get<uint64_t>();
  if (j.contains("root_tol")) cfg.root_tol = j["root_tol"].get<double>();
  return cfg;
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "converged";
    case RunStatus::Unbounded: return "unbounded";
    case RunStatus::Empty: return "empty";
    case RunStatus::MaxIterReached: return "max_iter";
  }
  return "unknown";
}

int status_exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return 0;
    case RunStatus::Unbounded: return 2;
    case RunStatus::Empty: return 3;
    case RunStatus::MaxIterReached: return 4;
  }
  return 1;
}

Json report_to_json(const IterationReport& report) {
  Json out;
  out["status"] = status_name(report.status);
  out["steps"] = report.steps;
  out["cloud_size"] = report.cloud.size();
  out["escaped_fraction"] = report.escaped_fraction;
  out["r_max_used"] = report.r_max_used;
  out["heuristic"] = report.heuristic;
  out["heuristic_reason"] = report.heuristic_reason;
  out["deltas"] = report.deltas;
  return out;
}

std::string cloud_to_csv(const PointCloud& cloud) {
  std::string out = "re,im\n";
  char line[80];
  for (const Complex& p : cloud.points) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g\n", p.real(), p.imag());
    out += line;
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace minvset::tool
