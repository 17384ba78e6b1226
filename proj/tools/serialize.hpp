#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "minvset/minvset.hpp"

namespace minvset::tool {

using Json = nlohmann::ordered_json;

/// Operator spec format: { "coeffs": [ Q_0, Q_1, ... ], "name": optional },
/// each Q_j a list of [re, im] pairs in ascending powers of x. Round-trips
/// losslessly.
Json operator_to_json(const DiffOp& t, const std::string& name = {});
DiffOp operator_from_json(const Json& j, std::string* name = nullptr);

DiffOp load_operator_file(const std::string& path, std::string* name = nullptr);

/// Bivariate coefficients as nested arrays: coeffs[i][j] = [re, im] for the
/// monomial x^i z^j.
Json bipoly_to_json(const BiPoly& b);
BiPoly bipoly_from_json(const Json& j);

Json poly_to_json(const Poly& p);
Json complex_to_json(const Complex& c);

Json config_to_json(const IterationConfig& cfg);
IterationConfig config_from_json(const Json& j);

Json report_to_json(const IterationReport& report);

std::string status_name(RunStatus s);
int status_exit_code(RunStatus s);

/// Cloud CSV: "re,im" header, one point per line, 17 significant digits.
std::string cloud_to_csv(const PointCloud& cloud);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace minvset::tool
