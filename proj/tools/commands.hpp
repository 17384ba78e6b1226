#pragma once

#include <optional>
#include <string>
#include <vector>

#include "serialize.hpp"

namespace minvset::tool {

inline constexpr const char* kToolVersion = "0.1.0";

struct PngSize {
  int width = 0;
  int height = 0;
};

struct CommonOptions {
  std::string spec_path;
  std::string out_dir;
  IterationConfig cfg;
  std::optional<PngSize> png;
};

int cmd_classify(const CommonOptions& opt, int n_override);
int cmd_iterate(const CommonOptions& opt, int n, IterationMode mode);
int cmd_julia(const CommonOptions& opt);
int cmd_converge(const CommonOptions& opt, const std::vector<int>& n_list);
int cmd_rerun(const std::string& manifest_path, const std::string& out_dir);

int cmd_correspond_psi(const std::string& spec_path, int n, const std::string& out_file);
int cmd_correspond_phi(const std::string& bipoly_path, int k, const std::string& out_file);
int cmd_correspond_one_point(const std::string& spec_path, int n, double tol,
                             const std::string& out_file);
int cmd_correspond_family(int m, int n, const std::string& q_desc, const std::string& out_file);
int cmd_correspond_ifs(const std::string& maps_desc, const std::string& scale_desc,
                       const std::string& out_file);

/// "800x600" -> PngSize
PngSize parse_png_size(const std::string& desc);

/// "3:5" (inclusive range) or "3,4,5"
std::vector<int> parse_n_list(const std::string& desc);

}  // namespace minvset::tool
