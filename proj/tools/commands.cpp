#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "pngio.hpp"

namespace minvset::tool {
namespace {

namespace fs = std::filesystem;

struct RunContext {
  DiffOp op;
  std::string name;
  std::string out_dir;
  IterationConfig cfg;
  std::optional<PngSize> png;
};

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 5;
  } catch (const NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}

RunContext make_context(const CommonOptions& opt) {
  RunContext ctx;
  ctx.op = load_operator_file(opt.spec_path, &ctx.name);
  ctx.out_dir = opt.out_dir;
  ctx.cfg = opt.cfg;
  ctx.png = opt.png;
  return ctx;
}

void ensure_out_dir(const std::string& dir) {
  if (dir.empty()) throw Error("an output directory is required (--out)");
  fs::create_directories(dir);
}

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

Json manifest_base(const RunContext& ctx, const std::string& subcommand) {
  Json m;
  m["tool"] = "minvset";
  m["version"] = kToolVersion;
  m["subcommand"] = subcommand;
  m["operator"] = operator_to_json(ctx.op, ctx.name);
  Json params;
  params["config"] = config_to_json(ctx.cfg);
  if (ctx.png) {
    params["png"] = std::to_string(ctx.png->width) + "x" + std::to_string(ctx.png->height);
  } else {
    params["png"] = nullptr;
  }
  m["params"] = std::move(params);
  return m;
}

void write_manifest(const RunContext& ctx, Json manifest) {
  write_file(join(ctx.out_dir, "manifest.json"), manifest.dump(2) + "\n");
}

Json mode_json(IterationMode mode) {
  return mode == IterationMode::Hutchinson ? "hutchinson" : "full";
}

IterationMode mode_from_string(const std::string& s) {
  if (s == "hutchinson") return IterationMode::Hutchinson;
  if (s == "full") return IterationMode::Full;
  throw ParseError("unknown mode: " + s + " (expected hutchinson or full)");
}

Json existence_to_json(const ExistenceReport& ex) {
  Json out;
  out["unique_dominant"] = ex.unique_dominant;
  if (ex.dominant_index) {
    out["dominant_index"] = *ex.dominant_index;
  } else {
    out["dominant_index"] = nullptr;
  }
  out["one_point_free"] = ex.one_point_free;
  out["unbounded_hint"] = ex.unbounded_hint;
  out["infinite_hint"] = ex.infinite_hint;
  return out;
}

int run_classify(const RunContext& ctx, int n_override, bool to_stdout) {
  const DiffOp& t = ctx.op;
  Json out;
  if (!ctx.name.empty()) out["name"] = ctx.name;
  out["order"] = t.order();
  out["fuchs_index"] = fuchs_index(t);
  const bool solvable = is_exactly_solvable(t);
  out["exactly_solvable"] = solvable;
  out["nondegenerate"] = is_nondegenerate(t);
  const int n = n_override > 0 ? n_override : std::max(t.order(), 1);
  out["n"] = n;
  Json notes = Json::array();
  if (solvable) {
    Json spectrum = Json::array();
    for (const Complex& l : symbol_eigenvalues(t, n)) spectrum.push_back(complex_to_json(l));
    out["spectrum"] = std::move(spectrum);
    out["existence"] = existence_to_json(existence_check(t, n));
  } else {
    out["spectrum"] = nullptr;
    out["existence"] = nullptr;
    notes.push_back("operator is not exactly solvable; spectrum and existence skipped");
  }
  if (t.leading().degree() >= 1) {
    Json poly = Json::array();
    for (const Complex& v : fundamental_polygon(t).vertices) poly.push_back(complex_to_json(v));
    out["fundamental_polygon"] = std::move(poly);
  } else {
    out["fundamental_polygon"] = nullptr;
    notes.push_back("leading coefficient is constant; fundamental polygon undefined");
  }
  out["notes"] = std::move(notes);

  if (to_stdout) std::cout << out.dump(2) << "\n";
  if (!ctx.out_dir.empty()) {
    ensure_out_dir(ctx.out_dir);
    write_file(join(ctx.out_dir, "classify.json"), out.dump(2) + "\n");
    Json manifest = manifest_base(ctx, "classify");
    manifest["params"]["n"] = n;
    write_manifest(ctx, manifest);
  }
  return 0;
}

int run_iterate(const RunContext& ctx, int n, IterationMode mode) {
  ensure_out_dir(ctx.out_dir);
  const IterationReport report = minimal_invariant_set(ctx.op, n, mode, ctx.cfg);
  write_file(join(ctx.out_dir, "cloud.csv"), cloud_to_csv(report.cloud));
  write_file(join(ctx.out_dir, "report.json"), report_to_json(report).dump(2) + "\n");
  if (ctx.png) write_png(join(ctx.out_dir, "cloud.png"), report.cloud, ctx.png->width, ctx.png->height);
  Json manifest = manifest_base(ctx, "iterate");
  manifest["params"]["n"] = n;
  manifest["params"]["mode"] = mode_json(mode);
  write_manifest(ctx, manifest);
  std::cerr << "iterate: " << status_name(report.status) << " after " << report.steps
            << " steps; cloud " << report.cloud.size() << " points\n";
  return status_exit_code(report.status);
}

int run_julia(const RunContext& ctx) {
  ensure_out_dir(ctx.out_dir);
  const RationalMap r = rational_from_operator(ctx.op);
  const ExceptionalityReport exc = is_nonexceptional(r);
  const CrossValidation cv = cross_validate_m1(ctx.op, ctx.cfg);

  write_file(join(ctx.out_dir, "julia.csv"), cloud_to_csv(cv.backward.cloud));
  write_file(join(ctx.out_dir, "m1_cloud.csv"), cloud_to_csv(cv.engine.cloud));
  if (ctx.png) {
    write_png(join(ctx.out_dir, "julia.png"), cv.backward.cloud, ctx.png->width, ctx.png->height);
  }

  Json out;
  Json rational;
  rational["num"] = poly_to_json(r.num);
  rational["den"] = poly_to_json(r.den);
  rational["degree"] = r.degree();
  rational["cancelled_common_roots"] = r.cancelled;
  out["rational"] = std::move(rational);

  Json exc_json;
  exc_json["nonexceptional"] = exc.nonexceptional;
  Json pts = Json::array();
  for (const ExtPoint& p : exc.exceptional_points) {
    if (p.at_infinity) {
      pts.push_back("infinity");
    } else {
      pts.push_back(complex_to_json(p.value));
    }
  }
  exc_json["exceptional_points"] = std::move(pts);
  exc_json["reason"] = exc.reason;
  out["exceptionality"] = std::move(exc_json);

  out["start"] = complex_to_json(cv.backward.start);
  out["fallback_start"] = cv.backward.fallback_start;

  Json cross;
  cross["hausdorff"] = cv.hausdorff_distance;
  cross["threshold"] = 3.0 * ctx.cfg.eps;
  cross["within_threshold"] = cv.hausdorff_distance <= 3.0 * ctx.cfg.eps;
  cross["guaranteed"] = exc.nonexceptional;
  cross["report"] = cv.report;
  out["cross_validation"] = std::move(cross);

  // Candidate minimal sets: exceptional Julia dynamics can have several.
  Json candidates = Json::array();
  if (!exc.nonexceptional) {
    for (const ExtPoint& p : exc.exceptional_points) {
      if (!p.at_infinity) {
        Json c;
        c["type"] = "exceptional_point";
        c["point"] = complex_to_json(p.value);
        candidates.push_back(std::move(c));
      }
    }
  }
  {
    Json c;
    c["type"] = "julia_cloud";
    c["csv"] = "julia.csv";
    candidates.push_back(std::move(c));
  }
  out["minimal_candidates"] = std::move(candidates);
  out["engine_report"] = report_to_json(cv.engine);

  write_file(join(ctx.out_dir, "julia.json"), out.dump(2) + "\n");
  write_manifest(ctx, manifest_base(ctx, "julia"));
  std::cerr << "julia: " << cv.report << "\n";
  return 0;
}

int run_converge(const RunContext& ctx, const std::vector<int>& n_list) {
  ensure_out_dir(ctx.out_dir);
  const std::vector<ConvergenceRow> rows = convergence_study(ctx.op, n_list, ctx.cfg);

  std::string csv = "n,status,sup_out,coverage,fill_distance\n";
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    char line[160];
    std::snprintf(line, sizeof(line), "%d,%s,%.17g,%.17g,%.17g\n", rows[i].n,
                  status_name(rows[i].status).c_str(), rows[i].sup_out, rows[i].coverage,
                  rows[i].fill_distance);
    csv += line;
    if (i > 0 && !(rows[i].fill_distance < rows[i - 1].fill_distance)) monotone = false;
    write_file(join(ctx.out_dir, "cloud_n" + std::to_string(rows[i].n) + ".csv"),
               cloud_to_csv(rows[i].cloud));
  }
  write_file(join(ctx.out_dir, "converge.csv"), csv);

  Json study;
  study["monotone_coverage"] = monotone;
  Json jrows = Json::array();
  for (const ConvergenceRow& row : rows) {
    Json jr;
    jr["n"] = row.n;
    jr["status"] = status_name(row.status);
    jr["sup_out"] = row.sup_out;
    jr["coverage"] = row.coverage;
    jr["fill_distance"] = row.fill_distance;
    jrows.push_back(std::move(jr));
  }
  study["rows"] = std::move(jrows);
  write_file(join(ctx.out_dir, "study.json"), study.dump(2) + "\n");

  Json manifest = manifest_base(ctx, "converge");
  manifest["params"]["n_list"] = n_list;
  write_manifest(ctx, manifest);
  std::cerr << "converge: " << rows.size() << " runs; monotone coverage: "
            << (monotone ? "yes" : "no") << "\n";
  return 0;
}

Complex parse_complex_literal(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(c) != 0; }),
          s.end());
  if (s.empty()) throw ParseError("empty complex literal");
  if (s.front() == '[') {
    const Json j = Json::parse(s, nullptr, false);
    if (j.is_discarded() || !j.is_array() || j.empty() || j.size() > 2) {
      throw ParseError("bad complex literal: " + s);
    }
    return Complex(j[0].get<double>(), j.size() == 2 ? j[1].get<double>() : 0.0);
  }
  auto read_num = [&](std::size_t pos, double& out) -> std::size_t {
    // Parses a signed decimal; returns one past its end.
    const char* begin = s.data() + pos;
    const char* end = s.data() + s.size();
    if (begin != end && (*begin == '+' || *begin == '-')) ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc()) throw ParseError("bad complex literal: " + s);
    if (s[pos] == '-') out = -out;
    return static_cast<std::size_t>(ptr - s.data());
  };
  // Forms: a | ai | i | -i | a+bi | a-bi
  if (s == "i" || s == "+i") return Complex(0.0, 1.0);
  if (s == "-i") return Complex(0.0, -1.0);
  double first = 0.0;
  std::size_t pos = read_num(0, first);
  if (pos == s.size()) return Complex(first, 0.0);
  if (s[pos] == 'i' && pos + 1 == s.size()) return Complex(0.0, first);
  if (s[pos] != '+' && s[pos] != '-') throw ParseError("bad complex literal: " + s);
  if (pos + 2 == s.size() && s.back() == 'i') {
    return Complex(first, s[pos] == '+' ? 1.0 : -1.0);
  }
  double second = 0.0;
  const std::size_t end = read_num(pos, second);
  if (end + 1 != s.size() || s[end] != 'i') throw ParseError("bad complex literal: " + s);
  return Complex(first, second);
}

Complex complex_from_json_or_literal(const Json& j) {
  if (j.is_string()) return parse_complex_literal(j.get<std::string>());
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array()) return parse_complex_literal(j.dump());
  throw ParseError("expected a number, [re, im] pair, or complex literal: " + j.dump());
}

void print_or_write(const Json& j, const std::string& out_file) {
  const std::string text = j.dump(2) + "\n";
  if (out_file.empty()) {
    std::cout << text;
  } else {
    write_file(out_file, text);
  }
}

}  // namespace

PngSize parse_png_size(const std::string& desc) {
  const auto x = desc.find('x');
  if (x == std::string::npos) throw ParseError("png size must look like 800x600");
  PngSize out;
  out.width = std::stoi(desc.substr(0, x));
  out.height = std::stoi(desc.substr(x + 1));
  if (out.width < 1 || out.height < 1) throw ParseError("png size must be positive");
  return out;
}

std::vector<int> parse_n_list(const std::string& desc) {
  std::vector<int> out;
  const auto colon = desc.find(':');
  if (colon != std::string::npos) {
    const int lo = std::stoi(desc.substr(0, colon));
    const int hi = std::stoi(desc.substr(colon + 1));
    if (lo < 1 || hi < lo) throw ParseError("bad n range: " + desc);
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::size_t pos = 0;
  while (pos < desc.size()) {
    auto comma = desc.find(',', pos);
    if (comma == std::string::npos) comma = desc.size();
    out.push_back(std::stoi(desc.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (out.empty()) throw ParseError("empty n list");
  for (int n : out)
    if (n < 1) throw ParseError("degrees must be >= 1");
  return out;
}

int cmd_classify(const CommonOptions& opt, int n_override) {
  return guarded([&] { return run_classify(make_context(opt), n_override, true); });
}

int cmd_iterate(const CommonOptions& opt, int n, IterationMode mode) {
  return guarded([&] { return run_iterate(make_context(opt), n, mode); });
}

int cmd_julia(const CommonOptions& opt) {
  return guarded([&] { return run_julia(make_context(opt)); });
}

int cmd_converge(const CommonOptions& opt, const std::vector<int>& n_list) {
  return guarded([&] { return run_converge(make_context(opt), n_list); });
}

int cmd_rerun(const std::string& manifest_path, const std::string& out_dir) {
  return guarded([&]() -> int {
    Json m;
    try {
      m = Json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid manifest: ") + e.what());
    }
    if (!m.contains("subcommand") || !m.contains("operator") || !m.contains("params")) {
      throw ParseError("manifest lacks subcommand/operator/params");
    }
    RunContext ctx;
    ctx.op = operator_from_json(m["operator"], &ctx.name);
    ctx.out_dir = out_dir;
    const Json& params = m["params"];
    if (params.contains("config")) ctx.cfg = config_from_json(params["config"]);
    if (params.contains("png") && params["png"].is_string()) {
      ctx.png = parse_png_size(params["png"].get<std::string>());
    }
    const std::string sub = m["subcommand"].get<std::string>();
    if (sub == "iterate") {
      return run_iterate(ctx, params["n"].get<int>(),
                         mode_from_string(params["mode"].get<std::string>()));
    }
    if (sub == "julia") return run_julia(ctx);
    if (sub == "converge") return run_converge(ctx, params["n_list"].get<std::vector<int>>());
    if (sub == "classify") return run_classify(ctx, params.value("n", 0), false);
    throw ParseError("manifest has unknown subcommand: " + sub);
  });
}

int cmd_correspond_psi(const std::string& spec_path, int n, const std::string& out_file) {
  return guarded([&] {
    std::string name;
    const DiffOp t = load_operator_file(spec_path, &name);
    Json out;
    out["n"] = n;
    out["psi"] = bipoly_to_json(psi(t, n));
    print_or_write(out, out_file);
    return 0;
  });
}

int cmd_correspond_phi(const std::string& bipoly_path, int k, const std::string& out_file) {
  return guarded([&] {
    Json j;
    try {
      j = Json::parse(read_file(bipoly_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    const DiffOp t = phi(bipoly_from_json(j), k);
    print_or_write(operator_to_json(t), out_file);
    return 0;
  });
}

int cmd_correspond_one_point(const std::string& spec_path, int n, double tol,
                             const std::string& out_file) {
  return guarded([&] {
    std::string name;
    const DiffOp t = load_operator_file(spec_path, &name);
    const OnePointReport report = one_point_sets(t, n, tol);
    Json out;
    out["infinite_family"] = report.infinite_family;
    if (report.family_data) {
      Json fam;
      fam["l"] = report.family_data->first;
      fam["phi"] = poly_to_json(report.family_data->second);
      out["family"] = std::move(fam);
    } else {
      out["family"] = nullptr;
    }
    Json pts = Json::array();
    for (const auto& p : report.points) {
      Json jp;
      jp["z"] = complex_to_json(p.z0);
      jp["kind"] = p.kind == OnePointKind::FullFiber ? "full_fiber" : "sole";
      jp["worst_offset"] = p.worst_offset;
      pts.push_back(std::move(jp));
    }
    out["points"] = std::move(pts);
    print_or_write(out, out_file);
    return 0;
  });
}

int cmd_correspond_family(int m, int n, const std::string& q_desc, const std::string& out_file) {
  return guarded([&] {
    Poly q;
    std::string desc = q_desc;
    if (!desc.empty() && desc.front() == '[') {
      q = [&] {
        const Json j = Json::parse(desc, nullptr, false);
        if (j.is_discarded()) throw ParseError("bad coefficient list: " + desc);
        std::vector<Complex> cs;
        for (const auto& c : j) cs.push_back(complex_from_json_or_literal(c));
        return Poly(std::move(cs));
      }();
    } else {
      // "a=1,b=0": letters assign coefficients from x^m downward.
      std::vector<Complex> cs(static_cast<std::size_t>(m) + 1, Complex(0.0, 0.0));
      std::size_t pos = 0;
      while (pos < desc.size()) {
        auto comma = desc.find(',', pos);
        if (comma == std::string::npos) comma = desc.size();
        const std::string item = desc.substr(pos, comma - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq != 1) throw ParseError("expected letter=value: " + item);
        const int slot = item[0] - 'a';
        if (slot < 0 || slot > m) throw ParseError("coefficient letter out of range: " + item);
        cs[static_cast<std::size_t>(m - slot)] = parse_complex_literal(item.substr(eq + 1));
        pos = comma + 1;
      }
      q = Poly(std::move(cs));
    }
    const DiffOp t = family_operator(m, n, q);
    print_or_write(operator_to_json(t), out_file);
    return 0;
  });
}

int cmd_correspond_ifs(const std::string& maps_desc, const std::string& scale_desc,
                       const std::string& out_file) {
  return guarded([&] {
    const Json j = Json::parse(maps_desc, nullptr, false);
    if (j.is_discarded() || !j.is_array()) {
      throw ParseError("--maps expects a JSON list like [[a1,b1],[a2,b2]]");
    }
    std::vector<AffineMap> maps;
    for (const auto& entry : j) {
      if (!entry.is_array() || entry.size() != 2) {
        throw ParseError("each map must be a pair [a, b]");
      }
      maps.push_back(AffineMap{complex_from_json_or_literal(entry[0]),
                               complex_from_json_or_literal(entry[1])});
    }
    const Complex scale = scale_desc.empty() ? Complex(1.0, 0.0) : parse_complex_literal(scale_desc);
    const DiffOp t = operator_from_affine_ifs(maps, scale);
    print_or_write(operator_to_json(t), out_file);
    return 0;
  });
}

}  // namespace minvset::tool
