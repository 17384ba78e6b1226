#include <CLI11.hpp>

#include <string>

#include "commands.hpp"

using namespace minvset::tool;

namespace {

void add_config_flags(CLI::App* app, CommonOptions* opt) {
  app->add_option("--eps", opt->cfg.eps, "grid resolution for the point cloud");
  app->add_option("--rmax", opt->cfg.r_max, "escape radius (<=0 selects it automatically)");
  app->add_option("--max-iter", opt->cfg.max_iter, "iteration cap");
  app->add_option("--seed", opt->cfg.rng_seed, "RNG seed (all sampling is derived from it)");
  app->add_option("--samples", opt->cfg.tau_samples, "sampled polynomials per step (full mode)");
  app->add_option("--stall-window", opt->cfg.stall_window,
                  "consecutive quiet steps required for convergence");
  app->add_option("--root-tol", opt->cfg.root_tol, "root-finder tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minvset: invariant sets of polynomial differential operators"};
  app.require_subcommand(1);

  // classify
  CommonOptions classify_opt;
  int classify_n = 0;
  auto* classify = app.add_subcommand("classify", "operator diagnostics as JSON");
  classify->add_option("--spec", classify_opt.spec_path, "operator spec JSON file")->required();
  classify->add_option("--n", classify_n, "degree for the spectrum slice (default: order)");
  classify->add_option("--out", classify_opt.out_dir, "also write classify.json + manifest here");

  // iterate
  CommonOptions iterate_opt;
  int iterate_n = 1;
  std::string iterate_mode = "hutchinson";
  std::string iterate_png;
  auto* iterate = app.add_subcommand("iterate", "run the invariant-set iteration");
  iterate->add_option("--spec", iterate_opt.spec_path, "operator spec JSON file")->required();
  iterate->add_option("--n", iterate_n, "polynomial degree n")->required();
  iterate->add_option("--mode", iterate_mode, "hutchinson or full");
  iterate->add_option("--out", iterate_opt.out_dir, "output directory")->required();
  iterate->add_option("--png", iterate_png, "render the cloud, e.g. 800x800");
  add_config_flags(iterate, &iterate_opt);

  // julia
  CommonOptions julia_opt;
  std::string julia_png;
  auto* julia = app.add_subcommand("julia", "degree-1 Julia pipeline with cross-validation");
  julia->add_option("--spec", julia_opt.spec_path, "operator spec JSON file")->required();
  julia->add_option("--out", julia_opt.out_dir, "output directory")->required();
  julia->add_option("--png", julia_png, "render the Julia cloud, e.g. 800x800");
  add_config_flags(julia, &julia_opt);

  // converge
  CommonOptions converge_opt;
  std::string converge_ns = "3:5";
  auto* converge = app.add_subcommand("converge", "fundamental-polygon convergence study");
  converge->add_option("--spec", converge_opt.spec_path, "operator spec JSON file")->required();
  converge->add_option("--n", converge_ns, "degree list, e.g. 3:5 or 3,4,5")->required();
  converge->add_option("--out", converge_opt.out_dir, "output directory")->required();
  add_config_flags(converge, &converge_opt);

  // correspond
  auto* correspond = app.add_subcommand("correspond", "operator <-> curve constructions");
  correspond->require_subcommand(1);
  std::string co_spec, co_bipoly, co_out, co_q, co_maps, co_scale;
  int co_n = 1, co_k = 1, co_m = 0;
  double co_tol = 1e-8;

  auto* co_psi = correspond->add_subcommand("psi", "T[(x-z)^n] coefficient matrix");
  co_psi->add_option("--spec", co_spec, "operator spec JSON file")->required();
  co_psi->add_option("--n", co_n, "degree n")->required();
  co_psi->add_option("-o,--out", co_out, "output file (default stdout)");

  auto* co_phi = correspond->add_subcommand("phi", "operator from a bivariate polynomial");
  co_phi->add_option("--bipoly", co_bipoly, "bivariate coefficient JSON file")->required();
  co_phi->add_option("--k", co_k, "order bound k")->required();
  co_phi->add_option("-o,--out", co_out, "output file (default stdout)");

  auto* co_one = correspond->add_subcommand("one-point", "1-point invariant sets");
  co_one->add_option("--spec", co_spec, "operator spec JSON file")->required();
  co_one->add_option("--n", co_n, "degree n")->required();
  co_one->add_option("--tol", co_tol, "matching tolerance");
  co_one->add_option("-o,--out", co_out, "output file (default stdout)");

  auto* co_family = correspond->add_subcommand("family", "the F_{m,n} family operator");
  co_family->add_option("--m", co_m, "family index m")->required();
  co_family->add_option("--n", co_n, "degree n")->required();
  co_family->add_option("--q", co_q, "Q_m coefficients, e.g. \"a=1,b=0\" or \"[[0,0],[1,0]]\"")
      ->required();
  co_family->add_option("-o,--out", co_out, "output file (default stdout)");

  auto* co_ifs = correspond->add_subcommand("ifs", "operator realizing an affine IFS");
  co_ifs->add_option("--maps", co_maps, "JSON list of [a, b] pairs")->required();
  co_ifs->add_option("--scale", co_scale, "leading scale factor (default 1)");
  co_ifs->add_option("-o,--out", co_out, "output file (default stdout)");

  // rerun
  std::string rerun_manifest, rerun_out;
  auto* rerun = app.add_subcommand("rerun", "re-execute a run from its manifest");
  rerun->add_option("manifest", rerun_manifest, "manifest.json from a previous run")->required();
  rerun->add_option("--out", rerun_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(classify_opt, classify_n);
    if (iterate->parsed()) {
      if (!iterate_png.empty()) iterate_opt.png = parse_png_size(iterate_png);
      const auto mode = iterate_mode == "full" ? minvset::IterationMode::Full
                                               : minvset::IterationMode::Hutchinson;
      if (iterate_mode != "full" && iterate_mode != "hutchinson") {
        std::cerr << "error: --mode must be hutchinson or full\n";
        return 5;
      }
      return cmd_iterate(iterate_opt, iterate_n, mode);
    }
    if (julia->parsed()) {
      if (!julia_png.empty()) julia_opt.png = parse_png_size(julia_png);
      return cmd_julia(julia_opt);
    }
    if (converge->parsed()) return cmd_converge(converge_opt, parse_n_list(converge_ns));
    if (correspond->parsed()) {
      if (co_psi->parsed()) return cmd_correspond_psi(co_spec, co_n, co_out);
      if (co_phi->parsed()) return cmd_correspond_phi(co_bipoly, co_k, co_out);
      if (co_one->parsed()) return cmd_correspond_one_point(co_spec, co_n, co_tol, co_out);
      if (co_family->parsed()) return cmd_correspond_family(co_m, co_n, co_q, co_out);
      if (co_ifs->parsed()) return cmd_correspond_ifs(co_maps, co_scale, co_out);
    }
    if (rerun->parsed()) return cmd_rerun(rerun_manifest, rerun_out);
  } catch (const minvset::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
