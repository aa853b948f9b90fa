#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "planeshape/builtins.hpp"
#include "planeshape/cli.hpp"

using namespace planeshape;

int main(int argc, char** argv) {
  CLI::App app{"Plane attractors on bit grids: IFS rendering, shape classification, Hopf scans, Conley continuation"};
  app.require_subcommand(1);
  CliOptions o;

  std::string builtin_help = "built-in IFS:";
  for (const auto& n : builtin_ifs_names()) builtin_help += " " + n;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output directory (created if missing)")->capture_default_str();
    sub->add_option("--res", o.res, "grid resolution in cells per unit length");
    sub->add_option("--tol", o.tol, "convergence tolerance in physical units (default two pixels)");
    sub->add_option("--config", o.config_path, "JSON configuration document");
  };

  auto* render = app.add_subcommand("render-ifs", "attractor, per-map images and convergence trace");
  common(render);
  render->add_option("--builtin", o.builtin, builtin_help);
  render->add_option("--seed", o.seed, "rng seed; also renders a chaos-game image");

  auto* classify = app.add_subcommand("classify", "shape verdict and interior dichotomy");
  common(classify);
  classify->add_option("--builtin", o.builtin, builtin_help);
  classify->add_option("--input", o.input, "classify a PGM raster instead of an IFS");

  auto* hopf = app.add_subcommand("hopf-scan", "attractor birth around a repelling fixed point");
  common(hopf);
  hopf->add_option("--family", o.family, "map family: neimark-sacker");
  hopf->add_option("--lambdas", o.lambdas, "ascending comma-separated parameter values");
  hopf->add_option("--perturb", o.perturb, "largest shear amplitude for the robustness section");

  auto* conley = app.add_subcommand("conley-continue", "attractor continuation through a shared block");
  common(conley);
  conley->add_option("--family", o.family, "drift, constant, rotation or config");
  conley->add_option("--lambdas", o.lambdas, "ascending comma-separated parameter values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : int(exit_config);
  }

  if (render->parsed()) return cmd_render_ifs(o, std::cout, std::cerr);
  if (classify->parsed()) return cmd_classify(o, std::cout, std::cerr);
  if (hopf->parsed()) return cmd_hopf_scan(o, std::cout, std::cerr);
  return cmd_conley_continue(o, std::cout, std::cerr);
}
