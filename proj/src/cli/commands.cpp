#include "planeshape/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

#include <json.hpp>

#include "planeshape/builtins.hpp"
#include "planeshape/conley.hpp"
#include "planeshape/errors.hpp"
#include "planeshape/grid_ops.hpp"
#include "planeshape/homeo.hpp"
#include "planeshape/ifs_config.hpp"
#include "planeshape/pgm.hpp"
#include "planeshape/raster.hpp"
#include "planeshape/reports.hpp"
#include "planeshape/shape.hpp"

namespace planeshape {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<double> parse_lambda_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string tok = text.substr(pos, comma - pos);
    if (tok.find_first_not_of(" \t") == std::string::npos) {
      if (!text.empty() && text.find_first_not_of(" \t,") != std::string::npos)
        throw ConfigError("--lambdas has an empty entry");
    } else {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || std::string(end).find_first_not_of(" \t") != std::string::npos || !std::isfinite(v))
        throw ConfigError("--lambdas: '" + tok + "' is not a number");
      out.push_back(v);
    }
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("--lambdas: the parameter list is empty");
  for (std::size_t k = 1; k < out.size(); ++k)
    if (!(out[k] > out[k - 1])) throw ConfigError("--lambdas must be strictly ascending");
  return out;
}

namespace {

class Artifacts {
 public:
  Artifacts(std::string dir, std::string command) : dir_(std::move(dir)), command_(std::move(command)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_ + ": " + ec.message());
  }

  void pgm(const std::string& name, const BitGrid& g) { put(name, encode_pgm(g)); }
  void json_file(const std::string& name, const json& j) { put(name, j.dump(2) + "\n"); }

  void commit(std::ostream& log) {
    json m = {{"command", command_}, {"artifacts", names_}};
    put("manifest.json", m.dump(2) + "\n");
    for (const auto& n : names_) log << "wrote " << (fs::path(dir_) / n).string() << "\n";
  }

 private:
  void put(const std::string& name, const std::string& bytes) {
    const fs::path final_path = fs::path(dir_) / name;
    const fs::path tmp = fs::path(dir_) / ("." + name + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write " + tmp.string());
      out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, final_path, ec);
    if (ec) {
      fs::remove(tmp, ec);
      throw IoError("cannot move " + tmp.string() + " into place");
    }
    if (name != "manifest.json") names_.push_back(name);
  }

  std::string dir_, command_;
  std::vector<std::string> names_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const HypothesisError& e) {
    err << "hypothesis not met: " << e.what() << "\n";
    return exit_hypothesis;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_numeric;
  }
}

void validate(const CliOptions& o) {
  if (o.res && !(std::isfinite(*o.res) && *o.res > 0.0)) throw ConfigError("--res must be a positive number");
  if (o.tol && !(std::isfinite(*o.tol) && *o.tol > 0.0)) throw ConfigError("--tol must be a positive number");
  if (o.perturb && !(std::isfinite(*o.perturb) && *o.perturb >= 0.0))
    throw ConfigError("--perturb must be a nonnegative number");
  if (o.out.empty()) throw ConfigError("--out must name a directory");
}

std::optional<RunConfig> maybe_config(const CliOptions& o) {
  if (o.config_path.empty()) return std::nullopt;
  return load_run_config(o.config_path);
}

struct IfsSource {
  IFSystem system;
  Rect bounds;
  RegionSpec seed;
  double res;
  std::string name;
};

IfsSource ifs_source(const CliOptions& o, const std::optional<RunConfig>& cfg, double default_res) {
  if (!o.builtin.empty() && cfg) throw ConfigError("give either --builtin or --config, not both");
  if (!o.builtin.empty()) {
    BuiltinIfs b = builtin_ifs(o.builtin);
    RegionSpec seed;
    seed.shape = b.seed;
    return {b.system, b.bounds, seed, o.res.value_or(default_res), o.builtin};
  }
  if (!cfg) throw ConfigError("an IFS is needed: use --builtin NAME or --config PATH");
  if (!cfg->bounds) throw ConfigError(cfg->source + ": 'bounds' is required for this command");
  RegionSpec seed;
  if (cfg->seed) seed = *cfg->seed;
  else seed.shape = *cfg->bounds;
  return {cfg->system(), *cfg->bounds, seed, o.res.value_or(cfg->resolution.value_or(default_res)),
          cfg->name.empty() ? cfg->source : cfg->name};
}

// Powers of two dividing both sides, at most a quarter of the short side.
std::vector<int> dyadic_scales(const BitGrid& g) {
  std::vector<int> s;
  for (int k = 1; k <= std::min(g.width(), g.height()) / 4; k *= 2)
    if (g.width() % k == 0 && g.height() % k == 0) s.push_back(k);
  return s;
}

}  // namespace

int cmd_render_ifs(const CliOptions& o, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    validate(o);
    const IfsSource src = ifs_source(o, maybe_config(o), 1024);
    const GridGeometry geo(src.bounds, src.res);
    AttractorOptions ao;
    if (o.tol) ao.tol = *o.tol;
    AttractorReport ar = attractor_deterministic(src.system, realize_region(src.seed, geo), ao);

    Artifacts art(o.out, "render-ifs");
    art.pgm("attractor.pgm", ar.attractor);
    for (std::size_t i = 0; i < src.system.size(); ++i)
      art.pgm("map_" + std::to_string(i + 1) + ".pgm", map_image(src.system.map(i), ar.attractor));

    json rep = {{"command", "render-ifs"}, {"system", src.name}, {"maps", src.system.size()},
                {"attractor", to_json(ar)}};
    if (o.seed) {
      const std::size_t n = 1000000;
      const BitGrid chaos = attractor_chaos_game(src.system, n, 100, *o.seed, ar.attractor);
      art.pgm("chaos.pgm", chaos);
      rep["chaos_game"] = {{"points", n}, {"rng_seed", *o.seed}, {"cells", chaos.count()},
                           {"distance_to_deterministic", hausdorff_distance(chaos, ar.attractor)}};
    }
    art.json_file("trace.json", rep);
    art.commit(log);
    log << src.name << ": " << ar.iterations << " iterations, " << ar.attractor.count() << " cells, last step "
        << ar.trace.final_distance << "\n";
    return ar.trace.converged ? exit_ok : exit_numeric;
  });
}

int cmd_classify(const CliOptions& o, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    validate(o);
    const auto cfg = maybe_config(o);
    json rep = {{"command", "classify"}};
    DichotomyStatus status;
    BitGrid top(GridGeometry(Rect{0, 0, 1, 1}, 1));

    if (!o.input.empty()) {
      if (!o.builtin.empty() || cfg) throw ConfigError("--input excludes --builtin and --config");
      top = read_pgm(o.input);
      rep["source"] = fs::path(o.input).filename().string();
      const ShapeClass sc = classify_grid(top);
      const double px = top.geometry().pixel_width();
      const InteriorVerdict iv = interior_nonempty(top, 4.0 * px);
      rep["shape"] = to_json(sc);
      rep["interior"] = json::array({{{"resolution", top.geometry().resolution()}, {"nonempty", iv.nonempty},
                                      {"eps", iv.eps}}});
      rep["empty_interior"] = !iv.nonempty;
      if (iv.nonempty) status = DichotomyStatus::hypothesis_unmet;
      else if (sc.verdict == ShapeVerdict::trivial || sc.verdict == ShapeVerdict::hawaiian_like)
        status = DichotomyStatus::consistent;
      else status = DichotomyStatus::violation;
      rep["dichotomy_status"] = to_string(status);
      rep["verdict"] = to_string(sc.verdict);
      try {
        rep["h1_rank"] = to_json(cech_h1_rank(sc));
      } catch (const InconclusiveError&) {
        rep["h1_rank"] = "inconclusive";
      }
    } else {
      const IfsSource src = ifs_source(o, cfg, 1024);
      rep["source"] = src.name;
      DichotomyOptions dopt;
      if (o.tol) dopt.attractor.tol = *o.tol;
      if (!src.seed.shape) throw ConfigError("classify needs a geometric seed region");
      DichotomyReport dr = check_interior_dichotomy(src.system, src.bounds, *src.seed.shape,
                                                    {src.res / 4, src.res / 2, src.res}, dopt);
      status = dr.status;
      rep.update(to_json(dr));
      top = std::move(*dr.top_attractor);
      if (dr.shape) {
        rep["verdict"] = to_string(dr.shape->verdict);
        try {
          rep["h1_rank"] = to_json(cech_h1_rank(*dr.shape));
        } catch (const InconclusiveError&) {
          rep["h1_rank"] = "inconclusive";
        }
      }
      const std::vector<int> scales = dyadic_scales(top);
      if (scales.size() >= 3) rep["dimension"] = to_json(box_counting_dimension(top, scales));
    }

    Artifacts art(o.out, "classify");
    art.pgm("attractor.pgm", top);
    art.json_file("classification.json", rep);
    art.commit(log);
    log << "verdict " << rep.value("verdict", std::string("none")) << ", status " << to_string(status) << "\n";
    switch (status) {
      case DichotomyStatus::consistent: return int(exit_ok);
      case DichotomyStatus::hypothesis_unmet: return int(exit_hypothesis);
      case DichotomyStatus::violation: return int(exit_violation);
    }
    return int(exit_numeric);
  });
}

int cmd_hopf_scan(const CliOptions& o, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    validate(o);
    const auto cfg = maybe_config(o);
    if (!o.builtin.empty()) throw ConfigError("hopf-scan takes --family, not --builtin");
    const std::string family_name = !o.family.empty() ? o.family : cfg && cfg->family ? *cfg->family : "neimark-sacker";
    if (family_name != "neimark-sacker") throw ConfigError("unknown family '" + family_name + "' (known: neimark-sacker)");
    std::vector<double> lambdas;
    if (o.lambdas) lambdas = parse_lambda_list(*o.lambdas);
    else if (cfg && cfg->lambdas) lambdas = *cfg->lambdas;
    else throw ConfigError("hopf-scan needs --lambdas");

    const double omega = cfg && cfg->omega ? *cfg->omega : 0.5;
    const double twist = cfg && cfg->twist ? *cfg->twist : 0.3;
    const double r_max = cfg && cfg->r_max ? *cfg->r_max : 0.5;
    const MapFamily family = neimark_sacker_family(omega, twist, r_max);
    const double res = o.res.value_or(cfg && cfg->resolution ? *cfg->resolution : 800.0);
    const Rect bounds = cfg && cfg->bounds ? *cfg->bounds : Rect{-r_max - 0.1, -r_max - 0.1, r_max + 0.1, r_max + 0.1};
    RegionSpec dspec;
    if (cfg && cfg->seed) dspec = *cfg->seed;
    else dspec.shape = Disk{{0.0, 0.0}, r_max};
    const BitGrid D = realize_region(dspec, GridGeometry(bounds, res));
    // negative: no robustness section
    const double perturb = o.perturb ? *o.perturb : cfg && cfg->perturb ? *cfg->perturb : -1.0;

    HopfOptions hopt;
    if (o.tol) hopt.trapping.tol = *o.tol;
    const HopfReport rep = hopf_scan(family, lambdas, D, hopt);

    Artifacts art(o.out, "hopf-scan");
    json j = {{"command", "hopf-scan"}, {"resolution", res}, {"scan", to_json(rep)}};
    bool failed = false;
    for (const auto& e : rep.entries) {
      if (e.status == HopfStatus::failed) failed = true;
      if (e.status != HopfStatus::ok) continue;
      const std::string stem = "lambda_" + num(e.lambda) + "_";
      art.pgm(stem + "A.pgm", *e.A);
      art.pgm(stem + "R.pgm", *e.R);
      art.pgm(stem + "K.pgm", *e.K);
    }
    bool flagged = false;
    if (perturb >= 0.0) {
      const HopfEntry* last = nullptr;
      for (const auto& e : rep.entries)
        if (e.status == HopfStatus::ok) last = &e;
      if (!last) {
        j["robustness"] = {{"error", "no parameter value produced an attractor"}};
        failed = true;
      } else {
        const double a = perturb;
        RobustnessOptions ropt;
        if (o.tol) ropt.trapping.tol = *o.tol;
        const RobustnessReport rr = robustness_check(family, last->lambda, {a, a / 2, a / 4, a / 8}, D, ropt);
        j["robustness"] = to_json(rr);
        flagged = !rr.shapes_preserved || !rr.distances_monotone;
      }
    }
    art.json_file("hopf.json", j);
    art.commit(log);
    for (const auto& e : rep.entries)
      log << "lambda " << num(e.lambda) << ": " << to_string(e.status)
          << (e.shape ? ", " + to_string(e.shape->verdict) + ", outer radius " + num(e.outer_radius) : std::string())
          << (e.error.empty() ? "" : ", " + e.error) << "\n";
    if (failed) return int(exit_numeric);
    return flagged ? int(exit_violation) : int(exit_ok);
  });
}

int cmd_conley_continue(const CliOptions& o, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    validate(o);
    const auto cfg = maybe_config(o);
    if (!o.builtin.empty()) throw ConfigError("conley-continue takes --family or --config, not --builtin");
    std::string family_name = o.family;
    if (family_name.empty()) family_name = cfg && cfg->family ? *cfg->family : cfg && !cfg->maps.empty() ? "config" : "drift";

    IfsFamily family;
    std::optional<GridGeometry> geo;
    RegionSpec block;
    bool contractive = true;
    if (family_name == "config") {
      if (!cfg || cfg->maps.empty()) throw ConfigError("family 'config' needs --config with maps");
      if (!cfg->bounds) throw ConfigError(cfg->source + ": 'bounds' is required for this command");
      if (!cfg->block) throw ConfigError(cfg->source + ": 'block' is required for this command");
      geo.emplace(*cfg->bounds, o.res.value_or(cfg->resolution.value_or(100.0)));
      family = drift_family(cfg->maps, cfg->drifts, *geo, cfg->name.empty() ? "config" : cfg->name);
      block = *cfg->block;
      contractive = cfg->system().contractive();
    } else {
      geo.emplace(family_name == "rotation" ? Rect{-0.6, -0.6, 0.6, 0.6} : Rect{-1, -1, 1, 1},
                  o.res.value_or(cfg && cfg->resolution ? *cfg->resolution : family_name == "rotation" ? 200.0 : 100.0));
      if (family_name == "drift") {
        family = drift_family({AffineMap2::scaling(0.5)}, {{0.1, 0.0}}, *geo, "drift");
      } else if (family_name == "constant") {
        family = constant_family(InvertibleIFS({make_affine_map(AffineMap2::scaling(0.5)),
                                                make_affine_map(AffineMap2::scaling(-0.5))},
                                               *geo, "halving pair"));
      } else if (family_name == "rotation") {
        family = rotation_family(*geo);
        contractive = false;
      } else {
        throw ConfigError("unknown family '" + family_name + "' (known: drift, constant, rotation, config)");
      }
      if (cfg && cfg->block) block = *cfg->block;
      else block.shape = Disk{{0.0, 0.0}, 0.5};
    }
    if (cfg && cfg->contractive) contractive = *cfg->contractive;

    std::vector<double> lambdas;
    if (o.lambdas) lambdas = parse_lambda_list(*o.lambdas);
    else if (cfg && cfg->lambdas) lambdas = *cfg->lambdas;
    else lambdas = {0.0, 0.025, 0.05, 0.075, 0.1};

    ContinuationOptions copt;
    if (cfg && cfg->epsilon) copt.eps = *cfg->epsilon;
    if (o.tol) copt.conley.tol = *o.tol;
    else if (cfg && cfg->tol) copt.conley.tol = *cfg->tol;
    copt.contractive = contractive;
    const BitGrid Q = realize_region(block, *geo);
    const ContinuationReport rep = continuation(family, Q, lambdas, copt);

    Artifacts art(o.out, "conley-continue");
    if (rep.K0) art.pgm("K0.pgm", *rep.K0);
    for (const auto& e : rep.entries)
      if (e.K) art.pgm("lambda_" + num(e.lambda) + "_K.pgm", *e.K);
    art.json_file("continuation.json", json{{"command", "conley-continue"}, {"continuation", to_json(rep)}});
    art.commit(log);
    if (!rep.base_verified) {
      log << "block-lost at lambda=0\n";
      return int(exit_hypothesis);
    }
    for (const auto& e : rep.entries)
      log << "lambda " << num(e.lambda) << ": " << to_string(e.status)
          << (e.K ? ", d_H " + num(e.distance) + (e.contained ? ", contained" : ", NOT contained") : std::string())
          << "\n";
    if (rep.block_lost_at) log << "block-lost at lambda=" << num(*rep.block_lost_at) << "\n";
    const bool flagged = !rep.all_contained || (rep.strict_ok && !*rep.strict_ok);
    return flagged ? int(exit_violation) : int(exit_ok);
  });
}

}  // namespace planeshape
