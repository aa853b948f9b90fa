#include "planeshape/ifs_config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "planeshape/errors.hpp"
#include "planeshape/json_lines.hpp"
#include "planeshape/pgm.hpp"

namespace planeshape {

using nlohmann::json;

BitGrid realize_region(const RegionSpec& spec, const GridGeometry& geo) {
  if (spec.shape) return rasterize(geo, *spec.shape);
  if (spec.pgm_path.empty()) throw ConfigError("region has neither a shape nor a PGM path");
  BitGrid g = read_pgm(spec.pgm_path);
  if (g.geometry() == geo) return g;
  return resample(g, geo);
}

IFSystem RunConfig::system() const {
  if (maps.empty()) throw ConfigError(source + ": no maps given");
  IFSystem F(maps, name.empty() ? "config" : name);
  if (!probabilities.empty()) F.set_probabilities(probabilities);
  return F;
}

namespace {

class Reader {
 public:
  Reader(const JsonLineIndex& index, std::string source) : index_(index), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& what) const {
    const std::string key = ptr.empty() ? "document" : ptr.substr(1);
    throw ConfigError(source_ + ": '" + key + "' " + what, index_.line_of(ptr));
  }

  double number(const json& v, const std::string& ptr) const {
    if (!v.is_number()) fail(ptr, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(ptr, "must be finite");
    return x;
  }

  double positive(const json& v, const std::string& ptr) const {
    const double x = number(v, ptr);
    if (!(x > 0.0)) fail(ptr, "must be positive");
    return x;
  }

  std::vector<double> numbers(const json& v, const std::string& ptr, std::size_t n = 0) const {
    if (!v.is_array()) fail(ptr, "must be an array of numbers");
    if (n && v.size() != n) fail(ptr, "must have " + std::to_string(n) + " entries");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(number(v[k], ptr + "/" + std::to_string(k)));
    return out;
  }

  Point2 point(const json& v, const std::string& ptr) const {
    const auto xy = numbers(v, ptr, 2);
    return {xy[0], xy[1]};
  }

  Rect rect(const json& v, const std::string& ptr) const {
    const auto r = numbers(v, ptr, 4);
    const Rect out{r[0], r[1], r[2], r[3]};
    if (out.degenerate()) fail(ptr, "must satisfy x0 < x1 and y0 < y1");
    return out;
  }

  void only_keys(const json& v, const std::string& ptr, const std::set<std::string>& allowed) const {
    if (!v.is_object()) fail(ptr, "must be an object");
    for (const auto& [k, _] : v.items())
      if (!allowed.count(k)) fail(ptr + "/" + k, "is not a recognized key");
  }

  const json& need(const json& v, const std::string& ptr, const std::string& key) const {
    if (!v.contains(key)) fail(ptr, "is missing '" + key + "'");
    return v.at(key);
  }

  RegionSpec region(const json& v, const std::string& ptr) const {
    RegionSpec spec;
    if (v.is_string()) {
      spec.pgm_path = v.get<std::string>();
      if (spec.pgm_path.empty()) fail(ptr, "must name a PGM file");
      return spec;
    }
    if (!v.is_object() || v.size() != 1) fail(ptr, "must be a path or an object with one of rect, disk, annulus, polygon, pgm");
    const auto& [kind, body] = *v.items().begin();
    const std::string p = ptr + "/" + kind;
    if (kind == "rect") {
      spec.shape = rect(body, p);
    } else if (kind == "disk") {
      only_keys(body, p, {"center", "radius"});
      spec.shape = Disk{point(need(body, p, "center"), p + "/center"), positive(need(body, p, "radius"), p + "/radius")};
    } else if (kind == "annulus") {
      only_keys(body, p, {"center", "inner", "outer"});
      Annulus a{point(need(body, p, "center"), p + "/center"), number(need(body, p, "inner"), p + "/inner"),
                positive(need(body, p, "outer"), p + "/outer")};
      if (!(a.inner >= 0.0 && a.inner < a.outer)) fail(p + "/inner", "must satisfy 0 <= inner < outer");
      spec.shape = a;
    } else if (kind == "polygon") {
      if (!body.is_array() || body.size() < 3) fail(p, "must list at least 3 vertices");
      Polygon poly;
      for (std::size_t k = 0; k < body.size(); ++k) poly.vertices.push_back(point(body[k], p + "/" + std::to_string(k)));
      spec.shape = poly;
    } else if (kind == "pgm") {
      if (!body.is_string() || body.get<std::string>().empty()) fail(p, "must name a PGM file");
      spec.pgm_path = body.get<std::string>();
    } else {
      fail(p, "is not a region kind (rect, disk, annulus, polygon, pgm)");
    }
    return spec;
  }

 private:
  const JsonLineIndex& index_;
  std::string source_;
};

}  // namespace

RunConfig parse_run_config(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ConfigError(source + ": malformed JSON", line_at_offset(text, at));
  }
  const JsonLineIndex index(text);
  const Reader rd(index, source);
  rd.only_keys(doc, "", {"name", "maps", "probabilities", "bounds", "resolution", "seed", "block", "tol", "rng_seed",
                         "lambdas", "family", "family_params", "epsilon", "contractive", "perturb"});

  RunConfig cfg;
  cfg.source = source;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) rd.fail("/name", "must be a string");
    cfg.name = doc["name"].get<std::string>();
  }
  if (doc.contains("maps")) {
    const json& maps = doc["maps"];
    if (!maps.is_array() || maps.empty()) rd.fail("/maps", "must be a nonempty array");
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const std::string p = "/maps/" + std::to_string(i);
      rd.only_keys(maps[i], p, {"a", "b", "c", "d", "e", "f", "drift"});
      auto coef = [&](const char* k) { return rd.number(rd.need(maps[i], p, k), p + "/" + k); };
      const AffineMap2 m{coef("a"), coef("b"), coef("c"), coef("d"), coef("e"), coef("f")};
      if (m.determinant() == 0.0) rd.fail(p, "is singular");
      cfg.maps.push_back(m);
      Point2 drift{};
      if (maps[i].contains("drift")) {
        drift = rd.point(maps[i]["drift"], p + "/drift");
        cfg.drifting = true;
      }
      cfg.drifts.push_back(drift);
    }
  }
  if (doc.contains("probabilities")) {
    cfg.probabilities = rd.numbers(doc["probabilities"], "/probabilities");
    if (cfg.probabilities.size() != cfg.maps.size()) rd.fail("/probabilities", "must have one entry per map");
    double sum = 0.0;
    for (std::size_t k = 0; k < cfg.probabilities.size(); ++k) {
      if (cfg.probabilities[k] < 0.0) rd.fail("/probabilities/" + std::to_string(k), "must be nonnegative");
      sum += cfg.probabilities[k];
    }
    if (!(sum > 0.0)) rd.fail("/probabilities", "must have a positive sum");
  }
  if (doc.contains("bounds")) cfg.bounds = rd.rect(doc["bounds"], "/bounds");
  if (doc.contains("resolution")) cfg.resolution = rd.positive(doc["resolution"], "/resolution");
  if (doc.contains("seed")) cfg.seed = rd.region(doc["seed"], "/seed");
  if (doc.contains("block")) cfg.block = rd.region(doc["block"], "/block");
  if (doc.contains("tol")) cfg.tol = rd.positive(doc["tol"], "/tol");
  if (doc.contains("rng_seed")) {
    if (!doc["rng_seed"].is_number_unsigned()) rd.fail("/rng_seed", "must be a nonnegative integer");
    cfg.rng_seed = doc["rng_seed"].get<std::uint64_t>();
  }
  if (doc.contains("lambdas")) {
    cfg.lambdas = rd.numbers(doc["lambdas"], "/lambdas");
    if (cfg.lambdas->empty()) rd.fail("/lambdas", "must not be empty");
    for (std::size_t k = 1; k < cfg.lambdas->size(); ++k)
      if (!((*cfg.lambdas)[k] > (*cfg.lambdas)[k - 1])) rd.fail("/lambdas/" + std::to_string(k), "must be strictly ascending");
  }
  if (doc.contains("family")) {
    if (!doc["family"].is_string()) rd.fail("/family", "must be a string");
    cfg.family = doc["family"].get<std::string>();
  }
  if (doc.contains("family_params")) {
    const json& fp = doc["family_params"];
    rd.only_keys(fp, "/family_params", {"omega", "twist", "r_max"});
    if (fp.contains("omega")) cfg.omega = rd.number(fp["omega"], "/family_params/omega");
    if (fp.contains("twist")) cfg.twist = rd.number(fp["twist"], "/family_params/twist");
    if (fp.contains("r_max")) cfg.r_max = rd.positive(fp["r_max"], "/family_params/r_max");
  }
  if (doc.contains("epsilon")) cfg.epsilon = rd.positive(doc["epsilon"], "/epsilon");
  if (doc.contains("contractive")) {
    if (!doc["contractive"].is_boolean()) rd.fail("/contractive", "must be true or false");
    cfg.contractive = doc["contractive"].get<bool>();
  }
  if (doc.contains("perturb")) {
    cfg.perturb = rd.number(doc["perturb"], "/perturb");
    if (*cfg.perturb < 0.0) rd.fail("/perturb", "must be nonnegative");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_run_config(ss.str(), path);
  // PGM regions are relative to the config file
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  for (auto* spec : {&cfg.seed, &cfg.block})
    if (*spec && !(*spec)->pgm_path.empty() && std::filesystem::path((*spec)->pgm_path).is_relative())
      (*spec)->pgm_path = (dir / (*spec)->pgm_path).string();
  return cfg;
}

}  // namespace planeshape
