#include "planeshape/reports.hpp"

namespace planeshape {

using nlohmann::json;

json to_json(const Rect& r) { return json::array({r.x0, r.y0, r.x1, r.y1}); }

json to_json(const ConvergenceTrace& t) {
  json steps = json::array();
  for (const auto& e : t.entries) steps.push_back({{"iteration", e.iteration}, {"distance", e.distance}});
  return {{"converged", t.converged}, {"final_distance", t.final_distance}, {"steps", steps}};
}

json to_json(const ShapeClass& c) {
  json ev = json::array();
  for (const auto& e : c.evidence)
    ev.push_back({{"resolution", e.resolution},
                  {"bounded_complement", e.bounded_complement},
                  {"raw_bounded_complement", e.raw_bounded_complement},
                  {"set_components", e.set_components}});
  return {{"verdict", to_string(c.verdict)}, {"count", c.count}, {"stable", c.stable}, {"evidence", ev}};
}

json to_json(const H1Rank& h) {
  if (h.infinite) return {{"rank", "infinite"}, {"basis_at_top_resolution", h.basis}};
  return {{"rank", h.rank}, {"basis_at_top_resolution", h.basis}};
}

json to_json(const DimensionEstimate& d) {
  return {{"dimension", d.dimension}, {"stderr_slope", d.stderr_slope}, {"residual", d.residual},
          {"scales_px", d.scales}, {"counts", d.counts}};
}

json to_json(const AttractorReport& r) {
  json j = {{"iterations", r.iterations},
            {"initial_step", r.initial_step},
            {"a_priori_iterations", r.a_priori_iterations},
            {"invariance_defect", r.invariance_defect},
            {"trace", to_json(r.trace)},
            {"cells", r.attractor.count()},
            {"resolution", r.attractor.geometry().resolution()},
            {"bounds", to_json(r.attractor.geometry().bounds())}};
  if (r.max_jitter > 0.0) j["max_jitter"] = r.max_jitter;
  if (r.step_power > 1) j["step_power"] = r.step_power;
  if (r.shape) j["shape"] = to_json(*r.shape);
  if (r.h1_rank) j["h1_rank"] = to_json(*r.h1_rank);
  if (r.dimension) j["dimension"] = to_json(*r.dimension);
  if (r.empty_interior) j["empty_interior"] = *r.empty_interior;
  if (r.connected) j["connected"] = *r.connected;
  return j;
}

json to_json(const DichotomyReport& r) {
  json interior = json::array();
  for (const auto& e : r.interior)
    interior.push_back({{"resolution", e.resolution}, {"nonempty", e.nonempty}, {"eps", e.eps}});
  json j = {{"dichotomy_status", to_string(r.status)},
            {"interior", interior},
            {"iterations", r.iterations},
            {"empty_interior", r.empty_interior},
            {"connected", r.connected}};
  if (r.shape) j["shape"] = to_json(*r.shape);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const HopfReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json j = {{"lambda", e.lambda}, {"status", to_string(e.status)}};
    if (!e.error.empty()) j["error"] = e.error;
    if (e.shape) j["shape"] = to_json(*e.shape);
    if (e.status == HopfStatus::ok) {
      j["surrounds_origin"] = e.surrounds_origin;
      j["outer_radius"] = e.outer_radius;
      j["a_images"] = e.a_images;
    }
    entries.push_back(j);
  }
  return {{"family", r.family}, {"entries", entries}, {"radii_increasing", r.radii_increasing},
          {"all_circle", r.all_circle}};
}

json to_json(const RobustnessReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json j = {{"amplitude", e.amplitude}, {"trapping", e.trapping}};
    if (!e.error.empty()) j["error"] = e.error;
    if (e.shape) {
      j["shape"] = to_json(*e.shape);
      j["distance_to_base"] = e.distance_to_base;
    }
    entries.push_back(j);
  }
  return {{"lambda", r.lambda}, {"base_shape", to_json(r.base_shape)}, {"entries", entries},
          {"shapes_preserved", r.shapes_preserved}, {"distances_monotone", r.distances_monotone}};
}

json to_json(const ContinuationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json j = {{"lambda", e.lambda}, {"status", to_string(e.status)}};
    if (!e.error.empty()) j["error"] = e.error;
    if (e.status == ContinuationStatus::verified) {
      j["converged"] = e.converged;
      j["iterations"] = e.iterations;
      j["distance"] = e.distance;
      j["contained"] = e.contained;
      j["set_components"] = e.set_components;
      j["bounded_complement"] = e.bounded_complement;
    }
    entries.push_back(j);
  }
  json j = {{"family", r.family},
            {"epsilon", r.eps},
            {"containment_reading", "K_lambda inside the epsilon-neighborhood of K_0; distance is informational"},
            {"base_verified", r.base_verified},
            {"entries", entries},
            {"all_contained", r.all_contained}};
  j["block_lost_at"] = r.block_lost_at ? json(*r.block_lost_at) : json(nullptr);
  if (r.strict_ok) j["strict_ok"] = *r.strict_ok;
  return j;
}

}  // namespace planeshape
