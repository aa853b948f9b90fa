#pragma once

#include <json.hpp>

#include "planeshape/box_dimension.hpp"
#include "planeshape/conley.hpp"
#include "planeshape/hausdorff.hpp"
#include "planeshape/homeo.hpp"
#include "planeshape/ifs.hpp"
#include "planeshape/shape.hpp"

namespace planeshape {

// JSON views of the library reports. Grids are omitted; callers write them as PGM.
nlohmann::json to_json(const Rect& r);
nlohmann::json to_json(const ConvergenceTrace& t);
nlohmann::json to_json(const ShapeClass& c);
nlohmann::json to_json(const H1Rank& h);
nlohmann::json to_json(const DimensionEstimate& d);
nlohmann::json to_json(const AttractorReport& r);
nlohmann::json to_json(const DichotomyReport& r);
nlohmann::json to_json(const HopfReport& r);
nlohmann::json to_json(const RobustnessReport& r);
nlohmann::json to_json(const ContinuationReport& r);

}  // namespace planeshape
