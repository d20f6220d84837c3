// SPDX-License-Identifier: Apache-2.0
//
// JSON and SVG encodings. Output JSON is canonical: keys sorted, no
// whitespace, doubles with 17 significant digits.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "stit/driving_measure.hpp"
#include "stit/geometry.hpp"
#include "stit/stit_process.hpp"

namespace stit {

using Json = nlohmann::json;

std::string format_double(double x);
std::string canonical_dump(const Json& j);
std::uint64_t fnv1a64(std::string_view bytes);
/// Hex digest of the canonical form.
std::string config_hash(const Json& j);

Json to_json(const Polytope& p);
Json to_json(const PointSet& p);
Json to_json(const Hyperplane& h);
Json to_json(const DrivingMeasure& m);
Json to_json(const CellTree& tree);
Json to_json(const Tessellation& t);

/// Parsers throw ConfigError on malformed or unknown fields.
Polytope polytope_from_json(const Json& j);
DrivingMeasure measure_from_json(const Json& j);

/// 2-D rendering, 1 unit = 100 px, stroke width 1.
std::string to_svg(const Tessellation& t);

}  // namespace stit
