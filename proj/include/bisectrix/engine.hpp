#pragma once

#include <string>

#include <json.hpp>

namespace bisectrix::engine {

/// Execute one request {"command": ..., "params": {...}} and produce the
/// report object. Throws bisectrix::Error on domain errors and
/// bisectrix::Error(BadInput) on schema violations.
nlohmann::json run(const nlohmann::json& request);

/// Render a geometric report as a standalone SVG document. Deterministic:
/// identical input yields identical bytes.
std::string render_svg(const nlohmann::json& report);

}  // namespace bisectrix::engine
