#pragma once

#include "qgem/core.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace qgem {

/// Reads the JSON config schema:
///   {"mass": "1e-14 kg", "d_min": "35 um", "delta_x": "5 um", "tau": "1 s",
///    "gamma": "1e-3 Hz", "geometry": "parallel2"}
/// plus an optional {"expert": {"G": ..., "hbar": ...}} override section.
/// Missing fields fall back to `defaults`. The result is validated.
ExperimentConfig config_from_json(const nlohmann::json &j,
                                  const ExperimentConfig &defaults = {});

/// Inverse of config_from_json. Values are SI with shortest round-trip digits;
/// the expert section is written only when the constants differ from CODATA.
nlohmann::json config_to_json(const ExperimentConfig &config);

nlohmann::json load_json_file(const std::string &path);

} // namespace qgem

namespace qgem {

struct ScanSpec;

/// Scan spec: the config keys (delta_x and gamma are ignored) plus
///   "gamma_range":   {"lo": "1e-4 Hz", "hi": "1e-1 Hz", "points": 200,
///                     "scale": "log" | "linear"}
///   "delta_x_range": {"lo": "0 um", "hi": "20 um", "points": 400}
///   "target_w": 0, "bipartition": "13|2"
/// Absent ranges keep the ScanSpec defaults.
ScanSpec scan_spec_from_json(const nlohmann::json &j);

} // namespace qgem
