#include "qgem/config_io.hpp"

#include "qgem/quantum.hpp"
#include "qgem/scan.hpp"
#include "qgem/units.hpp"

#include <fstream>

namespace qgem {

namespace {

double read_quantity(const nlohmann::json &j, const char *key, Dimension dim,
                     double fallback) {
  const auto it = j.find(key);
  if (it == j.end())
    return fallback;
  if (it->is_number())
    return it->get<double>();
  if (it->is_string())
    return parse_quantity(it->get<std::string>(), dim, key);
  throw ConfigError(ConfigErrorKind::Parse, key,
                    std::string(key) + ": expected a string or number");
}

double read_number(const nlohmann::json &j, const char *key, double fallback) {
  const auto it = j.find(key);
  if (it == j.end())
    return fallback;
  if (!it->is_number())
    throw ConfigError(ConfigErrorKind::Parse, key,
                      std::string(key) + ": expected a number");
  return it->get<double>();
}

} // namespace

ExperimentConfig config_from_json(const nlohmann::json &j,
                                  const ExperimentConfig &defaults) {
  if (!j.is_object())
    throw ConfigError(ConfigErrorKind::Parse, "config",
                      "config: expected a JSON object");
  ExperimentConfig c = defaults;
  c.mass = read_quantity(j, "mass", Dimension::Mass, c.mass);
  c.d_min = read_quantity(j, "d_min", Dimension::Length, c.d_min);
  c.delta_x = read_quantity(j, "delta_x", Dimension::Length, c.delta_x);
  c.tau = read_quantity(j, "tau", Dimension::Time, c.tau);
  c.gamma = read_quantity(j, "gamma", Dimension::Rate, c.gamma);
  if (const auto it = j.find("geometry"); it != j.end()) {
    const auto g = it->is_string() ? parse_geometry(it->get<std::string>())
                                   : std::nullopt;
    if (!g)
      throw ConfigError(ConfigErrorKind::Parse, "geometry",
                        "geometry: expected one of parallel2, linear2, "
                        "parallel3, triangle3");
    c.geometry = *g;
  }
  if (const auto it = j.find("expert"); it != j.end()) {
    if (!it->is_object())
      throw ConfigError(ConfigErrorKind::Parse, "expert",
                        "expert: expected a JSON object");
    c.constants.G = read_number(*it, "G", c.constants.G);
    c.constants.hbar = read_number(*it, "hbar", c.constants.hbar);
  }
  return validate(c);
}

nlohmann::json config_to_json(const ExperimentConfig &c) {
  nlohmann::json j = {
      {"mass", format_quantity(c.mass, Dimension::Mass)},
      {"d_min", format_quantity(c.d_min, Dimension::Length)},
      {"delta_x", format_quantity(c.delta_x, Dimension::Length)},
      {"tau", format_quantity(c.tau, Dimension::Time)},
      {"gamma", format_quantity(c.gamma, Dimension::Rate)},
      {"geometry", std::string(to_string(c.geometry))},
  };
  if (c.constants.G != kCodata.G || c.constants.hbar != kCodata.hbar)
    j["expert"] = {{"G", c.constants.G}, {"hbar", c.constants.hbar}};
  return j;
}

nlohmann::json load_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(ConfigErrorKind::Parse, path,
                      "cannot open \"" + path + "\"");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ConfigError(ConfigErrorKind::Parse, path,
                      path + ": " + e.what());
  }
}

namespace {

void read_axis(const nlohmann::json &j, const char *key, Dimension dim,
               AxisRange &axis) {
  const auto it = j.find(key);
  if (it == j.end())
    return;
  if (!it->is_object())
    throw ConfigError(ConfigErrorKind::Parse, key,
                      std::string(key) + ": expected a JSON object");
  axis.lo = read_quantity(*it, "lo", dim, axis.lo);
  axis.hi = read_quantity(*it, "hi", dim, axis.hi);
  if (const auto p = it->find("points"); p != it->end()) {
    if (!p->is_number_integer())
      throw ConfigError(ConfigErrorKind::Parse, key,
                        std::string(key) + ".points: expected an integer");
    axis.points = p->get<int>();
  }
  if (const auto sc = it->find("scale"); sc != it->end()) {
    const std::string v = sc->is_string() ? sc->get<std::string>() : "";
    if (v != "log" && v != "linear")
      throw ConfigError(ConfigErrorKind::Parse, key,
                        std::string(key) + ".scale: expected log or linear");
    axis.log_scale = v == "log";
  }
}

} // namespace

ScanSpec scan_spec_from_json(const nlohmann::json &j) {
  if (!j.is_object())
    throw ConfigError(ConfigErrorKind::Parse, "spec",
                      "spec: expected a JSON object");
  nlohmann::json base = j;
  base.erase("gamma_range");
  base.erase("delta_x_range");
  base.erase("target_w");
  base.erase("bipartition");
  base.erase("delta_x");
  base.erase("gamma");

  ScanSpec spec;
  spec.base = config_from_json(base);
  read_axis(j, "gamma_range", Dimension::Rate, spec.gamma);
  read_axis(j, "delta_x_range", Dimension::Length, spec.delta_x);
  if (const auto it = j.find("target_w"); it != j.end()) {
    if (!it->is_number())
      throw ConfigError(ConfigErrorKind::Parse, "target_w",
                        "target_w: expected a number");
    spec.target_w = it->get<double>();
  }
  if (const auto it = j.find("bipartition"); it != j.end()) {
    const auto sub =
        it->is_string()
            ? parse_bipartition(it->get<std::string>(),
                                qubit_count(spec.base.geometry))
            : std::nullopt;
    if (!sub)
      throw ConfigError(ConfigErrorKind::Parse, "bipartition",
                        "bipartition: expected e.g. \"13|2\" or a qubit number");
    spec.subsystem = *sub;
  }
  validate(spec);
  return spec;
}

} // namespace qgem
