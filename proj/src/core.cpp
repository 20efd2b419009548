#include "qgem/core.hpp"

#include <cmath>
#include <sstream>

namespace qgem {

int qubit_count(Geometry g) noexcept {
  switch (g) {
  case Geometry::Parallel2:
  case Geometry::Linear2:
    return 2;
  case Geometry::Parallel3:
  case Geometry::Triangle3:
    return 3;
  }
  return 0;
}

std::string_view to_string(Geometry g) noexcept {
  switch (g) {
  case Geometry::Parallel2:
    return "parallel2";
  case Geometry::Linear2:
    return "linear2";
  case Geometry::Parallel3:
    return "parallel3";
  case Geometry::Triangle3:
    return "triangle3";
  }
  return "unknown";
}

std::optional<Geometry> parse_geometry(std::string_view name) noexcept {
  for (auto g : {Geometry::Parallel2, Geometry::Linear2, Geometry::Parallel3,
                 Geometry::Triangle3})
    if (to_string(g) == name)
      return g;
  return std::nullopt;
}

namespace {

[[noreturn]] void reject(ConfigErrorKind kind, const char *field,
                         const char *rule, double value) {
  std::ostringstream os;
  os.precision(17);
  os << field << " must be " << rule << " (got " << value << ")";
  throw ConfigError(kind, field, os.str());
}

} // namespace

const ExperimentConfig &validate(const ExperimentConfig &c) {
  // NaN fails every comparison, so each check is written to reject it.
  if (!(c.mass > 0.0) || !std::isfinite(c.mass))
    reject(ConfigErrorKind::NonPositiveMass, "mass", "> 0", c.mass);
  if (!(c.d_min > 0.0) || !std::isfinite(c.d_min))
    reject(ConfigErrorKind::NonPositiveSeparation, "d_min", "> 0", c.d_min);
  if (!(c.delta_x >= 0.0) || !std::isfinite(c.delta_x))
    reject(ConfigErrorKind::NegativeWidth, "delta_x", ">= 0", c.delta_x);
  if (!(c.tau > 0.0) || !std::isfinite(c.tau))
    reject(ConfigErrorKind::NonPositiveTime, "tau", "> 0", c.tau);
  if (!(c.gamma >= 0.0) || !std::isfinite(c.gamma))
    reject(ConfigErrorKind::NegativeDecoherence, "gamma", ">= 0", c.gamma);
  if (!(c.constants.G > 0.0))
    reject(ConfigErrorKind::NonPositiveConstant, "G", "> 0", c.constants.G);
  if (!(c.constants.hbar > 0.0))
    reject(ConfigErrorKind::NonPositiveConstant, "hbar", "> 0",
           c.constants.hbar);
  return c;
}

} // namespace qgem
