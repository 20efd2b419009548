#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qgem {

// CODATA 2018 values. Fixed so witness thresholds reproduce bit-for-bit.
struct PhysicalConstants {
  double G = 6.67430e-11;        // m^3 kg^-1 s^-2
  double hbar = 1.054571817e-34; // J s

  bool operator==(const PhysicalConstants &) const = default;
};

inline constexpr PhysicalConstants kCodata{};

enum class Geometry : std::uint8_t { Parallel2, Linear2, Parallel3, Triangle3 };

int qubit_count(Geometry g) noexcept;
std::string_view to_string(Geometry g) noexcept;
std::optional<Geometry> parse_geometry(std::string_view name) noexcept;

/// One experimental setting, always in SI units.
struct ExperimentConfig {
  double mass = 0.0;    ///< kg
  double d_min = 0.0;   ///< m, closest approach of the two |up> branches
  double delta_x = 0.0; ///< m, superposition width
  double tau = 0.0;     ///< s, hold time
  double gamma = 0.0;   ///< Hz, total decoherence rate
  Geometry geometry = Geometry::Parallel2;
  /// Only set through the "expert" config section.
  PhysicalConstants constants = kCodata;

  bool operator==(const ExperimentConfig &) const = default;
};

enum class ConfigErrorKind {
  NonPositiveMass,
  NonPositiveSeparation,
  NegativeWidth,
  NonPositiveTime,
  NegativeDecoherence,
  NonPositiveConstant,
  Parse,
};

class ConfigError : public std::invalid_argument {
public:
  ConfigError(ConfigErrorKind kind, std::string field, const std::string &what)
      : std::invalid_argument(what), kind_(kind), field_(std::move(field)) {}

  ConfigErrorKind kind() const noexcept { return kind_; }
  const std::string &field() const noexcept { return field_; }

private:
  ConfigErrorKind kind_;
  std::string field_;
};

/// Returns the config unchanged, or throws ConfigError naming the bad field.
const ExperimentConfig &validate(const ExperimentConfig &config);

} // namespace qgem
