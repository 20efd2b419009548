#pragma once

#include <string>
#include <string_view>

namespace qgem {

enum class Dimension { Mass, Length, Time, Rate };

/// Parses "35 um", "1e-14kg", "3.5e-3 mHz" or a bare SI number.
///
/// The unit prefix is folded into the decimal exponent before conversion, so
/// "35 um" yields the same double as the literal 35e-6. Throws ConfigError
/// (kind Parse) naming `field` when the text or unit is not understood.
double parse_quantity(std::string_view text, Dimension dim,
                      std::string_view field);

/// Shortest round-trip decimal form of an SI value followed by its base unit.
std::string format_quantity(double si_value, Dimension dim);

std::string_view base_unit(Dimension dim) noexcept;

} // namespace qgem
