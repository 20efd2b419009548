#include "qgem/units.hpp"

#include "qgem/core.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace qgem {

namespace {

struct UnitEntry {
  std::string_view symbol;
  Dimension dim;
  int exponent;
};

// "u" and the micro sign are both accepted for micro.
constexpr std::array kUnits{
    UnitEntry{"kg", Dimension::Mass, 0},
    UnitEntry{"g", Dimension::Mass, -3},
    UnitEntry{"mg", Dimension::Mass, -6},
    UnitEntry{"m", Dimension::Length, 0},
    UnitEntry{"mm", Dimension::Length, -3},
    UnitEntry{"um", Dimension::Length, -6},
    UnitEntry{"\xc2\xb5m", Dimension::Length, -6},
    UnitEntry{"\xce\xbcm", Dimension::Length, -6},
    UnitEntry{"nm", Dimension::Length, -9},
    UnitEntry{"s", Dimension::Time, 0},
    UnitEntry{"ms", Dimension::Time, -3},
    UnitEntry{"us", Dimension::Time, -6},
    UnitEntry{"Hz", Dimension::Rate, 0},
    UnitEntry{"kHz", Dimension::Rate, 3},
    UnitEntry{"mHz", Dimension::Rate, -3},
    UnitEntry{"uHz", Dimension::Rate, -6},
};

[[noreturn]] void parse_error(std::string_view field, std::string_view text,
                              std::string_view why) {
  throw ConfigError(ConfigErrorKind::Parse, std::string(field),
                    std::string(field) + ": cannot parse \"" +
                        std::string(text) + "\": " + std::string(why));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

} // namespace

std::string_view base_unit(Dimension dim) noexcept {
  switch (dim) {
  case Dimension::Mass:
    return "kg";
  case Dimension::Length:
    return "m";
  case Dimension::Time:
    return "s";
  case Dimension::Rate:
    return "Hz";
  }
  return "";
}

double parse_quantity(std::string_view text, Dimension dim,
                      std::string_view field) {
  const std::string_view s = trim(text);
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-'))
    ++i;
  const std::size_t mantissa_begin = i;
  while (i < s.size() && is_digit(s[i]))
    ++i;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i]))
      ++i;
  }
  if (i == mantissa_begin || (i == mantissa_begin + 1 && s[mantissa_begin] == '.'))
    parse_error(field, text, "expected a number");
  const std::string_view mantissa = s.substr(0, i);

  long exponent = 0;
  if (i + 1 < s.size() && (s[i] == 'e' || s[i] == 'E') &&
      (is_digit(s[i + 1]) ||
       ((s[i + 1] == '+' || s[i + 1] == '-') && i + 2 < s.size() &&
        is_digit(s[i + 2])))) {
    ++i;
    const char *first = s.data() + i + (s[i] == '+' ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), exponent);
    if (ec != std::errc{})
      parse_error(field, text, "bad exponent");
    i = static_cast<std::size_t>(ptr - s.data());
  }

  const std::string_view unit = trim(s.substr(i));
  if (!unit.empty()) {
    const UnitEntry *match = nullptr;
    for (const auto &u : kUnits)
      if (u.symbol == unit)
        match = &u;
    if (match == nullptr)
      parse_error(field, text, "unknown unit \"" + std::string(unit) + "\"");
    if (match->dim != dim)
      parse_error(field, text,
                  "wrong dimension, expected a multiple of " +
                      std::string(base_unit(dim)));
    exponent += match->exponent;
  }

  // Rebuild "<mantissa>e<exponent>" so the unit prefix is applied exactly.
  std::string canonical(mantissa);
  canonical += 'e';
  canonical += std::to_string(exponent);
  char *end = nullptr;
  const double value = std::strtod(canonical.c_str(), &end);
  if (end != canonical.c_str() + canonical.size() || !std::isfinite(value))
    parse_error(field, text, "value out of range");
  return value;
}

std::string format_quantity(double si_value, Dimension dim) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), si_value);
  std::string out(buf.data(), ec == std::errc{} ? ptr : buf.data());
  out += ' ';
  out += base_unit(dim);
  return out;
}

} // namespace qgem
