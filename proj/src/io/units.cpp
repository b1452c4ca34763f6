#include "kanesi/io/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "kanesi/constants.hpp"
#include "kanesi/errors.hpp"

namespace kanesi::io {

namespace {

struct UnitEntry {
  std::string_view symbol;
  Dimension dim;
  double factor;  // SI value of one unit
};

const PhysicalConstants kPc{};

// eV conversions use the same rounded elementary charge as the models
const std::array<UnitEntry, 25> kUnits = {{
    {"m", Dimension::Length, 1.0},
    {"cm", Dimension::Length, 1e-2},
    {"mm", Dimension::Length, 1e-3},
    {"um", Dimension::Length, 1e-6},
    {"nm", Dimension::Length, 1e-9},
    {"A", Dimension::Length, 1e-10},
    {"angstrom", Dimension::Length, 1e-10},
    {"V", Dimension::Voltage, 1.0},
    {"mV", Dimension::Voltage, 1e-3},
    {"uV", Dimension::Voltage, 1e-6},
    {"J", Dimension::Energy, 1.0},
    {"eV", Dimension::Energy, kPc.e},
    {"meV", Dimension::Energy, 1e-3 * kPc.e},
    {"ueV", Dimension::Energy, 1e-6 * kPc.e},
    {"neV", Dimension::Energy, 1e-9 * kPc.e},
    {"T", Dimension::MagneticField, 1.0},
    {"mT", Dimension::MagneticField, 1e-3},
    {"Hz", Dimension::Frequency, 1.0},
    {"kHz", Dimension::Frequency, 1e3},
    {"MHz", Dimension::Frequency, 1e6},
    {"GHz", Dimension::Frequency, 1e9},
    {"m^-3", Dimension::NumberDensity, 1.0},
    {"cm^-3", Dimension::NumberDensity, 1e6},
    {"nm^-3", Dimension::NumberDensity, 1e27},
    {"A^-3", Dimension::NumberDensity, 1e30},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string allowed_units(Dimension dim) {
  std::string out;
  for (const auto& u : kUnits)
    if (u.dim == dim) out += (out.empty() ? "" : ", ") + std::string(u.symbol);
  return out;
}

}  // namespace

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::Length: return "length";
    case Dimension::Voltage: return "voltage";
    case Dimension::Energy: return "energy";
    case Dimension::MagneticField: return "magnetic field";
    case Dimension::Frequency: return "frequency";
    case Dimension::NumberDensity: return "number density";
  }
  return "quantity";
}

double parse_quantity(std::string_view text, Dimension dim, const std::string& key) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || !std::isfinite(value))
    throw ConfigError(key + ": cannot read a number from \"" + std::string(text) + "\"");
  const std::string_view unit = trim(std::string_view(end, s.data() + s.size() - end));
  if (unit.empty())
    throw ConfigError(key + ": missing unit in \"" + std::string(text) + "\" (expected " +
                      dimension_name(dim) + ": " + allowed_units(dim) + ")");
  for (const auto& u : kUnits)
    if (u.symbol == unit) {
      if (u.dim != dim)
        throw ConfigError(key + ": unit \"" + std::string(unit) + "\" is a " +
                          dimension_name(u.dim) + ", expected " + dimension_name(dim));
      return value * u.factor;
    }
  throw ConfigError(key + ": unknown unit \"" + std::string(unit) + "\" (allowed " +
                    dimension_name(dim) + " units: " + allowed_units(dim) + ")");
}

}  // namespace kanesi::io
