#pragma once

#include <string>
#include <string_view>

namespace kanesi::io {

enum class Dimension { Length, Voltage, Energy, MagneticField, Frequency, NumberDensity };

const char* dimension_name(Dimension d);

/// Parse "<number> <unit>" into SI. Units come from a fixed whitelist per
/// dimension (nm, V, eV, T, MHz, cm^-3, ...); anything else, including a bare
/// number, throws ConfigError mentioning `key`.
double parse_quantity(std::string_view text, Dimension dim, const std::string& key);

}  // namespace kanesi::io
