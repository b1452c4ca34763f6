#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kanesi/constants.hpp"
#include "kanesi/electrostatics.hpp"
#include "kanesi/error_budget.hpp"
#include "kanesi/spin_spectrum.hpp"

namespace kanesi::io {

enum class OutputFormat { Csv, Json, Both };

OutputFormat parse_format(const std::string& s);

struct PhysicalSpin {
  double B = 0.0;  // T
  double J = 0.0;  // J
  double A = 0.0;  // J
};

/// Everything a run can be configured with, in SI. Physical quantities are
/// read from unit strings ("10 nm"); dimensionless ones are plain numbers.
struct RunConfig {
  MaterialParams material;
  std::optional<GateGeometry> gate;  // absent when gate.kind is missing
  std::vector<double> voltages;      // V

  PlacementError placement;
  double target = 0.01;
  double line_width = 1.0e4;  // Hz
  std::optional<double> A0_Hz;
  PlacementSensitivity sensitivity;
  std::optional<NullingSearch> nulling;

  SweepTemplate spin;
  std::optional<PhysicalSpin> physical_spin;
  std::vector<double> beta_grid;
  bool refine = true;
  std::vector<double> strong_field_beta;

  std::string out_dir = ".";
  OutputFormat format = OutputFormat::Both;

  /// Throws ConfigError("gate.kind required") when no gate is configured.
  const GateGeometry& require_gate() const;
};

/// Read a JSON config (path may be empty for defaults only), apply
/// `key=value` overrides with dotted keys, validate and convert.
/// Throws ConfigError with the offending key or the JSON line/column.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

/// Same from an in-memory JSON document.
RunConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides,
                       const std::string& origin = "config");

}  // namespace kanesi::io
