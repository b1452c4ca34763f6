#pragma once

#include <optional>
#include <vector>

#include "kanesi/constants.hpp"
#include "kanesi/electrostatics.hpp"
#include "kanesi/hyperfine.hpp"

namespace kanesi {

/// Donor misplacement relative to the nominal site (x = 0, z = c), metres.
struct PlacementError {
  double dx = 0.0;
  double dz = 0.0;
};

/// Correction factors multiplying the nominal field, axial gradient and
/// x^2-coefficient of a strip gate at a displaced donor. All equal 1 at
/// zero displacement.
struct StripBrackets {
  double field = 1.0;
  double axial_gradient = 1.0;
  double radial_gradient = 1.0;
};

/// Throws std::invalid_argument for a disc gate.
StripBrackets strip_sensitivity_derivatives(const GateGeometry& gate, const PlacementError& err);

/// Numeric prefactors of the strip placement-error formula: the quadratic
/// HIC coefficient and the linear gradient coefficient of the calibration
/// geometry c = 2a = 10 nm, D = 100 a.
struct PlacementSensitivity {
  double quadratic = 0.063;  // 1/V^2
  double linear = 0.085;     // 1/V
};

/// Coefficient multiplying dz (1/m).
double depth_coefficient(double a, double c, double V, const PlacementSensitivity& s = {});
/// Coefficient multiplying dx^2 (1/m^2).
double lateral_bracket(double a, double c, double V, const PlacementSensitivity& s = {});
/// Positive root of lateral_bracket in V, if any.
std::optional<double> nulling_voltage(double a, double c, const PlacementSensitivity& s = {});
/// |dz| at which the depth term alone reaches `target`.
double depth_error_for_target(const GateGeometry& gate, double V, double target,
                              const PlacementSensitivity& s = {});

struct VoltageTolerance {
  double dV = 0.0;             // V
  double slope = 0.0;          // d(dA/A)/dV at the working point
  bool quadratic_limited = false;
};

/// Largest gate-voltage error keeping the HIC shift within `line_width`.
/// Uses line_width / (A0 |slope|), or sqrt(line_width / (A0 |quadratic|))
/// when that is smaller (near the stationary "distinguished" voltage).
VoltageTolerance admissible_voltage_error(const HicPolynomial& poly, double V,
                                          double line_width, double A0_Hz);

VoltageTolerance admissible_voltage_error(const GateGeometry& gate, double V, double line_width,
                                          double A0_Hz, const MaterialParams& mat = {},
                                          const PhysicalConstants& pc = {});

struct ErrorBudgetOptions {
  PlacementSensitivity sensitivity;
  double line_width = 1.0e4;  // Hz
  std::optional<double> A0_Hz;  // defaults to hyperfine_constant_A0(material)
  MaterialParams material;
  PhysicalConstants constants;
};

struct ErrorBudgetReport {
  double dA_over_A = 0.0;
  double dz_term = 0.0;
  double dx2_term = 0.0;
  std::optional<double> nulling_V;
  double admissible_dV = 0.0;
  bool dV_quadratic_limited = false;
  /// Same quantity from the strip electrostatics and the HIC pipeline at the
  /// displaced site, with no truncation in dx, dz.
  double recomputed_dA_over_A = 0.0;
  /// dz is not small against the retained terms, so the first-order
  /// truncation in dz is questionable.
  bool ordering_warning = false;
};

/// Placement error budget for a strip gate. Throws std::invalid_argument
/// for disc gates or V < 0.
ErrorBudgetReport relative_hic_error(const GateGeometry& gate, double V, const PlacementError& err,
                                     const ErrorBudgetOptions& opts = {});

/// dA/A(displaced) - dA/A(nominal) from the strip model directly.
double recomputed_relative_hic_error(const GateGeometry& gate, double V, const PlacementError& err,
                                     const MaterialParams& mat = {},
                                     const PhysicalConstants& pc = {});

struct ParameterRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct NullingSearch {
  double target = 0.01;
  ParameterRange a;
  ParameterRange c;
  ParameterRange V;
  double dz = 2.5e-9;
  int grid = 101;
  PlacementSensitivity sensitivity;
};

struct NullingTriple {
  double a = 0.0;
  double c = 0.0;
  double V = 0.0;
  double bracket = 0.0;   // lateral_bracket at the refined root
  double scale = 0.0;     // max |lateral_bracket| over the V range at (a, c)
  double dz_term = 0.0;   // depth term at search.dz
};

/// Grid scan over (a, c) with bisection in V for sign changes of the lateral
/// bracket. Triples whose depth term exceeds the target are dropped.
/// Ordered by |bracket|, then grid order.
std::vector<NullingTriple> find_nulling_parameters(const NullingSearch& search);

}  // namespace kanesi
