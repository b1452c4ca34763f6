#pragma once

namespace kanesi {

enum class GateKind { Disc, Strip };

/// A-gate geometry. `a` is the disc radius or the strip half-width, `c` the
/// donor depth below the gate, `D` the strip-to-substrate distance (strip only).
struct GateGeometry {
  GateKind kind = GateKind::Disc;
  double a = 0.0;
  double c = 0.0;
  double D = 0.0;

  static GateGeometry disc(double a, double c) { return {GateKind::Disc, a, c, 0.0}; }
  static GateGeometry strip(double a, double c, double D) { return {GateKind::Strip, a, c, D}; }

  /// Throws std::invalid_argument unless a > 0, c > 0 and (strip) D > a.
  void validate() const;
};

/// Shape of the quadratic transverse term of the potential around the donor:
/// rho^2 under a disc, x^2 under a strip.
enum class TransverseShape { Axial, Planar };

/// Local expansion of the gate potential around the donor site,
///   phi ~ phi0 - E_c dz + E1_c/2 dz^2 - E2_c/2 t^2,
/// with t the transverse coordinate. All members scale linearly with V.
struct FieldCoefficients {
  double E_c = 0.0;   // V/m
  double E1_c = 0.0;  // V/m^2, axial gradient
  double E2_c = 0.0;  // V/m^2, radial gradient
  double phi0 = 0.0;  // V
  TransverseShape shape = TransverseShape::Axial;
};

/// Potential of a charged conducting disc of radius a held at V, at
/// cylindrical (rho, z). Throws std::domain_error on the edge ring.
double disc_potential(double rho, double z, double V, double a);

/// Closed-form on-axis coefficients at depth c. E2_c is the conventional
/// expression (4V/pi) sqrt(2) a c^4 / (a^2+c^2)^{7/2}.
FieldCoefficients disc_field_coeffs(double V, double a, double c);

/// True radial curvature coefficient of disc_potential on axis, E1_c / 2
/// (the potential is harmonic).
double disc_radial_curvature(double V, double a, double c);

/// Strip electrode modelled as a line charge referenced to a ground plane:
/// phi(r) = V ln(2D/r) / ln(2D/a), r = sqrt(x^2 + z^2) for r >= a. Inside
/// the strip radius the potential is clamped to V.
double strip_potential(double x, double z, double V, double a, double D);

/// Exact derivatives of strip_potential at (0, c).
FieldCoefficients strip_field_coeffs(double V, double a, double c, double D);

/// Strip coefficients at an arbitrary site (x, z). E_c is the magnitude of
/// the full field vector, E1_c = d2phi/dz2, E2_c = -d2phi/dx2.
FieldCoefficients strip_field_coeffs_at(double V, double a, double D, double x, double z);

/// Dispatch on gate kind.
FieldCoefficients field_coeffs(const GateGeometry& gate, double V);

/// Closed-form potential of either gate kind; `t` is rho (disc) or x (strip).
double gate_potential(const GateGeometry& gate, double V, double t, double z);

enum class RadialTerm { Harmonic, Conventional };

/// Maximum |phi - phi_taylor| over a polar probe grid of radius `probe_radius`
/// around the donor. `order` is 1 (linear) or 2 (quadratic expansion).
/// Throws std::invalid_argument for probe_radius > 0.2 c or order outside {1, 2}.
double taylor_check(const GateGeometry& gate, double V, double probe_radius, int order,
                    RadialTerm radial = RadialTerm::Harmonic);

}  // namespace kanesi
