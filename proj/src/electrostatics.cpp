#include "kanesi/electrostatics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kanesi {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void GateGeometry::validate() const {
  if (!(a > 0.0)) throw std::invalid_argument("gate.a must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("gate.c must be positive");
  if (kind == GateKind::Strip && !(D > a))
    throw std::invalid_argument("gate.D must exceed gate.a for a strip gate");
}

double disc_potential(double rho, double z, double V, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("disc radius must be positive");
  const double a2 = a * a;
  const double u = rho * rho + z * z - a2;
  const double w = std::sqrt(u * u + 4.0 * a2 * z * z);
  if (w == 0.0) throw std::domain_error("disc potential evaluated on the edge ring");
  // u + w cancels badly for u < 0 near the disc plane
  const double denom = u >= 0.0 ? u + w : 4.0 * a2 * z * z / (w - u);
  if (denom == 0.0) return V;
  return 2.0 * V / kPi * std::atan(std::sqrt(2.0 * a2 / denom));
}

FieldCoefficients disc_field_coeffs(double V, double a, double c) {
  const double s = a * a + c * c;
  FieldCoefficients fc;
  fc.E_c = 2.0 * V / kPi * a / s;
  fc.E1_c = 4.0 * V / kPi * a * c / (s * s);
  fc.E2_c = 4.0 * V / kPi * std::numbers::sqrt2 * a * std::pow(c, 4) / std::pow(s, 3.5);
  fc.phi0 = 2.0 * V / kPi * std::atan(a / c);
  fc.shape = TransverseShape::Axial;
  return fc;
}

double disc_radial_curvature(double V, double a, double c) {
  return 0.5 * disc_field_coeffs(V, a, c).E1_c;
}

double strip_potential(double x, double z, double V, double a, double D) {
  const double r = std::hypot(x, z);
  if (r <= a) return V;
  return V * std::log(2.0 * D / r) / std::log(2.0 * D / a);
}

FieldCoefficients strip_field_coeffs_at(double V, double a, double D, double x, double z) {
  const double k = V / std::log(2.0 * D / a);
  const double r2 = x * x + z * z;
  FieldCoefficients fc;
  // phi = k (ln 2D - ln r); grad phi = -k (x, z) / r^2
  fc.E_c = k / std::sqrt(r2);
  fc.E1_c = k * (z * z - x * x) / (r2 * r2);
  fc.E2_c = k * (z * z - x * x) / (r2 * r2);
  fc.phi0 = k * std::log(2.0 * D / std::sqrt(r2));
  fc.shape = TransverseShape::Planar;
  return fc;
}

FieldCoefficients strip_field_coeffs(double V, double a, double c, double D) {
  return strip_field_coeffs_at(V, a, D, 0.0, c);
}

FieldCoefficients field_coeffs(const GateGeometry& gate, double V) {
  gate.validate();
  if (gate.kind == GateKind::Disc) return disc_field_coeffs(V, gate.a, gate.c);
  return strip_field_coeffs(V, gate.a, gate.c, gate.D);
}

double gate_potential(const GateGeometry& gate, double V, double t, double z) {
  if (gate.kind == GateKind::Disc) return disc_potential(t, z, V, gate.a);
  return strip_potential(t, z, V, gate.a, gate.D);
}

double taylor_check(const GateGeometry& gate, double V, double probe_radius, int order,
                    RadialTerm radial) {
  gate.validate();
  if (order != 1 && order != 2) throw std::invalid_argument("taylor order must be 1 or 2");
  if (probe_radius < 0.0 || probe_radius > 0.2 * gate.c)
    throw std::invalid_argument("probe radius must lie in [0, 0.2 c]");

  const FieldCoefficients fc = field_coeffs(gate, V);
  double transverse = fc.E2_c;
  if (gate.kind == GateKind::Disc && radial == RadialTerm::Harmonic)
    transverse = disc_radial_curvature(V, gate.a, gate.c);

  constexpr int kRings = 4;
  constexpr int kAngles = 16;
  double worst = 0.0;
  for (int ring = 1; ring <= kRings; ++ring) {
    const double r = probe_radius * ring / kRings;
    for (int k = 0; k < kAngles; ++k) {
      const double theta = 2.0 * kPi * k / kAngles;
      const double dz = r * std::cos(theta);
      const double t = r * std::sin(theta);
      double approx = fc.phi0 - fc.E_c * dz;
      if (order == 2) approx += 0.5 * fc.E1_c * dz * dz - 0.5 * transverse * t * t;
      const double exact = gate_potential(gate, V, std::abs(t), gate.c + dz);
      worst = std::max(worst, std::abs(exact - approx));
    }
  }
  return worst;
}

}  // namespace kanesi
