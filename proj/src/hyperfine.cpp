#include "kanesi/hyperfine.hpp"

#include <cmath>
#include <numbers>

namespace kanesi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double k3pow6 = 729.0;

}  // namespace

double HydrogenicState::operator()(double r) const {
  const double norm = std::pow(a_star, -1.5);
  const double x = r / a_star;
  if (label == Label::S1) return norm / std::sqrt(kPi) * std::exp(-x);
  return norm / (4.0 * std::sqrt(2.0 * kPi)) * (2.0 - x) * std::exp(-0.5 * x);
}

double axial_coupling_coefficient() { return 256.0 * kSqrt2 / k3pow6; }

double transverse_coupling_coefficient(TransverseShape shape, TransverseCoupling coupling) {
  const double axial = coupling == TransverseCoupling::Conventional
                           ? -49.0 * 32.0 / (k3pow6 * kSqrt2)
                           : -1024.0 / (k3pow6 * kSqrt2);
  // <x^2> over s states is half of <rho^2>
  return shape == TransverseShape::Axial ? axial : 0.5 * axial;
}

double matrix_element_2s1s(const FieldCoefficients& fc, const MaterialParams& mat,
                           const PhysicalConstants& pc, TransverseCoupling coupling) {
  const double scale = pc.e * mat.a_star * mat.a_star;
  return scale * (axial_coupling_coefficient() * fc.E1_c +
                  transverse_coupling_coefficient(fc.shape, coupling) * fc.E2_c);
}

double second_order_shift(const FieldCoefficients& fc, const MaterialParams& mat,
                          const PhysicalConstants& pc) {
  return -9.0 * kPi * pc.eps0 * std::pow(mat.a_star, 3) * fc.E_c * fc.E_c / mat.Delta_E;
}

HicShiftBreakdown hic_shift(const FieldCoefficients& fc, const MaterialParams& mat,
                            const PhysicalConstants& pc, TransverseCoupling coupling) {
  const HydrogenicState s1{HydrogenicState::Label::S1, mat.a_star};
  const HydrogenicState s2{HydrogenicState::Label::S2, mat.a_star};
  // first-order admixture dF/F at the nucleus: (dH_2s1s / deltaE) F_2s(0)/F_1s(0)
  const double admixture = matrix_element_2s1s(fc, mat, pc, coupling) /
                           effective_delta_E(mat, pc) * (s2.at_origin() / s1.at_origin());
  HicShiftBreakdown out;
  out.second_order = second_order_shift(fc, mat, pc);
  out.first_order_linear = 2.0 * admixture;
  out.first_order_squared = admixture * admixture;
  out.total = out.second_order + out.first_order_linear + out.first_order_squared;
  return out;
}

HicShiftBreakdown hic_shift(const GateGeometry& gate, double V, const MaterialParams& mat,
                            const PhysicalConstants& pc, TransverseCoupling coupling) {
  return hic_shift(field_coeffs(gate, V), mat, pc, coupling);
}

std::optional<double> HicPolynomial::stationary_voltage() const {
  if (quadratic == 0.0) return std::nullopt;
  return -linear / (2.0 * quadratic);
}

HicPolynomial hic_polynomial(const GateGeometry& gate, const MaterialParams& mat,
                             const PhysicalConstants& pc, TransverseCoupling coupling) {
  const HicShiftBreakdown unit = hic_shift(gate, 1.0, mat, pc, coupling);
  return {unit.first_order_linear, unit.second_order + unit.first_order_squared};
}

}  // namespace kanesi
