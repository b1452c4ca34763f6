#pragma once

#include <optional>

#include "kanesi/constants.hpp"
#include "kanesi/electrostatics.hpp"

namespace kanesi {

/// Hydrogenic envelope functions with effective Bohr radius a*.
struct HydrogenicState {
  enum class Label { S1, S2 };

  Label label = Label::S1;
  double a_star = 2.0e-9;

  double operator()(double r) const;
  double at_origin() const { return (*this)(0.0); }
};

/// Which coefficient multiplies e E2_c (a*)^2 in the 2s-1s element.
///  - Conventional: -7^2 2^5 / (3^6 sqrt 2), the usual closed form.
///  - Derived: -2^10 / (3^6 sqrt 2), the exact <2s| rho^2/2 |1s> moment.
/// Planar (strip) transverse terms carry half the axial coefficient.
enum class TransverseCoupling { Conventional, Derived };

double axial_coupling_coefficient();
double transverse_coupling_coefficient(TransverseShape shape, TransverseCoupling coupling);

/// <F_2s| dH |F_1s> in joules. The constant and linear parts of the
/// perturbation drop out by orthogonality and parity.
double matrix_element_2s1s(const FieldCoefficients& fc, const MaterialParams& mat,
                           const PhysicalConstants& pc = {},
                           TransverseCoupling coupling = TransverseCoupling::Conventional);

/// Second-order relative HIC shift -9 pi eps0 (a*)^3 E_c^2 / Delta_E (<= 0).
double second_order_shift(const FieldCoefficients& fc, const MaterialParams& mat,
                          const PhysicalConstants& pc = {});

struct HicShiftBreakdown {
  double second_order = 0.0;
  double first_order_linear = 0.0;
  double first_order_squared = 0.0;
  double total = 0.0;
};

/// Relative HIC shift dA/A from first- and second-order perturbation theory.
HicShiftBreakdown hic_shift(const FieldCoefficients& fc, const MaterialParams& mat,
                            const PhysicalConstants& pc = {},
                            TransverseCoupling coupling = TransverseCoupling::Conventional);

/// dA/A(V) = linear V + quadratic V^2. Exact, because every field
/// coefficient is linear in the gate voltage.
struct HicPolynomial {
  double linear = 0.0;     // 1/V
  double quadratic = 0.0;  // 1/V^2

  double operator()(double V) const { return (linear + quadratic * V) * V; }
  double slope(double V) const { return linear + 2.0 * quadratic * V; }
  /// Voltage where the slope vanishes, if the quadratic term is non-zero.
  std::optional<double> stationary_voltage() const;
};

HicPolynomial hic_polynomial(const GateGeometry& gate, const MaterialParams& mat,
                             const PhysicalConstants& pc = {},
                             TransverseCoupling coupling = TransverseCoupling::Conventional);

/// Convenience: hic_shift(field_coeffs(gate, V), ...).
HicShiftBreakdown hic_shift(const GateGeometry& gate, double V, const MaterialParams& mat,
                            const PhysicalConstants& pc = {},
                            TransverseCoupling coupling = TransverseCoupling::Conventional);

}  // namespace kanesi
