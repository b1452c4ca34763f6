#include "kanesi/constants.hpp"

#include <numbers>

namespace kanesi {

HyperfineConstant hyperfine_constant_A0(const MaterialParams& mat, const PhysicalConstants& pc) {
  const double energy =
      (2.0 / 3.0) * pc.mu0 * (2.0 * pc.mu_B) * (pc.g_N * pc.mu_N) * mat.psi0_sq;
  return {energy, energy / pc.h};
}

double residual_delta_E(const MaterialParams& mat, const PhysicalConstants& pc) {
  const double coulomb =
      pc.e * pc.e / (4.0 * std::numbers::pi * mat.eps_r * pc.eps0 * mat.a_star);
  return -0.375 * coulomb;
}

double effective_delta_E(const MaterialParams& mat, const PhysicalConstants& pc) {
  return mat.delta_E ? *mat.delta_E : residual_delta_E(mat, pc);
}

namespace units {

double ev_to_joule(double ev, const PhysicalConstants& pc) { return ev * pc.e; }
double joule_to_ev(double joule, const PhysicalConstants& pc) { return joule / pc.e; }
double joule_to_hz(double joule, const PhysicalConstants& pc) { return joule / pc.h; }
double hz_to_joule(double hz, const PhysicalConstants& pc) { return hz * pc.h; }
double joule_to_mhz(double joule, const PhysicalConstants& pc) { return joule / pc.h * 1.0e-6; }
double mhz_to_joule(double mhz, const PhysicalConstants& pc) { return mhz * 1.0e6 * pc.h; }

}  // namespace units

}  // namespace kanesi
