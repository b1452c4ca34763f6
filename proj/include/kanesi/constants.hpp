#pragma once

#include <numbers>
#include <optional>

namespace kanesi {

/// Physical constants at the rounded values used throughout the donor model.
/// These are deliberately not CODATA values; results are calibrated against them.
struct PhysicalConstants {
  double mu_B = 9.27e-24;                   // J/T
  double mu_N = 5.05e-27;                   // J/T
  double g_N = 2.26;                        // 31P nuclear g-factor
  double e = 1.6e-19;                       // C
  double eps0 = 8.85e-12;                   // F/m
  double mu0 = 4.0e-7 * std::numbers::pi;   // T m / A
  double h = 6.62e-34;                      // J s
  double m_e = 9.1e-31;                     // kg

  double hbar() const { return h / (2.0 * std::numbers::pi); }
};

/// Silicon host and 31P donor parameters (SI).
struct MaterialParams {
  double a_star = 2.0e-9;        // effective Bohr radius, m
  double eps_r = 11.9;           // silicon dielectric constant
  double psi0_sq = 0.43e30;      // |Psi_0(0)|^2 at zero gate bias, m^-3
  double Delta_E = 0.04 * 1.6e-19;  // mean excitation energy of the second-order sum, J
  double m_star = 0.31 * 9.1e-31;   // kg
  /// 1s-2s energy residual override (J, negative). Computed from the
  /// hydrogenic formula when absent.
  std::optional<double> delta_E;
};

struct HyperfineConstant {
  double energy = 0.0;     // J
  double frequency = 0.0;  // Hz (energy / h)
};

/// Contact hyperfine constant A = (2/3) mu0 (2 mu_B) (g_N mu_N) |Psi_0(0)|^2.
HyperfineConstant hyperfine_constant_A0(const MaterialParams& mat,
                                        const PhysicalConstants& pc = {});

/// Hydrogenic 1s-2s residual -(3/8) e^2 / (4 pi eps_r eps0 a*). Always negative.
double residual_delta_E(const MaterialParams& mat, const PhysicalConstants& pc = {});

/// The override in `mat.delta_E` if set, otherwise residual_delta_E().
double effective_delta_E(const MaterialParams& mat, const PhysicalConstants& pc = {});

namespace units {

inline constexpr double nm = 1.0e-9;

double ev_to_joule(double ev, const PhysicalConstants& pc = {});
double joule_to_ev(double joule, const PhysicalConstants& pc = {});
double joule_to_hz(double joule, const PhysicalConstants& pc = {});
double hz_to_joule(double hz, const PhysicalConstants& pc = {});
double joule_to_mhz(double joule, const PhysicalConstants& pc = {});
double mhz_to_joule(double mhz, const PhysicalConstants& pc = {});

}  // namespace units

}  // namespace kanesi
