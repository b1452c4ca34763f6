#include "kanesi/error_budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kanesi {

StripBrackets strip_sensitivity_derivatives(const GateGeometry& gate, const PlacementError& err) {
  if (gate.kind != GateKind::Strip)
    throw std::invalid_argument("strip sensitivity requires a strip gate");
  const double a2 = gate.a * gate.a;
  const double c = gate.c;
  const double c2 = c * c;
  const double s = a2 + c2;
  const double dx2 = err.dx * err.dx;
  const double dz = err.dz;

  StripBrackets b;
  b.field = 1.0 - dz / (c * (1.0 + a2 / c2)) - dx2 * (2.0 * c2 - a2) / (2.0 * s * s);
  b.axial_gradient = 1.0 - dz * (2.0 * c2 - a2) / (c * s) -
                     dx2 * (4.0 * c2 * c2 + a2 * c2 - a2 * a2) / (2.0 * c2 * s * s);
  b.radial_gradient = 1.0 - dz * (2.0 * c2 - a2) / (c * s) - dx2 * (2.0 * c2 + a2) / (2.0 * s * s);
  return b;
}

double depth_coefficient(double a, double c, double V, const PlacementSensitivity& s) {
  return s.quadratic * V * V * 2.0 * c / (a * a + c * c);
}

double lateral_bracket(double a, double c, double V, const PlacementSensitivity& s) {
  const double a2 = a * a;
  const double c2 = c * c;
  const double sum2 = (a2 + c2) * (a2 + c2);
  return s.quadratic * V * V * (2.0 * c2 - a2) / sum2 -
         s.linear * V * (2.0 * c2 * c2 - a2 * a2) / (2.0 * c2 * sum2);
}

std::optional<double> nulling_voltage(double a, double c, const PlacementSensitivity& s) {
  const double a2 = a * a;
  const double c2 = c * c;
  // a = c sqrt(2) kills the V^2 term; treat round-off there as the pole too
  const double pole = 2.0 * c2 - a2;
  if (std::abs(pole) <= 8.0 * std::numeric_limits<double>::epsilon() * 2.0 * c2) return std::nullopt;
  const double denom = s.quadratic * 2.0 * c2 * pole;
  if (denom == 0.0) return std::nullopt;
  const double v = s.linear * (2.0 * c2 * c2 - a2 * a2) / denom;
  if (!(v > 0.0)) return std::nullopt;
  return v;
}

double depth_error_for_target(const GateGeometry& gate, double V, double target,
                              const PlacementSensitivity& s) {
  const double k = depth_coefficient(gate.a, gate.c, V, s);
  if (k == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(target / k);
}

VoltageTolerance admissible_voltage_error(const HicPolynomial& poly, double V, double line_width,
                                          double A0_Hz) {
  if (line_width < 0.0) throw std::invalid_argument("line width must be non-negative");
  if (!(A0_Hz > 0.0)) throw std::invalid_argument("A0 must be positive");
  VoltageTolerance out;
  out.slope = poly.slope(V);
  const double r = line_width / A0_Hz;
  const double linear_bound =
      out.slope == 0.0 ? std::numeric_limits<double>::infinity() : r / std::abs(out.slope);
  const double quadratic_bound = poly.quadratic == 0.0
                                     ? std::numeric_limits<double>::infinity()
                                     : std::sqrt(r / std::abs(poly.quadratic));
  out.quadratic_limited = quadratic_bound < linear_bound;
  out.dV = std::min(linear_bound, quadratic_bound);
  return out;
}

VoltageTolerance admissible_voltage_error(const GateGeometry& gate, double V, double line_width,
                                          double A0_Hz, const MaterialParams& mat,
                                          const PhysicalConstants& pc) {
  return admissible_voltage_error(hic_polynomial(gate, mat, pc), V, line_width, A0_Hz);
}

double recomputed_relative_hic_error(const GateGeometry& gate, double V, const PlacementError& err,
                                     const MaterialParams& mat, const PhysicalConstants& pc) {
  gate.validate();
  if (gate.kind != GateKind::Strip)
    throw std::invalid_argument("placement error budget requires a strip gate");
  const FieldCoefficients nominal = strip_field_coeffs_at(V, gate.a, gate.D, 0.0, gate.c);
  const FieldCoefficients displaced =
      strip_field_coeffs_at(V, gate.a, gate.D, err.dx, gate.c + err.dz);
  return hic_shift(displaced, mat, pc).total - hic_shift(nominal, mat, pc).total;
}

ErrorBudgetReport relative_hic_error(const GateGeometry& gate, double V, const PlacementError& err,
                                     const ErrorBudgetOptions& opts) {
  gate.validate();
  if (gate.kind != GateKind::Strip)
    throw std::invalid_argument("placement error budget requires a strip gate");
  if (V < 0.0) throw std::invalid_argument("gate voltage must be non-negative");

  const auto& s = opts.sensitivity;
  ErrorBudgetReport rep;
  rep.dz_term = err.dz * depth_coefficient(gate.a, gate.c, V, s);
  rep.dx2_term = err.dx * err.dx * lateral_bracket(gate.a, gate.c, V, s);
  rep.dA_over_A = rep.dz_term + rep.dx2_term;
  rep.nulling_V = nulling_voltage(gate.a, gate.c, s);

  const double A0 = opts.A0_Hz ? *opts.A0_Hz
                               : hyperfine_constant_A0(opts.material, opts.constants).frequency;
  const VoltageTolerance tol = admissible_voltage_error(
      hic_polynomial(gate, opts.material, opts.constants), V, opts.line_width, A0);
  rep.admissible_dV = tol.dV;
  rep.dV_quadratic_limited = tol.quadratic_limited;

  rep.recomputed_dA_over_A =
      recomputed_relative_hic_error(gate, V, err, opts.material, opts.constants);

  const double zr = std::abs(err.dz) / gate.c;
  const double xr = err.dx / gate.c;
  rep.ordering_warning = zr * zr > 0.1 * (zr + xr * xr);
  return rep;
}

namespace {

std::vector<double> linspace(const ParameterRange& r, int n) {
  if (r.hi == r.lo || n == 1) return {r.lo};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = r.lo + (r.hi - r.lo) * i / (n - 1);
  return out;
}

template <class F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-12 * std::max(std::abs(lo), std::abs(hi))) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<NullingTriple> find_nulling_parameters(const NullingSearch& search) {
  if (search.grid < 2) throw std::invalid_argument("nulling search grid needs >= 2 points");
  for (const auto* r : {&search.a, &search.c, &search.V})
    if (r->hi < r->lo) throw std::invalid_argument("nulling search range is reversed");

  const auto as = linspace(search.a, search.grid);
  const auto cs = linspace(search.c, search.grid);
  const auto vs = linspace(search.V, search.grid);

  std::vector<NullingTriple> found;
  for (double a : as) {
    for (double c : cs) {
      if (!(a > 0.0) || !(c > 0.0)) continue;
      auto f = [&](double v) { return lateral_bracket(a, c, v, search.sensitivity); };
      double scale = 0.0;
      for (double v : vs) scale = std::max(scale, std::abs(f(v)));

      auto emit = [&](double v) {
        NullingTriple t{a, c, v, f(v), scale,
                        search.dz * depth_coefficient(a, c, v, search.sensitivity)};
        if (std::abs(t.dz_term) <= search.target) found.push_back(t);
      };
      for (std::size_t i = 0; i < vs.size(); ++i) {
        // V = 0 is the trivial zero-field root
        if (!(vs[i] > 0.0)) continue;
        const double fi = f(vs[i]);
        if (fi == 0.0) {
          emit(vs[i]);
          continue;
        }
        if (i + 1 < vs.size()) {
          const double fn = f(vs[i + 1]);
          if (fn != 0.0 && (fi < 0.0) != (fn < 0.0)) emit(bisect(f, vs[i], vs[i + 1]));
        }
      }
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const NullingTriple& l, const NullingTriple& r) {
    return std::abs(l.bracket) < std::abs(r.bracket);
  });
  return found;
}

}  // namespace kanesi
