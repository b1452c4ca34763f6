#pragma once

#include <functional>
#include <vector>

#include "kanesi/constants.hpp"
#include "kanesi/electrostatics.hpp"
#include "kanesi/matrix.hpp"

// Independent reference computations used to check the closed forms and the
// eigensolver. Nothing in the core library depends on these.
namespace kanesi::oracle {

/// df/dx by central differences with one Richardson step (h^2 -> h^4).
double derivative1(const std::function<double(double)>& f, double x, double h);
/// d2f/dx2 by central differences with one Richardson step.
double derivative2(const std::function<double(double)>& f, double x, double h);

/// -dphi/dz, d2phi/dz2 and -d2phi/drho2 of disc_potential at (0, c),
/// step h = 1e-3 c.
struct DiscDerivatives {
  double field = 0.0;
  double axial_curvature = 0.0;
  double radial_curvature = 0.0;
};
DiscDerivatives disc_derivatives(double V, double a, double c);

/// Five-point discrete Laplacian of disc_potential in cylindrical
/// coordinates at (rho, z), rho > 0.
double disc_laplacian(double V, double a, double rho, double z, double h);

/// 3-D quadrature of <F_2s| -e E1/2 z^2 + e E2/2 t^2 |F_1s> with t^2 = rho^2
/// (axial) or x^2 (planar): adaptive Gauss-Kronrod in r on [0, 40 a*],
/// Gauss-Legendre in cos(theta) and in the azimuth.
double matrix_element_2s1s_quadrature(const FieldCoefficients& fc, const MaterialParams& mat,
                                      const PhysicalConstants& pc = {});

/// Integral of |F|^2 over all space for the 1s (n = 1) or 2s (n = 2) state.
double hydrogenic_norm(int n, double a_star);

/// Eigenvalues of a symmetric matrix by bisection on the inertia of
/// A - lambda I (LDL^T sign count). Ascending.
std::vector<double> eigenvalues_by_bisection(const Matrix<double>& a, double tol = 1e-13);

/// Number of eigenvalues strictly below lambda.
int count_below(const Matrix<double>& a, double lambda);

/// Least-squares coefficients c0 + c1 x + c2 x^2.
std::vector<double> quadratic_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace kanesi::oracle
