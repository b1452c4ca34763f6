#include "kanesi/verify/oracles.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kanesi/hyperfine.hpp"

namespace kanesi::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

double central1(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double central2(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

double derivative1(const std::function<double(double)>& f, double x, double h) {
  return (4.0 * central1(f, x, 0.5 * h) - central1(f, x, h)) / 3.0;
}

double derivative2(const std::function<double(double)>& f, double x, double h) {
  return (4.0 * central2(f, x, 0.5 * h) - central2(f, x, h)) / 3.0;
}

DiscDerivatives disc_derivatives(double V, double a, double c) {
  const double h = 1e-3 * c;
  const auto along_z = [&](double z) { return disc_potential(0.0, z, V, a); };
  const auto along_rho = [&](double rho) { return disc_potential(std::abs(rho), c, V, a); };
  return {-derivative1(along_z, c, h), derivative2(along_z, c, h),
          -derivative2(along_rho, 0.0, h)};
}

double disc_laplacian(double V, double a, double rho, double z, double h) {
  const auto phi = [&](double r, double zz) { return disc_potential(r, zz, V, a); };
  const double p0 = phi(rho, z);
  const double prr = (phi(rho + h, z) - 2.0 * p0 + phi(rho - h, z)) / (h * h);
  const double pr = (phi(rho + h, z) - phi(rho - h, z)) / (2.0 * h);
  const double pzz = (phi(rho, z + h) - 2.0 * p0 + phi(rho, z - h)) / (h * h);
  return prr + pr / rho + pzz;
}

double matrix_element_2s1s_quadrature(const FieldCoefficients& fc, const MaterialParams& mat,
                                      const PhysicalConstants& pc) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const HydrogenicState s1{HydrogenicState::Label::S1, mat.a_star};
  const HydrogenicState s2{HydrogenicState::Label::S2, mat.a_star};
  const bool planar = fc.shape == TransverseShape::Planar;

  // perturbation divided by r^2, as a function of direction
  const auto angular = [&](double cos_t, double azimuth) {
    const double sin2 = 1.0 - cos_t * cos_t;
    const double t2 = planar ? sin2 * std::cos(azimuth) * std::cos(azimuth) : sin2;
    return -0.5 * pc.e * fc.E1_c * cos_t * cos_t + 0.5 * pc.e * fc.E2_c * t2;
  };
  // the perturbation is r^2 times a function of direction, so the angular
  // integral is a common factor of every radial shell
  const double ang = gauss<double, 20>::integrate(
      [&](double cos_t) {
        return gauss<double, 20>::integrate([&](double az) { return angular(cos_t, az); }, 0.0,
                                            2.0 * kPi);
      },
      -1.0, 1.0);
  // radial variable x = r / a*, envelopes scaled to O(1) values
  const double a = mat.a_star, scale = std::pow(a, 1.5);
  const auto shell = [&](double x) {
    return scale * s2(x * a) * scale * s1(x * a) * std::pow(x, 4);
  };
  return a * a * ang * gauss_kronrod<double, 61>::integrate(shell, 0.0, 40.0, 20, 1e-12);
}

double hydrogenic_norm(int n, double a_star) {
  using boost::math::quadrature::gauss_kronrod;
  if (n != 1 && n != 2) throw std::invalid_argument("only 1s and 2s are available");
  const HydrogenicState s{n == 1 ? HydrogenicState::Label::S1 : HydrogenicState::Label::S2, a_star};
  const double scale = std::pow(a_star, 1.5);
  const auto density = [&](double x) {
    const double f = scale * s(x * a_star);
    return 4.0 * kPi * x * x * f * f;
  };
  return gauss_kronrod<double, 61>::integrate(density, 0.0, 80.0, 20, 1e-13);
}

namespace {

/// Householder reduction to tridiagonal form; returns (diagonal, subdiagonal).
std::pair<std::vector<double>, std::vector<double>> tridiagonalize(Matrix<double> a) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = a(k + 1, k) > 0.0 ? -norm : norm;
    std::vector<double> w(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) w[i] = a(i, k);
    w[k + 1] -= alpha;
    double wn = 0.0;
    for (double x : w) wn += x * x;
    wn = std::sqrt(wn);
    if (wn == 0.0) continue;
    for (double& x : w) x /= wn;
    Matrix<double> p = Matrix<double>::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) -= 2.0 * w[i] * w[j];
    a = p * a * p;
  }
  std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = a(i + 1, i);
  return {d, e};
}

int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double lambda) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = d[i] - lambda - (i == 0 ? 0.0 : e[i - 1] * e[i - 1] / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

int count_below(const Matrix<double>& a, double lambda) {
  const auto [d, e] = tridiagonalize(a);
  return sturm_count(d, e, lambda);
}

std::vector<double> eigenvalues_by_bisection(const Matrix<double>& a, double tol) {
  const std::size_t n = a.rows();
  const auto [d, e] = tridiagonalize(a);
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  lo -= 1.0;
  hi += 1.0;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double l = lo, h = hi;
    while (h - l > tol * std::max(1.0, std::abs(l) + std::abs(h))) {
      const double mid = 0.5 * (l + h);
      if (mid == l || mid == h) break;
      if (sturm_count(d, e, mid) > static_cast<int>(k))
        h = mid;
      else
        l = mid;
    }
    out[k] = 0.5 * (l + h);
  }
  return out;
}

std::vector<double> quadratic_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("quadratic fit needs >= 3 points");
  double m[3][4] = {};
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double basis[3] = {1.0, x[k], x[k] * x[k]};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += basis[i] * basis[j];
      m[i][3] += basis[i] * y[k];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace kanesi::oracle
