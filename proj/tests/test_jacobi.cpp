#include <doctest.h>

#include <cmath>
#include <random>

#include "kanesi/errors.hpp"
#include "kanesi/jacobi.hpp"
#include "kanesi/spin_hamiltonian.hpp"
#include "kanesi/spin_spectrum.hpp"
#include "kanesi/verify/oracles.hpp"

using namespace kanesi;

namespace {

Matrix<double> random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

double norm(const Matrix<double>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

void check_eigensystem(const Matrix<double>& a, const EigenSystem& e) {
  const std::size_t n = a.rows();
  const auto av = a * e.vectors;
  const auto gram = e.vectors.transpose() * e.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    if (k) CHECK(e.values[k - 1] <= e.values[k]);
    double res = 0.0, big = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      res += std::pow(av(i, k) - e.values[k] * e.vectors(i, k), 2);
      if (std::abs(e.vectors(i, k)) > big + 1e-12) big = std::abs(e.vectors(i, k)), arg = i;
    }
    CHECK(std::sqrt(res) <= 1e-10 * std::max(1.0, norm(a)));
    CHECK(e.vectors(arg, k) > 0.0);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(gram(k, j) - (k == j ? 1.0 : 0.0)) < 1e-10);
  }
}

}  // namespace

TEST_SUITE("jacobi") {
  TEST_CASE("1x1 and 2x2") {
    Matrix<double> one(1, 1);
    one(0, 0) = -2.5;
    const auto e1 = eigensolve_symmetric(one);
    CHECK(e1.values[0] == -2.5);
    CHECK(e1.vectors(0, 0) == 1.0);

    Matrix<double> two(2, 2);
    two(0, 1) = two(1, 0) = 0.7;
    const auto e2 = eigensolve_symmetric(two);
    CHECK(e2.values[0] == doctest::Approx(-0.7).epsilon(1e-15));
    CHECK(e2.values[1] == doctest::Approx(0.7).epsilon(1e-15));
    check_eigensystem(two, e2);
  }

  TEST_CASE("random matrices against the bisection oracle") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {3u, 4u, 6u, 6u, 8u}) {
      const auto a = random_symmetric(n, rng);
      const auto e = eigensolve_symmetric(a);
      const auto ref = oracle::eigenvalues_by_bisection(a);
      for (std::size_t k = 0; k < n; ++k) CHECK(e.values[k] == doctest::Approx(ref[k]).epsilon(1e-10).scale(1.0));
      check_eigensystem(a, e);
    }
  }

  TEST_CASE("spin blocks against the bisection oracle") {
    const SweepTemplate tmpl{0.3, 0.4};
    for (const auto& b : block_decompose(build_hamiltonian(tmpl.at(1.0)))) {
      const auto e = eigensolve_symmetric(b.matrix);
      const auto ref = oracle::eigenvalues_by_bisection(b.matrix);
      for (std::size_t k = 0; k < ref.size(); ++k)
        CHECK(e.values[k] == doctest::Approx(ref[k]).epsilon(1e-10).scale(1.0));
      check_eigensystem(b.matrix, e);
    }
  }

  TEST_CASE("degenerate spectrum keeps an orthonormal basis") {
    Matrix<double> a = Matrix<double>::identity(4);
    a(0, 3) = a(3, 0) = 1.0;
    a(1, 2) = a(2, 1) = 1.0;
    const auto e = eigensolve_symmetric(a);
    CHECK(e.values[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(e.values[3] == doctest::Approx(2.0));
    check_eigensystem(a, e);
  }

  TEST_CASE("inertia count") {
    std::mt19937_64 rng(3);
    const auto a = random_symmetric(6, rng);
    const auto ref = oracle::eigenvalues_by_bisection(a);
    CHECK(oracle::count_below(a, ref[0] - 1e-6) == 0);
    CHECK(oracle::count_below(a, 0.5 * (ref[2] + ref[3])) == 3);
    CHECK(oracle::count_below(a, ref[5] + 1e-6) == 6);
  }

  TEST_CASE("sweep budget") {
    std::mt19937_64 rng(5);
    const auto a = random_symmetric(6, rng);
    CHECK_THROWS_AS(eigensolve_symmetric(a, 1e-15, 1), ConvergenceError);
    CHECK(eigensolve_symmetric(a).sweeps < 50);
  }
}
