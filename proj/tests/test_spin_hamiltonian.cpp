#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kanesi/jacobi.hpp"
#include "kanesi/spin_hamiltonian.hpp"
#include "kanesi/spin_spectrum.hpp"

using namespace kanesi;

namespace {

std::vector<double> spectrum(const SpinParams& p) {
  std::vector<double> e;
  for (const auto& b : block_decompose(build_hamiltonian(p))) {
    const auto v = eigensolve_symmetric(b.matrix).values;
    e.insert(e.end(), v.begin(), v.end());
  }
  std::sort(e.begin(), e.end());
  return e;
}

int swap_sites(int index) {
  const auto s = basis_state(index);
  return basis_index(s.Mb2, s.Ma2, s.mb2, s.ma2);
}

}  // namespace

TEST_SUITE("spin_hamiltonian") {
  TEST_CASE("basis labels") {
    const auto first = basis_state(1), last = basis_state(16);
    CHECK((first.Ma2 == 1 && first.Mb2 == 1 && first.ma2 == 1 && first.mb2 == 1));
    CHECK((last.Ma2 == -1 && last.Mb2 == -1 && last.ma2 == -1 && last.mb2 == -1));
    const auto s10 = basis_state(10);  // down up up down
    CHECK((s10.Ma2 == -1 && s10.Mb2 == 1 && s10.ma2 == 1 && s10.mb2 == -1));
    for (int i = 1; i <= 16; ++i) {
      const auto s = basis_state(i);
      CHECK(basis_index(s.Ma2, s.Mb2, s.ma2, s.mb2) == i);
    }
    CHECK_THROWS(basis_state(0));
    CHECK_THROWS(basis_state(17));
  }

  TEST_CASE("hyperfine part, selected entries") {
    const double mu = 0.01, aa = 0.3, ab = 0.4;
    const auto h = hyperfine_hamiltonian<double>(mu, aa, ab);
    CHECK(h(0, 0) == doctest::Approx(-mu + (aa + ab) / 4));
    CHECK(h(15, 15) == doctest::Approx(mu + (aa + ab) / 4));
    CHECK(h(4, 1) == doctest::Approx(ab / 2));
    CHECK(h(14, 11) == doctest::Approx(ab / 2));
    CHECK(h(8, 2) == doctest::Approx(aa / 2));
    CHECK(h(13, 7) == doctest::Approx(aa / 2));
  }

  TEST_CASE("exactly symmetric with the |1> entry by hand") {
    const SpinParams p{0.002, 0.3, 0.4, 1.3};
    const auto H = build_hamiltonian(p);
    CHECK(H == H.transpose());
    CHECK(H(0, 0) == doctest::Approx(p.beta + 0.25 - p.mu + (p.alpha_a + p.alpha_b) / 4));
  }

  TEST_CASE("block index sets") {
    const auto& sets = block_index_sets();
    CHECK(sets[0] == std::vector<int>{4, 6, 7, 10, 11, 13});
    CHECK(sets[1] == std::vector<int>{2, 3, 5, 9});
    CHECK(sets[2] == std::vector<int>{8, 12, 14, 15});
    CHECK(sets[3] == std::vector<int>{1});
    CHECK(sets[4] == std::vector<int>{16});
    // a <-> b relabelling maps every block onto itself
    for (const auto& s : sets) {
      std::vector<int> swapped;
      for (int i : s) swapped.push_back(swap_sites(i));
      std::sort(swapped.begin(), swapped.end());
      CHECK(swapped == s);
    }
  }

  TEST_CASE("cross-block entries are rejected") {
    auto H = build_hamiltonian(SpinParams{0.0, 0.3, 0.4, 1.0});
    CHECK_NOTHROW(block_decompose(H));
    H(0, 1) = H(1, 0) = 1e-300;
    CHECK_THROWS_AS(block_decompose(H), BlockStructureError);
  }

  TEST_CASE("uncoupled spectrum") {
    for (double beta : {0.5, 2.0}) {
      const auto e = spectrum({0.0, 0.0, 0.0, beta});
      const double want[4] = {-0.75, -beta + 0.25, 0.25, beta + 0.25};
      std::vector<double> sorted(want, want + 4);
      std::sort(sorted.begin(), sorted.end());
      for (int k = 0; k < 16; ++k) CHECK(e[k] == doctest::Approx(sorted[k / 4]).epsilon(1e-13).scale(1.0));
    }
  }

  TEST_CASE("swapping the donors leaves the spectrum unchanged") {
    const auto e1 = spectrum({0.003, 0.3, 0.4, 1.1});
    const auto e2 = spectrum({0.003, 0.4, 0.3, 1.1});
    for (int k = 0; k < 16; ++k) CHECK(e1[k] == doctest::Approx(e2[k]).epsilon(1e-12).scale(1.0));
  }

  TEST_CASE("trace is preserved") {
    const SpinParams p{0.001, 0.3, 0.4, 0.9};
    const auto H = build_hamiltonian(p);
    double tr = 0.0, sum = 0.0;
    for (int i = 0; i < 16; ++i) tr += H(i, i);
    for (double e : spectrum(p)) sum += e;
    CHECK(sum == doctest::Approx(tr).epsilon(1e-12).scale(1.0));
  }

  TEST_CASE("physical parameters") {
    const PhysicalConstants pc;
    const double J = 1e-23, B = 0.5;
    const auto p = SpinParams::from_physical(B, J, 2e-24, 3e-24);
    CHECK(p.beta == doctest::Approx(2 * pc.mu_B * B / J));
    CHECK(p.mu / p.beta == doctest::Approx(nuclear_to_electron_zeeman_ratio()).epsilon(1e-14));
    CHECK(nuclear_to_electron_zeeman_ratio() == doctest::Approx(6.156e-4).epsilon(1e-3));
    CHECK(p.alpha_a == doctest::Approx(0.2));
    CHECK_THROWS_AS(SpinParams::from_physical(B, 0.0, 1e-24, 1e-24), std::invalid_argument);
  }
}
