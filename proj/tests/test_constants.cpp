#include <doctest.h>

#include <cmath>

#include "kanesi/constants.hpp"

using namespace kanesi;

TEST_SUITE("constants") {
  TEST_CASE("contact hyperfine constant at default parameters") {
    // (2/3) mu0 (2 mu_B)(g_N mu_N) psi0^2 / h, evaluated by hand: 1.1514e8 Hz
    const double mu0 = 4e-7 * M_PI;
    const double by_hand = 2.0 / 3.0 * mu0 * 2 * 9.27e-24 * 2.26 * 5.05e-27 * 0.43e30 / 6.62e-34;
    const auto A = hyperfine_constant_A0({});
    CHECK(A.frequency == doctest::Approx(by_hand).epsilon(1e-12));
    CHECK(A.frequency == doctest::Approx(1.15e8).epsilon(0.05));
    CHECK(A.energy == doctest::Approx(A.frequency * 6.62e-34).epsilon(1e-14));
  }

  TEST_CASE("hyperfine constant is linear in the contact density") {
    MaterialParams m;
    m.psi0_sq = 0.0;
    CHECK(hyperfine_constant_A0(m).energy == 0.0);
    MaterialParams d;
    d.psi0_sq *= 2.0;
    CHECK(hyperfine_constant_A0(d).energy ==
          doctest::Approx(2.0 * hyperfine_constant_A0({}).energy).epsilon(1e-15));
  }

  TEST_CASE("1s-2s residual") {
    const double ev = units::joule_to_ev(residual_delta_E({}));
    CHECK(ev == doctest::Approx(-0.023).epsilon(0.05));
    // -(3/8) e / (4 pi eps_r eps0 a*) in eV
    CHECK(ev == doctest::Approx(-0.375 * 1.6e-19 / (4 * M_PI * 11.9 * 8.85e-12 * 2e-9)).epsilon(1e-12));

    MaterialParams half;
    half.eps_r /= 2.0;
    CHECK(residual_delta_E(half) == doctest::Approx(2.0 * residual_delta_E({})).epsilon(1e-14));

    MaterialParams far;
    far.a_star = 1.0;
    CHECK(residual_delta_E(far) < 0.0);
    CHECK(std::abs(residual_delta_E(far)) < 1e-8 * std::abs(residual_delta_E({})));
  }

  TEST_CASE("residual is negative for positive inputs") {
    for (double a : {1e-10, 1e-9, 5e-9})
      for (double eps : {1.0, 11.9, 50.0}) {
        MaterialParams m;
        m.a_star = a;
        m.eps_r = eps;
        CHECK(residual_delta_E(m) < 0.0);
      }
  }

  TEST_CASE("override of the residual") {
    MaterialParams m;
    CHECK(effective_delta_E(m) == residual_delta_E(m));
    m.delta_E = -0.05 * 1.6e-19;
    CHECK(effective_delta_E(m) == *m.delta_E);
  }

  TEST_CASE("unit round trips") {
    for (double ev : {1e-6, 0.04, 1.0, 123.0}) {
      const double j = units::ev_to_joule(ev);
      CHECK(units::joule_to_ev(j) == doctest::Approx(ev).epsilon(1e-12));
      const double mhz = units::joule_to_mhz(j);
      CHECK(units::mhz_to_joule(mhz) == doctest::Approx(j).epsilon(1e-12));
      CHECK(units::hz_to_joule(units::joule_to_hz(j)) == doctest::Approx(j).epsilon(1e-12));
      CHECK(units::joule_to_ev(units::mhz_to_joule(units::joule_to_mhz(units::ev_to_joule(ev)))) ==
            doctest::Approx(ev).epsilon(1e-12));
    }
  }

  TEST_CASE("planck constant is used for frequencies") {
    PhysicalConstants pc;
    CHECK(units::joule_to_hz(pc.h) == doctest::Approx(1.0));
    CHECK(pc.hbar() == doctest::Approx(6.62e-34 / (2 * M_PI)));
  }
}
