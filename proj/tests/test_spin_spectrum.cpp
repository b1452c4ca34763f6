#include <doctest.h>

#include <cmath>

#include "kanesi/spin_spectrum.hpp"

using namespace kanesi;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

// Anticrossings inside the lowest electron manifold (M+m = -1 block, lower
// track carrying T- character at high beta).
std::vector<AnticrossingReport> low_manifold(const std::vector<AnticrossingReport>& all) {
  std::vector<AnticrossingReport> out;
  for (const auto& r : all)
    if (r.beta_star > 0.5 && r.beta_star < 1.5) out.push_back(r);
  return out;
}

}  // namespace

TEST_SUITE("spin_spectrum") {
  TEST_CASE("two anticrossings near beta = 1") {
    const auto sweep = sweep_spectrum_refined(SweepTemplate{0.3, 0.4});
    const auto low = low_manifold(find_anticrossings(sweep));
    REQUIRE(low.size() == 2);
    for (const auto& r : low) {
      CHECK(r.beta_star > 0.8);
      CHECK(r.beta_star < 1.2);
      CHECK(r.min_gap > 0.0);
      CHECK(r.lower_high_beta.label != r.lower_low_beta.label);
    }
  }

  TEST_CASE("no hyperfine coupling, no anticrossing") {
    const auto sweep = sweep_spectrum(SweepTemplate{0.0, 0.0}, default_beta_grid());
    CHECK(low_manifold(find_anticrossings(sweep)).empty());
  }

  TEST_CASE("gaps grow with the hyperfine coupling") {
    double previous = 0.0;
    for (double s : {0.05, 0.1, 0.2}) {
      const auto sweep = sweep_spectrum_refined(SweepTemplate{s, 1.5 * s});
      const auto low = low_manifold(find_anticrossings(sweep));
      REQUIRE(!low.empty());
      double smallest = low[0].min_gap;
      for (const auto& r : low) smallest = std::min(smallest, r.min_gap);
      CHECK(smallest > previous);
      previous = smallest;
    }
  }

  TEST_CASE("adiabatic transfer of the T- states") {
    const auto sweep = sweep_spectrum_refined(SweepTemplate{0.3, 0.4});
    const auto t15 = adiabatic_transfer_trace(sweep, 15);
    CHECK(t15.at_high_beta.label == 15);
    CHECK(t15.at_low_beta.label == 12);
    CHECK(t15.exchanged);
    const auto t13 = adiabatic_transfer_trace(sweep, 13);
    CHECK(t13.at_high_beta.label == 13);
    CHECK(t13.at_low_beta.label == 10);
    CHECK(t13.exchanged);
    const auto t16 = adiabatic_transfer_trace(sweep, 16);
    CHECK(t16.at_low_beta.label == 16);
    CHECK_FALSE(t16.exchanged);
  }

  TEST_CASE("transfer survives a weaker coupling on a wider sweep") {
    const auto sweep = sweep_spectrum_refined(SweepTemplate{0.1, 0.15}, grid(0.3, 3.0, 271));
    const auto t = adiabatic_transfer_trace(sweep, 15);
    CHECK(t.at_low_beta.label == 12);
    CHECK(t.exchanged);
  }

  TEST_CASE("equal couplings leave the entering label ambiguous") {
    // |14> and |15> are degenerate at high field when alpha_a = alpha_b
    const auto sweep = sweep_spectrum(SweepTemplate{0.1, 0.1}, grid(2.5, 3.0, 11));
    CHECK(adiabatic_transfer_trace(sweep, 15).at_high_beta.label_weight == doctest::Approx(0.5).epsilon(0.05));
  }

  TEST_CASE("without coupling the states pass through") {
    const auto sweep = sweep_spectrum(SweepTemplate{0.0, 0.0, MuMode::Fixed, 0.001}, grid(0.3, 3.0, 271));
    const auto t = adiabatic_transfer_trace(sweep, 15);
    CHECK_FALSE(t.exchanged);
  }

  TEST_CASE("grid handling") {
    const auto one = sweep_spectrum(SweepTemplate{0.3, 0.4}, {1.0});
    CHECK(one.beta.size() == 1);
    std::size_t levels = 0;
    for (const auto& b : one.blocks) levels += b.tracks.size();
    CHECK(levels == 16);
    CHECK_THROWS_AS(sweep_spectrum(SweepTemplate{0.3, 0.4}, {1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(sweep_spectrum(SweepTemplate{0.3, 0.4}, {}), std::invalid_argument);
    const auto g = default_beta_grid();
    CHECK(g.size() == 401);
    CHECK(g.front() == doctest::Approx(0.2));
    CHECK(g.back() == doctest::Approx(3.0));
  }

  TEST_CASE("T- quartet is lowest at strong field") {
    // nuclear Zeeman off so the quartet stays degenerate
    const auto levels = level_multiplicities(SweepTemplate{0.0, 0.0, MuMode::Fixed, 0.0}.at(5.0));
    REQUIRE(!levels.empty());
    CHECK(levels.front().first == doctest::Approx(-5.0 + 0.25));
    CHECK(levels.front().second == 4);
  }

  TEST_CASE("strong-field splitting, closed form") {
    const PhysicalConstants pc;
    CHECK(strong_field_gap_reduced(0.0, 5.0) == 0.0);
    CHECK(strong_field_gap_reduced(0.2, 5.0) == doctest::Approx(0.01 * (0.25 - 0.2)));
    CHECK_THROWS_AS(strong_field_gap_reduced(0.2, 1.0), std::domain_error);

    const double J = 1e-24, A = 2e-25;
    const double B5 = 5.0 * J / (2 * pc.mu_B);
    const auto g = strong_field_gap(B5, J, A);
    CHECK(g.energy == doctest::Approx(strong_field_gap_reduced(A / J, 5.0) * J).epsilon(1e-12));
    CHECK(g.frequency == doctest::Approx(g.energy / pc.h));
    CHECK(strong_field_gap(B5, J, 0.0).energy == 0.0);
    CHECK_THROWS_AS(strong_field_gap(0.0, J, A), std::domain_error);
    CHECK_THROWS_AS(strong_field_gap(J / (2 * pc.mu_B), J, A), std::domain_error);
    CHECK_THROWS_AS(strong_field_gap(2.0 * J / (2 * pc.mu_B), J, A), std::domain_error);
  }

  TEST_CASE("strong-field splitting against the exact spectrum") {
    const SweepTemplate tmpl{0.05, 0.05};
    double previous = 1.0;
    for (double beta : {5.0, 10.0}) {
      const double exact = numerical_tminus_splitting(tmpl, beta);
      const double closed = strong_field_gap_reduced(0.05, beta);
      const double rel = std::abs(exact - closed) / closed;
      CHECK(rel < 0.05);
      CHECK(rel < previous);
      previous = rel;
    }
  }
}
