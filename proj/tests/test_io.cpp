#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "kanesi/errors.hpp"
#include "kanesi/io/config.hpp"
#include "kanesi/io/output.hpp"
#include "kanesi/io/units.hpp"

using namespace kanesi;
using namespace kanesi::io;

TEST_SUITE("io") {
  TEST_CASE("quantities with units") {
    CHECK(parse_quantity("5 nm", Dimension::Length, "k") == doctest::Approx(5e-9));
    CHECK(parse_quantity("12 A", Dimension::Length, "k") == doctest::Approx(1.2e-9));
    CHECK(parse_quantity("-0.5mV", Dimension::Voltage, "k") == doctest::Approx(-5e-4));
    CHECK(parse_quantity("0.04 eV", Dimension::Energy, "k") == doctest::Approx(0.04 * 1.6e-19));
    CHECK(parse_quantity("115 MHz", Dimension::Frequency, "k") == doctest::Approx(1.15e8));
    CHECK(parse_quantity("0.43e30 m^-3", Dimension::NumberDensity, "k") == doctest::Approx(0.43e30));
    CHECK(parse_quantity("0.43 nm^-3", Dimension::NumberDensity, "k") == doctest::Approx(0.43e27));
    CHECK(parse_quantity("200 mT", Dimension::MagneticField, "k") == doctest::Approx(0.2));
  }

  TEST_CASE("unit errors name the key") {
    CHECK_THROWS_WITH_AS(parse_quantity("5", Dimension::Length, "gate.a"), doctest::Contains("gate.a"),
                         ConfigError);
    CHECK_THROWS_AS(parse_quantity("5 furlong", Dimension::Length, "k"), ConfigError);
    CHECK_THROWS_AS(parse_quantity("5 V", Dimension::Length, "k"), ConfigError);
    CHECK_THROWS_AS(parse_quantity("nm", Dimension::Length, "k"), ConfigError);
    CHECK_THROWS_AS(parse_quantity("", Dimension::Length, "k"), ConfigError);
  }

  TEST_CASE("defaults and required gate") {
    const auto cfg = parse_config("{}", {});
    CHECK_FALSE(cfg.gate.has_value());
    CHECK_THROWS_WITH_AS(cfg.require_gate(), "gate.kind required", ConfigError);
    CHECK(cfg.voltages.size() == 11);
    CHECK(cfg.beta_grid.size() == 401);
    CHECK(cfg.format == OutputFormat::Both);
  }

  TEST_CASE("a full document") {
    const auto cfg = parse_config(R"({
      "gate": {"kind": "strip", "a": "5 nm", "c": "10 nm", "D": "0.5 um"},
      "voltage": {"from": "0 V", "to": "500 mV", "points": 6},
      "placement": {"dx": "1 nm", "dz": "2.5 nm"},
      "spin": {"alpha_a": 0.1, "alpha_b": 0.2, "mu_mode": "fixed", "mu": 0.001},
      "sweep": {"beta": [0.5, 1.0, 1.5], "refine": false},
      "output": {"format": "csv"}
    })", {});
    REQUIRE(cfg.gate.has_value());
    CHECK(cfg.gate->kind == GateKind::Strip);
    CHECK(cfg.gate->D == doctest::Approx(5e-7));
    CHECK(cfg.voltages.size() == 6);
    CHECK(cfg.voltages.back() == doctest::Approx(0.5));
    CHECK(cfg.placement.dz == doctest::Approx(2.5e-9));
    CHECK(cfg.spin.mu_mode == MuMode::Fixed);
    CHECK(cfg.spin.mu == doctest::Approx(0.001));
    CHECK(cfg.beta_grid.size() == 3);
    CHECK_FALSE(cfg.refine);
    CHECK(cfg.format == OutputFormat::Csv);
  }

  TEST_CASE("overrides") {
    const auto cfg = parse_config(R"({"gate": {"kind": "disc", "a": "5 nm", "c": "10 nm"}})",
                                  {"gate.c=12 nm", "spin.alpha_a=0.25", "output.format=json"});
    CHECK(cfg.gate->c == doctest::Approx(12e-9));
    CHECK(cfg.spin.alpha_a == doctest::Approx(0.25));
    CHECK(cfg.format == OutputFormat::Json);
    const auto made = parse_config("{}", {"gate.kind=disc", "gate.a=5 nm", "gate.c=10 nm"});
    CHECK(made.gate.has_value());
  }

  TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config(R"({"gate": {"kind": "disc", "a": 5, "c": "10 nm"}})", {}), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"gate": {"kind": "ring"}})", {}), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"gaet": {}})", {}), ConfigError);
    CHECK_THROWS_AS(parse_config("{ not json", {}), ConfigError);
    CHECK_THROWS_AS(parse_config("{}", {"novalue"}), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"beta": [1, 0.5]}})", {}), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"output": {"format": "xml"}})", {}), ConfigError);
    CHECK_THROWS_AS(parse_format("yaml"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/kanesi.json", {}), ConfigError);
  }

  TEST_CASE("number formatting and CSV") {
    CHECK(number(-0.0) == "0");
    CHECK(number(0.1) == "0.1");
    CHECK(number(1.0 / 3.0) == "0.333333333333");
    const Table t{{"name", "value"}, {{"plain", "1"}, {"a,b", "say \"hi\""}}};
    CHECK(to_csv(t) == "name,value\nplain,1\n\"a,b\",\"say \"\"hi\"\"\"\n");
  }

  TEST_CASE("write_file creates the directory") {
    const auto dir = std::filesystem::temp_directory_path() / "kanesi_io_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    const auto path = write_file(dir.string(), "x.csv", "a\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a");
    std::filesystem::remove_all(dir.parent_path());
  }
}
