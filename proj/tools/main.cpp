// kanesi: donor HIC shift, placement error budget and two-donor spin spectra.
//
// Exit codes: 0 success, 1 failed acceptance criteria (validate), 2 configuration
// or parameter error, 3 numerical non-convergence.
#include <CLI11.hpp>
#include <functional>
#include <iostream>

#include "commands.hpp"
#include "kanesi/errors.hpp"

namespace {

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string out_dir;
  std::string format;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON config file");
  sub->add_option("--set", c.sets, "override a config key, e.g. --set gate.c='10 nm'")
      ->allow_extra_args(false);
  sub->add_option("--out-dir", c.out_dir, "output directory (default: output.dir or .)");
  sub->add_option("--format", c.format, "csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
}

kanesi::io::RunConfig load(const Common& c) {
  auto cfg = kanesi::io::load_config(c.config, c.sets);
  if (!c.out_dir.empty()) cfg.out_dir = c.out_dir;
  if (!c.format.empty()) cfg.format = kanesi::io::parse_format(c.format);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Donor hyperfine tuning and two-donor spin spectra"};
  app.require_subcommand(1);

  Common common;
  std::optional<int> only;
  std::function<int()> action;

  struct Sub {
    const char* name;
    const char* help;
    void (*run)(const kanesi::io::RunConfig&);
  };
  const Sub subs[] = {
      {"hic", "relative HIC shift over a gate-voltage grid", kanesi::cli::cmd_hic},
      {"error-budget", "placement and gate-voltage tolerances, nulling search",
       kanesi::cli::cmd_error_budget},
      {"spectrum", "16-level spectrum versus beta with adiabatic tracks", kanesi::cli::cmd_spectrum},
      {"anticross", "anticrossings, transfer traces and strong-field splitting",
       kanesi::cli::cmd_anticross},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, common);
    sub->callback([&action, &common, run = s.run] {
      action = [&common, run] {
        run(load(common));
        return 0;
      };
    });
  }
  auto* validate = app.add_subcommand("validate", "run the acceptance checks, one line each");
  validate->add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 13));
  validate->callback([&] { action = [&] { return kanesi::cli::cmd_validate(only) ? 0 : 1; }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const kanesi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const kanesi::ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
