// Acceptance runner: one pass/fail line per criterion. `--only N` runs a single one.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "kanesi/verify/acceptance.hpp"

int main(int argc, char** argv) {
  std::optional<int> only;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
  bool ok = true;
  for (const auto& r : kanesi::acceptance::run_all(only)) {
    std::cout << kanesi::acceptance::format_result(r);
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
