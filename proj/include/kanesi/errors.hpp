#pragma once

#include <stdexcept>
#include <string>

namespace kanesi {

/// Iterative numerics exhausted their budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Hamiltonian couples states with different M + m.
class BlockStructureError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bad or incomplete run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kanesi
