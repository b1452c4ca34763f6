#pragma once

#include <vector>

#include "kanesi/matrix.hpp"

namespace kanesi {

struct EigenSystem {
  std::vector<double> values;   // ascending
  Matrix<double> vectors;       // column k belongs to values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix. Iterates until
/// the off-diagonal Frobenius norm falls below tol * ||A||_F; throws
/// ConvergenceError after `max_sweeps`. Each eigenvector is normalized with
/// its largest-magnitude component positive (first such component on ties).
EigenSystem eigensolve_symmetric(const Matrix<double>& a, double tol = 1e-15,
                                 int max_sweeps = 50);

}  // namespace kanesi
