#pragma once

#include <array>
#include <vector>

#include "kanesi/constants.hpp"
#include "kanesi/errors.hpp"
#include "kanesi/matrix.hpp"

namespace kanesi {

/// Two exchange-coupled donors in a field B along z, in units of J:
///   H/J = beta (S_az + S_bz) + S_a.S_b - mu (I_az + I_bz)
///         + alpha_a I_a.S_a + alpha_b I_b.S_b
/// with beta = 2 mu_B B / J, mu = g_N mu_N B / J, alpha = A / J.
struct SpinParams {
  double mu = 0.0;
  double alpha_a = 0.0;
  double alpha_b = 0.0;
  double beta = 0.0;

  /// Throws std::invalid_argument unless J > 0.
  static SpinParams from_physical(double B, double J, double A_a, double A_b,
                                  const PhysicalConstants& pc = {});
};

/// mu / beta = g_N mu_N / (2 mu_B) when a single field B drives both.
double nuclear_to_electron_zeeman_ratio(const PhysicalConstants& pc = {});

inline constexpr int kSpinDim = 16;

/// |Ma Mb ma mb> with electron spins first. Projections stored doubled (+1/-1).
struct BasisState {
  int index = 1;  // 1..16
  int Ma2 = 1;
  int Mb2 = 1;
  int ma2 = 1;
  int mb2 = 1;

  int electron_projection2() const { return Ma2 + Mb2; }
  int nuclear_projection2() const { return ma2 + mb2; }
  /// 2 (M + m); the conserved quantity.
  int total_projection2() const { return Ma2 + Mb2 + ma2 + mb2; }
};

/// Index 1 is |up up up up>, index 16 |down down down down>; the binary
/// digits of index-1 are (Ma, Mb, ma, mb) with 1 meaning down.
BasisState basis_state(int index);
int basis_index(int Ma2, int Mb2, int ma2, int mb2);

namespace spin_ops {

enum Site { ElectronA = 0, ElectronB = 1, NucleusA = 2, NucleusB = 3 };

template <class T>
Matrix<T> sz() {
  Matrix<T> m(2, 2);
  m(0, 0) = T(1) / T(2);
  m(1, 1) = -(T(1) / T(2));
  return m;
}

template <class T>
Matrix<T> splus() {
  Matrix<T> m(2, 2);
  m(0, 1) = T(1);
  return m;
}

template <class T>
Matrix<T> sminus() {
  Matrix<T> m(2, 2);
  m(1, 0) = T(1);
  return m;
}

/// Embed a single-site operator into the 16-dimensional product space.
template <class T>
Matrix<T> embed(const Matrix<T>& op, int site) {
  Matrix<T> out = site == 0 ? op : Matrix<T>::identity(2);
  for (int s = 1; s < 4; ++s) out = kron(out, s == site ? op : Matrix<T>::identity(2));
  return out;
}

/// S_i . S_j
template <class T>
Matrix<T> dot(int i, int j) {
  const T half = T(1) / T(2);
  Matrix<T> out = embed(sz<T>(), i) * embed(sz<T>(), j);
  out += half * (embed(splus<T>(), i) * embed(sminus<T>(), j));
  out += half * (embed(sminus<T>(), i) * embed(splus<T>(), j));
  return out;
}

}  // namespace spin_ops

/// Electron part H0/J = beta (S_az + S_bz) + S_a.S_b.
template <class T>
Matrix<T> electron_hamiltonian(T beta) {
  using namespace spin_ops;
  Matrix<T> h = beta * (embed(sz<T>(), ElectronA) + embed(sz<T>(), ElectronB));
  h += dot<T>(ElectronA, ElectronB);
  return h;
}

/// Nuclear Zeeman plus hyperfine part dH/J.
template <class T>
Matrix<T> hyperfine_hamiltonian(T mu, T alpha_a, T alpha_b) {
  using namespace spin_ops;
  Matrix<T> h = (-mu) * (embed(sz<T>(), NucleusA) + embed(sz<T>(), NucleusB));
  h += alpha_a * dot<T>(NucleusA, ElectronA);
  h += alpha_b * dot<T>(NucleusB, ElectronB);
  return h;
}

template <class T>
Matrix<T> build_hamiltonian(T mu, T alpha_a, T alpha_b, T beta) {
  return electron_hamiltonian<T>(beta) + hyperfine_hamiltonian<T>(mu, alpha_a, alpha_b);
}

/// Full 16x16 H/J, real symmetric.
Matrix<double> build_hamiltonian(const SpinParams& p);

/// One symmetry block of H: states sharing M + m.
struct SpinBlock {
  int projection2 = 0;       // 2 (M + m)
  std::vector<int> indices;  // 1-based basis indices, ascending
  Matrix<double> matrix;
};

/// Index sets of the five M + m blocks, ordered M + m = 0, 1, -1, 2, -2.
const std::array<std::vector<int>, 5>& block_index_sets();

/// Split H into its five M + m blocks. Throws BlockStructureError if any
/// entry between different blocks is non-zero.
std::vector<SpinBlock> block_decompose(const Matrix<double>& H);

}  // namespace kanesi
