#include "kanesi/spin_hamiltonian.hpp"

#include <sstream>
#include <stdexcept>

namespace kanesi {

SpinParams SpinParams::from_physical(double B, double J, double A_a, double A_b,
                                     const PhysicalConstants& pc) {
  if (!(J > 0.0)) throw std::invalid_argument("exchange J must be positive");
  return {pc.g_N * pc.mu_N * B / J, A_a / J, A_b / J, 2.0 * pc.mu_B * B / J};
}

double nuclear_to_electron_zeeman_ratio(const PhysicalConstants& pc) {
  return pc.g_N * pc.mu_N / (2.0 * pc.mu_B);
}

BasisState basis_state(int index) {
  if (index < 1 || index > kSpinDim) throw std::out_of_range("basis index must be 1..16");
  const int bits = index - 1;
  auto proj = [bits](int shift) { return (bits >> shift) & 1 ? -1 : 1; };
  return {index, proj(3), proj(2), proj(1), proj(0)};
}

int basis_index(int Ma2, int Mb2, int ma2, int mb2) {
  auto bit = [](int p) { return p < 0 ? 1 : 0; };
  return 1 + 8 * bit(Ma2) + 4 * bit(Mb2) + 2 * bit(ma2) + bit(mb2);
}

Matrix<double> build_hamiltonian(const SpinParams& p) {
  return build_hamiltonian<double>(p.mu, p.alpha_a, p.alpha_b, p.beta);
}

const std::array<std::vector<int>, 5>& block_index_sets() {
  static const std::array<std::vector<int>, 5> sets = [] {
    std::array<std::vector<int>, 5> out;
    constexpr int order[5] = {0, 2, -2, 4, -4};
    for (int k = 0; k < 5; ++k)
      for (int i = 1; i <= kSpinDim; ++i)
        if (basis_state(i).total_projection2() == order[k]) out[k].push_back(i);
    return out;
  }();
  return sets;
}

std::vector<SpinBlock> block_decompose(const Matrix<double>& H) {
  if (H.rows() != kSpinDim || H.cols() != kSpinDim)
    throw std::invalid_argument("block_decompose expects a 16x16 matrix");
  for (int i = 1; i <= kSpinDim; ++i)
    for (int j = 1; j <= kSpinDim; ++j) {
      if (basis_state(i).total_projection2() == basis_state(j).total_projection2()) continue;
      if (H(i - 1, j - 1) != 0.0) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ") couples different M+m blocks";
        throw BlockStructureError(msg.str());
      }
    }

  std::vector<SpinBlock> blocks;
  for (const auto& idx : block_index_sets()) {
    SpinBlock b;
    b.projection2 = basis_state(idx.front()).total_projection2();
    b.indices = idx;
    b.matrix = Matrix<double>(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) b.matrix(r, c) = H(idx[r] - 1, idx[c] - 1);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

}  // namespace kanesi
