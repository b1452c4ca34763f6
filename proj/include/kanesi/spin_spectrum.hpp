#pragma once

#include <vector>

#include "kanesi/constants.hpp"
#include "kanesi/jacobi.hpp"
#include "kanesi/spin_hamiltonian.hpp"

namespace kanesi {

enum class MuMode {
  Fixed,   // mu held at SweepTemplate::mu
  Slaved,  // mu = ratio * beta, one field B driving both Zeeman terms
};

/// Everything except beta; beta is the swept coordinate.
struct SweepTemplate {
  double alpha_a = 0.0;
  double alpha_b = 0.0;
  MuMode mu_mode = MuMode::Slaved;
  double mu = 0.0;
  double mu_ratio = nuclear_to_electron_zeeman_ratio();

  SpinParams at(double beta) const;
};

/// Eigen decomposition of one M + m block at a single beta.
struct BlockEigen {
  int projection2 = 0;
  std::vector<int> indices;
  EigenSystem eig;
};

std::vector<BlockEigen> diagonalize_blocks(const SpinParams& p);

/// One adiabatic track: energies and block-basis eigenvectors per grid point.
struct Track {
  std::vector<double> energy;
  std::vector<std::vector<double>> vector;
};

struct BlockTracks {
  int projection2 = 0;
  std::vector<int> indices;
  std::vector<Track> tracks;
};

struct SpectrumSweep {
  SweepTemplate params;
  std::vector<double> beta;
  std::vector<BlockTracks> blocks;
  int inserted_points = 0;  // midpoints added to resolve overlap ties
};

/// 401 points spanning beta in [0.2, 3].
std::vector<double> default_beta_grid();

/// Diagonalize every block on the grid (ascending) and continue each
/// eigenvector to the next grid point by maximal overlap. Ambiguous overlaps
/// (two within 1e-6) trigger local midpoint insertion, up to 8 levels deep.
SpectrumSweep sweep_spectrum(const SweepTemplate& tmpl, const std::vector<double>& beta_grid);

/// Two-pass sweep: the grid is densified tenfold within 0.05 of every
/// anticrossing found on the first pass.
SpectrumSweep sweep_spectrum_refined(const SweepTemplate& tmpl,
                                     const std::vector<double>& beta_grid = default_beta_grid());

/// Spin character of a track at one grid point: the (Ma+Mb, ma+mb) class
/// holding most of the weight, and its largest basis component.
struct TrackCharacter {
  int electron2 = 0;        // 2 (Ma + Mb)
  int nuclear2 = 0;         // 2 (ma + mb)
  double class_weight = 0.0;
  int label = 0;            // 1-based basis index
  double label_weight = 0.0;
};

TrackCharacter track_character(const BlockTracks& block, std::size_t track, std::size_t point);

struct AnticrossingReport {
  int projection2 = 0;
  std::size_t lower_track = 0;
  std::size_t upper_track = 0;
  double beta_star = 0.0;
  double min_gap = 0.0;  // units of J
  /// Dominant state of the lower track above and below beta_star.
  TrackCharacter lower_high_beta;
  TrackCharacter lower_low_beta;
};

/// Same-block track pairs whose gap has an interior minimum (refined by
/// golden section) and which exchange spin character across it.
std::vector<AnticrossingReport> find_anticrossings(const SpectrumSweep& sweep);

struct CrossingReport {
  double beta_star = 0.0;
  double min_gap = 0.0;
  std::size_t grid_index = 0;
};

/// Minimum over the grid of the gap between the two lowest distinct levels
/// (degenerate levels merged at 1e-9).
CrossingReport find_lowest_crossing(const SpectrumSweep& sweep);

/// Distinct eigenvalues and their multiplicities at one beta.
std::vector<std::pair<double, int>> level_multiplicities(const SpinParams& p, double tol = 1e-9);

struct TransferTrace {
  int entering_label = 0;
  int projection2 = 0;
  std::size_t track = 0;
  double beta_high = 0.0;
  double beta_low = 0.0;
  TrackCharacter at_high_beta;
  TrackCharacter at_low_beta;
  bool exchanged = false;   // spin class differs between the ends
  bool conclusive = false;  // both class weights >= 0.6
};

/// Follow the track that carries `entering_label` at the largest beta down to
/// the smallest beta of the sweep.
TransferTrace adiabatic_transfer_trace(const SpectrumSweep& sweep, int entering_label);

struct StrongFieldGap {
  double energy = 0.0;     // J
  double frequency = 0.0;  // Hz
};

/// Strong-field splitting of the two lowest T- levels of the M+m = -1 block
/// for equal hyperfine constants A:
///   (A/2)^2 / (2 mu_B B - J) - (A/2)^2 / (2 mu_B B).
/// Throws std::domain_error at the pole 2 mu_B B = J or when beta < 3.
StrongFieldGap strong_field_gap(double B, double J, double A, const PhysicalConstants& pc = {});

/// Same, in units of J: (alpha/2)^2 (1/(beta-1) - 1/beta).
double strong_field_gap_reduced(double alpha, double beta);

/// Exact splitting of the two lowest M+m = -1 levels, units of J.
double numerical_tminus_splitting(const SweepTemplate& tmpl, double beta);

}  // namespace kanesi
