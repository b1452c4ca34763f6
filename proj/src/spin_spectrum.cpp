#include "kanesi/spin_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace kanesi {

SpinParams SweepTemplate::at(double beta) const {
  const double m = mu_mode == MuMode::Slaved ? mu_ratio * beta : mu;
  return {m, alpha_a, alpha_b, beta};
}

std::vector<BlockEigen> diagonalize_blocks(const SpinParams& p) {
  std::vector<BlockEigen> out;
  for (auto& b : block_decompose(build_hamiltonian(p)))
    out.push_back({b.projection2, b.indices, eigensolve_symmetric(b.matrix)});
  return out;
}

std::vector<double> default_beta_grid() {
  std::vector<double> g(401);
  for (int i = 0; i < 401; ++i) g[i] = 0.2 + (3.0 - 0.2) * i / 400.0;
  return g;
}

namespace {

constexpr double kOverlapTie = 1e-6;
constexpr int kMaxInsertDepth = 8;

std::vector<double> column(const Matrix<double>& m, std::size_t k) {
  std::vector<double> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, k);
  return v;
}

double overlap2(const std::vector<double>& u, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * w[i];
  return s * s;
}

/// perm[track] = eigen column assigned to that track.
struct Assignment {
  std::vector<std::size_t> perm;
  bool ambiguous = false;
};

Assignment match(const std::vector<std::vector<double>>& prev, const EigenSystem& next) {
  const std::size_t n = prev.size();
  std::vector<std::vector<double>> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = column(next.vectors, j);

  struct Cand {
    double o;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  Assignment out;
  for (std::size_t i = 0; i < n; ++i) {
    double best = -1.0, second = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double o = overlap2(prev[i], cols[j]);
      cands.push_back({o, i, j});
      if (o > best) {
        second = best;
        best = o;
      } else if (o > second) {
        second = o;
      }
    }
    if (n > 1 && best - second < kOverlapTie) out.ambiguous = true;
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) {
    if (l.o != r.o) return l.o > r.o;
    if (l.i != r.i) return l.i < r.i;
    return l.j < r.j;
  });
  out.perm.assign(n, n);
  std::vector<bool> used(n, false);
  for (const auto& c : cands) {
    if (out.perm[c.i] != n || used[c.j]) continue;
    out.perm[c.i] = c.j;
    used[c.j] = true;
  }
  return out;
}

class Sweeper {
 public:
  explicit Sweeper(const SweepTemplate& t) : tmpl_(t) { sweep_.params = t; }

  void start(double beta) {
    const auto blocks = diagonalize_blocks(tmpl_.at(beta));
    for (const auto& b : blocks) {
      BlockTracks bt;
      bt.projection2 = b.projection2;
      bt.indices = b.indices;
      bt.tracks.resize(b.indices.size());
      sweep_.blocks.push_back(std::move(bt));
    }
    std::vector<std::vector<std::size_t>> identity;
    for (const auto& b : blocks) {
      std::vector<std::size_t> p(b.indices.size());
      std::iota(p.begin(), p.end(), 0);
      identity.push_back(std::move(p));
    }
    append(beta, blocks, identity);
  }

  void advance_to(double beta) { advance(sweep_.beta.back(), beta, 0); }

  SpectrumSweep take() { return std::move(sweep_); }

 private:
  void advance(double from, double to, int depth) {
    const auto blocks = diagonalize_blocks(tmpl_.at(to));
    std::vector<std::vector<std::size_t>> perms;
    bool ambiguous = false;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::vector<std::vector<double>> prev;
      for (const auto& tr : sweep_.blocks[b].tracks) prev.push_back(tr.vector.back());
      Assignment a = match(prev, blocks[b].eig);
      ambiguous = ambiguous || a.ambiguous;
      perms.push_back(std::move(a.perm));
    }
    if (ambiguous && depth < kMaxInsertDepth) {
      const double mid = 0.5 * (from + to);
      if (mid > from && mid < to) {
        ++sweep_.inserted_points;
        advance(from, mid, depth + 1);
        advance(mid, to, depth + 1);
        return;
      }
    }
    append(to, blocks, perms);
  }

  void append(double beta, const std::vector<BlockEigen>& blocks,
              const std::vector<std::vector<std::size_t>>& perms) {
    sweep_.beta.push_back(beta);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      auto& tracks = sweep_.blocks[b].tracks;
      for (std::size_t t = 0; t < tracks.size(); ++t) {
        const std::size_t col = perms[b][t];
        tracks[t].energy.push_back(blocks[b].eig.values[col]);
        tracks[t].vector.push_back(column(blocks[b].eig.vectors, col));
      }
    }
  }

  SweepTemplate tmpl_;
  SpectrumSweep sweep_;
};

}  // namespace

SpectrumSweep sweep_spectrum(const SweepTemplate& tmpl, const std::vector<double>& beta_grid) {
  if (beta_grid.empty()) throw std::invalid_argument("beta grid is empty");
  for (std::size_t i = 1; i < beta_grid.size(); ++i)
    if (!(beta_grid[i] > beta_grid[i - 1]))
      throw std::invalid_argument("beta grid must be strictly ascending");
  Sweeper s(tmpl);
  s.start(beta_grid.front());
  for (std::size_t i = 1; i < beta_grid.size(); ++i) s.advance_to(beta_grid[i]);
  return s.take();
}

SpectrumSweep sweep_spectrum_refined(const SweepTemplate& tmpl, const std::vector<double>& grid) {
  SpectrumSweep first = sweep_spectrum(tmpl, grid);
  if (grid.size() < 2) return first;
  const auto reports = find_anticrossings(first);
  if (reports.empty()) return first;

  const double step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  std::vector<double> merged = grid;
  for (const auto& r : reports) {
    const double lo = std::max(grid.front(), r.beta_star - 0.05);
    const double hi = std::min(grid.back(), r.beta_star + 0.05);
    for (double b = lo; b <= hi; b += step / 10.0) merged.push_back(b);
  }
  std::sort(merged.begin(), merged.end());
  std::vector<double> unique;
  for (double b : merged)
    if (unique.empty() || b - unique.back() > 1e-12) unique.push_back(b);
  return sweep_spectrum(tmpl, unique);
}

TrackCharacter track_character(const BlockTracks& block, std::size_t track, std::size_t point) {
  const auto& v = block.tracks.at(track).vector.at(point);
  std::map<std::pair<int, int>, double> classes;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const BasisState s = basis_state(block.indices[k]);
    classes[{s.electron_projection2(), s.nuclear_projection2()}] += v[k] * v[k];
  }
  TrackCharacter ch;
  ch.class_weight = -1.0;
  // iterate in index order so class ties go to the first basis state's class
  for (std::size_t k = 0; k < v.size(); ++k) {
    const BasisState s = basis_state(block.indices[k]);
    const double w = classes[{s.electron_projection2(), s.nuclear_projection2()}];
    if (w > ch.class_weight + 1e-12) {
      ch.class_weight = w;
      ch.electron2 = s.electron_projection2();
      ch.nuclear2 = s.nuclear_projection2();
    }
  }
  int best = -1;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const BasisState s = basis_state(block.indices[k]);
    if (s.electron_projection2() != ch.electron2 || s.nuclear_projection2() != ch.nuclear2) continue;
    const double w = v[k] * v[k];
    // ties resolve toward the higher basis index
    if (best < 0 || w >= ch.label_weight - 1e-6) {
      best = static_cast<int>(k);
      ch.label = block.indices[k];
      ch.label_weight = w;
    }
  }
  return ch;
}

namespace {

bool same_class(const TrackCharacter& l, const TrackCharacter& r) {
  return l.electron2 == r.electron2 && l.nuclear2 == r.nuclear2;
}

std::vector<double> block_levels(const SweepTemplate& tmpl, int projection2, double beta) {
  for (auto& b : diagonalize_blocks(tmpl.at(beta)))
    if (b.projection2 == projection2) return b.eig.values;
  throw std::logic_error("unknown M+m block");
}

template <class F>
std::pair<double, double> golden_minimum(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

std::vector<AnticrossingReport> find_anticrossings(const SpectrumSweep& sweep) {
  std::vector<AnticrossingReport> out;
  const std::size_t n = sweep.beta.size();
  if (n < 3) return out;

  for (const auto& block : sweep.blocks) {
    const std::size_t nt = block.tracks.size();
    for (std::size_t i = 0; i < nt; ++i) {
      for (std::size_t j = i + 1; j < nt; ++j) {
        std::vector<double> gap(n);
        for (std::size_t g = 0; g < n; ++g)
          gap[g] = std::abs(block.tracks[j].energy[g] - block.tracks[i].energy[g]);

        for (std::size_t g = 1; g + 1 < n; ++g) {
          if (!(gap[g] < gap[g - 1] && gap[g] <= gap[g + 1])) continue;
          std::size_t L = g, R = g;
          while (L > 0 && gap[L - 1] >= gap[L]) --L;
          while (R + 1 < n && gap[R + 1] >= gap[R]) ++R;

          const auto iL = track_character(block, i, L);
          const auto iR = track_character(block, i, R);
          const auto jL = track_character(block, j, L);
          const auto jR = track_character(block, j, R);
          if (!(same_class(iL, jR) && same_class(jL, iR) && !same_class(iL, iR))) continue;

          // sorted ranks of the two tracks at the grid minimum
          std::vector<double> e;
          for (const auto& t : block.tracks) e.push_back(t.energy[g]);
          std::vector<double> sorted = e;
          std::sort(sorted.begin(), sorted.end());
          auto rank = [&](double v) {
            return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                            sorted.begin());
          };
          std::size_t ri = rank(e[i]), rj = rank(e[j]);
          if (ri == rj) rj = ri + 1;
          const auto f = [&](double beta) {
            const auto lv = block_levels(sweep.params, block.projection2, beta);
            return std::abs(lv[std::max(ri, rj)] - lv[std::min(ri, rj)]);
          };
          const auto [beta_star, min_gap] = golden_minimum(f, sweep.beta[g - 1], sweep.beta[g + 1]);
          if (min_gap <= 1e-9) continue;

          const bool i_lower = block.tracks[i].energy[g] <= block.tracks[j].energy[g];
          AnticrossingReport rep;
          rep.projection2 = block.projection2;
          rep.lower_track = i_lower ? i : j;
          rep.upper_track = i_lower ? j : i;
          rep.beta_star = beta_star;
          rep.min_gap = min_gap;
          rep.lower_high_beta = i_lower ? iR : jR;
          rep.lower_low_beta = i_lower ? iL : jL;
          out.push_back(rep);
        }
      }
    }
  }
  return out;
}

namespace {

std::vector<std::pair<double, int>> cluster_levels(std::vector<double> e, double tol) {
  std::sort(e.begin(), e.end());
  std::vector<std::pair<double, int>> out;
  for (double v : e) {
    if (!out.empty() && std::abs(v - out.back().first) <= tol * std::max(1.0, std::abs(v)))
      ++out.back().second;
    else
      out.push_back({v, 1});
  }
  return out;
}

}  // namespace

std::vector<std::pair<double, int>> level_multiplicities(const SpinParams& p, double tol) {
  std::vector<double> e;
  for (const auto& b : diagonalize_blocks(p)) e.insert(e.end(), b.eig.values.begin(), b.eig.values.end());
  return cluster_levels(e, tol);
}

CrossingReport find_lowest_crossing(const SpectrumSweep& sweep) {
  CrossingReport best;
  best.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < sweep.beta.size(); ++g) {
    std::vector<double> e;
    for (const auto& b : sweep.blocks)
      for (const auto& t : b.tracks) e.push_back(t.energy[g]);
    const auto levels = cluster_levels(e, 1e-9);
    const double gap = levels.size() > 1 ? levels[1].first - levels[0].first : 0.0;
    if (gap < best.min_gap) best = {sweep.beta[g], gap, g};
  }
  return best;
}

TransferTrace adiabatic_transfer_trace(const SpectrumSweep& sweep, int entering_label) {
  const BasisState s = basis_state(entering_label);
  const auto it = std::find_if(sweep.blocks.begin(), sweep.blocks.end(), [&](const BlockTracks& b) {
    return b.projection2 == s.total_projection2();
  });
  const BlockTracks& block = *it;
  const std::size_t pos =
      std::find(block.indices.begin(), block.indices.end(), entering_label) - block.indices.begin();
  const std::size_t last = sweep.beta.size() - 1;

  std::size_t track = 0;
  double best = -1.0;
  for (std::size_t t = 0; t < block.tracks.size(); ++t) {
    const double v = block.tracks[t].vector[last][pos];
    const double w = v * v;
    const bool better = w > best + 1e-9 ||
                        (std::abs(w - best) <= 1e-9 &&
                         block.tracks[t].energy[last] < block.tracks[track].energy[last]);
    if (better) {
      best = std::max(best, w);
      track = t;
    }
  }

  TransferTrace tr;
  tr.entering_label = entering_label;
  tr.projection2 = block.projection2;
  tr.track = track;
  tr.beta_high = sweep.beta[last];
  tr.beta_low = sweep.beta.front();
  tr.at_high_beta = track_character(block, track, last);
  tr.at_low_beta = track_character(block, track, 0);
  tr.exchanged = !same_class(tr.at_high_beta, tr.at_low_beta);
  tr.conclusive = tr.at_high_beta.class_weight >= 0.6 && tr.at_low_beta.class_weight >= 0.6;
  return tr;
}

StrongFieldGap strong_field_gap(double B, double J, double A, const PhysicalConstants& pc) {
  const double zeeman = 2.0 * pc.mu_B * B;
  if (!(zeeman > 0.0)) throw std::domain_error("strong-field splitting needs a positive field");
  if (zeeman == J) throw std::domain_error("2 mu_B B = J is the anticrossing pole");
  if (J > 0.0 && zeeman < 3.0 * J)
    throw std::domain_error("strong-field splitting is only valid for beta >= 3");
  const double q = 0.25 * A * A;
  const double energy = q / (zeeman - J) - q / zeeman;
  return {energy, energy / pc.h};
}

double strong_field_gap_reduced(double alpha, double beta) {
  if (beta == 1.0) throw std::domain_error("beta = 1 is the anticrossing pole");
  return 0.25 * alpha * alpha * (1.0 / (beta - 1.0) - 1.0 / beta);
}

double numerical_tminus_splitting(const SweepTemplate& tmpl, double beta) {
  const auto lv = block_levels(tmpl, -2, beta);
  return lv[1] - lv[0];
}

}  // namespace kanesi
