#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>

#include "kanesi/constants.hpp"
#include "kanesi/error_budget.hpp"
#include "kanesi/hyperfine.hpp"
#include "kanesi/io/output.hpp"
#include "kanesi/spin_spectrum.hpp"
#include "kanesi/verify/acceptance.hpp"

namespace kanesi::cli {

using nlohmann::json;
using io::number;
using io::OutputFormat;

namespace {

constexpr const char* kStripModelNote =
    "strip gate modelled as a line charge over a ground plane, "
    "phi = V ln(2D/r) / ln(2D/a); the quadratic coefficient is expected within a factor 2 "
    "of -0.063 /V^2";

bool want_csv(const io::RunConfig& c) { return c.format != OutputFormat::Json; }
bool want_json(const io::RunConfig& c) { return c.format != OutputFormat::Csv; }

json finite_or_null(double v) { return std::isfinite(v) ? json(v + 0.0) : json(nullptr); }

// + 0.0 folds -0 so V = 0 rows print as plain zeros
double z(double v) { return v + 0.0; }

std::string flag(bool b) { return b ? "1" : "0"; }

void emit_csv(const io::RunConfig& cfg, const std::string& name, const io::Table& t) {
  if (want_csv(cfg)) std::cout << "wrote " << io::write_file(cfg.out_dir, name, io::to_csv(t)) << '\n';
}

void emit_json(const io::RunConfig& cfg, const std::string& name, const json& j) {
  if (want_json(cfg)) std::cout << "wrote " << io::write_file(cfg.out_dir, name, j.dump(2) + "\n") << '\n';
}

json gate_json(const GateGeometry& g) {
  json j = {{"kind", g.kind == GateKind::Disc ? "disc" : "strip"}, {"a_m", g.a}, {"c_m", g.c}};
  if (g.kind == GateKind::Strip) j["D_m"] = g.D;
  return j;
}

std::string printf_str(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

}  // namespace

void cmd_hic(const io::RunConfig& cfg) {
  const GateGeometry& gate = cfg.require_gate();
  const auto poly = hic_polynomial(gate, cfg.material);

  io::Table t{{"V", "second_order", "first_order_linear", "first_order_squared", "total"}, {}};
  json rows = json::array();
  for (double V : cfg.voltages) {
    const auto b = hic_shift(gate, V, cfg.material);
    t.rows.push_back({number(V), number(b.second_order), number(b.first_order_linear),
                      number(b.first_order_squared), number(b.total)});
    rows.push_back({{"V", z(V)},
                    {"second_order", z(b.second_order)},
                    {"first_order_linear", z(b.first_order_linear)},
                    {"first_order_squared", z(b.first_order_squared)},
                    {"total", z(b.total)}});
  }
  json j = {{"command", "hic"},
            {"gate", gate_json(gate)},
            {"polynomial", {{"linear_per_V", poly.linear}, {"quadratic_per_V2", poly.quadratic}}},
            {"rows", rows}};
  if (auto vs = poly.stationary_voltage()) j["polynomial"]["stationary_V"] = *vs;
  if (gate.kind == GateKind::Strip) j["model_note"] = kStripModelNote;

  std::cout << printf_str("dA/A = %.4g V %+.4g V^2\n", poly.linear, poly.quadratic);
  if (gate.kind == GateKind::Strip) std::cout << "note: " << kStripModelNote << '\n';
  emit_csv(cfg, "hic.csv", t);
  emit_json(cfg, "hic.json", j);
}

void cmd_error_budget(const io::RunConfig& cfg) {
  const GateGeometry& gate = cfg.require_gate();
  const bool strip = gate.kind == GateKind::Strip;
  const double A0 = cfg.A0_Hz ? *cfg.A0_Hz : hyperfine_constant_A0(cfg.material).frequency;
  const auto poly = hic_polynomial(gate, cfg.material);

  ErrorBudgetOptions opts;
  opts.sensitivity = cfg.sensitivity;
  opts.line_width = cfg.line_width;
  opts.A0_Hz = A0;
  opts.material = cfg.material;

  io::Table t{{"V", "admissible_dV", "dV_quadratic_limited", "dz_for_target_nm", "dz_in_2_3nm_band",
               "dA_over_A", "dz_term", "dx2_term", "recomputed_dA_over_A", "ordering_warning"},
              {}};
  json rows = json::array();
  std::optional<double> nulling_V;
  int in_band = 0;
  for (double V : cfg.voltages) {
    const auto tol = admissible_voltage_error(poly, V, cfg.line_width, A0);
    std::vector<std::string> row{number(V), number(tol.dV), flag(tol.quadratic_limited)};
    json jr = {{"V", V}, {"admissible_dV", finite_or_null(tol.dV)},
               {"dV_quadratic_limited", tol.quadratic_limited}};
    if (strip) {
      const double dz = depth_error_for_target(gate, V, cfg.target, cfg.sensitivity);
      const bool band = dz >= 2e-9 && dz <= 3e-9;
      in_band += band ? 1 : 0;
      const auto rep = relative_hic_error(gate, V, cfg.placement, opts);
      nulling_V = rep.nulling_V;
      row.insert(row.end(), {number(dz / units::nm), flag(band), number(rep.dA_over_A),
                             number(rep.dz_term), number(rep.dx2_term),
                             number(rep.recomputed_dA_over_A), flag(rep.ordering_warning)});
      jr.update({{"dz_for_target_nm", finite_or_null(dz / units::nm)},
                 {"dz_in_2_3nm_band", band},
                 {"dA_over_A", rep.dA_over_A},
                 {"dz_term", rep.dz_term},
                 {"dx2_term", rep.dx2_term},
                 {"recomputed_dA_over_A", rep.recomputed_dA_over_A},
                 {"ordering_warning", rep.ordering_warning}});
    } else {
      row.insert(row.end(), 7, "");
    }
    t.rows.push_back(row);
    rows.push_back(jr);
  }

  io::Table nt{{"a_nm", "c_nm", "V", "bracket", "scale", "dz_term"}, {}};
  json nulling = json::array();
  if (!cfg.nulling) {
    std::cerr << "warning: no nulling search ranges (nulling.a, nulling.c, nulling.V); "
                 "nulling table is empty\n";
  } else {
    for (const auto& n : find_nulling_parameters(*cfg.nulling)) {
      nt.rows.push_back({number(n.a / units::nm), number(n.c / units::nm), number(n.V),
                         number(n.bracket), number(n.scale), number(n.dz_term)});
      nulling.push_back({{"a_m", n.a}, {"c_m", n.c}, {"V", n.V}, {"bracket", n.bracket},
                         {"scale", n.scale}, {"dz_term", n.dz_term}});
    }
    if (nulling.empty()) std::cerr << "warning: nulling search found no parameter sets\n";
  }

  json j = {{"command", "error-budget"},
            {"gate", gate_json(gate)},
            {"target", cfg.target},
            {"line_width_Hz", cfg.line_width},
            {"A0_Hz", A0},
            {"placement", {{"dx_m", cfg.placement.dx}, {"dz_m", cfg.placement.dz}}},
            {"rows", rows},
            {"nulling", nulling}};
  if (nulling_V) j["nulling_V"] = *nulling_V;
  if (strip) {
    j["model_note"] = kStripModelNote;
    std::cout << in_band << " of " << cfg.voltages.size()
              << " voltages give a depth tolerance in the 2-3 nm band\n";
  } else {
    std::cout << "disc gate: placement columns need a strip gate and are left empty\n";
  }
  std::cout << nulling.size() << " nulling parameter sets\n";
  emit_csv(cfg, "error_budget.csv", t);
  emit_csv(cfg, "nulling.csv", nt);
  emit_json(cfg, "error_budget.json", j);
}

namespace {

SpectrumSweep run_sweep(const io::RunConfig& cfg) {
  return cfg.refine ? sweep_spectrum_refined(cfg.spin, cfg.beta_grid)
                    : sweep_spectrum(cfg.spin, cfg.beta_grid);
}

json params_json(const io::RunConfig& cfg) {
  json j = {{"alpha_a", cfg.spin.alpha_a},
            {"alpha_b", cfg.spin.alpha_b},
            {"mu_mode", cfg.spin.mu_mode == MuMode::Slaved ? "slaved" : "fixed"}};
  if (cfg.spin.mu_mode == MuMode::Slaved)
    j["mu_per_beta"] = cfg.spin.mu_ratio;
  else
    j["mu"] = cfg.spin.mu;
  return j;
}

json character_json(const TrackCharacter& c) {
  return {{"label", c.label},
          {"label_weight", c.label_weight},
          {"electron_projection", c.electron2 / 2.0},
          {"nuclear_projection", c.nuclear2 / 2.0},
          {"class_weight", c.class_weight}};
}

json strong_field_json(const io::RunConfig& cfg) {
  json j;
  if (cfg.spin.alpha_a != cfg.spin.alpha_b) {
    j["note"] = "closed form needs alpha_a = alpha_b";
  } else {
    json rows = json::array();
    for (double beta : cfg.strong_field_beta) {
      json r = {{"beta", beta}, {"valid", beta >= 3.0}};
      try {
        const double closed = strong_field_gap_reduced(cfg.spin.alpha_a, beta);
        const double numeric = numerical_tminus_splitting(cfg.spin, beta);
        r.update({{"closed_form", closed},
                  {"numerical", numeric},
                  {"absolute_difference", std::abs(numeric - closed)}});
        if (closed != 0.0) r["relative_error"] = std::abs(numeric - closed) / std::abs(closed);
      } catch (const std::domain_error& e) {
        r["error"] = e.what();
      }
      rows.push_back(r);
    }
    j["reduced"] = rows;
  }
  if (cfg.physical_spin) {
    const auto& ps = *cfg.physical_spin;
    json p = {{"B_T", ps.B}, {"J_J", ps.J}, {"A_J", ps.A}};
    try {
      const auto g = strong_field_gap(ps.B, ps.J, ps.A);
      auto tmpl = cfg.spin;
      tmpl.alpha_a = tmpl.alpha_b = ps.A / ps.J;
      const auto sp = SpinParams::from_physical(ps.B, ps.J, ps.A, ps.A);
      const double numeric = numerical_tminus_splitting(tmpl, sp.beta) * ps.J;
      p.update({{"beta", sp.beta},
                {"energy_J", g.energy},
                {"frequency_Hz", g.frequency},
                {"numerical_energy_J", numeric},
                {"numerical_frequency_Hz", numeric / PhysicalConstants{}.h}});
    } catch (const std::domain_error& e) {
      p["error"] = e.what();
    }
    j["physical"] = p;
  }
  return j;
}

json anticross_json(const io::RunConfig& cfg, const SpectrumSweep& sweep, io::Table* table) {
  json reports = json::array();
  json traces = json::array();
  for (const auto& r : find_anticrossings(sweep)) {
    reports.push_back({{"block", r.projection2 / 2},
                       {"lower_track", r.lower_track},
                       {"upper_track", r.upper_track},
                       {"pair", {r.lower_high_beta.label, r.lower_low_beta.label}},
                       {"beta_star", r.beta_star},
                       {"min_gap_over_J", r.min_gap},
                       {"lower_high_beta", character_json(r.lower_high_beta)},
                       {"lower_low_beta", character_json(r.lower_low_beta)}});
    if (table)
      table->rows.push_back({std::to_string(r.projection2 / 2), std::to_string(r.lower_high_beta.label),
                             std::to_string(r.lower_low_beta.label), number(r.beta_star),
                             number(r.min_gap)});
    const auto t = adiabatic_transfer_trace(sweep, r.lower_high_beta.label);
    traces.push_back({{"entering_label", t.entering_label},
                      {"block", t.projection2 / 2},
                      {"beta_high", t.beta_high},
                      {"beta_low", t.beta_low},
                      {"at_high_beta", character_json(t.at_high_beta)},
                      {"at_low_beta", character_json(t.at_low_beta)},
                      {"exchanged", t.exchanged},
                      {"conclusive", t.conclusive}});
  }
  const auto c = find_lowest_crossing(sweep);
  return {{"params", params_json(cfg)},
          {"grid_points", sweep.beta.size()},
          {"anticrossings", reports},
          {"transfer", traces},
          {"lowest_crossing", {{"beta", c.beta_star}, {"gap_over_J", c.min_gap}}},
          {"strong_field", strong_field_json(cfg)}};
}

void print_anticrossings(const json& j) {
  for (const auto& r : j["anticrossings"])
    std::cout << printf_str("anticrossing M+m=%+d: |%d> -> |%d> at beta* = %.4f, gap %.4g (units of J)\n",
                            r["block"].get<int>(), r["pair"][0].get<int>(), r["pair"][1].get<int>(),
                            r["beta_star"].get<double>(), r["min_gap_over_J"].get<double>());
  std::cout << printf_str("lowest crossing at beta = %.4f (gap %.3g, units of J)\n",
                          j["lowest_crossing"]["beta"].get<double>(),
                          j["lowest_crossing"]["gap_over_J"].get<double>());
}

}  // namespace

void cmd_spectrum(const io::RunConfig& cfg) {
  const auto sweep = run_sweep(cfg);
  io::Table t{{"beta", "level", "block", "eigenvalue", "dominant_state", "dominant_weight"}, {}};
  json tracks = json::array();
  std::vector<std::pair<const BlockTracks*, std::size_t>> levels;
  for (const auto& b : sweep.blocks)
    for (std::size_t k = 0; k < b.tracks.size(); ++k) levels.push_back({&b, k});

  for (std::size_t g = 0; g < sweep.beta.size(); ++g)
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const auto& [b, k] = levels[l];
      const auto ch = track_character(*b, k, g);
      t.rows.push_back({number(sweep.beta[g]), std::to_string(l), std::to_string(b->projection2 / 2),
                        number(b->tracks[k].energy[g]), std::to_string(ch.label),
                        number(ch.label_weight)});
    }
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const auto& [b, k] = levels[l];
    json states = json::array();
    for (std::size_t g = 0; g < sweep.beta.size(); ++g) states.push_back(track_character(*b, k, g).label);
    tracks.push_back({{"level", l},
                      {"block", b->projection2 / 2},
                      {"energy", b->tracks[k].energy},
                      {"dominant_state", states}});
  }
  json j = {{"command", "spectrum"},
            {"params", params_json(cfg)},
            {"energy_unit", "J (exchange)"},
            {"beta", sweep.beta},
            {"inserted_points", sweep.inserted_points},
            {"tracks", tracks}};

  const json ac = anticross_json(cfg, sweep, nullptr);
  std::cout << sweep.beta.size() << " beta points, 16 levels\n";
  print_anticrossings(ac);
  emit_csv(cfg, "spectrum.csv", t);
  emit_json(cfg, "spectrum.json", j);
  // anticrossing reports are JSON regardless of the table format
  std::cout << "wrote " << io::write_file(cfg.out_dir, "anticrossings.json", ac.dump(2) + "\n") << '\n';
}

void cmd_anticross(const io::RunConfig& cfg) {
  const auto sweep = run_sweep(cfg);
  io::Table t{{"block", "state_high_beta", "state_low_beta", "beta_star", "min_gap"}, {}};
  const json ac = anticross_json(cfg, sweep, &t);
  print_anticrossings(ac);
  if (ac["strong_field"].contains("reduced"))
    for (const auto& r : ac["strong_field"]["reduced"])
      if (r.contains("relative_error"))
        std::cout << printf_str("strong-field splitting at beta = %g: relative error %.3g%s\n",
                                r["beta"].get<double>(), r["relative_error"].get<double>(),
                                r["valid"].get<bool>() ? "" : " (outside beta >= 3)");
  emit_csv(cfg, "anticrossings.csv", t);
  emit_json(cfg, "anticrossings.json", ac);
}

bool cmd_validate(std::optional<int> only) {
  bool ok = true;
  for (const auto& r : acceptance::run_all(only)) {
    std::cout << acceptance::format_result(r) << std::flush;
    ok = ok && r.passed;
  }
  return ok;
}

}  // namespace kanesi::cli
