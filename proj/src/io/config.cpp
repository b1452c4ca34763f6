#include "kanesi/io/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "kanesi/errors.hpp"
#include "kanesi/io/units.hpp"

namespace kanesi::io {

using nlohmann::json;

namespace {

const std::set<std::string> kSections = {"material", "gate",    "placement", "error_budget",
                                          "error_budget.sensitivity", "nulling", "spin",
                                          "sweep",    "output"};

const std::set<std::string> kLeaves = {
    "material.a_star", "material.eps_r", "material.psi0_sq", "material.Delta_E", "material.delta_E",
    "gate.kind", "gate.a", "gate.c", "gate.D",
    "voltage",
    "placement.dx", "placement.dz",
    "error_budget.target", "error_budget.line_width", "error_budget.A0",
    "error_budget.sensitivity.quadratic", "error_budget.sensitivity.linear",
    "nulling.a", "nulling.c", "nulling.V", "nulling.grid", "nulling.dz", "nulling.target",
    "spin.alpha_a", "spin.alpha_b", "spin.mu_mode", "spin.mu", "spin.B", "spin.J", "spin.A",
    "sweep.beta", "sweep.refine", "sweep.strong_field_beta",
    "output.dir", "output.format",
};

void check_keys(const json& j, const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (kLeaves.count(key)) continue;
    if (kSections.count(key) && it->is_object()) {
      check_keys(*it, key);
      continue;
    }
    throw ConfigError("unknown key " + key);
  }
}

json::json_pointer pointer(const std::string& dotted) {
  std::string p;
  std::stringstream ss(dotted);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ConfigError("malformed key \"" + dotted + "\"");
    p += "/" + part;
  }
  return json::json_pointer(p);
}

void apply_override(json& root, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--set expects key=value, got \"" + kv + "\"");
  const std::string key = kv.substr(0, eq), text = kv.substr(eq + 1);
  // JSON literals (numbers, arrays, objects, booleans) are taken as such;
  // anything else is a string, so `gate.a=5 nm` needs no quoting.
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  const auto ptr = pointer(key);
  if (!root.is_object()) root = json::object();
  try {
    root[ptr] = value;
  } catch (const json::exception&) {
    throw ConfigError(key + ": cannot set, a parent key is not an object");
  }
}

/// Typed access to the merged document.
class Reader {
 public:
  explicit Reader(const json& root) : root_(root) {}

  const json* find(const std::string& key) const {
    const auto ptr = pointer(key);
    return root_.contains(ptr) ? &root_.at(ptr) : nullptr;
  }

  std::optional<double> quantity(const std::string& key, Dimension dim) const {
    const json* v = find(key);
    if (!v) return std::nullopt;
    return quantity_of(*v, key, dim);
  }

  static double quantity_of(const json& v, const std::string& key, Dimension dim) {
    if (v.is_number())
      throw ConfigError(key + ": missing unit, write it as a string such as \"" +
                        number_text(v) + " " + example_unit(dim) + "\"");
    if (!v.is_string()) throw ConfigError(key + ": expected a quantity string with a unit");
    return parse_quantity(v.get<std::string>(), dim, key);
  }

  std::optional<double> number(const std::string& key) const {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) throw ConfigError(key + ": expected a plain number");
    return v->get<double>();
  }

  std::optional<std::string> string(const std::string& key) const {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw ConfigError(key + ": expected a string");
    return v->get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) const {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) throw ConfigError(key + ": expected true or false");
    return v->get<bool>();
  }

  /// A list, or {"from", "to", "points"}. `dim` empty means dimensionless.
  std::optional<std::vector<double>> grid(const std::string& key,
                                          std::optional<Dimension> dim) const {
    const json* v = find(key);
    if (!v) return std::nullopt;
    auto scalar = [&](const json& x, const std::string& k) {
      if (dim) return quantity_of(x, k, *dim);
      if (!x.is_number()) throw ConfigError(k + ": expected a plain number");
      return x.get<double>();
    };
    std::vector<double> out;
    if (v->is_array()) {
      for (std::size_t i = 0; i < v->size(); ++i)
        out.push_back(scalar((*v)[i], key + "[" + std::to_string(i) + "]"));
    } else if (v->is_object()) {
      for (const auto& k : {"from", "to", "points"})
        if (!v->contains(k)) throw ConfigError(key + "." + k + " required");
      for (auto it = v->begin(); it != v->end(); ++it)
        if (it.key() != "from" && it.key() != "to" && it.key() != "points")
          throw ConfigError("unknown key " + key + "." + it.key());
      const double from = scalar(v->at("from"), key + ".from");
      const double to = scalar(v->at("to"), key + ".to");
      const json& pts = v->at("points");
      if (!pts.is_number_integer() || pts.get<long>() < 1)
        throw ConfigError(key + ".points: expected a positive integer");
      const long n = pts.get<long>();
      if (n == 1) {
        out.push_back(from);
      } else {
        for (long i = 0; i < n; ++i) out.push_back(from + (to - from) * double(i) / double(n - 1));
      }
    } else {
      throw ConfigError(key + ": expected a list or {from, to, points}");
    }
    for (std::size_t i = 1; i < out.size(); ++i)
      if (!(out[i] > out[i - 1])) throw ConfigError(key + ": values must be strictly ascending");
    return out;
  }

  std::optional<ParameterRange> range(const std::string& key, Dimension dim) const {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_object() || !v->contains("from") || !v->contains("to") || v->size() != 2)
      throw ConfigError(key + ": expected {\"from\": ..., \"to\": ...}");
    return ParameterRange{quantity_of(v->at("from"), key + ".from", dim),
                          quantity_of(v->at("to"), key + ".to", dim)};
  }

 private:
  static std::string number_text(const json& v) { return v.dump(); }
  static const char* example_unit(Dimension d) {
    switch (d) {
      case Dimension::Length: return "nm";
      case Dimension::Voltage: return "V";
      case Dimension::Energy: return "eV";
      case Dimension::MagneticField: return "T";
      case Dimension::Frequency: return "Hz";
      case Dimension::NumberDensity: return "m^-3";
    }
    return "";
  }

  const json& root_;
};

RunConfig convert(const json& root) {
  check_keys(root, "");
  const Reader r(root);
  RunConfig cfg;

  if (auto v = r.quantity("material.a_star", Dimension::Length)) cfg.material.a_star = *v;
  if (auto v = r.number("material.eps_r")) cfg.material.eps_r = *v;
  if (auto v = r.quantity("material.psi0_sq", Dimension::NumberDensity)) cfg.material.psi0_sq = *v;
  if (auto v = r.quantity("material.Delta_E", Dimension::Energy)) cfg.material.Delta_E = *v;
  if (auto v = r.quantity("material.delta_E", Dimension::Energy)) cfg.material.delta_E = *v;
  if (!(cfg.material.a_star > 0.0)) throw ConfigError("material.a_star must be positive");
  if (!(cfg.material.Delta_E > 0.0)) throw ConfigError("material.Delta_E must be positive");
  if (!(cfg.material.eps_r > 0.0)) throw ConfigError("material.eps_r must be positive");

  if (auto kind = r.string("gate.kind")) {
    GateGeometry g;
    if (*kind == "disc")
      g.kind = GateKind::Disc;
    else if (*kind == "strip")
      g.kind = GateKind::Strip;
    else
      throw ConfigError("gate.kind: expected \"disc\" or \"strip\", got \"" + *kind + "\"");
    auto need = [&](const std::string& key) {
      auto v = r.quantity(key, Dimension::Length);
      if (!v) throw ConfigError(key + " required");
      return *v;
    };
    g.a = need("gate.a");
    g.c = need("gate.c");
    if (g.kind == GateKind::Strip) g.D = need("gate.D");
    try {
      g.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    cfg.gate = g;
  } else if (r.find("gate")) {
    throw ConfigError("gate.kind required");
  }

  if (auto v = r.grid("voltage", Dimension::Voltage))
    cfg.voltages = *v;
  else
    for (int i = 0; i <= 10; ++i) cfg.voltages.push_back(0.1 * i);

  if (auto v = r.quantity("placement.dx", Dimension::Length)) cfg.placement.dx = *v;
  if (auto v = r.quantity("placement.dz", Dimension::Length)) cfg.placement.dz = *v;

  if (auto v = r.number("error_budget.target")) cfg.target = *v;
  if (auto v = r.quantity("error_budget.line_width", Dimension::Frequency)) cfg.line_width = *v;
  if (auto v = r.quantity("error_budget.A0", Dimension::Frequency)) cfg.A0_Hz = *v;
  if (auto v = r.number("error_budget.sensitivity.quadratic")) cfg.sensitivity.quadratic = *v;
  if (auto v = r.number("error_budget.sensitivity.linear")) cfg.sensitivity.linear = *v;
  if (!(cfg.target > 0.0)) throw ConfigError("error_budget.target must be positive");
  if (!(cfg.line_width > 0.0)) throw ConfigError("error_budget.line_width must be positive");

  if (r.find("nulling")) {
    NullingSearch s;
    s.target = cfg.target;
    s.sensitivity = cfg.sensitivity;
    bool complete = true;
    if (auto v = r.range("nulling.a", Dimension::Length)) s.a = *v; else complete = false;
    if (auto v = r.range("nulling.c", Dimension::Length)) s.c = *v; else complete = false;
    if (auto v = r.range("nulling.V", Dimension::Voltage)) s.V = *v; else complete = false;
    if (auto v = r.quantity("nulling.dz", Dimension::Length)) s.dz = *v;
    if (auto v = r.number("nulling.target")) s.target = *v;
    if (const json* g = r.find("nulling.grid")) {
      if (!g->is_number_integer() || g->get<long>() < 2 || g->get<long>() > 10001)
        throw ConfigError("nulling.grid: expected an integer in [2, 10001]");
      s.grid = g->get<int>();
    }
    for (const auto& [name, rg] : {std::pair{"a", s.a}, std::pair{"c", s.c}, std::pair{"V", s.V}})
      if (rg.hi < rg.lo) throw ConfigError(std::string("nulling.") + name + ": from > to");
    if (complete) cfg.nulling = s;
  }

  if (auto v = r.number("spin.alpha_a")) cfg.spin.alpha_a = *v; else cfg.spin.alpha_a = 0.3;
  if (auto v = r.number("spin.alpha_b")) cfg.spin.alpha_b = *v; else cfg.spin.alpha_b = 0.4;
  if (auto m = r.string("spin.mu_mode")) {
    if (*m == "slaved")
      cfg.spin.mu_mode = MuMode::Slaved;
    else if (*m == "fixed")
      cfg.spin.mu_mode = MuMode::Fixed;
    else
      throw ConfigError("spin.mu_mode: expected \"slaved\" or \"fixed\"");
  }
  if (auto v = r.number("spin.mu")) {
    if (cfg.spin.mu_mode != MuMode::Fixed)
      throw ConfigError("spin.mu is only used with spin.mu_mode = \"fixed\"");
    cfg.spin.mu = *v;
  }
  {
    auto B = r.quantity("spin.B", Dimension::MagneticField);
    auto J = r.quantity("spin.J", Dimension::Energy);
    auto A = r.quantity("spin.A", Dimension::Energy);
    if (B || J || A) {
      if (!(B && J && A)) throw ConfigError("spin.B, spin.J and spin.A must be given together");
      if (!(*J > 0.0)) throw ConfigError("spin.J must be positive");
      cfg.physical_spin = PhysicalSpin{*B, *J, *A};
    }
  }

  if (auto v = r.grid("sweep.beta", std::nullopt))
    cfg.beta_grid = *v;
  else
    cfg.beta_grid = default_beta_grid();
  if (cfg.beta_grid.empty()) throw ConfigError("sweep.beta: at least one value required");
  if (auto v = r.boolean("sweep.refine")) cfg.refine = *v;
  if (auto v = r.grid("sweep.strong_field_beta", std::nullopt))
    cfg.strong_field_beta = *v;
  else
    cfg.strong_field_beta = {3.0, 5.0, 10.0};

  if (auto v = r.string("output.dir")) cfg.out_dir = *v;
  if (auto v = r.string("output.format")) cfg.format = parse_format(*v);
  return cfg;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  if (s == "both") return OutputFormat::Both;
  throw ConfigError("format: expected csv, json or both, got \"" + s + "\"");
}

const GateGeometry& RunConfig::require_gate() const {
  if (!gate) throw ConfigError("gate.kind required");
  return *gate;
}

RunConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides,
                       const std::string& origin) {
  json root = json::object();
  if (!json_text.empty()) {
    try {
      root = json::parse(json_text);
    } catch (const json::parse_error& e) {
      throw ConfigError(origin + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");
  }
  for (const auto& kv : overrides) apply_override(root, kv);
  return convert(root);
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::string text;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_config(text, overrides, path.empty() ? "config" : path);
}

}  // namespace kanesi::io
