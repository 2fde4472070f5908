#include "cli/config.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace ctcsim::cli {

namespace {

[[noreturn]] void fail_at(const YAML::Mark& mark, const std::string& what) {
  std::ostringstream os;
  if (mark.is_null())
    os << what;
  else
    os << "line " << mark.line + 1 << ", column " << mark.column + 1 << ": " << what;
  throw ConfigError(os.str());
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail_at(node.Mark(), "'" + key + "' has the wrong type");
  }
}

Complex parse_complex(const YAML::Node& node, const std::string& key) {
  if (node.IsScalar()) return {scalar<double>(node, key), 0.0};
  if (node.IsSequence() && node.size() == 2)
    return {scalar<double>(node[0], key), scalar<double>(node[1], key)};
  fail_at(node.Mark(), "'" + key + "' must be a number or a [re, im] pair");
}

Vector parse_vector(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence() || node.size() == 0) fail_at(node.Mark(), "'" + key + "' must be a nonempty list");
  Vector v(static_cast<Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) v(static_cast<Index>(i)) = parse_complex(node[i], key);
  return v;
}

Matrix parse_matrix(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence() || node.size() == 0) fail_at(node.Mark(), "'" + key + "' must be a list of rows");
  const auto rows = static_cast<Index>(node.size());
  Matrix m(rows, rows);
  for (std::size_t r = 0; r < node.size(); ++r) {
    Vector row = parse_vector(node[r], key);
    if (row.size() != rows) fail_at(node[r].Mark(), "'" + key + "' must be square");
    m.row(static_cast<Index>(r)) = row.transpose();
  }
  return m;
}

std::size_t parse_index(const YAML::Node& node, const std::string& key) {
  auto value = scalar<long long>(node, key);
  if (value < 0) fail_at(node.Mark(), "'" + key + "' must be nonnegative");
  return static_cast<std::size_t>(value);
}

void set_tolerance(Tolerances& tol, double* fidelity, const std::string& key, double value,
                   const YAML::Mark& mark) {
  if (!(value > 0.0)) fail_at(mark, "tolerance '" + key + "' must be positive");
  if (key == "norm") tol.norm = value;
  else if (key == "hermitian") tol.hermitian = value;
  else if (key == "psd") tol.psd = value;
  else if (key == "unitary") tol.unitary = value;
  else if (key == "distinct") tol.distinct = value;
  else if (key == "fidelity" && fidelity) *fidelity = value;
  else fail_at(mark, "unknown tolerance '" + key + "'");
}

void parse_tolerances(const YAML::Node& node, Tolerances& tol, double* fidelity) {
  if (!node) return;
  if (!node.IsMap()) fail_at(node.Mark(), "'tolerances' must be a mapping");
  for (const auto& kv : node) {
    auto key = kv.first.as<std::string>();
    set_tolerance(tol, fidelity, key, scalar<double>(kv.second, key), kv.second.Mark());
  }
}

void apply_tolerance_overrides(const std::vector<std::string>& items, Tolerances& tol, double* fidelity) {
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--tolerance expects key=value, got '" + item + "'");
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--tolerance value is not a number: '" + item + "'");
    }
    set_tolerance(tol, fidelity, item.substr(0, eq), value, YAML::Mark::null_mark());
  }
}

YAML::Node load_text(const std::string& text) {
  try {
    YAML::Node root = YAML::Load(text);
    if (!root.IsMap()) throw ConfigError("config must be a mapping of keys to values");
    return root;
  } catch (const YAML::ParserException& e) {
    fail_at(e.mark, e.msg);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void check_known_keys(const YAML::Node& root, std::initializer_list<const char*> known) {
  for (const auto& kv : root) {
    auto key = kv.first.as<std::string>();
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail_at(kv.first.Mark(), "unknown key '" + key + "'");
  }
}

}  // namespace

dctc::FixedPointPolicy parse_policy(const std::string& name) {
  if (name == "require_unique") return dctc::FixedPointPolicy::require_unique;
  if (name == "max_entropy") return dctc::FixedPointPolicy::max_entropy;
  throw ConfigError("unknown policy '" + name + "' (expected require_unique or max_entropy)");
}

std::string policy_name(dctc::FixedPointPolicy policy) {
  return policy == dctc::FixedPointPolicy::max_entropy ? "max_entropy" : "require_unique";
}

RunConfig parse_run_config(const std::string& text, const Overrides& overrides) {
  YAML::Node root = load_text(text);
  check_known_keys(root, {"states", "alpha", "beta", "m", "n", "seed", "policy", "tolerances"});
  RunConfig cfg;

  YAML::Node states = root["states"];
  if (!states) throw ConfigError("missing required key 'states'");
  if (!states.IsSequence() || states.size() == 0) fail_at(states.Mark(), "'states' must be a nonempty list");
  for (const auto& s : states) cfg.states.push_back(parse_vector(s, "states"));

  if (root["alpha"]) cfg.alpha = parse_complex(root["alpha"], "alpha");
  if (root["beta"]) cfg.beta = parse_complex(root["beta"], "beta");
  if (root["m"]) cfg.m = parse_index(root["m"], "m");
  if (root["n"]) cfg.n = parse_index(root["n"], "n");
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["policy"]) {
    try {
      cfg.policy = parse_policy(scalar<std::string>(root["policy"], "policy"));
    } catch (const ConfigError& e) {
      fail_at(root["policy"].Mark(), e.what());
    }
  }
  parse_tolerances(root["tolerances"], cfg.tolerances, &cfg.fidelity_tolerance);
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.policy) cfg.policy = parse_policy(*overrides.policy);
  apply_tolerance_overrides(overrides.tolerances, cfg.tolerances, &cfg.fidelity_tolerance);

  // Validated here so the message can point at the offending list.
  auto report = validate_state_set(cfg.states, cfg.tolerances);
  if (!report.ok()) fail_at(states.Mark(), "'states' " + report.first_failure());
  if (cfg.m.has_value() != cfg.n.has_value())
    fail_at((cfg.m ? root["m"] : root["n"]).Mark(), "'m' and 'n' must be given together");
  for (const char* key : {"m", "n"}) {
    if (root[key] && parse_index(root[key], key) >= cfg.states.size())
      fail_at(root[key].Mark(), std::string("'") + key + "' is out of range for the state set");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path, const Overrides& overrides) {
  return parse_run_config(read_file(path), overrides);
}

FixedPointConfig parse_fixed_point_config(const std::string& text, const Overrides& overrides) {
  YAML::Node root = load_text(text);
  check_known_keys(root, {"unitary", "rho_cr", "cr_state", "policy", "tolerances"});
  FixedPointConfig cfg;
  parse_tolerances(root["tolerances"], cfg.tolerances, nullptr);
  apply_tolerance_overrides(overrides.tolerances, cfg.tolerances, nullptr);

  YAML::Node u = root["unitary"];
  if (!u) throw ConfigError("missing required key 'unitary'");
  cfg.unitary = parse_matrix(u, "unitary");
  auto ureport = validate_unitary(cfg.unitary, cfg.tolerances);
  if (!ureport.ok()) fail_at(u.Mark(), "'unitary' " + ureport.first_failure());

  if (root["rho_cr"] && root["cr_state"]) fail_at(root["cr_state"].Mark(), "give either 'rho_cr' or 'cr_state'");
  if (root["rho_cr"]) {
    cfg.rho_cr = parse_matrix(root["rho_cr"], "rho_cr");
    auto r = validate_density(cfg.rho_cr, cfg.tolerances);
    if (!r.ok()) fail_at(root["rho_cr"].Mark(), "'rho_cr' " + r.first_failure());
  } else if (root["cr_state"]) {
    Vector v = parse_vector(root["cr_state"], "cr_state");
    auto r = validate_state(v, cfg.tolerances);
    if (!r.ok()) fail_at(root["cr_state"].Mark(), "'cr_state' " + r.first_failure());
    cfg.rho_cr = outer(v);
  } else {
    throw ConfigError("missing required key 'rho_cr' or 'cr_state'");
  }
  if (cfg.unitary.rows() % cfg.rho_cr.rows() != 0)
    fail_at(u.Mark(), "'unitary' dimension is not a multiple of the CR dimension");

  if (root["policy"]) {
    try {
      cfg.policy = parse_policy(scalar<std::string>(root["policy"], "policy"));
    } catch (const ConfigError& e) {
      fail_at(root["policy"].Mark(), e.what());
    }
  }
  if (overrides.policy) cfg.policy = parse_policy(*overrides.policy);
  return cfg;
}

FixedPointConfig load_fixed_point_config(const std::string& path, const Overrides& overrides) {
  return parse_fixed_point_config(read_file(path), overrides);
}

}  // namespace ctcsim::cli
