#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctcsim/dctc.hpp"
#include "ctcsim/errors.hpp"
#include "ctcsim/linalg.hpp"

namespace ctcsim::cli {

// Malformed or invalid configuration; the message carries "line L, column C"
// whenever the offending node is known.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct RunConfig {
  std::vector<Vector> states;
  std::optional<Complex> alpha;
  std::optional<Complex> beta;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::uint64_t seed = 0;
  dctc::FixedPointPolicy policy = dctc::FixedPointPolicy::require_unique;
  Tolerances tolerances;
  double fidelity_tolerance = 1e-6;  // success gate: fidelity ≥ 1 − this
};

struct FixedPointConfig {
  Matrix unitary;
  Matrix rho_cr;
  dctc::FixedPointPolicy policy = dctc::FixedPointPolicy::require_unique;
  Tolerances tolerances;
};

// Command-line overrides applied on top of a loaded config.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
  std::vector<std::string> tolerances;  // "key=value"
};

// Overrides are applied before validation, so a relaxed tolerance on the
// command line also relaxes the checks on the config's literals.
RunConfig load_run_config(const std::string& path, const Overrides& overrides = {});
RunConfig parse_run_config(const std::string& text, const Overrides& overrides = {});
FixedPointConfig load_fixed_point_config(const std::string& path, const Overrides& overrides = {});
FixedPointConfig parse_fixed_point_config(const std::string& text, const Overrides& overrides = {});

dctc::FixedPointPolicy parse_policy(const std::string& name);
std::string policy_name(dctc::FixedPointPolicy policy);

}  // namespace ctcsim::cli
