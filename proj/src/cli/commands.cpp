#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ctcsim/brun.hpp"
#include "ctcsim/dctc.hpp"
#include "ctcsim/errors.hpp"
#include "ctcsim/superpose.hpp"

namespace ctcsim::cli {

namespace {

constexpr double kExampleTolerance = 1e-9;

StateSet make_set(const RunConfig& config) {
  std::vector<StateVector> states;
  for (const auto& v : config.states) states.emplace_back(v, config.tolerances);
  return StateSet(std::move(states), config.tolerances);
}

Json header(const std::string& command) {
  Json h;
  h["command"] = command;
  h[kTimestampKey] = utc_timestamp();
  return h;
}

Json condition_json(const brun::ConditionReport& r) {
  Json j;
  j["overlaps"] = to_json(r.overlaps);
  j["min_overlap"] = r.min_overlap;
  j["condition1_deviation"] = r.condition1_deviation;
  return j;
}

Json distinguish_json(std::size_t member, const brun::DistinguishResult& r) {
  Json j;
  j["member"] = member;
  j["decoded"] = r.decoded;
  j["fidelity_to_basis"] = r.fidelity_to_basis;
  j["residual"] = r.residual;
  j["fixed_space_dim"] = r.fixed_space_dim;
  j["unique"] = r.unique;
  j["input_in_set"] = r.input_in_set;
  j["rho_ctc"] = to_json(r.rho_ctc.matrix());
  j["rho_out"] = to_json(r.rho_out.matrix());
  return j;
}

superpose::SuperpositionSpec spec_from(const RunConfig& config) {
  if (!config.alpha || !config.beta) throw ConfigError("superpose needs both 'alpha' and 'beta'");
  return superpose::SuperpositionSpec(*config.alpha, *config.beta);
}

Matrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2);
  h << s, s, s, -s;
  return h;
}

}  // namespace

CommandReport superpose_report(const RunConfig& config) {
  StateSet set = make_set(config);
  auto spec = spec_from(config);
  auto bundle = brun::build_distinguisher(set, config.seed);
  auto u_prime = superpose::build_u_prime(set, spec, bundle.uks);

  CommandReport report;
  report.header = header("superpose");
  report.header["seed"] = config.seed;
  report.header["dimension"] = set.size();
  report.header["alpha"] = to_json(spec.alpha());
  report.header["beta"] = to_json(spec.beta());
  report.header["fidelity_threshold"] = 1.0 - config.fidelity_tolerance;
  report.header["condition_report"] = condition_json(brun::condition_report(set, bundle.uks));
  Json fixed = Json::array();
  for (std::size_t j = 0; j < set.size(); ++j) {
    auto r = brun::distinguish(bundle, set[j]);
    Json entry;
    entry["member"] = j;
    entry["residual"] = r.residual;
    entry["fixed_space_dim"] = r.fixed_space_dim;
    entry["unique"] = r.unique;
    fixed.push_back(entry);
  }
  report.header["fixed_points"] = fixed;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (config.m && config.n) {
    pairs.emplace_back(*config.m, *config.n);
  } else {
    for (std::size_t m = 0; m < set.size(); ++m)
      for (std::size_t n = 0; n < set.size(); ++n) pairs.emplace_back(m, n);
  }

  report.passed = true;
  for (auto [m, n] : pairs) {
    auto r = superpose::run_protocol(bundle, u_prime, m, n, spec);
    const bool ok = r.fidelity >= 1.0 - config.fidelity_tolerance;
    report.passed = report.passed && ok;
    Json run;
    run["m"] = m;
    run["n"] = n;
    run["gamma"] = superpose::gamma(set, m, n, spec);
    run["ancilla_state"] = to_json(r.ancilla_state.amplitudes());
    run["expected"] = to_json(r.expected.amplitudes());
    run["fidelity"] = r.fidelity;
    run["fixed_point_residuals"] = Json::array({r.fixed_point_residuals.first, r.fixed_point_residuals.second});
    run["decoded_indices"] = Json::array({r.decoded_indices.first, r.decoded_indices.second});
    run["ancilla_second_eigenvalue"] = r.ancilla_second_eigenvalue;
    run["passed"] = ok;
    report.runs.push_back(run);
  }
  report.header["passed"] = report.passed;
  return report;
}

CommandReport distinguish_report(const RunConfig& config) {
  StateSet set = make_set(config);
  auto bundle = brun::build_distinguisher(set, config.seed);

  CommandReport report;
  report.header = header("distinguish");
  report.header["seed"] = config.seed;
  report.header["policy"] = policy_name(config.policy);
  report.header["dimension"] = set.size();
  report.header["condition_report"] = condition_json(brun::condition_report(set, bundle.uks));
  report.passed = true;
  for (std::size_t j = 0; j < set.size(); ++j) {
    auto r = brun::distinguish(bundle, set[j], config.policy);
    report.passed = report.passed && r.decoded == j;
    report.runs.push_back(distinguish_json(j, r));
  }
  report.header["passed"] = report.passed;
  return report;
}

CommandReport fixed_point_report(const FixedPointConfig& config) {
  UnitaryMatrix u(config.unitary, config.tolerances);
  DensityMatrix rho(config.rho_cr, config.tolerances);
  auto fp = dctc::fixed_point(u, rho, config.policy);

  CommandReport report;
  report.header = header("fixed-point");
  report.header["policy"] = policy_name(config.policy);
  report.header["cr_dimension"] = rho.dim();
  report.header["ctc_dimension"] = fp.fixed_point.dim();
  Json run;
  run["fixed_point"] = to_json(fp.fixed_point.matrix());
  run["residual"] = fp.residual;
  run["fixed_space_dim"] = fp.fixed_space_dim;
  run["unique"] = fp.unique;
  run["entropy"] = von_neumann_entropy(fp.fixed_point.matrix());
  run["output_state"] = to_json(dctc::output_state(u, rho, fp.fixed_point).matrix());
  report.runs.push_back(run);
  report.passed = true;
  report.header["passed"] = true;
  return report;
}

std::vector<Matrix> printed_example_blocks(Complex alpha, Complex beta) {
  const double s = 1.0 / std::sqrt(2.0);
  auto off_diagonal = [s](Complex a, Complex b) {
    Matrix m(2, 2);
    m << a + b * s, std::conj(b) * s, -b * s, std::conj(a) + std::conj(b) * s;
    const double g = std::sqrt(std::norm(a + b * s) + std::norm(b * s));
    return Matrix(m / g);
  };
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return {Matrix::Identity(2, 2), off_diagonal(alpha, beta), off_diagonal(beta, alpha), hadamard() * x};
}

std::vector<double> column_phase_deviation(const Matrix& built, const Matrix& reference) {
  std::vector<double> out;
  for (Index c = 0; c < built.cols(); ++c) {
    Complex overlap = reference.col(c).dot(built.col(c));
    Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
    out.push_back((built.col(c) - phase * reference.col(c)).cwiseAbs().maxCoeff());
  }
  return out;
}

CommandReport example_report(double alpha, double beta, std::uint64_t seed) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector minus(2);
  minus << s, -s;
  StateSet set({StateVector::basis(2, 0), StateVector(minus)});
  superpose::SuperpositionSpec spec(alpha, beta);
  auto bundle = brun::build_distinguisher(set, seed);

  CommandReport report;
  report.header = header("example");
  report.header["seed"] = seed;
  report.header["states"] = Json::array({to_json(set[0].amplitudes()), to_json(set[1].amplitudes())});
  report.header["alpha"] = alpha;
  report.header["beta"] = beta;

  Matrix printed_total = Matrix::Zero(4, 4);
  printed_total.block(0, 0, 2, 2) = Matrix::Identity(2, 2);
  printed_total.block(2, 2, 2, 2) = hadamard();
  printed_total = printed_total * brun::swap_unitary(2).matrix();
  const double total_dev = max_entry_norm(bundle.total.matrix() - printed_total);
  Json dist;
  dist["constructed"] = to_json(bundle.total.matrix());
  dist["printed"] = to_json(printed_total);
  dist["max_deviation"] = total_dev;
  report.header["distinguisher"] = dist;

  double worst = total_dev;
  auto printed = printed_example_blocks(alpha, beta);
  const char* labels[4] = {"0,0", "0,1", "1,0", "1,1"};
  for (std::size_t b = 0; b < 4; ++b) {
    const std::size_t i = b / 2, j = b % 2;
    Matrix built = superpose::build_u_ij(set, i, j, spec, bundle.uks).matrix();
    auto devs = column_phase_deviation(built, printed[b]);
    double block_worst = 0.0;
    for (double d : devs) block_worst = std::max(block_worst, d);
    worst = std::max(worst, block_worst);
    Json run;
    run["block"] = labels[b];
    run["constructed"] = to_json(built);
    run["printed"] = to_json(printed[b]);
    run["column_deviation"] = devs;
    run["max_deviation"] = block_worst;
    report.runs.push_back(run);
  }
  report.passed = worst < kExampleTolerance;
  report.header["max_deviation"] = worst;
  report.header["passed"] = report.passed;
  return report;
}

std::string render(const CommandReport& report, bool json) {
  if (!json) {
    Json doc = report.header;
    doc["runs"] = report.runs;
    return render_text(doc);
  }
  std::string out;
  for (const auto& run : report.runs) {
    Json obj = report.header;
    obj["run"] = run;
    out += render_json(obj);
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deutsch-CTC state discrimination and superposition simulator", "ctcsim"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  std::uint64_t seed = 0;
  std::string policy;
  std::string out_path;
  bool json = false;
  double alpha = 1.0 / std::sqrt(2.0);
  double beta = 1.0 / std::sqrt(2.0);

  auto add_common = [&](CLI::App* sub, bool with_seed) {
    if (with_seed) sub->add_option("--seed", seed, "Seed for the randomized U_k completion");
    sub->add_option("--out", out_path, "Write the report to this path instead of stdout");
    sub->add_flag("--json", json, "Emit one JSON object per run");
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "Config file (YAML/JSON)")->required();
    sub->add_option("--policy", policy, "Fixed-point selection: require_unique or max_entropy");
    sub->add_option("--tolerance", overrides.tolerances, "Tolerance override key=value (repeatable)");
  };

  auto* superpose_cmd = app.add_subcommand("superpose", "Superpose two members of a known state set");
  add_config(superpose_cmd);
  add_common(superpose_cmd, true);
  auto* distinguish_cmd = app.add_subcommand("distinguish", "Decode every member of a state set");
  add_config(distinguish_cmd);
  add_common(distinguish_cmd, true);
  auto* fixed_cmd = app.add_subcommand("fixed-point", "Solve the CTC self-consistency condition");
  add_config(fixed_cmd);
  add_common(fixed_cmd, false);
  auto* example_cmd = app.add_subcommand("example", "Reproduce the two-state worked example");
  example_cmd->add_option("--alpha", alpha, "Real amplitude alpha");
  example_cmd->add_option("--beta", beta, "Real amplitude beta");
  add_common(example_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  auto seed_given = [&](CLI::App* sub) { return sub->count("--seed") > 0; };

  try {
    CommandReport report;
    if (!policy.empty()) overrides.policy = policy;
    if (superpose_cmd->parsed() || distinguish_cmd->parsed()) {
      CLI::App* sub = superpose_cmd->parsed() ? superpose_cmd : distinguish_cmd;
      if (seed_given(sub)) overrides.seed = seed;
      RunConfig config = load_run_config(config_path, overrides);
      report = superpose_cmd->parsed() ? superpose_report(config) : distinguish_report(config);
    } else if (fixed_cmd->parsed()) {
      report = fixed_point_report(load_fixed_point_config(config_path, overrides));
    } else {
      report = example_report(alpha, beta, seed);
    }

    const std::string text = render(report, json);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path);
      if (!file) {
        err << "error: cannot write report to '" << out_path << "'\n";
        return kInternalError;
      }
      file << text;
    }
    if (!report.passed) {
      err << "error: run did not meet its success criterion\n";
      return kProtocolError;
    }
    return kSuccess;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidationError;
  } catch (const ProtocolError& e) {
    err << "protocol error: " << e.what() << '\n';
    return kProtocolError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace ctcsim::cli
