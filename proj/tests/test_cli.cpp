#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/report.hpp"

using namespace ctcsim;
using namespace ctcsim::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ctcsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(CTCSIM_FIXTURES) + "/" + name; }

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find(kTimestampKey) == std::string::npos) out += line + '\n';
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("run config parsing") {
  auto cfg = parse_run_config("states:\n  - [1, 0]\n  - [0, [0, 1]]\nalpha: [0.5, -0.5]\nbeta: 2\nm: 1\nn: 0\n");
  REQUIRE(cfg.states.size() == 2);
  CHECK(cfg.states[1](1) == Complex(0.0, 1.0));
  CHECK(*cfg.alpha == Complex(0.5, -0.5));
  CHECK(*cfg.beta == Complex(2.0, 0.0));
  CHECK(*cfg.m == 1);
  CHECK(cfg.seed == 0);
  CHECK(cfg.policy == dctc::FixedPointPolicy::require_unique);

  Overrides o;
  o.seed = 9;
  o.policy = "max_entropy";
  o.tolerances = {"fidelity=1e-3"};
  cfg = parse_run_config("states: [[1, 0], [0, 1]]\n", o);
  CHECK(cfg.seed == 9);
  CHECK(cfg.policy == dctc::FixedPointPolicy::max_entropy);
  CHECK(cfg.fidelity_tolerance == 1e-3);
}

TEST_CASE("config errors point at the offending line") {
  auto message = [](const std::string& text) {
    try {
      parse_run_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("states:\n  - [1, 0]\n  - [0, 1\nalpha: 1\n").find("line ") == 0);
  CHECK(message("states:\n  - [1, 0]\n  - [0, 1]\nbeta: one\n").find("line 4") == 0);
  CHECK(message("states:\n  - [1, 0]\n  - [1, 0]\n").find("distinct") != std::string::npos);
  CHECK(message("states:\n  - [1, 0]\n  - [0, 1]\ncolour: red\n").find("line 4") == 0);
  CHECK(message("states:\n  - [1, 0]\n  - [0, 1]\nm: 0\n").find("together") != std::string::npos);
  CHECK(message("states:\n  - [1, 0]\n  - [0, 1]\nm: 0\nn: 2\n").find("out of range") != std::string::npos);
  CHECK(message("states:\n  - [1, 0]\n  - [0.5, 0.5]\n").find("norm") != std::string::npos);

  CHECK_THROWS_AS(parse_fixed_point_config("unitary: [[1, 1], [0, 1]]\ncr_state: [1]\n"), ConfigError);
  CHECK_THROWS_AS(parse_fixed_point_config("unitary: [[1, 0], [0, 1]]\n"), ConfigError);
  CHECK_THROWS_AS(parse_fixed_point_config("unitary: [[1, 0, 0], [0, 1, 0], [0, 0, 1]]\ncr_state: [1, 0]\n"),
                  ConfigError);
}

TEST_CASE("text rendering uses 17 significant digits") {
  Json j;
  j["command"] = "x";
  j["value"] = 0.1;
  j["pair"] = to_json(Complex(1.0 / 3.0, -2.0));
  Json item;
  item["m"] = 0;
  j["runs"] = Json::array({item});
  std::string text = render_text(j);
  CHECK(text.find("value: 0.10000000000000001\n") != std::string::npos);
  CHECK(text.find("pair: [0.33333333333333331, -2]\n") != std::string::npos);
  CHECK(text.find("runs:\n  - m: 0\n") != std::string::npos);
  CHECK(std::strtod("0.33333333333333331", nullptr) == 1.0 / 3.0);
}

TEST_CASE("column phase deviation") {
  Matrix a(2, 2);
  a << 1, 0, 0, 1;
  Matrix b = a;
  b.col(1) *= Complex(0.0, 1.0);
  auto dev = column_phase_deviation(b, a);
  CHECK(dev[0] == 0.0);
  CHECK(dev[1] <= 1e-15);
  b.col(0) << 0, 1;
  CHECK(column_phase_deviation(b, a)[0] == doctest::Approx(1.0));
}

TEST_CASE("superpose command") {
  auto r = invoke({"superpose", fixture("paper_example.yaml")});
  CHECK(r.code == 0);
  CHECK(r.out.find("command: superpose") == 0);
  auto runs = invoke({"superpose", fixture("paper_example.yaml"), "--json"});
  CHECK(runs.code == 0);
  int lines = 0;
  for (char c : runs.out) lines += c == '\n';
  CHECK(lines == 4);
  auto first = Json::parse(runs.out.substr(0, runs.out.find('\n')));
  CHECK(first["run"]["fidelity"].get<double>() >= 1.0 - 1e-8);
  CHECK(first.contains("condition_report"));
  CHECK(first.contains("fixed_points"));

  CHECK(invoke({"superpose", fixture("zero_amplitudes.yaml")}).code == 2);
  auto cancel = invoke({"superpose", fixture("cancelling.yaml")});
  CHECK(cancel.code == 3);
  CHECK(cancel.err.find("cancel") != std::string::npos);
  CHECK(invoke({"superpose", fixture("duplicate.yaml")}).code == 2);
  auto bad = invoke({"superpose", fixture("malformed.yaml")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line ") != std::string::npos);
  CHECK(invoke({"superpose", fixture("bad_type.yaml")}).code == 2);
  CHECK(invoke({"superpose", fixture("missing.yaml")}).code == 2);
  CHECK(invoke({"superpose", fixture("zero_one.yaml"), "--tolerance", "fidelity=abc"}).code == 2);
  CHECK(invoke({"superpose", fixture("zero_one.yaml"), "--policy", "first"}).code == 2);
}

TEST_CASE("reports are deterministic apart from the timestamp") {
  auto a = invoke({"superpose", fixture("random5.yaml"), "--seed", "3"});
  auto b = invoke({"superpose", fixture("random5.yaml"), "--seed", "3"});
  REQUIRE(a.code == 0);
  CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));
  CHECK(a.out.find("seed: 3\n") != std::string::npos);
}

TEST_CASE("distinguish command") {
  auto r = invoke({"distinguish", fixture("paper_example.yaml"), "--json"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::size_t j = 0;
  while (std::getline(lines, line)) {
    auto obj = Json::parse(line);
    CHECK(obj["run"]["decoded"].get<std::size_t>() == j);
    CHECK(obj["run"]["unique"].get<bool>());
    ++j;
  }
  CHECK(j == 2);
  CHECK(invoke({"distinguish", fixture("zero_one.yaml")}).code == 0);
  CHECK(invoke({"distinguish", fixture("random5.yaml")}).code == 0);
}

TEST_CASE("fixed-point command") {
  auto swap = invoke({"fixed-point", fixture("fixed_swap.yaml"), "--json"});
  REQUIRE(swap.code == 0);
  auto obj = Json::parse(swap.out);
  CHECK(obj["run"]["unique"].get<bool>());
  CHECK(obj["run"]["fixed_point"][0][1][0].get<double>() == doctest::Approx(0.5));

  auto id = invoke({"fixed-point", fixture("fixed_identity.yaml"), "--json"});
  REQUIRE(id.code == 0);
  obj = Json::parse(id.out);
  CHECK(obj["run"]["fixed_space_dim"].get<int>() == 4);
  CHECK(obj["run"]["fixed_point"][0][0][0].get<double>() == doctest::Approx(0.5));
  CHECK(obj["run"]["entropy"].get<double>() == doctest::Approx(std::log(2.0)));
  CHECK(invoke({"fixed-point", fixture("fixed_identity.yaml"), "--policy", "require_unique"}).code == 3);

  auto dist = invoke({"fixed-point", fixture("fixed_distinguisher.yaml"), "--json"});
  REQUIRE(dist.code == 0);
  obj = Json::parse(dist.out);
  CHECK(obj["run"]["fixed_point"][1][1][0].get<double>() == doctest::Approx(1.0));

  CHECK(invoke({"fixed-point", fixture("nonunitary.yaml")}).code == 2);
}

TEST_CASE("example command") {
  auto r = invoke({"example"});
  CHECK(r.code == 0);
  CHECK(r.out.find("passed: true") != std::string::npos);
  auto single = invoke({"example", "--alpha", "1", "--beta", "0", "--json"});
  CHECK(single.code == 0);
  auto obj = Json::parse(single.out.substr(0, single.out.find('\n')));
  CHECK(obj["run"]["block"] == "0,0");
  std::istringstream lines(single.out);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  obj = Json::parse(line);
  CHECK(obj["run"]["constructed"][0][0][0].get<double>() == 1.0);
  CHECK(obj["run"]["constructed"][1][0][0].get<double>() == 0.0);
  CHECK(invoke({"example", "--alpha", "0", "--beta", "0"}).code == 2);
}

TEST_CASE("--out writes the report to a file") {
  std::string path = (std::filesystem::temp_directory_path() / "ctcsim_out_report.txt").string();
  auto r = invoke({"example", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::remove(path.c_str());
  CHECK(invoke({"example", "--out", "/nonexistent-dir/report.txt"}).code == 1);
}

}  // TEST_SUITE
