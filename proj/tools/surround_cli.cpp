// Command-line front end: simulate, analyze, construct, verify.

#include "surround/error.hpp"
#include "surround/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace surround;

namespace {

constexpr int kUsageOrInputError = 2;

struct Overrides {
  std::optional<double> step;
  std::optional<double> horizon;
  std::optional<double> tol;
  std::string expect;
};

Scenario load_with(const std::string& path, const Overrides& o) {
  Scenario s = load_scenario(path);
  if (o.step) s.step = *o.step;
  if (o.horizon) s.horizon = *o.horizon;
  if (o.tol) s.tol.consistency = *o.tol;
  if (!o.expect.empty()) s.expect = parse_outcome(o.expect);
  validate(s);
  return s;
}

Complex parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidArgument("seed point must be written a,b");
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("");
    const std::string rest = text.substr(comma + 1);
    const double im = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
    return {re, im};
  } catch (const std::logic_error&) {
    throw InvalidArgument("seed point must be written a,b with two numbers");
  }
}

struct JobResult {
  int code = kUsageOrInputError;
  std::string line;
};

JobResult simulate_one(const std::string& path, const Overrides& o, const fs::path& out) {
  JobResult r;
  try {
    const Scenario s = load_with(path, o);
    const RunResult run = run_scenario(s);
    r.code = emit_outputs(s, run, out);
    r.line = path + ": " + to_string(run.report.classification) + " -> " + out.string();
  } catch (const ScenarioError& e) {
    r.line = path + ": invalid scenario: " + e.what();
  } catch (const std::exception& e) {
    r.line = path + ": error: " + e.what();
  }
  return r;
}

int run_simulate(const std::vector<std::string>& paths, const Overrides& o, const std::string& out,
                 unsigned jobs) {
  std::vector<fs::path> dirs;
  for (const auto& p : paths) {
    dirs.push_back(paths.size() == 1 ? fs::path(out) : fs::path(out) / fs::path(p).stem());
  }
  std::vector<JobResult> results(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < paths.size(); k = next++) {
      results[k] = simulate_one(paths[k], o, dirs[k]);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, paths.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  for (const auto& r : results) {
    (r.code == kUsageOrInputError ? std::cerr : std::cout) << r.line << '\n';
    code = std::max(code, r.code);
  }
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set surrounding simulator for planar multi-agent systems"};
  app.set_version_flag("--version", std::string(SURROUND_VERSION));
  app.require_subcommand(1);

  Overrides o;
  std::vector<std::string> paths;
  std::string out = "out";
  unsigned jobs = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "Consistency tolerance")->check(CLI::PositiveNumber);
  };

  auto* sim = app.add_subcommand("simulate", "Integrate scenarios and write trajectory.csv/report.json");
  sim->add_option("scenario", paths, "Scenario JSON files")->required()->check(CLI::ExistingFile);
  sim->add_option("--step", o.step, "Integration step")->check(CLI::PositiveNumber);
  sim->add_option("--horizon", o.horizon, "Final time")->check(CLI::PositiveNumber);
  sim->add_option("--out", out, "Output directory (one subdirectory per scenario when several)");
  sim->add_option("--jobs", jobs, "Scenario files run in parallel")->check(CLI::PositiveNumber);
  sim->add_option("--expect", o.expect, "Expected classification")
      ->check(CLI::IsMember({"surrounded", "collapsed", "undecided"}));
  add_common(sim);

  std::string path;
  auto* ana = app.add_subcommand("analyze", "Classify the configuration graph and check theorem hypotheses");
  ana->add_option("scenario", path)->required()->check(CLI::ExistingFile);
  add_common(ana);

  std::size_t seed_node = 1;
  std::string seed_point;
  auto* con = app.add_subcommand("construct", "Build a configuration meeting every arc relation");
  con->add_option("scenario", path)->required()->check(CLI::ExistingFile);
  con->add_option("--seed-node", seed_node, "1-based node fixed by the seed point")->required();
  con->add_option("--seed-point", seed_point, "Seed position a,b outside the body")->required();
  add_common(con);

  double window = 0.0;
  auto* ver = app.add_subcommand("verify", "Check uniform joint strong connectivity");
  ver->add_option("scenario", path)->required()->check(CLI::ExistingFile);
  ver->add_option("--window", window, "Window length T")->required()->check(CLI::PositiveNumber);
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageOrInputError;
  }

  try {
    if (*sim) return run_simulate(paths, o, out, jobs);

    const Scenario s = load_with(path, o);
    if (*ana) {
      std::cout << analysis_to_json(analyze_scenario(s)).dump(2) << '\n';
      return 0;
    }
    if (*con) {
      if (seed_node < 1 || seed_node > s.n) throw InvalidArgument("seed node outside 1..n");
      const CVector z = theorem1_construct(s.graph(), s.body, seed_node - 1,
                                           parse_point(seed_point), s.tol.consistency);
      json arr = json::array();
      for (const auto& zi : z) arr.push_back(json::array({zi.real(), zi.imag()}));
      std::cout << json{{"z", arr}}.dump(2) << '\n';
      return 0;
    }
    if (*ver) {
      const bool ok = verify_ujsc(s.graph(), s.schedule(), window);
      std::cout << json{{"ujsc", ok}, {"window", window}}.dump(2) << '\n';
      return ok ? 0 : 1;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kUsageOrInputError;
}
