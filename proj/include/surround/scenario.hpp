#pragma once

#include "surround/dynamics.hpp"
#include "surround/geometry.hpp"
#include "surround/oracle.hpp"
#include "surround/topology.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace surround {

/// Configuration weight as written in scenario files: w = modulus·e^{ι·π·arg_over_pi}.
/// Nodes are 0-based here and 1-based in JSON.
struct WeightSpec {
  std::size_t from = 0;
  std::size_t to = 0;
  double arg_over_pi = 0.0;
  double modulus = 1.0;

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

/// e^{ι·π·arg_over_pi}, exact at multiples of π/2.
Complex unit_phase(double arg_over_pi);

struct Tolerances {
  double consistency = 1e-9;
  double convergence = 1e-3;
  double singular = 1e-9;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct Scenario {
  std::string name;
  std::size_t n = 0;
  WeightMode mode = WeightMode::Unit;
  std::vector<WeightSpec> weights;
  ConvexBody body = ConvexBody::singleton(Complex{});
  std::vector<ScheduleSegment> segments;
  bool repeat = true;
  double dwell_floor = 1.0;
  CVector x0;
  double horizon = 0.0;
  double step = 0.01;
  std::size_t stride = 100;
  Tolerances tol;
  std::optional<double> ujsc_window;
  std::optional<Outcome> expect;

  ConfigurationGraph graph() const;
  SwitchingSchedule schedule() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses and validates. Violations raise ScenarioError naming the first
/// offending field as a JSON path.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Re-checks every invariant; used after command-line overrides.
void validate(const Scenario& s);

nlohmann::json scenario_to_json(const Scenario& s);

std::optional<Outcome> parse_outcome(const std::string& text);

struct Analysis {
  Consistency consistency = Consistency::WeaklyConsistent;
  bool strongly_connected = false;
  bool undirected = false;
  bool fixed_graph = false;
  double ujsc_window = 0.0;
  bool ujsc = false;
  std::optional<GaugePotentials> gauge;
  std::optional<std::vector<double>> alpha;
  std::optional<bool> lemma3_singular;
  std::optional<double> remark6_bound;
  std::optional<PointTargetPrediction> point_limit;
  std::vector<TheoremVerdict> verdicts;

  /// Coefficients of the linear invariant monitored during integration, if
  /// the scenario has one (gauged mean or α-weighted gauged sum).
  CVector conserved_coefficients;

  const TheoremVerdict* verdict(const std::string& theorem) const;
};

/// Classification, connectivity, gauge and theorem checks without integrating.
Analysis analyze_scenario(const Scenario& s);

struct RunResult {
  Analysis analysis;
  Trajectory trajectory;
  MonitorReport report;
};

/// analyze_scenario followed by integration and classification.
/// Bit-for-bit deterministic for identical inputs.
RunResult run_scenario(const Scenario& s);

nlohmann::json analysis_to_json(const Analysis& a);
nlohmann::json report_to_json(const Scenario& s, const RunResult& r);

/// CSV text of the trajectory: t, then re/im/dist per agent, then d and the
/// invariant's re/im (nan when none is monitored). 12 significant digits, LF.
std::string trajectory_csv(const Trajectory& traj);

/// 0 when the classification matches `expect`, or, without an expectation,
/// when the run ended Surrounded or Collapsed; 1 otherwise.
int exit_code(Outcome classification, std::optional<Outcome> expect);

/// Writes trajectory.csv and report.json into `out_dir` (created if needed)
/// and returns the exit code for the run.
int emit_outputs(const Scenario& s, const RunResult& r, const std::filesystem::path& out_dir);

} // namespace surround
