// Acceptance suite: one PASS/FAIL line per criterion.
//
//   surround_acceptance        run all criteria
//   surround_acceptance 3 7    run the listed criteria

#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include "surround/dynamics.hpp"
#include "surround/error.hpp"
#include "surround/oracle.hpp"
#include "surround/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

using namespace surround;
using namespace surround::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const char* kBundled[] = {"paper_fig1.json",         "paper_fig2.json",      "fig1_undirected.json",
                          "fixed_digraph_ball.json", "bipartite_point.json", "square_polygon.json"};

Trajectory integrate_scenario(const Scenario& s, std::size_t stride = 100) {
  IntegrateOptions o;
  o.step = s.step;
  o.stride = stride;
  return integrate(s.graph(), s.schedule(), s.body, s.x0, s.horizon, o);
}

double wrapped(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

// Random scenario with the point target at the origin; even trials use
// undirected paired arcs on a switching schedule, odd ones a fixed strongly
// connected digraph.
Scenario point_target_scenario(Rng& rng, int trial) {
  const std::size_t n = 2 + rng.index(5);
  const bool undirected = trial % 2 == 0;
  Scenario s = make_scenario("point " + std::to_string(trial), n,
                             undirected ? random_consistent_connected(rng, n, true)
                                        : random_strongly_connected(rng, n, true),
                             ConvexBody::singleton(0.0), random_points(rng, n, 5.0), 200.0);
  if (undirected) split_paired_schedule(rng, s, 2 + rng.index(2), 0.5 * (1 + rng.index(4)));
  return s;
}

// Random origin-centred ball scenario whose gauged initial mean is biased
// away from the body, so the initial-condition test holds in most draws.
Scenario ball_scenario(Rng& rng, int trial) {
  const std::size_t n = 2 + rng.index(5);
  const bool undirected = trial % 2 == 0;
  Scenario s = make_scenario("ball " + std::to_string(trial), n,
                             undirected ? random_consistent_connected(rng, n, true)
                                        : random_strongly_connected(rng, n, true),
                             ConvexBody::ball(0.0, rng.uniform(0.5, 1.5)), {}, 300.0);
  const auto gauge = gauge_potentials(s.graph());
  const Complex c = std::polar(rng.uniform(0.0, 4.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
  for (std::size_t i = 0; i < n; ++i) s.x0.push_back(c / gauge.p[i] + rng.point(3.0));
  if (undirected) split_paired_schedule(rng, s, 2, 1.0);
  return s;
}

Verdict criterion1() {
  const Scenario s = load_scenario(scenario_path("paper_fig1.json"));
  const auto t0 = std::chrono::steady_clock::now();
  const RunResult r = run_scenario(s);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto g = s.graph();
  const CVector& x = r.trajectory.samples.back().x;
  const CVector xp = projection_vectors(s.body, x);
  double angle = 0.0;
  for (const auto& a : g.arcs()) {
    angle = std::max(angle, std::abs(wrapped(std::arg(xp[a.from]) - std::arg(xp[a.to]) - std::arg(a.weight))));
  }
  const double spread = r.report.max_distance_final - r.report.min_distance_final;
  Verdict v;
  v.pass = r.report.classification == Outcome::Surrounded && r.report.max_surrounding_error_final < 1e-3 &&
           spread < 1e-3 && angle < 1e-3 && secs < 30.0;
  v.detail = std::string("classification=") + to_string(r.report.classification) +
             fmt(" error=%.3g", r.report.max_surrounding_error_final) + fmt(" distance_spread=%.3g", spread) +
             fmt(" max_angle_error=%.3g", angle) + fmt(" runtime=%.2fs", secs);
  return v;
}

Verdict criterion2() {
  const Scenario s = load_scenario(scenario_path("paper_fig2.json"));
  const RunResult r = run_scenario(s);
  Verdict v;
  v.pass = r.report.classification == Outcome::Collapsed && r.report.max_distance_final < 1e-3;
  v.detail = std::string("classification=") + to_string(r.report.classification) +
             fmt(" max_distance=%.3g", r.report.max_distance_final);
  return v;
}

Verdict criterion3() {
  Rng rng(3001);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Scenario s = point_target_scenario(rng, trial);
    const auto regime = trial % 2 == 0 ? PointTargetRegime::UndirectedSwitching
                                       : PointTargetRegime::FixedStronglyConnected;
    const auto pred = predict_point_target(s.graph(), s.x0, regime, s.tol.consistency);
    const CVector x = integrate_scenario(s).samples.back().x;
    double dev = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
      dev = std::max({dev, std::abs(x[i].real() - pred.limit[i].real()), std::abs(x[i].imag() - pred.limit[i].imag())});
    }
    worst = std::max(worst, dev);
    if (!(dev < 1e-6)) ++failures;
  }
  return {failures == 0, "50 scenarios" + fmt(" worst_component_deviation=%.3g", worst) +
                             " failures=" + std::to_string(failures)};
}

Verdict criterion4() {
  Rng rng(4001);
  int disagreements = 0, singular = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const bool forced = trial % 5 == 0;
    const auto g = to_graph(n, random_strongly_connected(rng, n, forced));
    const bool lemma = lemma3_singularity(g);
    const bool oracle = classify_from_catalog(brute_force_cycles(g, 8)) != Consistency::DirectedInconsistent;
    singular += lemma;
    if (lemma != oracle) ++disagreements;
  }
  return {disagreements == 0, "100 graphs singular=" + std::to_string(singular) +
                                  " disagreements=" + std::to_string(disagreements)};
}

Verdict criterion5() {
  Rng rng(5001);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const auto g = to_graph(n, random_strongly_connected(rng, n, rng.coin(0.3)));
    if (classify_consistency(g) == Consistency::DirectedConsistentOnly) ++bad;
  }
  // Two directed paths 1→2 with different products and no directed cycle.
  const auto counter = to_graph(3, {{0, 1, 0.5, 1}, {0, 2, 0.25, 1}, {2, 1, -0.75, 1}});
  const Consistency c = classify_consistency(counter);
  return {bad == 0 && c == Consistency::DirectedConsistentOnly,
          "strongly_connected_directed_only=" + std::to_string(bad) + " counterexample=" + to_string(c)};
}

Verdict criterion6() {
  Scenario s = load_scenario(scenario_path("fig1_undirected.json"));
  s.horizon = 2000.0;
  const auto gauge = gauge_potentials(s.graph());
  auto drift = [&](double h) {
    IntegrateOptions o;
    o.step = h;
    for (const auto& p : gauge.p) o.conserved_coefficients.push_back(p / static_cast<double>(s.n));
    return *integrate(s.graph(), s.schedule(), s.body, s.x0, s.horizon, o).conserved_drift;
  };
  const double d1 = drift(0.01), d2 = drift(0.02);
  const double ratio = d1 > 0.0 ? d2 / d1 : std::numeric_limits<double>::infinity();
  return {d1 < 1e-6 && ratio >= 8.0,
          fmt("drift(0.01)=%.3g", d1) + fmt(" drift(0.02)=%.3g", d2) + fmt(" ratio=%.3g", ratio)};
}

Verdict criterion7() {
  std::size_t runs = 0, violations = 0;
  double worst = 0.0;
  auto check = [&](const Scenario& s) {
    if (s.mode != WeightMode::Unit) return;
    const auto traj = integrate_scenario(s);
    ++runs;
    violations += traj.lyapunov_violations;
    worst = std::max(worst, traj.worst_lyapunov_increase);
  };
  for (const char* name : kBundled) check(load_scenario(scenario_path(name)));
  Rng rng(7001);
  for (int trial = 0; trial < 20; ++trial) check(point_target_scenario(rng, trial));
  for (int trial = 0; trial < 20; ++trial) check(ball_scenario(rng, trial));
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    Scenario s = make_scenario("polygon", n, random_consistent_connected(rng, n, true), random_polygon(rng),
                               random_points(rng, n, 6.0), 100.0);
    split_paired_schedule(rng, s, 3, 0.5);
    check(s);
  }
  return {violations == 0, std::to_string(runs) + " runs violations=" + std::to_string(violations) +
                               fmt(" worst_increase=%.3g", worst)};
}

Verdict criterion8() {
  Rng rng(8001);
  double relation = 0.0, error = 0.0, min_dist = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const bool paired = rng.coin();
    Scenario s = make_scenario("feasible", n, random_consistent_connected(rng, n, paired),
                               trial % 2 == 0 ? ConvexBody::ball(rng.point(1.0), rng.uniform(0.3, 2.0))
                                              : random_polygon(rng),
                               {}, 20.0);
    const auto g = s.graph();
    const Complex e = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
    s.x0 = theorem1_construct(g, s.body, rng.index(n), s.body.support_point(e) + rng.uniform(0.5, 3.0) * e);
    for (const auto& a : g.arcs()) {
      relation = std::max(relation, std::abs(a.weight * s.body.projection_vector(s.x0[a.to]) -
                                             s.body.projection_vector(s.x0[a.from])));
    }
    for (const auto& z : s.x0) min_dist = std::min(min_dist, s.body.distance(z));
    for (const auto& sample : integrate_scenario(s, 1).samples) {
      error = std::max(error, surrounding_error(g, s.body, sample.x));
    }
  }
  return {relation < 1e-9 && min_dist > 0.0 && error < 1e-6,
          fmt("max_relation_residual=%.3g", relation) + fmt(" min_distance=%.3g", min_dist) +
              fmt(" max_error_along_run=%.3g", error)};
}

Verdict criterion9() {
  std::size_t applicable = 0, collapsed = 0, bound_checks = 0, bound_failures = 0;
  double worst_slack = 1e300;
  auto check = [&](const Scenario& s) {
    const Analysis a = analyze_scenario(s);
    const auto* t3 = a.verdict("theorem3");
    const auto* t4 = a.verdict("theorem4");
    if (!(t3 && t3->hypothesis_satisfied) && !(t4 && t4->hypothesis_satisfied)) return;
    ++applicable;
    const RunResult r = run_scenario(s);
    if (!(r.report.d_star_estimate > 0.0) || r.report.classification == Outcome::Collapsed) ++collapsed;
    if (a.remark6_bound) {
      ++bound_checks;
      const double slack = r.report.min_distance_final + 1e-3 - *a.remark6_bound;
      worst_slack = std::min(worst_slack, slack);
      if (slack < 0.0) ++bound_failures;
    }
  };
  for (const char* name : kBundled) check(load_scenario(scenario_path(name)));
  Rng rng(9001);
  for (int trial = 0; trial < 40; ++trial) check(ball_scenario(rng, trial));
  return {collapsed == 0 && bound_failures == 0 && applicable > 0 && bound_checks > 0,
          std::to_string(applicable) + " scenarios meet a sufficient condition, collapsed=" +
              std::to_string(collapsed) + ", bound checked on " + std::to_string(bound_checks) +
              fmt(" (min slack %.3g)", worst_slack) + " failures=" + std::to_string(bound_failures)};
}

} // namespace

int main(int argc, char** argv) {
  const std::function<Verdict()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9};
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) {
    const int n = std::atoi(argv[k]);
    if (n < 1 || n > 9) {
      std::fprintf(stderr, "usage: %s [criterion 1-9 ...]\n", argv[0]);
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (int n = 1; n <= 9; ++n) selected.push_back(n);

  int failed = 0;
  for (int n : selected) {
    Verdict v;
    try {
      v = criteria[n - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s\n", n, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
