#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include "surround/dynamics.hpp"
#include "surround/error.hpp"
#include "surround/oracle.hpp"

#include <doctest.h>

using namespace surround;
using namespace surround::testing;

namespace {

constexpr Complex I{0.0, 1.0};

const ConvexBody kUnitBall = ConvexBody::ball(0.0, 1.0);

ConvexBody square() {
  return ConvexBody::polygon(std::vector<Complex>{-1.0 - I, 1.0 - I, 1.0 + I, -1.0 + I});
}

CVector run(const ConfigurationGraph& g, const SwitchingSchedule& sched, const ConvexBody& body,
            const CVector& x0, double horizon) {
  IntegrateOptions o;
  o.step = 0.01;
  return integrate(g, sched, body, x0, horizon, o).samples.back().x;
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("feasible configuration examples") {
  const auto g = to_graph(2, {{0, 1, 0.5, 1}});
  const CVector z = theorem1_construct(g, kUnitBall, 1, 2.0);
  CHECK(z[1] == Complex{2.0});
  CHECK(std::abs(z[0] - 2.0 * I) < 1e-15);

  const CVector zs = theorem1_construct(g, square(), 1, 3.0);
  CHECK(std::abs(zs[0] - (1.0 + 3.0 * I)) < 1e-15);
  CHECK(std::abs(square().project(zs[0]) - (1.0 + I)) < 1e-15);

  Rng rng(51);
  const auto ones = to_graph(4, {{0, 1, 0, 1}, {2, 1, 0, 1}, {3, 2, 0, 1}});
  for (int trial = 0; trial < 10; ++trial) {
    const ConvexBody body = random_body(rng);
    Complex seed = rng.point(8.0);
    if (body.distance(seed) == 0.0) seed += 20.0;
    const CVector zz = theorem1_construct(ones, body, rng.index(4), seed);
    for (const auto& zi : zz) CHECK(std::abs(body.projection_vector(zi) - body.projection_vector(seed)) < 1e-9);
  }
}

TEST_CASE("feasible configuration errors") {
  CHECK_THROWS_AS(theorem1_construct(to_graph(5, ring5_chord_weights()), kUnitBall, 0, 3.0), ConsistencyError);
  CHECK_THROWS_AS(theorem1_construct(to_graph(3, {{0, 1, 0, 1}}), kUnitBall, 0, 3.0), ConnectivityError);
  CHECK_THROWS_AS(theorem1_construct(to_graph(2, {{0, 1, 0, 1}}), kUnitBall, 0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(theorem1_construct(to_graph(2, {{0, 1, 0, 1}}), kUnitBall, 2, 3.0), InvalidArgument);
}

TEST_CASE("feasible configurations satisfy every arc relation") {
  Rng rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.index(6);
    const auto g = to_graph(n, random_consistent_connected(rng, n, rng.coin()));
    const ConvexBody body = rng.coin() ? ConvexBody::ball(rng.point(1.0), rng.uniform(0.3, 2.0)) : random_polygon(rng);
    const Complex e = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
    const Complex seed = body.support_point(e) + rng.uniform(0.5, 3.0) * e;
    const CVector z = theorem1_construct(g, body, rng.index(n), seed);
    for (const auto& a : g.arcs()) {
      CHECK(std::abs(a.weight * body.projection_vector(z[a.to]) - body.projection_vector(z[a.from])) < 1e-9);
    }
    for (const auto& zi : z) CHECK(body.distance(zi) > 0.0);
  }
}

TEST_CASE("initial-condition tests for undirected graphs") {
  const auto ones = gauge_potentials(to_graph(3, {{0, 1, 0, 1}, {1, 0, 0, 1}, {1, 2, 0, 1}, {2, 1, 0, 1}}));
  const auto yes = theorem3_condition(ones, CVector{10.0, 10.0, 10.0}, kUnitBall);
  CHECK(yes.hypothesis_satisfied);
  CHECK(std::get<double>(yes.predicted) == doctest::Approx(9.0));
  const auto no = theorem3_condition(ones, CVector{0.5, 0.2 * I, -0.3}, kUnitBall);
  CHECK_FALSE(no.hypothesis_satisfied);
  CHECK(std::holds_alternative<std::monostate>(no.predicted));
}

TEST_CASE("initial-condition tests for fixed digraphs") {
  const auto ring = to_graph(4, {{0, 1, 0, 1}, {1, 2, 0, 1}, {2, 3, 0, 1}, {3, 0, 0, 1}});
  const auto gauge = gauge_potentials(ring);
  const auto alpha = stationary_weights(ring, gauge);
  for (double a : alpha) CHECK(a == doctest::Approx(0.25));
  const CVector x0{3.0, 2.0 * I, 1.0 + I, 4.0};
  const auto t4 = theorem4_condition(gauge, alpha, x0, kUnitBall);
  const auto t3 = theorem3_condition(gauge, x0, kUnitBall);
  CHECK(t4.hypothesis_satisfied == t3.hypothesis_satisfied);
  CHECK(std::get<double>(t4.predicted) == doctest::Approx(std::get<double>(t3.predicted)).epsilon(1e-14));
  CHECK_FALSE(theorem4_condition(gauge, alpha, CVector(4), kUnitBall).hypothesis_satisfied);
  CHECK_THROWS_AS(theorem4_condition(gauge, std::vector<double>{0.5, 0.5, 0.0, 0.0}, x0, kUnitBall),
                  InvalidArgument);

  // Three-node digraph; α = (3, 2, 1)/6 by hand elimination.
  const auto tri = to_graph(3, {{0, 1, 0.5, 1}, {1, 0, -0.5, 1}, {1, 2, 0.5, 1}, {2, 1, -0.5, 1}, {2, 0, -1.0, 1}});
  const auto tg = gauge_potentials(tri);
  const auto ta = stationary_weights(tri, tg);
  CHECK(ta[0] == doctest::Approx(0.5));
  CHECK(ta[1] == doctest::Approx(1.0 / 3.0));
  CHECK(ta[2] == doctest::Approx(1.0 / 6.0));
  const CVector y0{4.0 + I, -4.0 * I, -3.5};
  const auto v = theorem4_condition(tg, ta, y0, kUnitBall);
  REQUIRE(v.hypothesis_satisfied);
  const CVector end = run(tri, SwitchingSchedule::fixed(tri), kUnitBall, y0, 300.0);
  CHECK(lyapunov_d(kUnitBall, end) > 0.0);
  CHECK(kUnitBall.distance(end[0]) >= std::get<double>(v.predicted) - 1e-3);
}

TEST_CASE("singularity test") {
  CHECK(lemma3_singularity(to_graph(3, {{0, 1, 0, 1}, {1, 2, 0, 1}, {2, 0, 0, 1}})));
  CHECK_FALSE(lemma3_singularity(to_graph(5, ring5_chord_weights())));
  CHECK(lemma3_singularity(to_graph(5, ring5_weights())));
  CHECK_THROWS_AS(lemma3_singularity(to_graph(3, {{0, 1, 0, 1}, {1, 2, 0, 1}})), HypothesisError);
}

TEST_CASE("point-target limits") {
  const auto undirected = to_graph(3, {{0, 1, 0, 1}, {1, 0, 0, 1}, {1, 2, 0, 1}, {2, 1, 0, 1}});
  const CVector x0{1.0, 2.0 * I, -3.0};
  const auto pred = predict_point_target(undirected, x0, PointTargetRegime::UndirectedSwitching);
  for (const auto& z : pred.limit) CHECK(std::abs(z - (-2.0 + 2.0 * I) / 3.0) < 1e-15);

  // Structurally balanced 4-node path; p = (1, −1, −1, 1) splits {1, 4} from {2, 3}.
  const auto balanced = to_graph(4, {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 2, 0, 1}, {2, 1, 0, 1}, {2, 3, 1, 1}, {3, 2, 1, 1}});
  const CVector y0{{1, 2}, {-3, 1}, {2, -2}, {0.5, 3}};
  const auto bp = predict_point_target(balanced, y0, PointTargetRegime::UndirectedSwitching);
  const Complex m = ((1.0 + 2.0 * I) + (3.0 - I) + (-2.0 + 2.0 * I) + (0.5 + 3.0 * I)) / 4.0;
  CHECK(std::abs(bp.limit[0] - m) < 1e-15);
  CHECK(std::abs(bp.limit[1] + m) < 1e-15);
  CHECK(std::abs(bp.limit[2] + m) < 1e-15);
  CHECK(std::abs(bp.limit[3] - m) < 1e-15);
  const CVector sim = run(balanced, SwitchingSchedule::fixed(balanced), ConvexBody::singleton(0.0), y0, 100.0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(sim[i] - bp.limit[i]) < 1e-6);

  const auto bad = predict_point_target(to_graph(5, ring5_chord_weights()), ring5_x0(),
                                        PointTargetRegime::FixedStronglyConnected);
  CHECK(bad.inconsistent);
  for (const auto& z : bad.limit) CHECK(z == Complex{});

  CHECK_THROWS_AS(predict_point_target(to_graph(5, ring5_weights()), ring5_x0(), PointTargetRegime::UndirectedSwitching),
                  HypothesisError);
  CHECK_THROWS_AS(predict_point_target(to_graph(3, {{0, 1, 0, 1}, {1, 2, 0, 1}}), x0,
                                       PointTargetRegime::FixedStronglyConnected),
                  HypothesisError);
}

TEST_CASE("point-target simulation matches the closed form") {
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const bool undirected = trial % 2 == 0;
    Scenario s = make_scenario("pt", n,
                               undirected ? random_consistent_connected(rng, n, true) : random_strongly_connected(rng, n, true),
                               ConvexBody::singleton(0.0), random_points(rng, n, 5.0), 200.0);
    if (undirected) split_paired_schedule(rng, s, 2, 1.0);
    const auto pred = predict_point_target(s.graph(), s.x0,
                                           undirected ? PointTargetRegime::UndirectedSwitching
                                                      : PointTargetRegime::FixedStronglyConnected);
    const CVector end = run(s.graph(), s.schedule(), s.body, s.x0, s.horizon);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(end[i] - pred.limit[i]) < 1e-6);
  }
}

TEST_CASE("distance bound for balls") {
  const auto ones = gauge_potentials(to_graph(2, {{0, 1, 0, 1}, {1, 0, 0, 1}}));
  CHECK(*remark6_bound(ones, CVector{5.0, 5.0}, kUnitBall) == doctest::Approx(4.0));
  CHECK_FALSE(remark6_bound(ones, CVector{1.0, 1.0}, kUnitBall).has_value());
  CHECK_THROWS_AS(remark6_bound(ones, CVector{5.0, 5.0}, ConvexBody::ball(1.0, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(remark6_bound(ones, CVector{5.0, 5.0}, square()), InvalidArgument);

  const auto g = to_graph(5, ring5_weights());
  const auto bound = remark6_bound(gauge_potentials(g), ring5_x0(), kUnitBall);
  REQUIRE(bound.has_value());
  const CVector end = run(g, SwitchingSchedule(g, ring5_segments(), true, 5.0), kUnitBall, ring5_x0(), 2000.0);
  double min_dist = 1e300;
  for (const auto& z : end) min_dist = std::min(min_dist, kUnitBall.distance(z));
  CHECK(*bound <= min_dist + 1e-3);
}

TEST_CASE("exhaustive cycle catalog") {
  const auto tri = brute_force_cycles(to_graph(3, {{0, 1, 0, 1}, {1, 2, 0, 1}, {2, 0, 0, 1}}));
  CHECK(tri.weak.size() == 1);
  CHECK(tri.directed.size() == 1);
  for (const auto& c : tri.weak) CHECK(c.holonomy == Complex{1.0});

  const auto g = to_graph(5, ring5_chord_weights());
  const auto cat = brute_force_cycles(g);
  bool found = false;
  for (const auto& c : cat.directed) {
    std::vector<std::size_t> arcs;
    for (const auto& s : c.cycle.steps) arcs.push_back(s.arc);
    if (arcs == std::vector<std::size_t>{5, 3, 4}) {
      found = true;
      CHECK(std::abs(c.holonomy - std::polar(1.0, std::numbers::pi / 6)) < 1e-15);
    }
    CHECK(std::abs(cycle_holonomy(g, c.cycle) - c.holonomy) < 1e-15);
  }
  CHECK(found);
  CHECK(cat.directed.size() == 2);
  CHECK(cat.weak.size() == 3);

  const auto tree = brute_force_cycles(to_graph(4, {{0, 1, 0, 1}, {0, 2, 0.5, 1}, {2, 3, 1, 1}}));
  CHECK(tree.weak.empty());
  CHECK(tree.directed.empty());

  CHECK_THROWS_AS(brute_force_cycles(ConfigurationGraph(9, {})), ScaleError);
}

TEST_CASE("inconsistent fixed strongly connected graphs collapse") {
  Rng rng(54);
  int checked = 0;
  while (checked < 5) {
    const std::size_t n = 3 + rng.index(4);
    const auto g = to_graph(n, random_strongly_connected(rng, n, false));
    if (classify_consistency(g) != Consistency::DirectedInconsistent) continue;
    ++checked;
    IntegrateOptions o;
    o.step = 0.01;
    const auto traj = integrate(g, SwitchingSchedule::fixed(g), kUnitBall, random_points(rng, n, 5.0), 2000.0, o);
    CHECK(summarize(g, kUnitBall, traj, {}).classification == Outcome::Collapsed);
  }
}

}
