#include "surround/oracle.hpp"

#include "surround/dynamics.hpp"
#include "surround/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace surround {

namespace {

Complex gauged_mean(const GaugePotentials& gauge, std::span<const Complex> x0,
                    std::span<const double> weights) {
  return conserved_quantity(gauge, weights, x0);
}

TheoremVerdict condition_verdict(std::string theorem, Complex invariant, const ConvexBody& body,
                                 const char* label) {
  TheoremVerdict v;
  v.theorem = std::move(theorem);
  const double lhs = std::abs(invariant);
  const double sup = body.sup_modulus();
  v.hypothesis_satisfied = lhs > sup;
  if (v.hypothesis_satisfied) v.predicted = lhs - sup;
  std::ostringstream os;
  os.precision(12);
  os << label << " = " << lhs << (v.hypothesis_satisfied ? " > " : " <= ")
     << "sup|z| over the body = " << sup;
  v.detail = os.str();
  return v;
}

} // namespace

CVector theorem1_construct(const ConfigurationGraph& g, const ConvexBody& body,
                           std::size_t seed_node, Complex seed_point, double tol) {
  const std::size_t n = g.node_count();
  if (seed_node >= n) throw InvalidArgument("seed node outside the graph");
  const Complex seed_vec = body.projection_vector(seed_point);
  if (!(std::abs(seed_vec) > 0.0)) throw InvalidArgument("seed point lies inside the body");
  if (!is_weakly_consistent(g, tol)) {
    throw ConsistencyError("feasible surrounding configuration needs every weak cycle consistent");
  }

  CVector z(n), e(n);
  std::vector<bool> placed(n, false);
  z[seed_node] = seed_point;
  e[seed_node] = seed_vec;
  placed[seed_node] = true;
  std::deque<std::size_t> queue{seed_node};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < g.arc_count(); ++k) {
      const Arc& a = g.arc(k);
      std::size_t v;
      Complex ev;
      if (a.to == u && !placed[a.from]) {
        v = a.from;
        ev = a.weight * e[u];
      } else if (a.from == u && !placed[a.to]) {
        v = a.to;
        ev = e[u] / a.weight;
      } else {
        continue;
      }
      e[v] = ev;
      z[v] = body.support_point(ev / std::abs(ev)) + ev;
      placed[v] = true;
      queue.push_back(v);
    }
  }
  if (!std::all_of(placed.begin(), placed.end(), [](bool b) { return b; })) {
    throw ConnectivityError("feasible configuration needs a connected underlying graph");
  }
  return z;
}

TheoremVerdict theorem3_condition(const GaugePotentials& gauge, std::span<const Complex> x0,
                                  const ConvexBody& body) {
  const auto w = uniform_weights(x0.size());
  return condition_verdict("theorem3", gauged_mean(gauge, x0, w), body, "|mean p_i x_i(0)|");
}

TheoremVerdict theorem4_condition(const GaugePotentials& gauge, std::span<const double> alpha,
                                  std::span<const Complex> x0, const ConvexBody& body) {
  if (alpha.size() != x0.size()) throw InvalidArgument("alpha length differs from agent count");
  const double sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  const bool positive = std::all_of(alpha.begin(), alpha.end(), [](double a) { return a > 0.0; });
  if (!positive || std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("alpha must be strictly positive and sum to 1");
  }
  return condition_verdict("theorem4", gauged_mean(gauge, x0, alpha), body,
                           "|sum alpha_i q_i x_i(0)|");
}

std::vector<double> stationary_weights(const ConfigurationGraph& g, const GaugePotentials& gauge,
                                       double tol) {
  return positive_left_null_vector(gauged_laplacian(g, g.all_arcs(), gauge), tol);
}

bool lemma3_singularity(const ConfigurationGraph& g, double singular_tol) {
  if (!is_strongly_connected(g, g.all_arcs())) {
    throw HypothesisError("singularity test applies to strongly connected graphs only");
  }
  const CMatrix l = build_laplacian(g, g.all_arcs());
  return std::abs(lu_determinant(l)) < singular_tol * hadamard_bound(l);
}

CVector point_target_limit(const GaugePotentials& gauge, std::span<const double> weights,
                           std::span<const Complex> x0) {
  const Complex mean = conserved_quantity(gauge, weights, x0);
  CVector out(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) out[i] = mean / gauge.p[i];
  return out;
}

PointTargetPrediction predict_point_target(const ConfigurationGraph& g, std::span<const Complex> x0,
                                           PointTargetRegime regime, double tol) {
  if (x0.size() != g.node_count()) throw DimensionError("initial state length mismatch");
  PointTargetPrediction out;
  if (regime == PointTargetRegime::UndirectedSwitching) {
    if (!is_symmetric(g, g.all_arcs())) {
      throw HypothesisError("undirected regime needs every arc paired with its reverse");
    }
    const auto gauge = gauge_potentials(g, tol);
    out.limit = point_target_limit(gauge, uniform_weights(g.node_count()), x0);
    return out;
  }
  if (!is_strongly_connected(g, g.all_arcs())) {
    throw HypothesisError("fixed regime needs a strongly connected configuration graph");
  }
  switch (classify_consistency(g, tol)) {
  case Consistency::DirectedInconsistent:
    out.limit.assign(g.node_count(), Complex{});
    out.inconsistent = true;
    return out;
  case Consistency::DirectedConsistentOnly:
    throw ConsistencyError("strongly connected graph classified directed-consistent only");
  case Consistency::WeaklyConsistent:
    break;
  }
  const auto gauge = gauge_potentials(g, tol);
  out.limit = point_target_limit(gauge, stationary_weights(g, gauge, tol), x0);
  return out;
}

std::optional<double> remark6_bound(const GaugePotentials& gauge, std::span<const Complex> x0,
                                    const ConvexBody& body) {
  const auto* ball = std::get_if<ConvexBody::Ball>(&body.shape());
  if (ball == nullptr || ball->center != Complex{}) {
    throw InvalidArgument("distance bound applies to balls centred at the origin");
  }
  const double m = std::abs(gauged_mean(gauge, x0, uniform_weights(x0.size())));
  if (!(m > ball->radius)) return std::nullopt;
  return m - ball->radius;
}

CycleCatalog brute_force_cycles(const ConfigurationGraph& g, std::size_t max_nodes) {
  const std::size_t n = g.node_count();
  if (n > max_nodes) {
    throw ScaleError("exhaustive cycle enumeration limited to " + std::to_string(max_nodes) +
                     " nodes");
  }
  struct Step {
    std::size_t arc;
    std::size_t other;
    bool forward;
  };
  std::vector<std::vector<Step>> inc(n);
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const Arc& a = g.arc(k);
    inc[a.from].push_back({k, a.to, true});
    inc[a.to].push_back({k, a.from, false});
  }

  CycleCatalog out;
  std::vector<bool> visited(n, false), used(g.arc_count(), false);
  std::vector<CycleStep> path;
  std::size_t start = 0;
  bool directed_only = false;

  auto holonomy = [&](const std::vector<CycleStep>& steps) {
    Complex h = 1.0;
    for (const auto& s : steps) {
      const Complex w = g.arc(s.arc).weight;
      h = s.forward ? h * w : h / w;
    }
    return h;
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    for (const auto& s : inc[u]) {
      if (used[s.arc] || (directed_only && !s.forward)) continue;
      if (s.other == start) {
        if (path.empty()) continue;
        std::vector<CycleStep> steps = path;
        steps.push_back({s.arc, s.forward});
        // Each undirected cycle is met in both orientations; keep one.
        if (!directed_only && steps.front().arc > steps.back().arc) continue;
        const Complex h = holonomy(steps);
        auto& list = directed_only ? out.directed : out.weak;
        list.push_back({WeakCycle{start, std::move(steps)}, h});
      } else if (s.other > start && !visited[s.other]) {
        visited[s.other] = true;
        used[s.arc] = true;
        path.push_back({s.arc, s.forward});
        dfs(s.other);
        path.pop_back();
        used[s.arc] = false;
        visited[s.other] = false;
      }
    }
  };

  for (int pass = 0; pass < 2; ++pass) {
    directed_only = pass == 1;
    for (start = 0; start < n; ++start) {
      visited[start] = true;
      dfs(start);
      visited[start] = false;
    }
  }
  return out;
}

Consistency classify_from_catalog(const CycleCatalog& catalog, double tol) {
  const auto off = [tol](const FoundCycle& c) { return std::abs(c.holonomy - 1.0) >= tol; };
  if (std::none_of(catalog.weak.begin(), catalog.weak.end(), off)) {
    return Consistency::WeaklyConsistent;
  }
  if (std::any_of(catalog.directed.begin(), catalog.directed.end(), off)) {
    return Consistency::DirectedInconsistent;
  }
  return Consistency::DirectedConsistentOnly;
}

} // namespace surround
