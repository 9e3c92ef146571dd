#include "surround/topology.hpp"

#include "surround/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <string>

namespace surround {

namespace {

constexpr double kUnitModulusTol = 1e-9;

std::string arc_label(const Arc& a) {
  return "(" + std::to_string(a.from) + "," + std::to_string(a.to) + ")";
}

struct Incidence {
  std::size_t arc;
  std::size_t other;
  bool forward;  // walking from this node to `other` follows the arc direction
};

std::vector<std::vector<Incidence>> undirected_incidence(const ConfigurationGraph& g) {
  std::vector<std::vector<Incidence>> inc(g.node_count());
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const Arc& a = g.arc(k);
    inc[a.from].push_back({k, a.to, true});
    inc[a.to].push_back({k, a.from, false});
  }
  return inc;
}

// Propagates p along `tree` from `root`, walking each tree arc with the
// correct orientation. Returns false when some node is not reached.
bool propagate(const ConfigurationGraph& g, const ArcSubset& tree, std::size_t root, CVector& p,
               std::vector<bool>& seen) {
  std::vector<std::vector<Incidence>> inc(g.node_count());
  for (std::size_t k : tree) {
    const Arc& a = g.arc(k);
    inc[a.from].push_back({k, a.to, true});
    inc[a.to].push_back({k, a.from, false});
  }
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  p[root] = 1.0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (const auto& e : inc[u]) {
      if (seen[e.other]) continue;
      const Complex w = g.arc(e.arc).weight;
      p[e.other] = e.forward ? p[u] * w : p[u] / w;
      seen[e.other] = true;
      queue.push_back(e.other);
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Largest closure defect |p_from · w / p_to − 1| over the arcs.
double closure_defect(const ConfigurationGraph& g, const CVector& p) {
  double worst = 0.0;
  for (const auto& a : g.arcs()) {
    worst = std::max(worst, std::abs(p[a.from] * a.weight / p[a.to] - 1.0));
  }
  return worst;
}

} // namespace

ConfigurationGraph::ConfigurationGraph(std::size_t node_count, std::vector<Arc> arcs,
                                       WeightMode mode)
    : node_count_(node_count), arcs_(std::move(arcs)), mode_(mode) {
  if (node_count_ == 0) throw InvalidArgument("configuration graph needs at least one node");
  std::vector<bool> used(node_count_ * node_count_, false);
  for (const auto& a : arcs_) {
    if (a.from >= node_count_ || a.to >= node_count_) {
      throw InvalidArgument("arc " + arc_label(a) + " references a node outside 0.." +
                            std::to_string(node_count_ - 1));
    }
    if (a.from == a.to) throw InvalidArgument("self-loop " + arc_label(a) + " is not allowed");
    if (used[a.from * node_count_ + a.to]) {
      throw InvalidArgument("arc " + arc_label(a) + " is listed twice");
    }
    used[a.from * node_count_ + a.to] = true;
    const double m = std::abs(a.weight);
    if (!std::isfinite(m) || !(m > 0.0)) {
      throw InvalidArgument("arc " + arc_label(a) + " has a zero or non-finite weight");
    }
    if (mode_ == WeightMode::Unit && std::abs(m - 1.0) > kUnitModulusTol) {
      throw InvalidArgument("arc " + arc_label(a) + " has |w| = " + std::to_string(m) +
                            " but the graph is in unit-modulus mode");
    }
  }
}

std::optional<std::size_t> ConfigurationGraph::find_arc(std::size_t from, std::size_t to) const {
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    if (arcs_[k].from == from && arcs_[k].to == to) return k;
  }
  return std::nullopt;
}

ArcSubset ConfigurationGraph::all_arcs() const {
  ArcSubset s(arcs_.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = k;
  return s;
}

std::vector<ArcEnds> ConfigurationGraph::ends(const ArcSubset& subset) const {
  std::vector<ArcEnds> out;
  out.reserve(subset.size());
  for (std::size_t k : subset) out.push_back({arc(k).from, arc(k).to});
  return out;
}

SwitchingSchedule::SwitchingSchedule(const ConfigurationGraph& graph,
                                     std::vector<ScheduleSegment> segments, bool repeat,
                                     double dwell_floor)
    : segments_(std::move(segments)), repeat_(repeat), dwell_floor_(dwell_floor) {
  if (!(dwell_floor_ > 0.0) || !std::isfinite(dwell_floor_)) {
    throw InvalidArgument("dwell floor must be positive");
  }
  if (segments_.empty()) throw InvalidArgument("schedule needs at least one segment");
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    auto& seg = segments_[s];
    if (!std::isfinite(seg.duration) || seg.duration < dwell_floor_) {
      throw InvalidArgument("segment " + std::to_string(s) + " lasts " +
                            std::to_string(seg.duration) + ", below the dwell floor " +
                            std::to_string(dwell_floor_));
    }
    std::sort(seg.active.begin(), seg.active.end());
    seg.active.erase(std::unique(seg.active.begin(), seg.active.end()), seg.active.end());
    for (std::size_t k : seg.active) {
      if (k >= graph.arc_count()) {
        throw InvalidArgument("segment " + std::to_string(s) + " activates arc index " +
                              std::to_string(k) + " which is not in the configuration graph");
      }
    }
    period_ += seg.duration;
  }
}

SwitchingSchedule SwitchingSchedule::fixed(const ConfigurationGraph& graph, double duration) {
  return SwitchingSchedule(graph, {ScheduleSegment{duration, graph.all_arcs()}}, true, duration);
}

std::size_t SwitchingSchedule::segment_at(double t) const {
  if (t < 0.0) throw InvalidArgument("schedule queried at negative time");
  if (repeat_) t = std::fmod(t, period_);
  double start = 0.0;
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const double end = start + segments_[s].duration;
    if (t < end) return s;
    start = end;
  }
  return segments_.size() - 1;
}

std::vector<double> SwitchingSchedule::segment_starts() const {
  std::vector<double> starts;
  double t = 0.0;
  for (const auto& seg : segments_) {
    starts.push_back(t);
    t += seg.duration;
  }
  return starts;
}

bool SwitchingSchedule::is_fixed(std::size_t arc_count) const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [arc_count](const ScheduleSegment& s) { return s.active.size() == arc_count; });
}

Complex cycle_holonomy(const ConfigurationGraph& g, const WeakCycle& cycle) {
  if (cycle.steps.empty()) throw MalformedCycle("cycle has no arcs");
  if (cycle.start >= g.node_count()) throw MalformedCycle("cycle starts outside the graph");
  std::size_t at = cycle.start;
  Complex h = 1.0;
  for (std::size_t r = 0; r < cycle.steps.size(); ++r) {
    const auto& step = cycle.steps[r];
    if (step.arc >= g.arc_count()) {
      throw MalformedCycle("step " + std::to_string(r) + " references a missing arc");
    }
    const Arc& a = g.arc(step.arc);
    const std::size_t tail = step.forward ? a.from : a.to;
    if (tail != at) {
      throw MalformedCycle("step " + std::to_string(r) + " does not leave node " +
                           std::to_string(at));
    }
    if (step.forward) {
      h *= a.weight;
      at = a.to;
    } else {
      h /= a.weight;
      at = a.from;
    }
  }
  if (at != cycle.start) throw MalformedCycle("walk does not return to its start node");
  return h;
}

const char* to_string(Consistency c) noexcept {
  switch (c) {
  case Consistency::WeaklyConsistent:
    return "weakly_consistent";
  case Consistency::DirectedConsistentOnly:
    return "directed_consistent_only";
  case Consistency::DirectedInconsistent:
    return "directed_inconsistent";
  }
  return "unknown";
}

std::vector<std::vector<std::size_t>> elementary_circuits(const ConfigurationGraph& g,
                                                          const CircuitLimits& limits) {
  const std::size_t n = g.node_count();
  if (n > limits.max_nodes) {
    throw ScaleError("circuit enumeration refused: " + std::to_string(n) + " nodes exceeds " +
                     std::to_string(limits.max_nodes));
  }
  struct Out {
    std::size_t to;
    std::size_t arc;
  };
  std::vector<std::vector<Out>> adj(n);
  for (std::size_t k = 0; k < g.arc_count(); ++k) adj[g.arc(k).from].push_back({g.arc(k).to, k});

  std::vector<std::vector<std::size_t>> circuits;
  std::vector<bool> blocked(n);
  std::vector<std::vector<std::size_t>> block_map(n);
  std::vector<std::size_t> arc_stack;
  std::vector<bool> in_component(n);
  std::size_t start = 0;

  std::function<void(std::size_t)> unblock = [&](std::size_t u) {
    blocked[u] = false;
    auto pending = std::move(block_map[u]);
    block_map[u].clear();
    for (std::size_t w : pending)
      if (blocked[w]) unblock(w);
  };

  std::function<bool(std::size_t)> circuit = [&](std::size_t v) -> bool {
    bool found = false;
    blocked[v] = true;
    for (const auto& e : adj[v]) {
      if (!in_component[e.to]) continue;
      arc_stack.push_back(e.arc);
      if (e.to == start) {
        circuits.push_back(arc_stack);
        if (circuits.size() > limits.max_circuits) {
          throw ScaleError("circuit enumeration refused: more than " +
                           std::to_string(limits.max_circuits) + " elementary circuits");
        }
        found = true;
      } else if (!blocked[e.to] && circuit(e.to)) {
        found = true;
      }
      arc_stack.pop_back();
    }
    if (found) {
      unblock(v);
    } else {
      for (const auto& e : adj[v]) {
        if (!in_component[e.to]) continue;
        auto& bm = block_map[e.to];
        if (std::find(bm.begin(), bm.end(), v) == bm.end()) bm.push_back(v);
      }
    }
    return found;
  };

  for (start = 0; start < n; ++start) {
    // Strong component of `start` within the subgraph induced by nodes ≥ start.
    std::vector<ArcEnds> sub;
    for (const auto& a : g.arcs())
      if (a.from >= start && a.to >= start) sub.push_back({a.from, a.to});
    const auto comp = strongly_connected_components(n, sub);
    std::size_t size = 0;
    for (std::size_t v = 0; v < n; ++v) {
      in_component[v] = v >= start && comp[v] == comp[start];
      if (in_component[v]) ++size;
    }
    if (size < 2) continue;
    for (std::size_t v = 0; v < n; ++v) {
      blocked[v] = false;
      block_map[v].clear();
    }
    circuit(start);
  }
  return circuits;
}

ArcSubset bfs_spanning_forest(const ConfigurationGraph& g) {
  const auto inc = undirected_incidence(g);
  std::vector<bool> seen(g.node_count(), false);
  ArcSubset tree;
  for (std::size_t root = 0; root < g.node_count(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const auto& e : inc[u]) {
        if (seen[e.other]) continue;
        seen[e.other] = true;
        tree.push_back(e.arc);
        queue.push_back(e.other);
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

bool is_weakly_consistent(const ConfigurationGraph& g, double tol) {
  const ArcSubset forest = bfs_spanning_forest(g);
  CVector p(g.node_count(), Complex{});
  std::vector<bool> seen(g.node_count(), false);
  for (std::size_t root = 0; root < g.node_count(); ++root) {
    if (!seen[root]) propagate(g, forest, root, p, seen);
  }
  return closure_defect(g, p) < tol;
}

Consistency classify_consistency(const ConfigurationGraph& g, double tol,
                                 const CircuitLimits& limits) {
  if (is_weakly_consistent(g, tol)) return Consistency::WeaklyConsistent;
  for (const auto& c : elementary_circuits(g, limits)) {
    Complex h = 1.0;
    for (std::size_t k : c) h *= g.arc(k).weight;
    if (std::abs(h - 1.0) >= tol) return Consistency::DirectedInconsistent;
  }
  return Consistency::DirectedConsistentOnly;
}

GaugePotentials gauge_potentials(const ConfigurationGraph& g, double tol) {
  return gauge_potentials(g, bfs_spanning_forest(g), tol);
}

GaugePotentials gauge_potentials(const ConfigurationGraph& g, const ArcSubset& tree_arcs,
                                 double tol) {
  for (std::size_t k : tree_arcs) {
    if (k >= g.arc_count()) throw InvalidArgument("tree arc index outside the graph");
  }
  GaugePotentials out;
  out.p.assign(g.node_count(), Complex{});
  std::vector<bool> seen(g.node_count(), false);
  if (!propagate(g, tree_arcs, 0, out.p, seen)) {
    throw ConnectivityError("gauge needs a connected underlying graph spanned by the tree");
  }
  const double defect = closure_defect(g, out.p);
  if (!(defect < tol)) {
    throw ConsistencyError("configuration graph has an inconsistent weak cycle (closure defect " +
                           std::to_string(defect) + ")");
  }
  out.tree_arcs = tree_arcs;
  std::sort(out.tree_arcs.begin(), out.tree_arcs.end());
  return out;
}

std::vector<std::size_t> strongly_connected_components(std::size_t n,
                                                       std::span<const ArcEnds> arcs) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& a : arcs) {
    if (a.from >= n || a.to >= n) throw InvalidArgument("arc endpoint outside node range");
    adj[a.from].push_back(a.to);
  }
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, comp_count = 0;

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        const std::size_t w = adj[f.v][f.next++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comp_count;
        } while (w != v);
        ++comp_count;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return comp;
}

bool is_strongly_connected(std::span<const ArcEnds> arcs, std::size_t n) {
  if (n == 0) return false;
  const auto comp = strongly_connected_components(n, arcs);
  return std::all_of(comp.begin(), comp.end(), [&](std::size_t c) { return c == comp[0]; });
}

bool is_strongly_connected(const ConfigurationGraph& g, const ArcSubset& subset) {
  const auto e = g.ends(subset);
  return is_strongly_connected(e, g.node_count());
}

bool is_weakly_connected(const ConfigurationGraph& g, const ArcSubset& subset) {
  std::vector<ArcEnds> both;
  for (std::size_t k : subset) {
    both.push_back({g.arc(k).from, g.arc(k).to});
    both.push_back({g.arc(k).to, g.arc(k).from});
  }
  return is_strongly_connected(both, g.node_count());
}

bool is_symmetric(const ConfigurationGraph& g, const ArcSubset& subset) {
  for (std::size_t k : subset) {
    const auto rev = g.find_arc(g.arc(k).to, g.arc(k).from);
    if (!rev || !std::binary_search(subset.begin(), subset.end(), *rev)) return false;
  }
  return true;
}

ArcSubset union_graph(const SwitchingSchedule& sched, double t0, double t1) {
  if (!(t0 >= 0.0) || !(t1 > t0)) {
    throw InvalidArgument("union window needs 0 <= t0 < t1");
  }
  const auto segs = sched.segments();
  const auto starts = sched.segment_starts();
  const double period = sched.period();
  std::vector<bool> on;
  auto include = [&](const ScheduleSegment& s) {
    for (std::size_t k : s.active) {
      if (k >= on.size()) on.resize(k + 1, false);
      on[k] = true;
    }
  };

  if (sched.repeat()) {
    const double first = std::floor(t0 / period);
    for (double m = first; m * period < t1; m += 1.0) {
      for (std::size_t s = 0; s < segs.size(); ++s) {
        const double a = m * period + starts[s];
        const double b = a + segs[s].duration;
        if (a < t1 && b > t0) include(segs[s]);
      }
      if (m - first > 1e7) break;
    }
  } else {
    for (std::size_t s = 0; s < segs.size(); ++s) {
      const double a = starts[s];
      const bool last = s + 1 == segs.size();
      const double b = last ? std::numeric_limits<double>::infinity() : a + segs[s].duration;
      if (a < t1 && b > t0) include(segs[s]);
    }
  }
  ArcSubset out;
  for (std::size_t k = 0; k < on.size(); ++k)
    if (on[k]) out.push_back(k);
  return out;
}

bool verify_ujsc(const ConfigurationGraph& g, const SwitchingSchedule& sched, double window) {
  if (!(window > 0.0)) throw InvalidArgument("UJSC window must be positive");
  const auto starts = sched.segment_starts();
  bool checked = false;
  for (double t : starts) {
    if (!sched.repeat() && t + window > sched.period()) continue;
    checked = true;
    if (!is_strongly_connected(g, union_graph(sched, t, t + window))) return false;
  }
  return checked;
}

} // namespace surround
