#pragma once

#include "surround/numerics.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace surround {

/// Arc (from, to) of the configuration graph carrying the desired relative
/// rotation of projection vectors: x_from^p = weight · x_to^p at surrounding.
struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  Complex weight{1.0, 0.0};

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Unit: every weight has modulus 1. Scaled: any positive finite modulus,
/// which prescribes distance ratios between neighbouring agents.
enum class WeightMode { Unit, Scaled };

/// Sorted, duplicate-free list of arc indices into a ConfigurationGraph.
using ArcSubset = std::vector<std::size_t>;

/// Bare endpoints of an arc, for connectivity queries on arbitrary arc sets.
struct ArcEnds {
  std::size_t from = 0;
  std::size_t to = 0;
};

class ConfigurationGraph {
public:
  /// Throws InvalidArgument on self-loops, out-of-range nodes, repeated
  /// ordered pairs, or weights violating the modulus rule for `mode`.
  ConfigurationGraph(std::size_t node_count, std::vector<Arc> arcs,
                     WeightMode mode = WeightMode::Unit);

  std::size_t node_count() const noexcept { return node_count_; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  const Arc& arc(std::size_t index) const { return arcs_.at(index); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  WeightMode mode() const noexcept { return mode_; }

  std::optional<std::size_t> find_arc(std::size_t from, std::size_t to) const;

  ArcSubset all_arcs() const;
  std::vector<ArcEnds> ends(const ArcSubset& subset) const;

private:
  std::size_t node_count_;
  std::vector<Arc> arcs_;
  WeightMode mode_;
};

/// One piece of the piecewise-constant communication signal.
struct ScheduleSegment {
  double duration = 0.0;
  ArcSubset active;

  friend bool operator==(const ScheduleSegment&, const ScheduleSegment&) = default;
};

/// Piecewise-constant, right-continuous map from time to the active arc set.
/// A repeating schedule extends periodically; a finite one keeps its last
/// segment active after the listed segments run out.
class SwitchingSchedule {
public:
  /// Throws InvalidArgument when a duration is below the dwell floor, the
  /// dwell floor is not positive, or an arc index is outside the graph.
  SwitchingSchedule(const ConfigurationGraph& graph, std::vector<ScheduleSegment> segments,
                    bool repeat, double dwell_floor);

  /// Single segment activating every arc, repeating.
  static SwitchingSchedule fixed(const ConfigurationGraph& graph, double duration = 1.0);

  std::span<const ScheduleSegment> segments() const noexcept { return segments_; }
  bool repeat() const noexcept { return repeat_; }
  double dwell_floor() const noexcept { return dwell_floor_; }

  /// Sum of segment durations.
  double period() const noexcept { return period_; }

  /// Segment active at time t (σ(t) is right-continuous).
  std::size_t segment_at(double t) const;
  const ArcSubset& active_at(double t) const { return segments_[segment_at(t)].active; }

  /// Start times of the segments within the first period.
  std::vector<double> segment_starts() const;

  /// True when every segment activates all `arc_count` arcs.
  bool is_fixed(std::size_t arc_count) const;

private:
  std::vector<ScheduleSegment> segments_;
  bool repeat_;
  double dwell_floor_;
  double period_ = 0.0;
};

/// Diagonal gauge p with p_anchor = 1 and p_from · w = p_to on every arc.
struct GaugePotentials {
  CVector p;
  ArcSubset tree_arcs;
};

/// One traversal step of a weak cycle: the arc and whether it is walked in
/// its own direction.
struct CycleStep {
  std::size_t arc = 0;
  bool forward = true;

  friend bool operator==(const CycleStep&, const CycleStep&) = default;
};

struct WeakCycle {
  std::size_t start = 0;
  std::vector<CycleStep> steps;
};

/// Oriented product of weights around a closed weak walk; reversed arcs
/// contribute the inverse weight. Throws MalformedCycle when the steps do not
/// chain or do not close.
Complex cycle_holonomy(const ConfigurationGraph& g, const WeakCycle& cycle);

enum class Consistency { WeaklyConsistent, DirectedConsistentOnly, DirectedInconsistent };

const char* to_string(Consistency c) noexcept;

struct CircuitLimits {
  std::size_t max_nodes = 12;
  std::size_t max_circuits = 10000;
};

/// Elementary directed circuits (Johnson's algorithm), each as the arc
/// sequence starting at its smallest node. Throws ScaleError past the limits.
std::vector<std::vector<std::size_t>> elementary_circuits(const ConfigurationGraph& g,
                                                          const CircuitLimits& limits = {});

/// Breadth-first spanning forest of the underlying undirected graph; roots
/// are taken in node order, neighbours in arc storage order.
ArcSubset bfs_spanning_forest(const ConfigurationGraph& g);

/// True when every fundamental cycle of the BFS forest has holonomy 1.
bool is_weakly_consistent(const ConfigurationGraph& g, double tol = 1e-9);

/// Weak consistency via the spanning forest; directed consistency via
/// elementary circuit enumeration (only when weak consistency fails).
Consistency classify_consistency(const ConfigurationGraph& g, double tol = 1e-9,
                                 const CircuitLimits& limits = {});

/// Gauge propagated from node 0 along the BFS spanning tree.
/// Throws ConnectivityError or ConsistencyError.
GaugePotentials gauge_potentials(const ConfigurationGraph& g, double tol = 1e-9);

/// Gauge propagated along a caller-supplied spanning tree (n − 1 arcs).
GaugePotentials gauge_potentials(const ConfigurationGraph& g, const ArcSubset& tree_arcs,
                                 double tol = 1e-9);

/// Component id per node (Tarjan). Ids are in reverse topological order.
std::vector<std::size_t> strongly_connected_components(std::size_t n,
                                                       std::span<const ArcEnds> arcs);

bool is_strongly_connected(std::span<const ArcEnds> arcs, std::size_t n);
bool is_strongly_connected(const ConfigurationGraph& g, const ArcSubset& subset);

/// True when the underlying undirected graph of `subset` is connected.
bool is_weakly_connected(const ConfigurationGraph& g, const ArcSubset& subset);

/// True when every arc in `subset` has its reverse arc in `subset` as well.
bool is_symmetric(const ConfigurationGraph& g, const ArcSubset& subset);

/// Arcs active at some time in [t0, t1). Throws InvalidArgument unless
/// 0 ≤ t0 < t1.
ArcSubset union_graph(const SwitchingSchedule& sched, double t0, double t1);

/// Uniform joint strong connectivity over windows of length `window`,
/// checked at every segment start (sufficient for piecewise-constant σ).
bool verify_ujsc(const ConfigurationGraph& g, const SwitchingSchedule& sched, double window);

} // namespace surround
