#pragma once

#include "surround/geometry.hpp"
#include "surround/numerics.hpp"
#include "surround/topology.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace surround {

/// Generalized Laplacian of the active arcs: out-degree on the diagonal,
/// −w_ij at (i, j) for every active arc. Throws InvalidArgument for indices
/// outside the graph.
CMatrix build_laplacian(const ConfigurationGraph& g, const ArcSubset& active);

/// P·L·P⁻¹ for the diagonal gauge P = diag(p). For a consistent graph this
/// is the ordinary Laplacian of the unweighted active digraph.
CMatrix gauged_laplacian(const ConfigurationGraph& g, const ArcSubset& active,
                         const GaugePotentials& gauge);

/// Projection vectors z − P_X(z) for every agent.
CVector projection_vectors(const ConvexBody& body, std::span<const Complex> x);

/// Σ_{(i,j) active} (w_ij·x_j^p − x_i^p), which equals −(L·x^p)_i.
Complex control_input(const ConfigurationGraph& g, const ArcSubset& active,
                      const ConvexBody& body, std::span<const Complex> x, std::size_t i);

/// max_i ½·|x_i|²_X.
double lyapunov_d(const ConvexBody& body, std::span<const Complex> x);

/// max over every configuration arc of |w_ij·x_j^p − x_i^p|.
double surrounding_error(const ConfigurationGraph& g, const ConvexBody& body,
                         std::span<const Complex> x);

/// 1/n for each agent.
std::vector<double> uniform_weights(std::size_t n);

/// Σ_i weight_i · p_i · x_i. Throws DimensionError on length mismatch.
Complex conserved_quantity(const GaugePotentials& gauge, std::span<const double> weights,
                           std::span<const Complex> x);

struct Sample {
  double t = 0.0;
  CVector x;
  std::vector<double> distance;
  double d = 0.0;
  std::optional<Complex> conserved;
};

struct IntegrateOptions {
  double step = 0.01;
  /// Keep every `stride`-th step; the final state is always kept.
  std::size_t stride = 100;
  /// Coefficients c_i of a linear invariant Σ c_i·x_i to monitor; empty for none.
  CVector conserved_coefficients;
  /// Per-step allowance for growth of d(t), scaled by max(1, d(0)).
  double lyapunov_tol = 1e-9;
};

struct Trajectory {
  std::vector<Sample> samples;
  double step = 0.0;
  std::size_t steps_taken = 0;
  /// Switching instants met during integration, as integer step counts.
  std::vector<std::size_t> switch_steps;
  /// Steps where d grew by more than the allowance, and the worst growth seen.
  std::size_t lyapunov_violations = 0;
  double worst_lyapunov_increase = 0.0;
  /// Largest relative deviation of the monitored invariant from its initial
  /// value over all steps (absolute when the initial value is zero).
  std::optional<double> conserved_drift;
};

/// Classical fixed-step RK4 for ẋ = −L_σ(t)·x^p. Switching instants fall on
/// step boundaries and the segment starting at an instant governs the step
/// that follows it. Throws InvalidArgument when the step does not divide a
/// segment duration or the horizon, and DivergenceError on non-finite states.
Trajectory integrate(const ConfigurationGraph& g, const SwitchingSchedule& sched,
                     const ConvexBody& body, std::span<const Complex> x0, double horizon,
                     const IntegrateOptions& options = {});

enum class Outcome { Surrounded, Collapsed, Undecided };

const char* to_string(Outcome o) noexcept;

struct ClassificationThresholds {
  double convergence_tol = 1e-3;
  double min_distance_factor = 10.0;
};

struct MonitorReport {
  double d_star_estimate = 0.0;
  double max_surrounding_error_final = 0.0;
  double min_distance_final = 0.0;
  double max_distance_final = 0.0;
  std::size_t lyapunov_violations = 0;
  double worst_lyapunov_increase = 0.0;
  std::optional<double> conserved_drift;
  Outcome classification = Outcome::Undecided;
};

/// Collapsed when every final distance is below the convergence tolerance;
/// Surrounded when the final surrounding error is below it and every final
/// distance exceeds min_distance_factor times it; Undecided otherwise, and
/// always Undecided for a graph without arcs.
MonitorReport summarize(const ConfigurationGraph& g, const ConvexBody& body,
                        const Trajectory& traj, const ClassificationThresholds& thresholds = {});

} // namespace surround
