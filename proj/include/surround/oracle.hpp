#pragma once

#include "surround/geometry.hpp"
#include "surround/numerics.hpp"
#include "surround/topology.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace surround {

/// Outcome of checking a theorem's sufficient condition on concrete inputs.
/// `predicted` is empty unless the hypothesis holds.
struct TheoremVerdict {
  std::string theorem;
  bool hypothesis_satisfied = false;
  std::variant<std::monostate, double, CVector> predicted;
  std::string detail;
};

/// Builds a configuration z, every z_i outside the body, with
/// z_i − P(z_i) = w_ij·(z_j − P(z_j)) on every arc. The seed point fixes
/// the seed node's projection vector; neighbours follow by BFS over the
/// underlying undirected graph, each placed at the support point of its
/// projection direction plus that projection vector.
/// Throws ConsistencyError, ConnectivityError, or InvalidArgument when the
/// seed lies in the body.
CVector theorem1_construct(const ConfigurationGraph& g, const ConvexBody& body,
                           std::size_t seed_node, Complex seed_point, double tol = 1e-9);

/// |mean_i p_i·x_i(0)| > sup_{z∈X}|z| (switching undirected UJSC case).
/// When satisfied, `predicted` holds the margin |mean| − sup|z|; the
/// condition is sufficient only, so an unmet condition predicts nothing.
TheoremVerdict theorem3_condition(const GaugePotentials& gauge, std::span<const Complex> x0,
                                  const ConvexBody& body);

/// |Σ α_i q_i x_i(0)| > sup_{z∈X}|z| (fixed strongly connected case),
/// reported like theorem3_condition. Throws InvalidArgument unless α is positive and sums to 1.
TheoremVerdict theorem4_condition(const GaugePotentials& gauge, std::span<const double> alpha,
                                  std::span<const Complex> x0, const ConvexBody& body);

/// Positive left kernel vector (sum 1) of the gauged Laplacian of the full
/// configuration graph. Throws DegeneracyError when the graph is not
/// strongly connected.
std::vector<double> stationary_weights(const ConfigurationGraph& g, const GaugePotentials& gauge,
                                       double tol = 1e-9);

/// True when 0 is an eigenvalue of the full generalized Laplacian, judged by
/// |det L| < singular_tol · Hadamard bound. Throws HypothesisError unless
/// the graph is strongly connected.
bool lemma3_singularity(const ConfigurationGraph& g, double singular_tol = 1e-9);

/// Closed-form consensus-type limit for a point target at the origin:
/// component i is (Σ_j weight_j·p_j·x_j(0)) / p_i.
CVector point_target_limit(const GaugePotentials& gauge, std::span<const double> weights,
                           std::span<const Complex> x0);

enum class PointTargetRegime { UndirectedSwitching, FixedStronglyConnected };

struct PointTargetPrediction {
  CVector limit;
  /// Set when the graph has an inconsistent directed cycle and every agent
  /// is predicted to converge to the origin.
  bool inconsistent = false;
};

/// Chooses the weights for `regime` (uniform, or stationary α) and returns
/// the predicted limit. For an inconsistent fixed strongly connected graph
/// the prediction is the zero vector with the flag set. Throws
/// ConsistencyError for an inconsistent graph in the undirected regime and
/// HypothesisError when the graph does not fit the regime.
PointTargetPrediction predict_point_target(const ConfigurationGraph& g, std::span<const Complex> x0,
                                           PointTargetRegime regime, double tol = 1e-9);

/// Lower bound |mean_i p_i·x_i(0)| − r₀ on the limiting distance to a ball
/// of radius r₀ centred at the origin. Empty when the mean does not lie
/// strictly outside the ball. Throws InvalidArgument for other bodies.
std::optional<double> remark6_bound(const GaugePotentials& gauge, std::span<const Complex> x0,
                                    const ConvexBody& body);

struct FoundCycle {
  WeakCycle cycle;
  Complex holonomy;
};

struct CycleCatalog {
  std::vector<FoundCycle> weak;
  std::vector<FoundCycle> directed;
};

/// Exhaustive depth-first enumeration of every elementary weak cycle (one
/// orientation each) and every elementary directed cycle. Throws ScaleError
/// when the graph has more than `max_nodes` nodes.
CycleCatalog brute_force_cycles(const ConfigurationGraph& g, std::size_t max_nodes = 8);

/// Consistency class read off an exhaustive catalog.
Consistency classify_from_catalog(const CycleCatalog& catalog, double tol = 1e-9);

} // namespace surround
