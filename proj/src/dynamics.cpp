#include "surround/dynamics.hpp"

#include "surround/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace surround {

namespace {

void check_subset(const ConfigurationGraph& g, const ArcSubset& active) {
  for (std::size_t k : active) {
    if (k >= g.arc_count()) {
      throw InvalidArgument("active arc index " + std::to_string(k) +
                            " is not in the configuration graph");
    }
  }
}

void check_length(std::size_t n, std::size_t got) {
  if (n != got) {
    throw DimensionError("state has " + std::to_string(got) + " agents, graph has " +
                         std::to_string(n));
  }
}

bool finite(std::span<const Complex> x) {
  return std::all_of(x.begin(), x.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

// Number of whole steps in `span`; throws unless step divides it.
std::size_t whole_steps(double span, double step, const char* what) {
  const double ratio = span / step;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw InvalidArgument(std::string(what) + " " + std::to_string(span) +
                          " is not an integer multiple of the step " + std::to_string(step));
  }
  return static_cast<std::size_t>(rounded);
}

// Right-hand side −L_σ x^p over a precomputed active arc list.
class VectorField {
public:
  VectorField(const ConfigurationGraph& g, const ConvexBody& body)
      : g_(g), body_(body), proj_(g.node_count()) {}

  void operator()(const ArcSubset& active, std::span<const Complex> x, CVector& out) {
    for (std::size_t i = 0; i < x.size(); ++i) proj_[i] = body_.projection_vector(x[i]);
    std::fill(out.begin(), out.end(), Complex{});
    for (std::size_t k : active) {
      const Arc& a = g_.arc(k);
      out[a.from] += a.weight * proj_[a.to] - proj_[a.from];
    }
  }

private:
  const ConfigurationGraph& g_;
  const ConvexBody& body_;
  CVector proj_;
};

} // namespace

CMatrix build_laplacian(const ConfigurationGraph& g, const ArcSubset& active) {
  check_subset(g, active);
  CMatrix l(g.node_count(), g.node_count());
  for (std::size_t k : active) {
    const Arc& a = g.arc(k);
    l(a.from, a.from) += 1.0;
    l(a.from, a.to) = -a.weight;
  }
  return l;
}

CMatrix gauged_laplacian(const ConfigurationGraph& g, const ArcSubset& active,
                         const GaugePotentials& gauge) {
  check_length(g.node_count(), gauge.p.size());
  CMatrix l = build_laplacian(g, active);
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) l(i, j) = gauge.p[i] * l(i, j) / gauge.p[j];
  return l;
}

CVector projection_vectors(const ConvexBody& body, std::span<const Complex> x) {
  CVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = body.projection_vector(x[i]);
  return out;
}

Complex control_input(const ConfigurationGraph& g, const ArcSubset& active,
                      const ConvexBody& body, std::span<const Complex> x, std::size_t i) {
  check_subset(g, active);
  check_length(g.node_count(), x.size());
  if (i >= x.size()) throw InvalidArgument("agent index out of range");
  const Complex own = body.projection_vector(x[i]);
  Complex u = 0.0;
  for (std::size_t k : active) {
    const Arc& a = g.arc(k);
    if (a.from == i) u += a.weight * body.projection_vector(x[a.to]) - own;
  }
  return u;
}

double lyapunov_d(const ConvexBody& body, std::span<const Complex> x) {
  double d = 0.0;
  for (const auto& z : x) {
    const double r = body.distance(z);
    d = std::max(d, 0.5 * r * r);
  }
  return d;
}

double surrounding_error(const ConfigurationGraph& g, const ConvexBody& body,
                         std::span<const Complex> x) {
  check_length(g.node_count(), x.size());
  const CVector p = projection_vectors(body, x);
  double worst = 0.0;
  for (const auto& a : g.arcs()) worst = std::max(worst, std::abs(a.weight * p[a.to] - p[a.from]));
  return worst;
}

std::vector<double> uniform_weights(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

Complex conserved_quantity(const GaugePotentials& gauge, std::span<const double> weights,
                           std::span<const Complex> x) {
  if (weights.size() != x.size() || gauge.p.size() != x.size()) {
    throw DimensionError("conserved quantity: weights, gauge and state lengths differ");
  }
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * gauge.p[i] * x[i];
  return s;
}

Trajectory integrate(const ConfigurationGraph& g, const SwitchingSchedule& sched,
                     const ConvexBody& body, std::span<const Complex> x0, double horizon,
                     const IntegrateOptions& options) {
  const std::size_t n = g.node_count();
  check_length(n, x0.size());
  const double h = options.step;
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("integration step must be positive");
  if (!(horizon > 0.0)) throw InvalidArgument("integration horizon must be positive");
  if (options.stride == 0) throw InvalidArgument("sample stride must be at least 1");
  if (!options.conserved_coefficients.empty() && options.conserved_coefficients.size() != n) {
    throw DimensionError("conserved coefficient vector length differs from agent count");
  }
  if (!finite(x0)) throw DivergenceError("initial state is not finite", 0.0);

  const auto segs = sched.segments();
  std::vector<std::size_t> seg_steps(segs.size());
  for (std::size_t s = 0; s < segs.size(); ++s) {
    seg_steps[s] = whole_steps(segs[s].duration, h, "segment duration");
  }
  const std::size_t total = whole_steps(horizon, h, "horizon");

  Trajectory traj;
  traj.step = h;
  traj.steps_taken = total;

  const bool monitor_invariant = !options.conserved_coefficients.empty();
  auto invariant = [&](std::span<const Complex> x) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += options.conserved_coefficients[i] * x[i];
    return s;
  };

  CVector x(x0.begin(), x0.end());
  auto make_sample = [&](double t) {
    Sample s;
    s.t = t;
    s.x = x;
    s.distance.resize(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s.distance[i] = body.distance(x[i]);
      d = std::max(d, 0.5 * s.distance[i] * s.distance[i]);
    }
    s.d = d;
    if (monitor_invariant) s.conserved = invariant(x);
    return s;
  };

  traj.samples.push_back(make_sample(0.0));
  const double d0 = traj.samples.front().d;
  const double lyap_allowance = options.lyapunov_tol * std::max(1.0, d0);
  double d_prev = d0;
  const Complex c0 = monitor_invariant ? *traj.samples.front().conserved : Complex{};
  double drift = 0.0;

  VectorField field(g, body);
  CVector k1(n), k2(n), k3(n), k4(n), tmp(n);

  std::size_t seg = 0;
  std::size_t left_in_seg = seg_steps[0];
  bool held = false;  // finite schedule past its last listed segment
  for (std::size_t step = 0; step < total; ++step) {
    if (left_in_seg == 0 && !held) {
      if (seg + 1 < segs.size()) {
        ++seg;
        left_in_seg = seg_steps[seg];
        traj.switch_steps.push_back(step);
      } else if (sched.repeat()) {
        seg = 0;
        left_in_seg = seg_steps[0];
        if (segs.size() > 1) traj.switch_steps.push_back(step);
      } else {
        held = true;
      }
    }
    const ArcSubset& active = segs[seg].active;

    field(active, x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    field(active, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    field(active, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    field(active, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!held) --left_in_seg;

    const double t = static_cast<double>(step + 1) * h;
    if (!finite(x)) throw DivergenceError("state became non-finite at t = " + std::to_string(t), t);

    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = body.distance(x[i]);
      d = std::max(d, 0.5 * r * r);
    }
    if (d > d_prev + lyap_allowance) {
      ++traj.lyapunov_violations;
      traj.worst_lyapunov_increase = std::max(traj.worst_lyapunov_increase, d - d_prev);
    }
    d_prev = d;

    if (monitor_invariant) {
      const double dev = std::abs(invariant(x) - c0);
      drift = std::max(drift, std::abs(c0) > 0.0 ? dev / std::abs(c0) : dev);
    }

    if ((step + 1) % options.stride == 0 || step + 1 == total) {
      traj.samples.push_back(make_sample(t));
    }
  }
  if (monitor_invariant) traj.conserved_drift = drift;
  return traj;
}

const char* to_string(Outcome o) noexcept {
  switch (o) {
  case Outcome::Surrounded:
    return "surrounded";
  case Outcome::Collapsed:
    return "collapsed";
  case Outcome::Undecided:
    return "undecided";
  }
  return "unknown";
}

MonitorReport summarize(const ConfigurationGraph& g, const ConvexBody& body,
                        const Trajectory& traj, const ClassificationThresholds& thresholds) {
  if (traj.samples.empty()) throw InvalidArgument("cannot summarize an empty trajectory");
  const Sample& last = traj.samples.back();
  MonitorReport r;
  r.d_star_estimate = last.d;
  r.max_surrounding_error_final = surrounding_error(g, body, last.x);
  r.min_distance_final = *std::min_element(last.distance.begin(), last.distance.end());
  r.max_distance_final = *std::max_element(last.distance.begin(), last.distance.end());
  r.lyapunov_violations = traj.lyapunov_violations;
  r.worst_lyapunov_increase = traj.worst_lyapunov_increase;
  r.conserved_drift = traj.conserved_drift;

  const double tol = thresholds.convergence_tol;
  if (g.arc_count() == 0) {
    r.classification = Outcome::Undecided;
  } else if (r.max_distance_final < tol) {
    r.classification = Outcome::Collapsed;
  } else if (r.max_surrounding_error_final < tol &&
             r.min_distance_final > thresholds.min_distance_factor * tol) {
    r.classification = Outcome::Surrounded;
  } else {
    r.classification = Outcome::Undecided;
  }
  return r;
}

} // namespace surround
