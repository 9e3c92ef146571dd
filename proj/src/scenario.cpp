#include "surround/scenario.hpp"

#include "surround/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace surround {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ScenarioError(path + "/" + key, "missing required field");
  }
  return obj.at(key);
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ScenarioError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ScenarioError(path, "expected a finite number");
  return d;
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ScenarioError(path, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

Complex point(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ScenarioError(path, "expected [re, im]");
  return {number(v[0], path + "/0"), number(v[1], path + "/1")};
}

json point_json(Complex z) { return json::array({z.real(), z.imag()}); }

ConvexBody parse_body(const json& b) {
  const std::string path = "/body";
  const json& type = require(b, "type", path);
  if (!type.is_string()) throw ScenarioError(path + "/type", "expected a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "singleton") {
      return ConvexBody::singleton(point(require(b, "point", path), path + "/point"));
    }
    if (t == "ball") {
      return ConvexBody::ball(point(require(b, "center", path), path + "/center"),
                              number(require(b, "radius", path), path + "/radius"));
    }
    if (t == "polygon") {
      const json& vs = require(b, "vertices", path);
      if (!vs.is_array()) throw ScenarioError(path + "/vertices", "expected an array");
      std::vector<Complex> verts;
      for (std::size_t k = 0; k < vs.size(); ++k) {
        verts.push_back(point(vs[k], path + "/vertices/" + std::to_string(k)));
      }
      return ConvexBody::polygon(verts);
    }
  } catch (const InvalidArgument& e) {
    throw ScenarioError(path, e.what());
  }
  throw ScenarioError(path + "/type", "unknown body type '" + t + "'");
}

json body_json(const ConvexBody& body) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexBody::Singleton>) {
          return {{"type", "singleton"}, {"point", point_json(s.point)}};
        } else if constexpr (std::is_same_v<T, ConvexBody::Ball>) {
          return {{"type", "ball"}, {"center", point_json(s.center)}, {"radius", s.radius}};
        } else {
          json vs = json::array();
          for (const auto& v : s.vertices) vs.push_back(point_json(v));
          return {{"type", "polygon"}, {"vertices", vs}};
        }
      },
      body.shape());
}

// Segment arcs are either 1-based positions in the weight list or [i, j]
// node pairs, or the string "all".
ArcSubset parse_arcs(const json& v, const std::vector<WeightSpec>& weights,
                     const std::string& path) {
  ArcSubset out;
  if (v.is_string()) {
    if (v.get<std::string>() != "all") throw ScenarioError(path, "expected \"all\" or a list");
    for (std::size_t k = 0; k < weights.size(); ++k) out.push_back(k);
    return out;
  }
  if (!v.is_array()) throw ScenarioError(path, "expected an arc list");
  for (std::size_t r = 0; r < v.size(); ++r) {
    const std::string p = path + "/" + std::to_string(r);
    if (v[r].is_array()) {
      if (v[r].size() != 2) throw ScenarioError(p, "expected [i, j]");
      const std::size_t i = count(v[r][0], p + "/0");
      const std::size_t j = count(v[r][1], p + "/1");
      std::size_t k = 0;
      while (k < weights.size() && !(weights[k].from + 1 == i && weights[k].to + 1 == j)) ++k;
      if (k == weights.size()) {
        throw ScenarioError(p, "arc (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") is not in the configuration graph");
      }
      out.push_back(k);
    } else {
      const std::size_t k = count(v[r], p);
      if (k < 1 || k > weights.size()) throw ScenarioError(p, "arc number outside 1..m");
      out.push_back(k - 1);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool divides(double span, double step) {
  const double ratio = span / step;
  const double r = std::round(ratio);
  return r >= 1.0 && std::abs(ratio - r) <= 1e-9 * std::max(1.0, ratio);
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json gauge_json(const GaugePotentials& g) {
  json p = json::array();
  for (const auto& z : g.p) p.push_back(point_json(z));
  json tree = json::array();
  for (std::size_t k : g.tree_arcs) tree.push_back(k + 1);
  return {{"p", p}, {"tree_arcs", tree}};
}

json verdict_json(const TheoremVerdict& v) {
  json j = {{"theorem", v.theorem},
            {"hypothesis_satisfied", v.hypothesis_satisfied},
            {"detail", v.detail}};
  if (const auto* d = std::get_if<double>(&v.predicted)) {
    j["predicted"] = *d;
  } else if (const auto* z = std::get_if<CVector>(&v.predicted)) {
    json arr = json::array();
    for (const auto& c : *z) arr.push_back(point_json(c));
    j["predicted"] = arr;
  } else {
    j["predicted"] = nullptr;
  }
  return j;
}

TheoremVerdict unmet(std::string theorem, std::string detail) {
  TheoremVerdict v;
  v.theorem = std::move(theorem);
  v.detail = std::move(detail);
  return v;
}

} // namespace

Complex unit_phase(double arg_over_pi) {
  double r = std::fmod(arg_over_pi, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0) return {1.0, 0.0};
  if (r == 0.5) return {0.0, 1.0};
  if (r == 1.0) return {-1.0, 0.0};
  if (r == 1.5) return {0.0, -1.0};
  return std::polar(1.0, std::numbers::pi * arg_over_pi);
}

ConfigurationGraph Scenario::graph() const {
  std::vector<Arc> arcs;
  arcs.reserve(weights.size());
  for (const auto& w : weights) arcs.push_back({w.from, w.to, w.modulus * unit_phase(w.arg_over_pi)});
  return ConfigurationGraph(n, std::move(arcs), mode);
}

SwitchingSchedule Scenario::schedule() const {
  return SwitchingSchedule(graph(), segments, repeat, dwell_floor);
}

std::optional<Outcome> parse_outcome(const std::string& text) {
  if (text == "surrounded") return Outcome::Surrounded;
  if (text == "collapsed") return Outcome::Collapsed;
  if (text == "undecided") return Outcome::Undecided;
  return std::nullopt;
}

void validate(const Scenario& s) {
  if (s.n == 0) throw ScenarioError("/n", "need at least one agent");
  for (std::size_t k = 0; k < s.weights.size(); ++k) {
    const auto& w = s.weights[k];
    const std::string p = "/weights/" + std::to_string(k);
    if (w.from >= s.n) throw ScenarioError(p + "/i", "node outside 1..n");
    if (w.to >= s.n) throw ScenarioError(p + "/j", "node outside 1..n");
    if (!std::isfinite(w.arg_over_pi)) throw ScenarioError(p + "/arg_over_pi", "not finite");
    if (!(w.modulus > 0.0) || !std::isfinite(w.modulus)) {
      throw ScenarioError(p + "/modulus", "must be positive and finite");
    }
    if (s.mode == WeightMode::Unit && w.modulus != 1.0) {
      throw ScenarioError(p + "/modulus", "must be 1 unless weight_mode is \"scaled\"");
    }
  }
  std::optional<ConfigurationGraph> g;
  try {
    g.emplace(s.graph());
  } catch (const InvalidArgument& e) {
    throw ScenarioError("/weights", e.what());
  }

  if (!(s.step > 0.0) || !std::isfinite(s.step)) throw ScenarioError("/step", "must be positive");
  if (!(s.horizon > 0.0) || !std::isfinite(s.horizon)) {
    throw ScenarioError("/horizon", "must be positive");
  }
  if (!divides(s.horizon, s.step)) {
    throw ScenarioError("/horizon", "is not an integer multiple of step " + format_g(s.step));
  }
  if (s.stride == 0) throw ScenarioError("/stride", "must be at least 1");
  if (!(s.dwell_floor > 0.0)) throw ScenarioError("/schedule/dwell_floor", "must be positive");
  if (s.segments.empty()) throw ScenarioError("/schedule/segments", "need at least one segment");
  for (std::size_t k = 0; k < s.segments.size(); ++k) {
    const std::string p = "/schedule/segments/" + std::to_string(k) + "/duration";
    const double d = s.segments[k].duration;
    if (!(d > 0.0) || !std::isfinite(d)) throw ScenarioError(p, "must be positive");
    if (d < s.dwell_floor) {
      throw ScenarioError(p, "is below the dwell floor " + format_g(s.dwell_floor));
    }
    if (!divides(d, s.step)) {
      throw ScenarioError(p, format_g(d) + " is not an integer multiple of step " +
                                 format_g(s.step));
    }
  }
  try {
    (void)SwitchingSchedule(*g, s.segments, s.repeat, s.dwell_floor);
  } catch (const InvalidArgument& e) {
    throw ScenarioError("/schedule", e.what());
  }

  if (s.x0.size() != s.n) {
    throw ScenarioError("/x0", "has " + std::to_string(s.x0.size()) + " entries, expected " +
                                   std::to_string(s.n));
  }
  for (std::size_t i = 0; i < s.x0.size(); ++i) {
    if (!std::isfinite(s.x0[i].real()) || !std::isfinite(s.x0[i].imag())) {
      throw ScenarioError("/x0/" + std::to_string(i), "not finite");
    }
  }
  if (!(s.tol.consistency > 0.0)) throw ScenarioError("/tolerances/consistency", "must be positive");
  if (!(s.tol.convergence > 0.0)) throw ScenarioError("/tolerances/convergence", "must be positive");
  if (!(s.tol.singular > 0.0)) throw ScenarioError("/tolerances/singular", "must be positive");
  if (s.ujsc_window && !(*s.ujsc_window > 0.0)) {
    throw ScenarioError("/ujsc_window", "must be positive");
  }
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("", "scenario must be a JSON object");
  Scenario s;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ScenarioError("/name", "expected a string");
    s.name = doc["name"].get<std::string>();
  }
  s.n = count(require(doc, "n", ""), "/n");
  if (s.n == 0) throw ScenarioError("/n", "need at least one agent");

  if (doc.contains("weight_mode")) {
    const auto& m = doc["weight_mode"];
    if (m == "unit") {
      s.mode = WeightMode::Unit;
    } else if (m == "scaled") {
      s.mode = WeightMode::Scaled;
    } else {
      throw ScenarioError("/weight_mode", "expected \"unit\" or \"scaled\"");
    }
  }

  const json& ws = require(doc, "weights", "");
  if (!ws.is_array()) throw ScenarioError("/weights", "expected an array");
  for (std::size_t k = 0; k < ws.size(); ++k) {
    const std::string p = "/weights/" + std::to_string(k);
    WeightSpec w;
    const std::size_t i = count(require(ws[k], "i", p), p + "/i");
    const std::size_t j = count(require(ws[k], "j", p), p + "/j");
    if (i < 1 || i > s.n) throw ScenarioError(p + "/i", "node outside 1..n");
    if (j < 1 || j > s.n) throw ScenarioError(p + "/j", "node outside 1..n");
    w.from = i - 1;
    w.to = j - 1;
    w.arg_over_pi = number(require(ws[k], "arg_over_pi", p), p + "/arg_over_pi");
    if (ws[k].contains("modulus")) w.modulus = number(ws[k]["modulus"], p + "/modulus");
    s.weights.push_back(w);
  }

  s.body = parse_body(require(doc, "body", ""));

  s.horizon = number(require(doc, "horizon", ""), "/horizon");
  if (doc.contains("step")) s.step = number(doc["step"], "/step");
  if (doc.contains("stride")) s.stride = count(doc["stride"], "/stride");

  if (doc.contains("schedule")) {
    const json& sch = doc["schedule"];
    const json& segs = require(sch, "segments", "/schedule");
    if (!segs.is_array()) throw ScenarioError("/schedule/segments", "expected an array");
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const std::string p = "/schedule/segments/" + std::to_string(k);
      ScheduleSegment seg;
      seg.duration = number(require(segs[k], "duration", p), p + "/duration");
      seg.active = parse_arcs(require(segs[k], "arcs", p), s.weights, p + "/arcs");
      s.segments.push_back(std::move(seg));
    }
    if (sch.contains("repeat")) {
      if (!sch["repeat"].is_boolean()) throw ScenarioError("/schedule/repeat", "expected a boolean");
      s.repeat = sch["repeat"].get<bool>();
    }
    if (sch.contains("dwell_floor")) {
      s.dwell_floor = number(sch["dwell_floor"], "/schedule/dwell_floor");
    } else {
      s.dwell_floor = s.segments.empty() ? 1.0 : s.segments.front().duration;
      for (const auto& seg : s.segments) s.dwell_floor = std::min(s.dwell_floor, seg.duration);
    }
  } else {
    ArcSubset all(s.weights.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    s.segments.push_back({s.horizon, all});
    s.repeat = true;
    s.dwell_floor = s.horizon;
  }

  const json& xs = require(doc, "x0", "");
  if (!xs.is_array()) throw ScenarioError("/x0", "expected an array of [re, im]");
  for (std::size_t i = 0; i < xs.size(); ++i) s.x0.push_back(point(xs[i], "/x0/" + std::to_string(i)));

  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (t.contains("consistency")) s.tol.consistency = number(t["consistency"], "/tolerances/consistency");
    if (t.contains("convergence")) s.tol.convergence = number(t["convergence"], "/tolerances/convergence");
    if (t.contains("singular")) s.tol.singular = number(t["singular"], "/tolerances/singular");
  }
  if (doc.contains("ujsc_window")) s.ujsc_window = number(doc["ujsc_window"], "/ujsc_window");
  if (doc.contains("expect")) {
    const auto& e = doc["expect"];
    const auto o = e.is_string() ? parse_outcome(e.get<std::string>()) : std::nullopt;
    if (!o) throw ScenarioError("/expect", "expected surrounded, collapsed or undecided");
    s.expect = o;
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("JSON parse error: ") + e.what());
  }
  return parse_scenario(doc);
}

json scenario_to_json(const Scenario& s) {
  json ws = json::array();
  for (const auto& w : s.weights) {
    ws.push_back({{"i", w.from + 1}, {"j", w.to + 1}, {"arg_over_pi", w.arg_over_pi},
                  {"modulus", w.modulus}});
  }
  json segs = json::array();
  for (const auto& seg : s.segments) {
    json arcs = json::array();
    for (std::size_t k : seg.active) {
      arcs.push_back(json::array({s.weights[k].from + 1, s.weights[k].to + 1}));
    }
    segs.push_back({{"duration", seg.duration}, {"arcs", arcs}});
  }
  json xs = json::array();
  for (const auto& z : s.x0) xs.push_back(point_json(z));
  json doc = {
      {"name", s.name},
      {"n", s.n},
      {"weight_mode", s.mode == WeightMode::Unit ? "unit" : "scaled"},
      {"weights", ws},
      {"body", body_json(s.body)},
      {"schedule", {{"segments", segs}, {"repeat", s.repeat}, {"dwell_floor", s.dwell_floor}}},
      {"x0", xs},
      {"horizon", s.horizon},
      {"step", s.step},
      {"stride", s.stride},
      {"tolerances",
       {{"consistency", s.tol.consistency},
        {"convergence", s.tol.convergence},
        {"singular", s.tol.singular}}},
  };
  if (s.ujsc_window) doc["ujsc_window"] = *s.ujsc_window;
  if (s.expect) doc["expect"] = to_string(*s.expect);
  return doc;
}

const TheoremVerdict* Analysis::verdict(const std::string& theorem) const {
  for (const auto& v : verdicts)
    if (v.theorem == theorem) return &v;
  return nullptr;
}

Analysis analyze_scenario(const Scenario& s) {
  const ConfigurationGraph g = s.graph();
  const SwitchingSchedule sched = s.schedule();
  const double ctol = s.tol.consistency;

  Analysis a;
  a.consistency = classify_consistency(g, ctol);
  const ArcSubset all = g.all_arcs();
  a.strongly_connected = is_strongly_connected(g, all);
  a.undirected = std::all_of(sched.segments().begin(), sched.segments().end(),
                             [&](const ScheduleSegment& seg) { return is_symmetric(g, seg.active); });
  a.fixed_graph = sched.is_fixed(g.arc_count());
  a.ujsc_window = s.ujsc_window.value_or(sched.period());
  a.ujsc = verify_ujsc(g, sched, a.ujsc_window);

  if (a.consistency == Consistency::WeaklyConsistent && is_weakly_connected(g, all)) {
    a.gauge = gauge_potentials(g, ctol);
  }
  const bool fixed_sc = a.fixed_graph && a.strongly_connected;
  const bool undirected_ujsc = a.undirected && a.ujsc;

  {
    TheoremVerdict v;
    v.theorem = "theorem2_i";
    v.hypothesis_satisfied = a.ujsc && a.consistency != Consistency::DirectedInconsistent;
    v.detail = v.hypothesis_satisfied
                   ? "UJSC and every directed cycle consistent: surrounding error tends to 0"
                   : "needs UJSC switching and no inconsistent directed cycle";
    if (v.hypothesis_satisfied) v.predicted = 0.0;
    a.verdicts.push_back(v);
  }
  {
    TheoremVerdict v;
    v.theorem = "theorem2_ii";
    v.hypothesis_satisfied = fixed_sc && a.consistency != Consistency::WeaklyConsistent;
    v.detail = v.hypothesis_satisfied
                   ? "fixed strongly connected graph with an inconsistent weak cycle: every "
                     "distance tends to 0"
                   : "needs a fixed strongly connected graph with an inconsistent weak cycle";
    if (v.hypothesis_satisfied) v.predicted = 0.0;
    a.verdicts.push_back(v);
  }

  if (undirected_ujsc && a.gauge) {
    a.verdicts.push_back(theorem3_condition(*a.gauge, s.x0, s.body));
    a.conserved_coefficients.resize(s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
      a.conserved_coefficients[i] = a.gauge->p[i] / static_cast<double>(s.n);
    }
  } else {
    a.verdicts.push_back(
        unmet("theorem3", "needs undirected UJSC switching and a weakly consistent graph"));
  }

  if (fixed_sc) a.lemma3_singular = lemma3_singularity(g, s.tol.singular);
  if (fixed_sc && a.gauge) {
    a.alpha = stationary_weights(g, *a.gauge, ctol);
    a.verdicts.push_back(theorem4_condition(*a.gauge, *a.alpha, s.x0, s.body));
    if (a.conserved_coefficients.empty()) {
      a.conserved_coefficients.resize(s.n);
      for (std::size_t i = 0; i < s.n; ++i) a.conserved_coefficients[i] = (*a.alpha)[i] * a.gauge->p[i];
    }
  } else {
    a.verdicts.push_back(
        unmet("theorem4", "needs a fixed strongly connected, weakly consistent graph"));
  }

  const TheoremVerdict* t3 = a.verdict("theorem3");
  if (t3 && t3->hypothesis_satisfied && s.body.is_ball() &&
      std::get<ConvexBody::Ball>(s.body.shape()).center == Complex{}) {
    a.remark6_bound = remark6_bound(*a.gauge, s.x0, s.body);
  }

  const auto* pt = std::get_if<ConvexBody::Singleton>(&s.body.shape());
  if (pt && pt->point == Complex{}) {
    if (undirected_ujsc && a.gauge) {
      a.point_limit = predict_point_target(g, s.x0, PointTargetRegime::UndirectedSwitching, ctol);
    } else if (fixed_sc) {
      a.point_limit = predict_point_target(g, s.x0, PointTargetRegime::FixedStronglyConnected, ctol);
    }
  }
  return a;
}

RunResult run_scenario(const Scenario& s) {
  RunResult r;
  r.analysis = analyze_scenario(s);
  const ConfigurationGraph g = s.graph();
  IntegrateOptions opt;
  opt.step = s.step;
  opt.stride = s.stride;
  opt.conserved_coefficients = r.analysis.conserved_coefficients;
  r.trajectory = integrate(g, s.schedule(), s.body, s.x0, s.horizon, opt);
  ClassificationThresholds th;
  th.convergence_tol = s.tol.convergence;
  r.report = summarize(g, s.body, r.trajectory, th);
  return r;
}

json analysis_to_json(const Analysis& a) {
  json j = {{"consistency", to_string(a.consistency)},
            {"strongly_connected", a.strongly_connected},
            {"undirected", a.undirected},
            {"fixed_graph", a.fixed_graph},
            {"ujsc", a.ujsc},
            {"ujsc_window", a.ujsc_window}};
  j["gauge"] = a.gauge ? gauge_json(*a.gauge) : json(nullptr);
  j["alpha"] = a.alpha ? json(*a.alpha) : json(nullptr);
  j["lemma3_singular"] = a.lemma3_singular ? json(*a.lemma3_singular) : json(nullptr);
  j["remark6_distance_bound"] = a.remark6_bound ? json(*a.remark6_bound) : json(nullptr);
  if (a.point_limit) {
    json lim = json::array();
    for (const auto& z : a.point_limit->limit) lim.push_back(point_json(z));
    j["point_target_limit"] = {{"limit", lim}, {"inconsistent", a.point_limit->inconsistent}};
  } else {
    j["point_target_limit"] = nullptr;
  }
  json vs = json::array();
  for (const auto& v : a.verdicts) vs.push_back(verdict_json(v));
  j["verdicts"] = vs;
  return j;
}

json report_to_json(const Scenario& s, const RunResult& r) {
  const MonitorReport& m = r.report;
  json monitor = {{"d_star_estimate", m.d_star_estimate},
                  {"max_surrounding_error_final", m.max_surrounding_error_final},
                  {"min_distance_final", m.min_distance_final},
                  {"max_distance_final", m.max_distance_final},
                  {"lyapunov_violations", m.lyapunov_violations},
                  {"worst_lyapunov_increase", m.worst_lyapunov_increase}};
  monitor["conserved_drift"] = m.conserved_drift ? json(*m.conserved_drift) : json(nullptr);
  json j = {{"tool", "surround"},
            {"version", SURROUND_VERSION},
            {"scenario", s.name},
            {"classification", to_string(m.classification)},
            {"monitor", monitor},
            {"analysis", analysis_to_json(r.analysis)},
            {"samples", r.trajectory.samples.size()},
            {"steps", r.trajectory.steps_taken},
            {"step", r.trajectory.step}};
  if (s.expect) {
    j["expect"] = to_string(*s.expect);
    j["expect_met"] = *s.expect == m.classification;
  } else {
    j["expect"] = nullptr;
  }
  return j;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t";
  const std::size_t n = traj.samples.empty() ? 0 : traj.samples.front().x.size();
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string k = std::to_string(i);
    out += ",re_" + k + ",im_" + k + ",dist_" + k;
  }
  out += ",d,conserved_re,conserved_im\n";
  for (const auto& s : traj.samples) {
    out += format_g(s.t);
    for (std::size_t i = 0; i < n; ++i) {
      out += ',' + format_g(s.x[i].real()) + ',' + format_g(s.x[i].imag()) + ',' +
             format_g(s.distance[i]);
    }
    out += ',' + format_g(s.d);
    if (s.conserved) {
      out += ',' + format_g(s.conserved->real()) + ',' + format_g(s.conserved->imag());
    } else {
      out += ",nan,nan";
    }
    out += '\n';
  }
  return out;
}

int exit_code(Outcome classification, std::optional<Outcome> expect) {
  if (expect) return classification == *expect ? 0 : 1;
  return classification == Outcome::Undecided ? 1 : 0;
}

int emit_outputs(const Scenario& s, const RunResult& r, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream csv(out_dir / "trajectory.csv", std::ios::binary);
    csv << trajectory_csv(r.trajectory);
    if (!csv) throw Error("failed writing " + (out_dir / "trajectory.csv").string());
  }
  {
    std::ofstream rep(out_dir / "report.json", std::ios::binary);
    rep << report_to_json(s, r).dump(2) << '\n';
    if (!rep) throw Error("failed writing " + (out_dir / "report.json").string());
  }
  return exit_code(r.report.classification, s.expect);
}

} // namespace surround
