#include "surround/geometry.hpp"

#include "surround/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <string>
#include <type_traits>

namespace surround {

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::vector<Complex> normalize_polygon(std::span<const Complex> input) {
  std::vector<Complex> v;
  for (const auto& p : input) {
    if (!finite(p)) throw InvalidArgument("polygon vertex is not finite");
    if (v.empty() || v.back() != p) v.push_back(p);
  }
  while (v.size() > 1 && v.front() == v.back()) v.pop_back();

  // Drop interior collinear vertices until none remain. A reversal (spike)
  // is not collinear-interior and is rejected.
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Complex prev = v[(i + v.size() - 1) % v.size()];
      const Complex next = v[(i + 1) % v.size()];
      const Complex a = v[i] - prev;
      const Complex b = next - v[i];
      if (std::abs(cross(a, b)) <= 1e-12 * std::abs(a) * std::abs(b)) {
        if (inner(a, b) < 0.0) {
          throw InvalidArgument("polygon backtracks on itself at vertex " + std::to_string(i));
        }
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) {
    throw InvalidArgument("polygon needs at least three non-collinear vertices");
  }

  double turning = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex prev = v[(i + v.size() - 1) % v.size()];
    const Complex next = v[(i + 1) % v.size()];
    const Complex a = v[i] - prev;
    const Complex b = next - v[i];
    const double c = cross(a, b);
    if (c < 0.0) {
      throw InvalidArgument("polygon vertices must be counter-clockwise and convex (vertex " +
                            std::to_string(i) + ")");
    }
    turning += std::atan2(c, inner(a, b));
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
    throw InvalidArgument("polygon winds more than once around its interior");
  }
  return v;
}

} // namespace

Complex closest_point_on_segment(Complex a, Complex b, Complex z) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return a;
  const double t = inner(z - a, ab) / len2;
  if (t <= 0.0) return a;
  if (t >= 1.0) return b;
  return a + t * ab;
}

ConvexBody ConvexBody::singleton(Complex point) {
  if (!finite(point)) throw InvalidArgument("singleton point is not finite");
  return ConvexBody(Singleton{point});
}

ConvexBody ConvexBody::ball(Complex center, double radius) {
  if (!finite(center)) throw InvalidArgument("ball center is not finite");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("ball radius must be positive and finite");
  }
  return ConvexBody(Ball{center, radius});
}

ConvexBody ConvexBody::polygon(std::span<const Complex> vertices) {
  return ConvexBody(Polygon{normalize_polygon(vertices)});
}

Complex ConvexBody::project(Complex z) const {
  return std::visit(
      [z](const auto& s) -> Complex {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Singleton>) {
          return s.point;
        } else if constexpr (std::is_same_v<T, Ball>) {
          const Complex d = z - s.center;
          const double r = std::abs(d);
          if (r <= s.radius) return z;
          return s.center + d * (s.radius / r);
        } else {
          const auto& v = s.vertices;
          const std::size_t n = v.size();
          bool inside = true;
          for (std::size_t i = 0; i < n && inside; ++i) {
            inside = cross(v[(i + 1) % n] - v[i], z - v[i]) >= 0.0;
          }
          if (inside) return z;
          Complex best = v[0];
          double best_d = std::numeric_limits<double>::infinity();
          for (std::size_t i = 0; i < n; ++i) {
            const Complex c = closest_point_on_segment(v[i], v[(i + 1) % n], z);
            const double d = std::norm(z - c);
            if (d < best_d) {
              best_d = d;
              best = c;
            }
          }
          return best;
        }
      },
      shape_);
}

double ConvexBody::distance(Complex z) const { return std::abs(z - project(z)); }

Complex ConvexBody::support_point(Complex direction) const {
  if (std::abs(std::abs(direction) - 1.0) > 1e-9) {
    throw InvalidArgument("support direction must have unit modulus, got |e| = " +
                          std::to_string(std::abs(direction)));
  }
  return std::visit(
      [direction](const auto& s) -> Complex {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Singleton>) {
          return s.point;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return s.center + s.radius * direction;
        } else {
          double best = -std::numeric_limits<double>::infinity();
          double scale = 1.0;
          for (const auto& p : s.vertices) {
            best = std::max(best, inner(p, direction));
            scale = std::max(scale, std::abs(p));
          }
          const double tie = 1e-12 * scale;
          for (const auto& p : s.vertices) {
            if (inner(p, direction) >= best - tie) return p;
          }
          return s.vertices.front();
        }
      },
      shape_);
}

double ConvexBody::sup_modulus() const {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Singleton>) {
          return std::abs(s.point);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return std::abs(s.center) + s.radius;
        } else {
          double m = 0.0;
          for (const auto& p : s.vertices) m = std::max(m, std::abs(p));
          return m;
        }
      },
      shape_);
}

bool operator==(const ConvexBody& a, const ConvexBody& b) {
  if (a.shape_.index() != b.shape_.index()) return false;
  if (const auto* s = std::get_if<ConvexBody::Singleton>(&a.shape_)) {
    return s->point == std::get<ConvexBody::Singleton>(b.shape_).point;
  }
  if (const auto* s = std::get_if<ConvexBody::Ball>(&a.shape_)) {
    const auto& o = std::get<ConvexBody::Ball>(b.shape_);
    return s->center == o.center && s->radius == o.radius;
  }
  return std::get<ConvexBody::Polygon>(a.shape_).vertices ==
         std::get<ConvexBody::Polygon>(b.shape_).vertices;
}

} // namespace surround
