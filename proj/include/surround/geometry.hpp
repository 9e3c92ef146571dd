#pragma once

#include "surround/numerics.hpp"

#include <span>
#include <variant>
#include <vector>

namespace surround {

/// Closed bounded convex target set in the plane.
///
/// Three shapes are supported: a single point, a disc, and a convex polygon.
/// Polygons are normalized at construction: vertices are stored
/// counter-clockwise with collinear and repeated vertices removed.
class ConvexBody {
public:
  struct Singleton {
    Complex point;
  };
  struct Ball {
    Complex center;
    double radius;
  };
  struct Polygon {
    std::vector<Complex> vertices;
  };

  static ConvexBody singleton(Complex point);
  static ConvexBody ball(Complex center, double radius);
  /// Throws InvalidArgument for clockwise, non-convex, self-winding or
  /// degenerate (fewer than three non-collinear) vertex lists.
  static ConvexBody polygon(std::span<const Complex> vertices);

  const std::variant<Singleton, Ball, Polygon>& shape() const noexcept { return shape_; }

  bool is_singleton() const noexcept { return std::holds_alternative<Singleton>(shape_); }
  bool is_ball() const noexcept { return std::holds_alternative<Ball>(shape_); }
  bool is_polygon() const noexcept { return std::holds_alternative<Polygon>(shape_); }

  /// Nearest point of the body to z; z itself when z lies in the body.
  Complex project(Complex z) const;

  /// |z − project(z)|.
  double distance(Complex z) const;

  /// z − project(z), the vector from the nearest body point to z.
  Complex projection_vector(Complex z) const { return z - project(z); }

  bool contains(Complex z) const { return distance(z) == 0.0; }

  /// Body point maximizing ⟨y, direction⟩. Polygon ties go to the first
  /// maximizing vertex in storage order. Throws InvalidArgument unless
  /// |direction| = 1 within 1e-9.
  Complex support_point(Complex direction) const;

  /// sup over the body of |z|.
  double sup_modulus() const;

  friend bool operator==(const ConvexBody& a, const ConvexBody& b);

private:
  explicit ConvexBody(std::variant<Singleton, Ball, Polygon> s) : shape_(std::move(s)) {}

  std::variant<Singleton, Ball, Polygon> shape_;
};

/// Closest point to z on segment [a, b].
Complex closest_point_on_segment(Complex a, Complex b, Complex z);

} // namespace surround
