#pragma once

#include "hilbert/cones.hpp"

#include <variant>
#include <vector>

namespace hilbert {

/// Bounded polytope with the origin in its interior. `bounds` holds one row
/// h per facet with the closed body equal to {y : h . y <= 1}.
struct Polytope {
  std::vector<Vector> vertices;
  Matrix bounds;
};

/// Closed Euclidean ball centred at the origin.
struct Ball {
  double radius = 1.0;
  Eigen::Index dim = 2;
};

/// Largest dimension for which facets are enumerated from the vertices.
inline constexpr Eigen::Index kMaxEnumeratedPolytopeDim = 6;

class ConvexBody {
 public:
  using Variant = std::variant<Polytope, Ball>;

  /// Facets come from a double-description pass over the lifted vertices;
  /// bodies above kMaxEnumeratedPolytopeDim need the overload taking bounds.
  static ConvexBody polytope(std::vector<Vector> vertices);
  static ConvexBody polytope(std::vector<Vector> vertices, Matrix bounds);
  static ConvexBody ball(double radius, Eigen::Index dim = 2);

  Eigen::Index dim() const;
  const Variant& variant() const { return variant_; }

  /// Strictly inside, with relative margin kInteriorTol.
  bool is_interior(const Vector& y) const;

 private:
  explicit ConvexBody(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// The cone {lambda (y, 1) : lambda >= 0, y in the body} in Y + R, carried
/// as an order unit space with unit (0, 1) and state (y, s) -> s.
///
/// Polytopes keep lifted coordinates (y, s) and become facet cones. Balls
/// become Lorentz cones, whose axis is the first coordinate; `to_cone` maps
/// lifted coordinates (y, s) to the cone's coordinates (s, y / r).
struct LiftedCone {
  ConvexBody base;
  OrderUnitSpace space;
  Matrix to_cone;

  Eigen::Index ambient_dim() const { return base.dim() + 1; }
  /// Cone coordinates of (y, 1).
  Vector embed(const Vector& y) const;
  ProjectivePoint point(const Vector& y) const;
};

LiftedCone lift(const ConvexBody& body);

/// Minkowski functional of the symmetric body Omega ∩ -Omega.
double minkowski_norm(const ConvexBody& body, const Vector& y);

/// Hilbert distance on the body itself: log of the cross-ratio along the
/// chord of the body through p and q.
double body_dist(const ConvexBody& body, const Vector& p, const Vector& q);

}  // namespace hilbert
