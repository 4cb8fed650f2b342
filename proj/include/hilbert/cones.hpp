#pragma once

#include "hilbert/linalg.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace hilbert {

/// Relative slack below which a point no longer counts as interior.
inline constexpr double kInteriorTol = 1e-12;
/// Hilbert distance below which two projective points are treated as equal.
inline constexpr double kCoincidentTol = 1e-12;

struct Orthant {
  Eigen::Index dim = 0;
};

/// {x : x_1 >= |(x_2, ..., x_n)|}.
struct Lorentz {
  Eigen::Index dim = 0;
};

/// {x : a_i . x >= 0 for every row a_i}. The extreme rays are enumerated
/// once at construction.
struct PolyhedralFacets {
  Matrix facets;
  std::vector<Vector> rays;
};

class ConeSpec {
 public:
  using Variant = std::variant<Orthant, Lorentz, PolyhedralFacets>;

  static ConeSpec orthant(Eigen::Index n);
  static ConeSpec lorentz(Eigen::Index n);
  /// Validates nonzero rows, pointedness (full column rank) and a nonempty
  /// interior (linear feasibility problem).
  static ConeSpec facets(Matrix a);

  Eigen::Index dim() const;
  const Variant& variant() const { return variant_; }
  bool is_polyhedral() const { return !std::holds_alternative<Lorentz>(variant_); }

  /// Smallest facet value (or Lorentz slack) of x relative to |x|; the sign
  /// says inside / outside, zero means boundary.
  double relative_slack(const Vector& x) const;

  bool contains(const Vector& x, double tol = 1e-9) const;
  bool is_interior(const Vector& x) const;
  bool on_boundary(const Vector& x, double tol = 1e-9) const;

  /// inf{beta in R : beta*y - x in C}. Requires y interior; x is arbitrary.
  double min_scale(const Vector& x, const Vector& y) const;

  /// Euclidean distance from an interior point to the boundary.
  double margin(const Vector& x) const;

  /// Extreme rays for polyhedral cones, unit length.
  std::vector<Vector> extreme_rays() const;

  /// Finite set of boundary rays used by sampled checks: the extreme rays for
  /// polyhedral cones, `lorentz_samples` fixed boundary rays otherwise.
  std::vector<Vector> boundary_probes(int lorentz_samples = 256) const;

  /// phi(x) > 0 on every nonzero x of the cone.
  bool is_strictly_positive(const Vector& phi) const;

 private:
  explicit ConeSpec(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// A cone with a distinguished interior order unit u and a strictly positive
/// state phi normalized so that phi(u) = 1.
class OrderUnitSpace {
 public:
  OrderUnitSpace(ConeSpec cone, Vector unit, Vector state);

  /// Default unit and state: all-ones / uniform for orthants, e_1 / e_1 for
  /// Lorentz cones, sum of extreme rays / sum of facets for polyhedral cones.
  static OrderUnitSpace standard(ConeSpec cone);

  const ConeSpec& cone() const { return cone_; }
  const Vector& unit() const { return unit_; }
  const Vector& state() const { return state_; }
  Eigen::Index dim() const { return cone_.dim(); }

 private:
  ConeSpec cone_;
  Vector unit_;
  Vector state_;
};

/// Interior point of the cross section {phi = 1}.
class ProjectivePoint {
 public:
  /// Checks interiority and rescales by phi.
  static ProjectivePoint from(const OrderUnitSpace& space, const Vector& x);

  const Vector& rep() const { return rep_; }

 private:
  explicit ProjectivePoint(Vector rep) : rep_(std::move(rep)) {}
  Vector rep_;
};

/// Endpoints of the chord of the cross section through x and y, ordered so
/// that x lies between x' and y, and y between x and y'.
struct Chord {
  Vector x_prime;
  Vector y_prime;
  double t = 0.0;    ///< x = t x' + (1 - t) y'
  double t_y = 0.0;  ///< y = t_y x' + (1 - t_y) y'
};

double gauge_M(const OrderUnitSpace& space, const Vector& x, const Vector& y);
double hilbert_dist(const OrderUnitSpace& space, const Vector& x, const Vector& y);
double thompson_dist(const OrderUnitSpace& space, const Vector& x, const Vector& y);

Chord chord_endpoints(const OrderUnitSpace& space, const ProjectivePoint& x, const ProjectivePoint& y);

/// [a, b, c, d] = |a - c| |d - b| / (|a - b| |d - c|).
double cross_ratio(const Vector& a, const Vector& b, const Vector& c, const Vector& d);

/// log [x', x, y, y'] on the cross section; zero for coincident points.
double cross_ratio_dist(const OrderUnitSpace& space, const Vector& x, const Vector& y);

double order_unit_norm(const OrderUnitSpace& space, const Vector& x);
bool is_order_unit(const OrderUnitSpace& space, const Vector& x);

/// Throws NotBiPositive unless T maps cone1 onto cone2: generators of cone1
/// land in cone2 and generators of cone2 pull back into cone1.
void check_bipositive(const Matrix& t, const OrderUnitSpace& s1, const OrderUnitSpace& s2);
/// Throws NotPositive unless T maps cone1 into cone2 (generator check).
void check_positive(const Matrix& t, const OrderUnitSpace& s1, const OrderUnitSpace& s2);

/// [T x] = T x / phi_2(T x).
ProjectivePoint induced_isometry_apply(const Matrix& t, const OrderUnitSpace& s1,
                                       const OrderUnitSpace& s2, const ProjectivePoint& x);

/// |T| = |T u_1|_{u_2} for positive T.
double positive_operator_norm(const OrderUnitSpace& s1, const OrderUnitSpace& s2, const Matrix& t);

/// sup{t >= 0 : base + t dir in C} for interior base; infinity if unbounded.
double exit_step(const OrderUnitSpace& space, const Vector& base, const Vector& dir);

/// Random interior point: the unit moved along a random direction of the
/// cross section by a uniform fraction (below `reach`) of the distance to the
/// boundary.
ProjectivePoint sample_interior(const OrderUnitSpace& space, Rng& rng, double reach = 0.995);
/// Random point of the relative boundary of the cross section (phi = 1).
Vector sample_boundary(const OrderUnitSpace& space, Rng& rng);

/// Point of the straight segment [x, y] at Hilbert distance d_H(x, y)/2 from
/// both ends.
ProjectivePoint chord_midpoint(const OrderUnitSpace& space, const ProjectivePoint& x,
                               const ProjectivePoint& y);

/// Grid search for a metric midpoint of x and y off the straight segment.
/// Steps away from the chord midpoint along directions of the cross section
/// transverse to the chord (1e-2 of the chord length, about 10^4 candidates),
/// slides each candidate along the chord direction until it is equidistant
/// from x and y, and accepts it when both distances are half of d_H(x, y)
/// to 1e-9 and it lies at least 1e-3 from the chord midpoint. Returns
/// nullopt when no grid point qualifies (always for cross sections of
/// dimension one).
std::optional<ProjectivePoint> find_nonaffine_midpoint(const OrderUnitSpace& space,
                                                       const ProjectivePoint& x,
                                                       const ProjectivePoint& y);

}  // namespace hilbert
