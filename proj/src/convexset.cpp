#include "hilbert/convexset.hpp"

#include "hilbert/error.hpp"
#include "hilbert/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hilbert {

namespace {

Matrix stack_rows(const std::vector<Vector>& rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return m;
}

void validate_vertices(const std::vector<Vector>& vertices) {
  if (vertices.empty()) fail(ErrorKind::InvalidBody, "polytope needs at least one vertex");
  const Eigen::Index d = vertices.front().size();
  if (d < 1) fail(ErrorKind::InvalidBody, "polytope vertices must have positive dimension");
  for (const auto& v : vertices) {
    if (v.size() != d) fail(ErrorKind::InvalidBody, "polytope vertices have mixed dimensions");
    if (!v.allFinite()) fail(ErrorKind::InvalidBody, "polytope vertices must be finite");
  }
}

// maximize t subject to sum lambda_i v_i = 0, sum lambda_i = 1, lambda_i >= t.
// The origin is interior iff the vertices span the space and t* > 0.
void require_origin_interior(const std::vector<Vector>& vertices) {
  const Matrix v = stack_rows(vertices);
  const Eigen::Index k = v.rows();
  const Eigen::Index d = v.cols();
  if (polyhedral::rank(v) < d) fail(ErrorKind::OriginNotInterior, "vertices do not span the space");
  const Eigen::Index vars = k + 2;  // lambda, t+, t-
  Matrix a_eq = Matrix::Zero(d + 1, vars);
  Vector b_eq = Vector::Zero(d + 1);
  a_eq.topLeftCorner(d, k) = v.transpose();
  a_eq.row(d).head(k).setOnes();
  b_eq[d] = 1.0;
  Matrix a_ub = Matrix::Zero(k, vars);
  for (Eigen::Index i = 0; i < k; ++i) {
    a_ub(i, i) = -1.0;
    a_ub(i, k) = 1.0;
    a_ub(i, k + 1) = -1.0;
  }
  Vector c = Vector::Zero(vars);
  c[k] = 1.0;
  c[k + 1] = -1.0;
  const auto lp = polyhedral::maximize(c, a_ub, Vector::Zero(k), a_eq, b_eq);
  if (lp.status != polyhedral::LpStatus::Optimal || lp.value <= kInteriorTol) {
    fail(ErrorKind::OriginNotInterior, "origin is not interior to the polytope");
  }
}

}  // namespace

ConvexBody ConvexBody::polytope(std::vector<Vector> vertices) {
  validate_vertices(vertices);
  const Eigen::Index d = vertices.front().size();
  if (d > kMaxEnumeratedPolytopeDim) {
    fail(ErrorKind::FacetsRequired, "facet enumeration is limited to dimension " +
                                        std::to_string(kMaxEnumeratedPolytopeDim) + "; supply facet bounds");
  }
  require_origin_interior(vertices);

  // Facets of the lifted cone are the extreme rays of its dual
  // {a : a . (v_i, 1) >= 0}; a ray (w, c) is the facet -w/c . y <= 1.
  Matrix lifted(static_cast<Eigen::Index>(vertices.size()), d + 1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    lifted.row(static_cast<Eigen::Index>(i)).head(d) = vertices[i].transpose();
    lifted(static_cast<Eigen::Index>(i), d) = 1.0;
  }
  const auto rays = polyhedral::extreme_rays(lifted);
  Matrix bounds(static_cast<Eigen::Index>(rays.size()), d);
  for (std::size_t j = 0; j < rays.size(); ++j) {
    const Vector& r = rays[j];
    bounds.row(static_cast<Eigen::Index>(j)) = -r.head(d).transpose() / r[d];
  }
  return ConvexBody(Polytope{std::move(vertices), std::move(bounds)});
}

ConvexBody ConvexBody::polytope(std::vector<Vector> vertices, Matrix bounds) {
  validate_vertices(vertices);
  const Eigen::Index d = vertices.front().size();
  if (bounds.cols() != d || bounds.rows() == 0) fail(ErrorKind::InvalidBody, "facet bounds do not match the vertices");
  require_origin_interior(vertices);
  for (const auto& v : vertices) {
    if ((bounds * v).maxCoeff() > 1.0 + 1e-9) fail(ErrorKind::InvalidBody, "a vertex violates a facet bound");
  }
  return ConvexBody(Polytope{std::move(vertices), std::move(bounds)});
}

ConvexBody ConvexBody::ball(double radius, Eigen::Index dim) {
  if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorKind::InvalidBody, "ball radius must be positive and finite");
  if (dim < 1) fail(ErrorKind::InvalidBody, "ball dimension must be positive");
  return ConvexBody(Ball{radius, dim});
}

Eigen::Index ConvexBody::dim() const {
  if (const auto* p = std::get_if<Polytope>(&variant_)) return p->bounds.cols();
  return std::get<Ball>(variant_).dim;
}

bool ConvexBody::is_interior(const Vector& y) const {
  if (y.size() != dim() || !y.allFinite()) return false;
  if (const auto* p = std::get_if<Polytope>(&variant_)) return (p->bounds * y).maxCoeff() < 1.0 - kInteriorTol;
  return y.norm() < std::get<Ball>(variant_).radius * (1.0 - kInteriorTol);
}

Vector LiftedCone::embed(const Vector& y) const {
  if (y.size() != base.dim()) fail(ErrorKind::DimensionMismatch, "point does not match the body dimension");
  Vector lifted(y.size() + 1);
  lifted.head(y.size()) = y;
  lifted[y.size()] = 1.0;
  return to_cone * lifted;
}

ProjectivePoint LiftedCone::point(const Vector& y) const { return ProjectivePoint::from(space, embed(y)); }

LiftedCone lift(const ConvexBody& body) {
  const Eigen::Index d = body.dim();
  const Eigen::Index n = d + 1;
  if (const auto* p = std::get_if<Polytope>(&body.variant())) {
    // (y, s) with s - h . y >= 0 for every facet bound h.
    Matrix facets(p->bounds.rows(), n);
    facets.leftCols(d) = -p->bounds;
    facets.col(d).setOnes();
    OrderUnitSpace space(ConeSpec::facets(std::move(facets)), Vector::Unit(n, d), Vector::Unit(n, d));
    return LiftedCone{body, std::move(space), Matrix::Identity(n, n)};
  }
  const auto& ball = std::get<Ball>(body.variant());
  Matrix to_cone = Matrix::Zero(n, n);
  to_cone(0, d) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) to_cone(i + 1, i) = 1.0 / ball.radius;
  OrderUnitSpace space(ConeSpec::lorentz(n), Vector::Unit(n, 0), Vector::Unit(n, 0));
  return LiftedCone{body, std::move(space), std::move(to_cone)};
}

double minkowski_norm(const ConvexBody& body, const Vector& y) {
  if (y.size() != body.dim()) fail(ErrorKind::DimensionMismatch, "vector does not match the body dimension");
  if (const auto* p = std::get_if<Polytope>(&body.variant())) return (p->bounds * y).cwiseAbs().maxCoeff();
  return y.norm() / std::get<Ball>(body.variant()).radius;
}

double body_dist(const ConvexBody& body, const Vector& p, const Vector& q) {
  if (!body.is_interior(p)) fail(ErrorKind::NotInterior, "p is not interior to the body");
  if (!body.is_interior(q)) fail(ErrorKind::NotInterior, "q is not interior to the body");
  const Vector dir = q - p;
  if (dir.norm() <= 1e-15 * std::max(1.0, p.norm())) return 0.0;

  // Chord p + t dir for t in [t_lo, t_hi]; q sits at t = 1.
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  if (const auto* poly = std::get_if<Polytope>(&body.variant())) {
    const Vector hp = poly->bounds * p;
    const Vector hd = poly->bounds * dir;
    for (Eigen::Index j = 0; j < hp.size(); ++j) {
      if (hd[j] > 0.0) {
        t_hi = std::min(t_hi, (1.0 - hp[j]) / hd[j]);
      } else if (hd[j] < 0.0) {
        t_lo = std::max(t_lo, (1.0 - hp[j]) / hd[j]);
      }
    }
  } else {
    const double r = std::get<Ball>(body.variant()).radius;
    const double a = dir.squaredNorm();
    const double b = p.dot(dir);
    const double c = (p.norm() - r) * (p.norm() + r);
    const double root = std::sqrt(b * b - a * c);
    // Stable pair of roots of a t^2 + 2 b t + c = 0 (c < 0, so one of each sign).
    const double big = (b >= 0.0) ? -(b + root) : (root - b);
    const double t1 = big / a;
    const double t2 = c / big;
    t_lo = std::min(t1, t2);
    t_hi = std::max(t1, t2);
  }
  if (!std::isfinite(t_lo) || !std::isfinite(t_hi)) fail(ErrorKind::InvalidBody, "chord is unbounded");
  return std::log(((1.0 - t_lo) * t_hi) / ((-t_lo) * (t_hi - 1.0)));
}

}  // namespace hilbert
