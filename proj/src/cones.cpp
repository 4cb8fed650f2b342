#include "hilbert/cones.hpp"

#include "hilbert/error.hpp"
#include "hilbert/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hilbert {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Minkowski form J(a, b) = a_0 b_0 - <a_tail, b_tail>.
double minkowski(const Vector& a, const Vector& b) {
  const Eigen::Index n = a.size();
  return a[0] * b[0] - a.tail(n - 1).dot(b.tail(n - 1));
}

// J(a, a) in factored form, accurate near the boundary.
double minkowski_square(const Vector& a) {
  const double s = a.tail(a.size() - 1).norm();
  return (a[0] - s) * (a[0] + s);
}

// J(x,y)^2 - J(x,x) J(y,y) written through the components of x ^ y, so that
// it stays accurate when x and y are nearly parallel.
double lorentz_discriminant(const Vector& x, const Vector& y) {
  const Eigen::Index n = x.size();
  double timelike = 0.0;
  double spacelike = 0.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double w = x[0] * y[i] - x[i] * y[0];
    timelike += w * w;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double s = x[i] * y[j] - x[j] * y[i];
      spacelike += s * s;
    }
  }
  return timelike - spacelike;
}

void require_dim(const Vector& x, Eigen::Index n, const char* what) {
  if (x.size() != n) {
    fail(ErrorKind::DimensionMismatch,
         std::string(what) + " has dimension " + std::to_string(x.size()) + ", expected " + std::to_string(n));
  }
}

}  // namespace

ConeSpec ConeSpec::orthant(Eigen::Index n) {
  if (n < 1) fail(ErrorKind::InvalidCone, "orthant dimension must be positive");
  return ConeSpec(Orthant{n});
}

ConeSpec ConeSpec::lorentz(Eigen::Index n) {
  if (n < 2) fail(ErrorKind::InvalidCone, "Lorentz cone dimension must be at least 2");
  return ConeSpec(Lorentz{n});
}

ConeSpec ConeSpec::facets(Matrix a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (m == 0 || n == 0) fail(ErrorKind::InvalidCone, "empty facet list");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (a.row(i).norm() == 0.0) fail(ErrorKind::InvalidCone, "facet " + std::to_string(i) + " is zero");
  }
  if (polyhedral::rank(a) < n) fail(ErrorKind::InvalidCone, "facets do not span the space; cone is not pointed");

  // maximize tau subject to a_i.x >= tau |a_i|, |x_j| <= 1, tau <= 1, with x = x+ - x-.
  const Eigen::Index vars = 2 * n + 1;
  Matrix a_ub = Matrix::Zero(m + 2 * n + 1, vars);
  Vector b_ub = Vector::Zero(m + 2 * n + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    a_ub.row(i).head(n) = -a.row(i);
    a_ub.row(i).segment(n, n) = a.row(i);
    a_ub(i, 2 * n) = a.row(i).norm();
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    a_ub(m + j, j) = 1.0;
    a_ub(m + j, n + j) = -1.0;
    b_ub[m + j] = 1.0;
    a_ub(m + n + j, j) = -1.0;
    a_ub(m + n + j, n + j) = 1.0;
    b_ub[m + n + j] = 1.0;
  }
  a_ub(m + 2 * n, 2 * n) = 1.0;
  b_ub[m + 2 * n] = 1.0;
  Vector c = Vector::Zero(vars);
  c[2 * n] = 1.0;
  const auto lp = polyhedral::maximize(c, a_ub, b_ub, Matrix(0, vars), Vector(0));
  if (lp.status != polyhedral::LpStatus::Optimal || lp.value <= kInteriorTol) {
    fail(ErrorKind::InvalidCone, "facet cone has empty interior");
  }

  auto rays = polyhedral::extreme_rays(a);
  return ConeSpec(PolyhedralFacets{std::move(a), std::move(rays)});
}

Eigen::Index ConeSpec::dim() const {
  return std::visit(overloaded{[](const Orthant& o) { return o.dim; }, [](const Lorentz& l) { return l.dim; },
                               [](const PolyhedralFacets& p) { return p.facets.cols(); }},
                    variant_);
}

double ConeSpec::relative_slack(const Vector& x) const {
  require_dim(x, dim(), "vector");
  const double norm = x.norm();
  if (norm == 0.0) return 0.0;
  return std::visit(overloaded{
                        [&](const Orthant&) { return x.minCoeff() / norm; },
                        [&](const Lorentz&) { return (x[0] - x.tail(x.size() - 1).norm()) / norm; },
                        [&](const PolyhedralFacets& p) {
                          double slack = std::numeric_limits<double>::infinity();
                          for (Eigen::Index i = 0; i < p.facets.rows(); ++i) {
                            slack = std::min(slack, p.facets.row(i).dot(x) / p.facets.row(i).norm());
                          }
                          return slack / norm;
                        },
                    },
                    variant_);
}

bool ConeSpec::contains(const Vector& x, double tol) const { return relative_slack(x) >= -tol; }

bool ConeSpec::is_interior(const Vector& x) const {
  if (x.size() != dim() || !x.allFinite() || x.norm() == 0.0) return false;
  return relative_slack(x) > kInteriorTol;
}

bool ConeSpec::on_boundary(const Vector& x, double tol) const {
  return x.norm() > 0.0 && std::abs(relative_slack(x)) <= tol;
}

double ConeSpec::min_scale(const Vector& x, const Vector& y) const {
  require_dim(x, dim(), "x");
  require_dim(y, dim(), "y");
  return std::visit(
      overloaded{
          [&](const Orthant&) { return x.cwiseQuotient(y).maxCoeff(); },
          [&](const PolyhedralFacets& p) {
            const Vector ax = p.facets * x;
            const Vector ay = p.facets * y;
            return ax.cwiseQuotient(ay).maxCoeff();
          },
          [&](const Lorentz&) {
            // beta*y - x lies on the boundary quadric where
            //   J(y,y) beta^2 - 2 J(x,y) beta + J(x,x) = 0.
            // The line beta -> beta*y - x runs from -C (beta -> -inf) to C
            // (beta -> +inf) and enters C at the larger root.
            const double jyy = minkowski_square(y);
            const double jxy = minkowski(x, y);
            double disc = lorentz_discriminant(x, y);
            const double scale = jxy * jxy + std::abs(minkowski_square(x) * jyy);
            if (disc < 0.0) {
              if (disc < -1e-10 * scale) {
                fail(ErrorKind::NumericalDegeneracy, "negative Lorentz gauge discriminant");
              }
              disc = 0.0;
            }
            return (jxy + std::sqrt(disc)) / jyy;
          },
      },
      variant_);
}

double ConeSpec::margin(const Vector& x) const {
  require_dim(x, dim(), "vector");
  return std::visit(overloaded{
                        [&](const Orthant&) { return x.minCoeff(); },
                        [&](const Lorentz&) { return (x[0] - x.tail(x.size() - 1).norm()) / std::sqrt(2.0); },
                        [&](const PolyhedralFacets& p) {
                          double m = std::numeric_limits<double>::infinity();
                          for (Eigen::Index i = 0; i < p.facets.rows(); ++i) {
                            m = std::min(m, p.facets.row(i).dot(x) / p.facets.row(i).norm());
                          }
                          return m;
                        },
                    },
                    variant_);
}

std::vector<Vector> ConeSpec::extreme_rays() const {
  return std::visit(overloaded{
                        [](const Orthant& o) {
                          std::vector<Vector> rays;
                          for (Eigen::Index i = 0; i < o.dim; ++i) rays.push_back(Vector::Unit(o.dim, i));
                          return rays;
                        },
                        [](const Lorentz&) -> std::vector<Vector> {
                          fail(ErrorKind::InvalidArgument, "Lorentz cones have a continuum of extreme rays");
                        },
                        [](const PolyhedralFacets& p) { return p.rays; },
                    },
                    variant_);
}

std::vector<Vector> ConeSpec::boundary_probes(int lorentz_samples) const {
  if (is_polyhedral()) return extreme_rays();
  const Eigen::Index n = dim();
  Rng rng(0xb0d1e5ULL);
  std::vector<Vector> probes;
  for (int k = 0; k < lorentz_samples; ++k) {
    Vector dir = rng.normal_vector(n - 1);
    Vector v(n);
    v[0] = 1.0;
    v.tail(n - 1) = dir.normalized();
    probes.push_back(v / std::sqrt(2.0));
  }
  return probes;
}

bool ConeSpec::is_strictly_positive(const Vector& phi) const {
  require_dim(phi, dim(), "state");
  const double norm = phi.norm();
  if (norm == 0.0) return false;
  return std::visit(overloaded{
                        [&](const Orthant&) { return phi.minCoeff() > kInteriorTol * norm; },
                        // The Lorentz cone is self-dual.
                        [&](const Lorentz&) { return phi[0] - phi.tail(phi.size() - 1).norm() > kInteriorTol * norm; },
                        [&](const PolyhedralFacets& p) {
                          return std::all_of(p.rays.begin(), p.rays.end(),
                                             [&](const Vector& r) { return phi.dot(r) > kInteriorTol * norm; });
                        },
                    },
                    variant_);
}

OrderUnitSpace::OrderUnitSpace(ConeSpec cone, Vector unit, Vector state)
    : cone_(std::move(cone)), unit_(std::move(unit)), state_(std::move(state)) {
  const Eigen::Index n = cone_.dim();
  if (unit_.size() != n || state_.size() != n) {
    fail(ErrorKind::DimensionMismatch, "order unit and state must match the cone dimension");
  }
  if (!cone_.is_interior(unit_)) fail(ErrorKind::InvalidSpace, "order unit is not interior to the cone");
  if (std::abs(state_.dot(unit_) - 1.0) > 1e-9) fail(ErrorKind::InvalidSpace, "state does not satisfy phi(u) = 1");
  if (!cone_.is_strictly_positive(state_)) fail(ErrorKind::InvalidSpace, "state is not strictly positive");
}

OrderUnitSpace OrderUnitSpace::standard(ConeSpec cone) {
  const Eigen::Index n = cone.dim();
  Vector unit;
  Vector state;
  std::visit(overloaded{
                 [&](const Orthant&) {
                   unit = Vector::Ones(n);
                   state = Vector::Constant(n, 1.0 / static_cast<double>(n));
                 },
                 [&](const Lorentz&) {
                   unit = Vector::Unit(n, 0);
                   state = Vector::Unit(n, 0);
                 },
                 [&](const PolyhedralFacets& p) {
                   unit = Vector::Zero(n);
                   for (const auto& r : p.rays) unit += r;
                   state = Vector::Zero(n);
                   for (Eigen::Index i = 0; i < p.facets.rows(); ++i) {
                     state += p.facets.row(i).transpose() / p.facets.row(i).norm();
                   }
                   state /= state.dot(unit);
                 },
             },
             cone.variant());
  return OrderUnitSpace(std::move(cone), std::move(unit), std::move(state));
}

ProjectivePoint ProjectivePoint::from(const OrderUnitSpace& space, const Vector& x) {
  require_dim(x, space.dim(), "point");
  if (!space.cone().is_interior(x)) fail(ErrorKind::NotInterior, "point is not interior to the cone");
  return ProjectivePoint(x / space.state().dot(x));
}

double gauge_M(const OrderUnitSpace& space, const Vector& x, const Vector& y) {
  if (!space.cone().is_interior(x)) fail(ErrorKind::NotInterior, "x is not interior to the cone");
  if (!space.cone().is_interior(y)) fail(ErrorKind::NotInterior, "y is not interior to the cone");
  return space.cone().min_scale(x, y);
}

double hilbert_dist(const OrderUnitSpace& space, const Vector& x, const Vector& y) {
  const double d = std::log(gauge_M(space, x, y) * gauge_M(space, y, x));
  return std::max(d, 0.0);
}

double thompson_dist(const OrderUnitSpace& space, const Vector& x, const Vector& y) {
  const double d = std::log(std::max(gauge_M(space, x, y), gauge_M(space, y, x)));
  return std::max(d, 0.0);
}

Chord chord_endpoints(const OrderUnitSpace& space, const ProjectivePoint& x, const ProjectivePoint& y) {
  const Vector& px = x.rep();
  const Vector& py = y.rep();
  if (hilbert_dist(space, px, py) < kCoincidentTol) {
    fail(ErrorKind::CoincidentPoints, "chord through coincident projective points");
  }
  const Vector& phi = space.state();
  const Vector wx = px - py / space.cone().min_scale(py, px);
  const Vector wy = py - px / space.cone().min_scale(px, py);
  Chord chord;
  chord.x_prime = wx / phi.dot(wx);
  chord.y_prime = wy / phi.dot(wy);
  const Vector span = chord.x_prime - chord.y_prime;
  const double len2 = span.squaredNorm();
  chord.t = (px - chord.y_prime).dot(span) / len2;
  chord.t_y = (py - chord.y_prime).dot(span) / len2;
  return chord;
}

double cross_ratio(const Vector& a, const Vector& b, const Vector& c, const Vector& d) {
  return ((a - c).norm() * (d - b).norm()) / ((a - b).norm() * (d - c).norm());
}

double cross_ratio_dist(const OrderUnitSpace& space, const Vector& x, const Vector& y) {
  const auto px = ProjectivePoint::from(space, x);
  const auto py = ProjectivePoint::from(space, y);
  if (hilbert_dist(space, px.rep(), py.rep()) < kCoincidentTol) return 0.0;
  const Chord chord = chord_endpoints(space, px, py);
  return std::log(cross_ratio(chord.x_prime, px.rep(), py.rep(), chord.y_prime));
}

double order_unit_norm(const OrderUnitSpace& space, const Vector& x) {
  const auto& cone = space.cone();
  const Vector& u = space.unit();
  return std::max({cone.min_scale(x, u), cone.min_scale(-x, u), 0.0});
}

bool is_order_unit(const OrderUnitSpace& space, const Vector& x) { return space.cone().is_interior(x); }

namespace {

void require_map_shape(const Matrix& t, const OrderUnitSpace& s1, const OrderUnitSpace& s2) {
  if (t.rows() != s2.dim() || t.cols() != s1.dim()) {
    fail(ErrorKind::DimensionMismatch, "map is " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) +
                                           ", spaces need " + std::to_string(s2.dim()) + "x" +
                                           std::to_string(s1.dim()));
  }
}

constexpr double kMembershipTol = 1e-9;

}  // namespace

void check_positive(const Matrix& t, const OrderUnitSpace& s1, const OrderUnitSpace& s2) {
  require_map_shape(t, s1, s2);
  for (const auto& g : s1.cone().boundary_probes()) {
    const Vector image = t * g;
    if (image.norm() > 0.0 && !s2.cone().contains(image, kMembershipTol)) {
      fail(ErrorKind::NotPositive, "a boundary ray of the source cone maps outside the target cone");
    }
  }
}

void check_bipositive(const Matrix& t, const OrderUnitSpace& s1, const OrderUnitSpace& s2) {
  require_map_shape(t, s1, s2);
  if (s1.dim() != s2.dim()) fail(ErrorKind::DimensionMismatch, "bi-positivity check needs equal dimensions");
  Eigen::FullPivLU<Matrix> lu(t);
  if (!lu.isInvertible()) fail(ErrorKind::NotBiPositive, "map is singular");
  if (!s2.cone().is_interior(t * s1.unit())) fail(ErrorKind::NotBiPositive, "order unit does not map to an interior point");
  for (const auto& g : s1.cone().boundary_probes()) {
    if (!s2.cone().on_boundary(t * g, kMembershipTol)) {
      fail(ErrorKind::NotBiPositive, "a boundary ray of the source cone does not map to the target boundary");
    }
  }
  for (const auto& g : s2.cone().boundary_probes()) {
    if (!s1.cone().contains(lu.solve(g), kMembershipTol)) {
      fail(ErrorKind::NotBiPositive, "a boundary ray of the target cone pulls back outside the source cone");
    }
  }
}

ProjectivePoint induced_isometry_apply(const Matrix& t, const OrderUnitSpace& s1, const OrderUnitSpace& s2,
                                       const ProjectivePoint& x) {
  check_bipositive(t, s1, s2);
  const Vector image = t * x.rep();
  if (!s2.cone().is_interior(image)) fail(ErrorKind::NotBiPositive, "image of an interior point is not interior");
  return ProjectivePoint::from(s2, image);
}

double positive_operator_norm(const OrderUnitSpace& s1, const OrderUnitSpace& s2, const Matrix& t) {
  check_positive(t, s1, s2);
  return order_unit_norm(s2, t * s1.unit());
}

double exit_step(const OrderUnitSpace& space, const Vector& base, const Vector& dir) {
  const double beta = space.cone().min_scale(-dir, base);
  if (beta <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / beta;
}

namespace {

Vector tangent_direction(const OrderUnitSpace& space, Rng& rng) {
  const Vector g = rng.normal_vector(space.dim());
  return g - space.state().dot(g) * space.unit();
}

}  // namespace

ProjectivePoint sample_interior(const OrderUnitSpace& space, Rng& rng, double reach) {
  const Vector& u = space.unit();
  const Vector d = tangent_direction(space, rng);
  const double frac = rng.uniform() * reach;
  if (d.norm() <= 1e-14 * u.norm()) return ProjectivePoint::from(space, u);
  const double step = exit_step(space, u, d);
  return ProjectivePoint::from(space, u + frac * step * d);
}

Vector sample_boundary(const OrderUnitSpace& space, Rng& rng) {
  if (space.dim() < 2) fail(ErrorKind::InvalidArgument, "one-dimensional cross sections have no boundary");
  const Vector& u = space.unit();
  Vector d = tangent_direction(space, rng);
  while (d.norm() <= 1e-12 * u.norm()) d = tangent_direction(space, rng);
  const Vector b = u + exit_step(space, u, d) * d;
  return b / space.state().dot(b);
}

ProjectivePoint chord_midpoint(const OrderUnitSpace& space, const ProjectivePoint& x, const ProjectivePoint& y) {
  const double d = hilbert_dist(space, x.rep(), y.rep());
  if (d < kCoincidentTol) return x;
  const Chord chord = chord_endpoints(space, x, y);
  const Vector axis = chord.y_prime - chord.x_prime;
  const double len = axis.norm();
  const Vector e = axis / len;
  // Positions along the chord measured from x'; solve
  //   log[(z)(len - p) / (p (len - z))] = d/2 for z.
  const double p = (x.rep() - chord.x_prime).dot(e);
  const double k = std::exp(0.5 * d) * p / (len - p);
  const double z = k * len / (1.0 + k);
  return ProjectivePoint::from(space, chord.x_prime + z * e);
}

std::optional<ProjectivePoint> find_nonaffine_midpoint(const OrderUnitSpace& space, const ProjectivePoint& x,
                                                       const ProjectivePoint& y) {
  const double d = hilbert_dist(space, x.rep(), y.rep());
  if (d < kCoincidentTol) fail(ErrorKind::CoincidentPoints, "midpoint search needs distinct points");
  const Eigen::Index n = space.dim();
  if (n < 3) return std::nullopt;
  const ProjectivePoint mid = chord_midpoint(space, x, y);
  const Chord chord = chord_endpoints(space, x, y);
  const double step = 1e-2 * (chord.y_prime - chord.x_prime).norm();
  const Vector w = y.rep() - x.rep();
  const double tau_x = (x.rep() - mid.rep()).dot(w) / w.squaredNorm();
  const double tau_y = (y.rep() - mid.rep()).dot(w) / w.squaredNorm();

  // Orthonormal directions of the cross section transverse to the chord:
  // trailing columns of the Q factor of [phi, w].
  Matrix lead(n, 2);
  lead.col(0) = space.state();
  lead.col(1) = w;
  Eigen::HouseholderQR<Matrix> qr(lead);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix transverse = q.rightCols(n - 2);

  auto gap = [&](const Vector& m) { return hilbert_dist(space, x.rep(), m) - hilbert_dist(space, m, y.rep()); };

  // Each candidate is moved along the chord direction until it is
  // equidistant from x and y, then tested as a midpoint.
  const Eigen::Index directions = 2 * (n - 2);
  const int per_direction = static_cast<int>(10000 / directions);
  std::vector<bool> active(static_cast<std::size_t>(directions), true);
  for (int k = 1; k <= per_direction; ++k) {
    for (Eigen::Index dir = 0; dir < directions; ++dir) {
      if (!active[static_cast<std::size_t>(dir)]) continue;
      const double sign = (dir % 2 == 0) ? 1.0 : -1.0;
      const Vector base = mid.rep() + sign * k * step * transverse.col(dir / 2);
      double lo = tau_x;
      double hi = tau_y;
      if (!space.cone().is_interior(base + lo * w) || !space.cone().is_interior(base + hi * w)) {
        active[static_cast<std::size_t>(dir)] = false;
        continue;
      }
      if (gap(base + lo * w) > 0.0 || gap(base + hi * w) < 0.0) continue;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double t = 0.5 * (lo + hi);
        (gap(base + t * w) < 0.0 ? lo : hi) = t;
      }
      const Vector cand = base + 0.5 * (lo + hi) * w;
      const double d1 = hilbert_dist(space, x.rep(), cand);
      const double d2 = hilbert_dist(space, cand, y.rep());
      if (std::abs(d1 - 0.5 * d) <= 1e-9 && std::abs(d2 - 0.5 * d) <= 1e-9 &&
          hilbert_dist(space, cand, mid.rep()) >= 1e-3) {
        return ProjectivePoint::from(space, cand);
      }
    }
  }
  return std::nullopt;
}

}  // namespace hilbert
