#include "hilbert/collineation.hpp"
#include "hilbert/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hilbert;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

OrderUnitSpace lorentz(Eigen::Index n) { return OrderUnitSpace::standard(ConeSpec::lorentz(n)); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

// Positive c with a = c b, or NaN when no such c fits to 1e-9.
double positive_ratio(const Matrix& a, const Matrix& b) {
  const double c = (a.array() * b.array()).sum() / b.squaredNorm();
  if (!(c > 0.0) || (a - c * b).norm() > 1e-9 * a.norm()) return std::nan("");
  return c;
}

}  // namespace

TEST_CASE("base change for a known rotation") {
  const auto l3 = lorentz(3);
  const Matrix rot = spatial_rotation(3, 1, 2, M_PI / 6);
  const auto f = induced_oracle(rot, l3);
  const auto x = ProjectivePoint::from(l3, vec({1, 0, 0}));
  const auto y = ProjectivePoint::from(l3, vec({1, 0.3, 0}));
  const auto s = base_change(l3, l3, f, x, y);
  CHECK(s.rank() == 2);
  CHECK(std::isfinite(positive_ratio(s.images(), rot * s.basis())));

  // Reproduces f on chord samples.
  for (int k = 1; k <= 10; ++k) {
    const double lambda = k / 11.0;
    const Vector z = s.basis().col(0) + lambda * (s.basis().col(1) - s.basis().col(0));
    const auto pz = ProjectivePoint::from(l3, z);
    CHECK(hilbert_dist(l3, s.apply(pz.rep()), f(pz).rep()) <= 1e-8);
  }

  // Cross ratios along the chord survive S.
  const Vector xp = s.basis().col(0);
  const Vector yp = s.basis().col(1);
  auto proj = [&](const Vector& v) { return Vector(v / l3.state().dot(v)); };
  for (double lambda : {0.2, 0.45, 0.7}) {
    const Vector z = xp + lambda * (yp - xp);
    const double before = cross_ratio(xp, z, x.rep(), yp);
    const double after = cross_ratio(proj(s.apply(xp)), proj(s.apply(z)), proj(s.apply(x.rep())), proj(s.apply(yp)));
    CHECK(std::abs(before - after) <= 1e-9 * before);
  }
}

TEST_CASE("base change for the identity") {
  const auto l4 = lorentz(4);
  IsometryOracle id = [](const ProjectivePoint& p) { return p; };
  const auto x = ProjectivePoint::from(l4, vec({1, 0.1, -0.2, 0.3}));
  const auto y = ProjectivePoint::from(l4, vec({1, -0.4, 0.1, 0.0}));
  const auto s = base_change(l4, l4, id, x, y);
  CHECK(std::isfinite(positive_ratio(s.images(), s.basis())));
  CHECK(kind_of([&] { base_change(l4, l4, id, x, x); }) == ErrorKind::CoincidentPoints);
}

TEST_CASE("base change rejects an inconsistent oracle") {
  const auto l3 = lorentz(3);
  // Radial distortion of the disk: fixes the centre line but bends chords.
  IsometryOracle bend = [&](const ProjectivePoint& p) {
    Vector v = p.rep();
    const double r = v.tail(2).norm();
    v.tail(2) *= 0.5 + 0.5 * r;
    v[0] = 1.0;
    v[1] += 0.05 * v[2] * v[2];
    return ProjectivePoint::from(l3, v);
  };
  const auto x = ProjectivePoint::from(l3, vec({1, 0.1, 0.5}));
  const auto y = ProjectivePoint::from(l3, vec({1, 0.4, -0.3}));
  CHECK(kind_of([&] { base_change(l3, l3, bend, x, y); }) == ErrorKind::OracleInconsistent);
}

TEST_CASE("extension to a plane") {
  const auto l3 = lorentz(3);
  Rng rng(31);
  const Matrix l = random_lorentz(3, rng);
  const auto f = induced_oracle(l, l3);
  const auto anchor = ProjectivePoint::from(l3, l3.unit());
  PartialLinearMap line(Matrix(anchor.rep()), Matrix(f(anchor).rep()), anchor);
  const auto z = ProjectivePoint::from(l3, vec({1, 0.2, 0.1}));
  const auto plane = extend_collineation(line, l3, l3, z, f);
  CHECK(plane.rank() == 2);
  CHECK(std::isfinite(positive_ratio(plane.images(), l * plane.basis())));
  for (int k = 0; k < 20; ++k) {
    const double a = rng.uniform(0.1, 1.0);
    const double b = rng.uniform(0.1, 1.0);
    const Vector w = a * anchor.rep() + b * z.rep();
    const auto pw = ProjectivePoint::from(l3, w);
    CHECK(hilbert_dist(l3, plane.apply(w), f(pw).rep()) <= 1e-8);
  }
  CHECK(kind_of([&] { extend_collineation(plane, l3, l3, ProjectivePoint::from(l3, 0.5 * (anchor.rep() + z.rep())), f); }) ==
        ErrorKind::DependentDirection);
}

TEST_CASE("reconstruction of known maps") {
  SUBCASE("identity") {
    const auto l4 = lorentz(4);
    IsometryOracle id = [](const ProjectivePoint& p) { return p; };
    const Matrix t = reconstruct_linear(l4, l4, id);
    CHECK(projective_matrix_distance(t, Matrix::Identity(4, 4)) <= 1e-9);
  }
  SUBCASE("boost on Lorentz(4)") {
    const auto l4 = lorentz(4);
    const Matrix b = lorentz_boost(4, 2, 0.8);
    const Matrix t = reconstruct_linear(l4, l4, induced_oracle(b, l4));
    CHECK(projective_matrix_distance(t, b) <= 1e-6);
  }
  SUBCASE("disk rotation by 30 degrees") {
    const auto l3 = lorentz(3);
    const Matrix r = spatial_rotation(3, 1, 2, M_PI / 6);
    const Matrix t = reconstruct_linear(l3, l3, induced_oracle(r, l3));
    CHECK(projective_matrix_distance(t, r) <= 1e-6);
  }
  SUBCASE("random Lorentz elements") {
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.index(6));
      const auto space = lorentz(n);
      const Matrix l = random_lorentz(n, rng);
      const Matrix t = reconstruct_linear(space, space, induced_oracle(l, space));
      CHECK(projective_matrix_distance(t, l) <= 1e-6);
    }
  }
}

TEST_CASE("reconstruction rejects non-isometries") {
  const auto l3 = lorentz(3);
  Matrix squash = Matrix::Identity(3, 3);
  squash(1, 1) = 0.5;
  CHECK(kind_of([&] { reconstruct_linear(l3, l3, induced_oracle(squash, l3)); }) == ErrorKind::NotIsometry);

  // With the isometry probe disabled, a bent map fails the segment probe.
  IsometryOracle bend = [&](const ProjectivePoint& p) {
    Vector v = p.rep();
    v.tail(2) *= 0.5 + 0.5 * v.tail(2).norm();
    return ProjectivePoint::from(l3, v);
  };
  ReconstructionOptions loose;
  loose.isometry_tol = 1e6;
  CHECK(kind_of([&] { reconstruct_linear(l3, l3, bend, loose); }) == ErrorKind::NotSegmentPreserving);
}

TEST_CASE("reconstructed maps are bi-positive") {
  Rng rng(33);
  const auto l5 = lorentz(5);
  const Matrix l = random_lorentz(5, rng);
  const Matrix t = reconstruct_linear(l5, l5, induced_oracle(l, l5));
  for (int trial = 0; trial < 1000; ++trial) {
    const Vector inside = testing::random_lorentz_interior(5, rng);
    CHECK(testing::in_lorentz(t * inside));
    Vector outside(5);
    Vector side = rng.normal_vector(4);
    side *= rng.uniform(1.05, 3.0) / side.norm();
    outside << 1.0, side;
    const Vector image = t * outside;
    CHECK_FALSE(testing::in_lorentz(image, 1e-12));
    CHECK_FALSE(testing::in_lorentz(-image, 1e-12));
  }
}

TEST_CASE("boundary extension") {
  const auto l3 = lorentz(3);
  const Vector b = vec({1, std::cos(0.4), std::sin(0.4)});
  CHECK(testing::rel_diff(extend_to_boundary(Matrix::Identity(3, 3), l3, l3, b), b) <= 1e-15);
  CHECK(kind_of([&] { extend_to_boundary(Matrix::Identity(3, 3), l3, l3, vec({1, 0.2, 0})); }) ==
        ErrorKind::NotOnBoundary);
  CHECK(kind_of([&] { extend_to_boundary(-Matrix::Identity(3, 3), l3, l3, b); }) == ErrorKind::StateVanishes);

  const Matrix boost = lorentz_boost(3, 1, 0.9);
  const auto f = induced_oracle(boost, l3);
  const Matrix t = reconstruct_linear(l3, l3, f);
  const Vector image = extend_to_boundary(t, l3, l3, b);
  CHECK(std::abs(image[0] - image.tail(2).norm()) <= 1e-12);

  Rng rng(34);
  const auto centre = ProjectivePoint::from(l3, l3.unit());
  std::vector<Vector> images;
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = sample_boundary(l3, rng);
    const auto report = radial_limit_check(f, t, l3, l3, x, centre);
    CHECK(report.consistent);
    CHECK(report.gaps[2] < report.gaps[0]);
    images.push_back(extend_to_boundary(t, l3, l3, x));
  }
  // Injectivity on the sampled boundary points.
  for (std::size_t i = 1; i < images.size(); ++i) CHECK((images[i] - images[i - 1]).norm() > 1e-9);
}

TEST_CASE("verification reports") {
  Rng rng(35);
  const auto l4 = lorentz(4);
  const Matrix l = random_lorentz(4, rng);
  const auto f = induced_oracle(l, l4);
  const auto exact = verify_projective_linearity(f, l, l4, l4, 64);
  CHECK(exact.max_residual <= 1e-10);
  CHECK(exact.is_isometry_residual <= 1e-10);

  Matrix perturbed = l;
  perturbed(1, 2) += 1e-3 * l.norm();
  CHECK(verify_projective_linearity(f, perturbed, l4, l4, 64).max_residual >= 1e-4);

  IsometryOracle warp = [&](const ProjectivePoint& p) {
    Vector v = p.rep();
    v.tail(3) *= 0.3 + 0.7 * v.tail(3).squaredNorm();
    return ProjectivePoint::from(l4, v);
  };
  CHECK(verify_projective_linearity(warp, Matrix::Identity(4, 4), l4, l4, 64).is_isometry_residual >= 1e-2);
}
