#include "hilbert/cones.hpp"
#include "hilbert/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hilbert;
using testing::rel_diff;

namespace {

OrderUnitSpace orthant(Eigen::Index n) { return OrderUnitSpace::standard(ConeSpec::orthant(n)); }
OrderUnitSpace lorentz(Eigen::Index n) { return OrderUnitSpace::standard(ConeSpec::lorentz(n)); }

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("cone construction") {
  CHECK(ConeSpec::orthant(3).dim() == 3);
  CHECK(kind_of([] { ConeSpec::orthant(0); }) == ErrorKind::InvalidCone);
  CHECK(kind_of([] { ConeSpec::lorentz(1); }) == ErrorKind::InvalidCone);

  Matrix zero_row(2, 2);
  zero_row << 1, 0, 0, 0;
  CHECK(kind_of([&] { ConeSpec::facets(zero_row); }) == ErrorKind::InvalidCone);

  // Half-plane: not pointed.
  Matrix half(1, 2);
  half << 1, 0;
  CHECK(kind_of([&] { ConeSpec::facets(half); }) == ErrorKind::InvalidCone);

  // x >= 0 and -x >= 0 in the first coordinate: empty interior.
  Matrix flat(3, 2);
  flat << 1, 0, -1, 0, 0, 1;
  CHECK_THROWS_AS(ConeSpec::facets(flat), Error);

  // The quadrant as a facet cone has the coordinate axes as extreme rays.
  Matrix quadrant = Matrix::Identity(2, 2);
  const auto rays = ConeSpec::facets(quadrant).extreme_rays();
  CHECK(rays.size() == 2);
}

TEST_CASE("order unit space validation") {
  CHECK(kind_of([] { OrderUnitSpace(ConeSpec::orthant(2), vec({1, 0}), vec({0.5, 0.5})); }) ==
        ErrorKind::InvalidSpace);
  CHECK(kind_of([] { OrderUnitSpace(ConeSpec::orthant(2), vec({1, 1}), vec({1, 1})); }) == ErrorKind::InvalidSpace);
  // phi(u) = 1 but phi vanishes on e_2.
  CHECK(kind_of([] { OrderUnitSpace(ConeSpec::orthant(2), vec({1, 1}), vec({1, 0})); }) == ErrorKind::InvalidSpace);
  CHECK_NOTHROW(OrderUnitSpace(ConeSpec::lorentz(3), vec({2, 0, 0}), vec({0.5, 0, 0})));
}

TEST_CASE("gauge examples") {
  const auto o2 = orthant(2);
  CHECK(gauge_M(o2, vec({2, 1}), vec({1, 1})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(gauge_M(o2, vec({0.3, 0.7}), vec({0.3, 0.7})) == doctest::Approx(1.0).epsilon(1e-15));

  const auto l3 = lorentz(3);
  CHECK(gauge_M(l3, vec({1, 0, 0}), vec({1, 0.5, 0})) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(kind_of([&] { gauge_M(o2, vec({1, 0}), vec({1, 1})); }) == ErrorKind::NotInterior);
}

TEST_CASE("lorentz gauge against bisection") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.index(7));
    const auto space = lorentz(n);
    const Vector x = testing::random_lorentz_interior(n, rng);
    const Vector y = testing::random_lorentz_interior(n, rng);
    const double oracle = testing::lorentz_gauge_bisect(x, y);
    CHECK(std::abs(gauge_M(space, x, y) - oracle) <= 1e-9 * std::max(1.0, oracle));
  }
}

TEST_CASE("facet gauge against ratio formula") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.index(3));
    const Matrix a = testing::random_facets(n, n + 2 + static_cast<Eigen::Index>(rng.index(4)), rng);
    const auto space = OrderUnitSpace::standard(ConeSpec::facets(a));
    for (int k = 0; k < 20; ++k) {
      const Vector x = testing::facet_interior(a, Vector::Unit(n, 0), rng.normal_vector(n), rng.uniform(0, 0.99));
      const Vector y = testing::facet_interior(a, Vector::Unit(n, 0), rng.normal_vector(n), rng.uniform(0, 0.99));
      const double oracle = testing::facet_gauge(a, x, y);
      CHECK(std::abs(gauge_M(space, x, y) - oracle) <= 1e-12 * std::max(1.0, oracle));
    }
  }
}

TEST_CASE("distance examples") {
  const auto o2 = orthant(2);
  CHECK(hilbert_dist(o2, vec({2, 1}), vec({1, 1})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(thompson_dist(o2, vec({2, 1}), vec({1, 1})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(thompson_dist(o2, vec({2, 2}), vec({1, 1})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(hilbert_dist(o2, vec({2, 2}), vec({1, 1})) == doctest::Approx(0.0));
  CHECK(hilbert_dist(o2, vec({0.3, 0.9}), 5.0 * vec({0.3, 0.9})) <= 1e-15);
  CHECK(thompson_dist(o2, vec({0.3, 0.9}), vec({0.3, 0.9})) == 0.0);

  const auto l3 = lorentz(3);
  CHECK(hilbert_dist(l3, vec({1, 0, 0}), vec({1, 0.5, 0})) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("metric axioms and scaling on random triples") {
  Rng rng(13);
  const std::vector<OrderUnitSpace> spaces = {orthant(4), lorentz(5),
                                              OrderUnitSpace::standard(ConeSpec::facets(testing::random_facets(4, 7, rng)))};
  for (const auto& space : spaces) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector x = sample_interior(space, rng).rep();
      const Vector y = sample_interior(space, rng).rep();
      const Vector z = sample_interior(space, rng).rep();
      const double dxy = hilbert_dist(space, x, y);
      const double dyx = hilbert_dist(space, y, x);
      const double dyz = hilbert_dist(space, y, z);
      const double dxz = hilbert_dist(space, x, z);
      CHECK(std::abs(dxy - dyx) <= 1e-9);
      CHECK(dxz <= dxy + dyz + 1e-9);
      const double lambda = std::exp(rng.uniform(-3, 3));
      const double mu = std::exp(rng.uniform(-3, 3));
      CHECK(std::abs(hilbert_dist(space, lambda * x, mu * y) - dxy) <= 1e-9);
      CHECK(dxy <= 2.0 * thompson_dist(space, x, y) + 1e-12);
      CHECK(std::abs(thompson_dist(space, lambda * x, x) - std::abs(std::log(lambda))) <= 1e-9);
      CHECK(gauge_M(space, x, y) * gauge_M(space, y, x) >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("chord endpoints") {
  const auto o2 = orthant(2);
  const auto x = ProjectivePoint::from(o2, vec({2.0 / 3.0, 1.0 / 3.0}));
  const auto y = ProjectivePoint::from(o2, vec({0.5, 0.5}));
  // phi = (1/2, 1/2) normalizes the cross section to coordinate sum 2.
  const Chord c = chord_endpoints(o2, x, y);
  CHECK(rel_diff(c.x_prime, vec({2, 0})) <= 1e-12);
  CHECK(rel_diff(c.y_prime, vec({0, 2})) <= 1e-12);
  CHECK(rel_diff(c.t * c.x_prime + (1 - c.t) * c.y_prime, x.rep()) <= 1e-12);
  const Chord swapped = chord_endpoints(o2, y, x);
  CHECK(rel_diff(swapped.x_prime, c.y_prime) <= 1e-12);
  CHECK(rel_diff(swapped.y_prime, c.x_prime) <= 1e-12);
  CHECK(kind_of([&] { chord_endpoints(o2, x, x); }) == ErrorKind::CoincidentPoints);

  const auto l3 = lorentz(3);
  const Chord k = chord_endpoints(l3, ProjectivePoint::from(l3, vec({1, 0, 0})), ProjectivePoint::from(l3, vec({1, 0.5, 0})));
  CHECK(rel_diff(k.x_prime, vec({1, -1, 0})) <= 1e-12);
  CHECK(rel_diff(k.y_prime, vec({1, 1, 0})) <= 1e-12);
}

TEST_CASE("cross ratio distance matches the gauge formula") {
  Rng rng(14);
  const auto o4 = orthant(4);
  for (int trial = 0; trial < 500; ++trial) {
    const Vector x = testing::random_positive(4, rng);
    const Vector y = testing::random_positive(4, rng);
    const double oracle = testing::gauge_dist(testing::sup_ratio(x, y), testing::sup_ratio(y, x));
    CHECK(std::abs(cross_ratio_dist(o4, x, y) - oracle) <= 1e-9);
    CHECK(std::abs(hilbert_dist(o4, x, y) - oracle) <= 1e-12 * std::max(1.0, oracle));
  }
  const Vector x = vec({1, 2, 3, 4});
  CHECK(cross_ratio_dist(o4, x, x) == 0.0);
}

TEST_CASE("order unit norm") {
  const auto o3 = orthant(3);
  CHECK(order_unit_norm(o3, vec({1, -2, 0})) == doctest::Approx(2.0));
  CHECK(order_unit_norm(o3, o3.unit()) == doctest::Approx(1.0));
  CHECK(order_unit_norm(o3, Vector::Zero(3)) == 0.0);

  Rng rng(15);
  const Matrix a = testing::random_facets(3, 6, rng);
  const auto space = OrderUnitSpace::standard(ConeSpec::facets(a));
  for (int trial = 0; trial < 200; ++trial) {
    const Vector x = rng.normal_vector(3);
    const double oracle = ((a * x).cwiseAbs().array() / (a * space.unit()).array()).maxCoeff();
    CHECK(std::abs(order_unit_norm(space, x) - oracle) <= 1e-12 * std::max(1.0, oracle));
  }
  // Monotone on 0 <= x <= y in the orthant.
  for (int trial = 0; trial < 200; ++trial) {
    const Vector x = testing::random_positive(3, rng);
    const Vector y = x + testing::random_positive(3, rng);
    CHECK(order_unit_norm(o3, x) <= order_unit_norm(o3, y) + 1e-15);
  }
}

TEST_CASE("order units are the interior") {
  CHECK(is_order_unit(orthant(2), vec({1, 1})));
  CHECK_FALSE(is_order_unit(orthant(2), vec({1, 0})));
  CHECK(is_order_unit(lorentz(3), vec({1, 0.99, 0})));
  CHECK_FALSE(is_order_unit(lorentz(3), vec({1, 1, 0})));
}

TEST_CASE("induced isometries") {
  const auto o2 = orthant(2);
  const auto x = ProjectivePoint::from(o2, vec({0.5, 0.5}));
  Matrix d(2, 2);
  d << 2, 0, 0, 1;
  // Cross section of the standard orthant has coordinate sum 2.
  CHECK(rel_diff(induced_isometry_apply(d, o2, o2, x).rep(), vec({4.0 / 3.0, 2.0 / 3.0})) <= 1e-14);
  CHECK(rel_diff(induced_isometry_apply(Matrix::Identity(2, 2), o2, o2, x).rep(), x.rep()) <= 1e-15);
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto z = ProjectivePoint::from(o2, vec({0.2, 0.6}));
  CHECK(rel_diff(induced_isometry_apply(swap, o2, o2, z).rep(), vec({1.5, 0.5})) <= 1e-14);

  Matrix squash(2, 2);
  squash << 1, 1, 0, 1;
  CHECK(kind_of([&] { check_bipositive(squash, o2, o2); }) == ErrorKind::NotBiPositive);

  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 3;
    const auto space = orthant(n);
    Matrix t = Matrix::Zero(n, n);
    const auto perm = rng.permutation(static_cast<int>(n));
    for (Eigen::Index i = 0; i < n; ++i) t(i, perm[static_cast<std::size_t>(i)]) = std::exp(rng.normal());
    CHECK_NOTHROW(check_bipositive(t, space, space));
    const auto p = sample_interior(space, rng);
    const auto q = sample_interior(space, rng);
    const double before = hilbert_dist(space, p.rep(), q.rep());
    const double after = hilbert_dist(space, induced_isometry_apply(t, space, space, p).rep(),
                                      induced_isometry_apply(t, space, space, q).rep());
    CHECK(std::abs(before - after) <= 1e-9);
  }
}

TEST_CASE("positive operator norm") {
  const auto o2 = orthant(2);
  Matrix d(2, 2);
  d << 2, 0, 0, 3;
  CHECK(positive_operator_norm(o2, o2, d) == doctest::Approx(3.0));
  CHECK(positive_operator_norm(o2, o2, Matrix::Identity(2, 2)) == doctest::Approx(1.0));
  CHECK(positive_operator_norm(o2, o2, Matrix::Zero(2, 2)) == 0.0);
  Matrix neg(2, 2);
  neg << -1, 0, 0, 1;
  CHECK(kind_of([&] { positive_operator_norm(o2, o2, neg); }) == ErrorKind::NotPositive);

  // Sampled supremum over the order unit ball approaches the formula from below.
  Rng rng(17);
  const auto o3 = orthant(3);
  Matrix t = Matrix::Zero(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) t(i, j) = rng.uniform();
  }
  const double formula = positive_operator_norm(o3, o3, t);
  double sampled = 0.0;
  for (int trial = 0; trial < 4000; ++trial) {
    Vector x(3);
    for (Eigen::Index i = 0; i < 3; ++i) x[i] = rng.uniform(-1, 1);
    sampled = std::max(sampled, order_unit_norm(o3, t * x) / std::max(order_unit_norm(o3, x), 1e-300));
  }
  CHECK(sampled <= formula + 1e-12);
  // The corner u itself attains the bound.
  CHECK(order_unit_norm(o3, t * o3.unit()) == doctest::Approx(formula).epsilon(1e-12));
}

TEST_CASE("cone midpoints") {
  const auto l3 = lorentz(3);
  const auto x = ProjectivePoint::from(l3, vec({1, 0.3, 0}));
  const auto y = ProjectivePoint::from(l3, vec({1, -0.2, 0.4}));
  const auto m = chord_midpoint(l3, x, y);
  const double d = hilbert_dist(l3, x.rep(), y.rep());
  CHECK(std::abs(hilbert_dist(l3, x.rep(), m.rep()) - 0.5 * d) <= 1e-12);
  CHECK(std::abs(hilbert_dist(l3, m.rep(), y.rep()) - 0.5 * d) <= 1e-12);
  CHECK_FALSE(find_nonaffine_midpoint(l3, x, y).has_value());

  // The triangle (orthant of R^3) has a segment of midpoints for this pair.
  const auto o3 = orthant(3);
  const auto p = ProjectivePoint::from(o3, vec({std::exp(1.0), std::exp(-1.0), 1.0}));
  const auto q = ProjectivePoint::from(o3, vec({1.0, 1.0, 1.0}));
  const auto w = find_nonaffine_midpoint(o3, p, q);
  REQUIRE(w.has_value());
  const double dpq = hilbert_dist(o3, p.rep(), q.rep());
  CHECK(std::abs(hilbert_dist(o3, p.rep(), w->rep()) - 0.5 * dpq) <= 1e-9);
  CHECK(hilbert_dist(o3, w->rep(), chord_midpoint(o3, p, q).rep()) >= 1e-3);
}
