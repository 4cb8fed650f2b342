#pragma once

// Independent reference computations and random generators shared by the
// test binaries. Nothing here calls the routine it is used to check.

#include "hilbert/cones.hpp"
#include "hilbert/convexset.hpp"
#include "hilbert/simplexgeom.hpp"

#include <cmath>
#include <vector>

namespace testing {

using hilbert::Matrix;
using hilbert::Rng;
using hilbert::Vector;

inline bool in_lorentz(const Vector& x, double tol = 0.0) { return x[0] - x.tail(x.size() - 1).norm() >= -tol; }

/// inf{beta : beta y - x in Lorentz} by bisection on membership.
inline double lorentz_gauge_bisect(const Vector& x, const Vector& y) {
  double lo = -1.0;
  double hi = 1.0;
  while (!in_lorentz(hi * y - x)) hi *= 2.0;
  while (in_lorentz(lo * y - x)) lo *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (in_lorentz(mid * y - x) ? hi : lo) = mid;
  }
  return hi;
}

/// max_i a_i.x / a_i.y for a cone {a_i . z >= 0} and interior y.
inline double facet_gauge(const Matrix& facets, const Vector& x, const Vector& y) {
  return ((facets * x).array() / (facets * y).array()).maxCoeff();
}

inline double sup_ratio(const Vector& x, const Vector& y) { return (x.array() / y.array()).maxCoeff(); }

/// Hilbert distance from the two gauges.
inline double gauge_dist(double mxy, double myx) { return std::log(mxy * myx); }

/// Random pointed facet cone in R^n around the direction e_0. Facet normals
/// are e_0 + s with s running over +-c e_j (c random in [0.3, 0.9]) and
/// m - 2(n-1) further random s of norm below 0.9, so e_0 is interior and
/// every cross section {z_0 = 1} is bounded.
inline Matrix random_facets(Eigen::Index n, Eigen::Index m, Rng& rng) {
  const Eigen::Index axes = 2 * (n - 1);
  Matrix a = Matrix::Zero(std::max(m, axes), n);
  a.col(0).setOnes();
  for (Eigen::Index j = 0; j < n - 1; ++j) {
    a(2 * j, j + 1) = rng.uniform(0.3, 0.9);
    a(2 * j + 1, j + 1) = -rng.uniform(0.3, 0.9);
  }
  for (Eigen::Index i = axes; i < a.rows(); ++i) {
    Vector side = rng.normal_vector(n - 1);
    side *= rng.uniform(0.3, 0.9) / side.norm();
    a.row(i).tail(n - 1) = side.transpose();
  }
  return a;
}

/// Random strictly positive vector with log-coordinates of size `spread`.
inline Vector random_positive(Eigen::Index n, Rng& rng, double spread = 1.0) {
  return (spread * rng.normal_vector(n)).array().exp().matrix();
}

inline Vector random_lorentz_interior(Eigen::Index n, Rng& rng) {
  Vector x(n);
  Vector side = rng.normal_vector(n - 1);
  side *= rng.uniform(0.0, 0.95) / std::max(side.norm(), 1e-300);
  x[0] = 1.0;
  x.tail(n - 1) = side;
  return rng.uniform(0.5, 2.0) * x;
}

/// Point a fraction `frac` < 1 of the way from the interior point base to
/// the boundary of the cone {facets . z >= 0} along dir, with the first
/// coordinate of dir ignored so the walk stays in the slice z_0 = base_0.
inline Vector facet_interior(const Matrix& facets, const Vector& base, Vector dir, double frac) {
  dir[0] = 0.0;
  double step = 1e300;
  const Vector ab = facets * base;
  const Vector ad = facets * dir;
  for (Eigen::Index i = 0; i < ab.size(); ++i) {
    if (ad[i] < 0.0) step = std::min(step, -ab[i] / ad[i]);
  }
  return base + frac * step * dir;
}

inline double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// max - min of a raw vector.
inline double spread(const Vector& v) { return v.maxCoeff() - v.minCoeff(); }

/// 2 min_lambda |v - lambda|_inf by ternary search over lambda.
inline double ternary_quotient_norm(const Vector& v) {
  double lo = v.minCoeff();
  double hi = v.maxCoeff();
  auto f = [&](double l) { return (v.array() - l).abs().maxCoeff(); };
  for (int i = 0; i < 300; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return 2.0 * f(0.5 * (lo + hi));
}

inline hilbert::SimplexIsometry random_isometry(const hilbert::FiniteK& k, Rng& rng) {
  const int eps = rng.uniform() < 0.5 ? 1 : -1;
  return hilbert::SimplexIsometry::make(k, eps, rng.permutation(static_cast<int>(k.size())),
                                        random_positive(k.size(), rng));
}

inline hilbert::DeltaPoint random_delta(const hilbert::FiniteK& k, Rng& rng, double spread_ = 1.0) {
  return hilbert::DeltaPoint::normalized(k, random_positive(k.size(), rng, spread_));
}

inline double rel_diff(const Vector& a, const Vector& b) { return max_abs(a - b) / std::max(1.0, max_abs(b)); }

}  // namespace testing
