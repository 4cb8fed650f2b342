#include "hilbert/simplexgeom.hpp"

#include "hilbert/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace hilbert {

FiniteK::FiniteK(Eigen::Index n, Vector mu) : mu_(std::move(mu)) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "K needs at least one point");
  if (mu_.size() != n) fail(ErrorKind::DimensionMismatch, "measure length differs from |K|");
  if (!mu_.allFinite() || mu_.minCoeff() <= 0.0) fail(ErrorKind::InvalidArgument, "measure must be strictly positive");
}

FiniteK FiniteK::uniform(Eigen::Index n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "K needs at least one point");
  return FiniteK(n, Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

FiniteK FiniteK::dyadic(Eigen::Index n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "K needs at least one point");
  Vector mu(n);
  for (Eigen::Index i = 0; i < n; ++i) mu[i] = std::ldexp(1.0, -static_cast<int>(i + 1));
  return FiniteK(n, std::move(mu));
}

QuotientFunction::QuotientFunction(const Vector& any_rep)
    : rep_(any_rep.array() - (any_rep.size() > 0 ? any_rep.mean() : 0.0)) {}

DeltaPoint DeltaPoint::normalized(const FiniteK& k, const Vector& positive) {
  if (positive.size() != k.size()) fail(ErrorKind::DimensionMismatch, "point length differs from |K|");
  if (!positive.allFinite() || positive.minCoeff() <= 0.0) {
    fail(ErrorKind::NotInterior, "simplex points must be strictly positive");
  }
  return DeltaPoint(positive / k.integrate(positive));
}

void validate_permutation(const std::vector<int>& theta, Eigen::Index n) {
  if (static_cast<Eigen::Index>(theta.size()) != n) fail(ErrorKind::DimensionMismatch, "permutation length differs from |K|");
  std::vector<bool> seen(theta.size(), false);
  for (int v : theta) {
    if (v < 0 || v >= static_cast<int>(n) || seen[static_cast<std::size_t>(v)]) {
      fail(ErrorKind::InvalidArgument, "theta is not a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

std::vector<int> invert_permutation(const std::vector<int>& theta) {
  std::vector<int> inv(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) inv[static_cast<std::size_t>(theta[i])] = static_cast<int>(i);
  return inv;
}

SimplexIsometry SimplexIsometry::make(const FiniteK& k, int eps, std::vector<int> theta, const Vector& g) {
  if (eps != 1 && eps != -1) fail(ErrorKind::InvalidArgument, "eps must be +1 or -1");
  validate_permutation(theta, k.size());
  if (g.size() != k.size()) fail(ErrorKind::DimensionMismatch, "gauge length differs from |K|");
  if (!g.allFinite() || g.minCoeff() <= 0.0) fail(ErrorKind::InvalidArgument, "gauge must be strictly positive");
  return SimplexIsometry{eps, std::move(theta), g / k.integrate(g)};
}

SimplexIsometry SimplexIsometry::identity(const FiniteK& k) {
  std::vector<int> id(static_cast<std::size_t>(k.size()));
  std::iota(id.begin(), id.end(), 0);
  return make(k, 1, std::move(id), Vector::Ones(k.size()));
}

SimplexIsometry SimplexIsometry::translation(const FiniteK& k, const Vector& g) {
  std::vector<int> id(static_cast<std::size_t>(k.size()));
  std::iota(id.begin(), id.end(), 0);
  return make(k, 1, std::move(id), g);
}

QuotientFunction log_map(const DeltaPoint& p) { return QuotientFunction(p.f().array().log().matrix()); }

DeltaPoint exp_map(const FiniteK& k, const QuotientFunction& q) {
  if (q.size() != k.size()) fail(ErrorKind::DimensionMismatch, "quotient function length differs from |K|");
  const double top = q.size() > 0 ? q.rep().maxCoeff() : 0.0;
  if (top > 700.0) {
    fail(ErrorKind::OverflowGuard, "representative reaches " + std::to_string(top) +
                                       "; rescale the function below 700 before exponentiating");
  }
  return DeltaPoint::normalized(k, q.rep().array().exp().matrix());
}

double variation_norm(const QuotientFunction& q) {
  if (q.size() == 0) return 0.0;
  return q.rep().maxCoeff() - q.rep().minCoeff();
}

double quotient_norm_oracle(const QuotientFunction& q) {
  if (q.size() == 0) return 0.0;
  const double lambda = 0.5 * (q.rep().maxCoeff() + q.rep().minCoeff());
  return 2.0 * (q.rep().array() - lambda).abs().maxCoeff();
}

double simplex_dist(const FiniteK& k, const DeltaPoint& p, const DeltaPoint& q) {
  if (p.f().size() != k.size() || q.f().size() != k.size()) fail(ErrorKind::DimensionMismatch, "point length differs from |K|");
  return variation_norm(log_map(p) - log_map(q));
}

namespace {

void require_isometry_shape(const FiniteK& k, const SimplexIsometry& h) {
  if (h.g.size() != k.size()) fail(ErrorKind::DimensionMismatch, "isometry does not act on this K");
  validate_permutation(h.theta, k.size());
}

}  // namespace

DeltaPoint isometry_apply(const FiniteK& k, const SimplexIsometry& h, const DeltaPoint& p) {
  require_isometry_shape(k, h);
  if (p.f().size() != k.size()) fail(ErrorKind::DimensionMismatch, "point length differs from |K|");
  Vector out(k.size());
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    const double f = p.f()[h.theta[static_cast<std::size_t>(i)]];
    out[i] = h.g[i] * (h.eps == 1 ? f : 1.0 / f);
  }
  return DeltaPoint::normalized(k, out);
}

SimplexIsometry isometry_compose(const FiniteK& k, const SimplexIsometry& h2, const SimplexIsometry& h1) {
  require_isometry_shape(k, h2);
  require_isometry_shape(k, h1);
  // h2(h1 f)_j ~ g2_j g1_{theta2 j}^eps2 f_{theta1 theta2 j}^(eps1 eps2).
  const auto n = static_cast<std::size_t>(k.size());
  std::vector<int> theta(n);
  Vector g(k.size());
  for (std::size_t j = 0; j < n; ++j) {
    const int via = h2.theta[j];
    theta[j] = h1.theta[static_cast<std::size_t>(via)];
    const double inner = h1.g[via];
    g[static_cast<Eigen::Index>(j)] = h2.g[static_cast<Eigen::Index>(j)] * (h2.eps == 1 ? inner : 1.0 / inner);
  }
  return SimplexIsometry::make(k, h1.eps * h2.eps, std::move(theta), g);
}

SimplexIsometry isometry_inverse(const FiniteK& k, const SimplexIsometry& h) {
  require_isometry_shape(k, h);
  std::vector<int> inv = invert_permutation(h.theta);
  Vector g(k.size());
  for (Eigen::Index j = 0; j < k.size(); ++j) {
    const double v = h.g[inv[static_cast<std::size_t>(j)]];
    g[j] = (h.eps == 1) ? 1.0 / v : v;
  }
  return SimplexIsometry::make(k, h.eps, std::move(inv), g);
}

QuotientFunction quotient_linear_isometry_apply(int eps, const std::vector<int>& theta, const QuotientFunction& q) {
  validate_permutation(theta, q.size());
  Vector out(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) out[i] = eps * q.rep()[theta[static_cast<std::size_t>(i)]];
  return QuotientFunction(out);
}

QuotientFunction isometry_apply_log(const SimplexIsometry& h, const QuotientFunction& q) {
  return QuotientFunction(h.g.array().log().matrix()) + quotient_linear_isometry_apply(h.eps, h.theta, q);
}

bool linear_actions_coincide(int eps1, const std::vector<int>& theta1, int eps2, const std::vector<int>& theta2) {
  const auto n = static_cast<Eigen::Index>(theta1.size());
  if (static_cast<Eigen::Index>(theta2.size()) != n) fail(ErrorKind::DimensionMismatch, "permutations differ in length");
  for (Eigen::Index j = 0; j < n; ++j) {
    const QuotientFunction basis(Vector::Unit(n, j));
    const auto a = quotient_linear_isometry_apply(eps1, theta1, basis);
    const auto b = quotient_linear_isometry_apply(eps2, theta2, basis);
    if ((a.rep() - b.rep()).cwiseAbs().maxCoeff() > 1e-12) return false;
  }
  return true;
}

std::optional<std::vector<int>> find_inversion_relabeling(Eigen::Index n) {
  if (n < 1 || n > 8) fail(ErrorKind::InvalidArgument, "exhaustive relabelling search supports 1 <= n <= 8");
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  std::vector<int> theta = id;
  do {
    if (linear_actions_coincide(1, theta, -1, id)) return theta;
  } while (std::next_permutation(theta.begin(), theta.end()));
  return std::nullopt;
}

DeltaPoint chord_midpoint(const FiniteK& k, const DeltaPoint& p, const DeltaPoint& q) {
  const double d = simplex_dist(k, p, q);
  if (d < 1e-12) return p;
  const Vector dir = q.f() - p.f();
  // Chord p + t dir leaves the positive orthant at t_lo < 0 < 1 < t_hi.
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < dir.size(); ++i) {
    if (dir[i] < 0.0) {
      t_hi = std::min(t_hi, -p.f()[i] / dir[i]);
    } else if (dir[i] > 0.0) {
      t_lo = std::max(t_lo, -p.f()[i] / dir[i]);
    }
  }
  // log[(z - t_lo) t_hi / ((-t_lo)(t_hi - z))] = d/2.
  const double ratio = std::exp(0.5 * d) * (-t_lo) / t_hi;
  const double z = (t_lo + ratio * t_hi) / (1.0 + ratio);
  return DeltaPoint::normalized(k, p.f() + z * dir);
}

std::optional<DeltaPoint> find_nonaffine_midpoint(const FiniteK& k, const DeltaPoint& p, const DeltaPoint& q) {
  const double d = simplex_dist(k, p, q);
  if (d < 1e-12) fail(ErrorKind::CoincidentPoints, "midpoint search needs distinct points");
  const Vector a = log_map(p).rep();
  const Vector b = log_map(q).rep();
  const Vector center = log_map(chord_midpoint(k, p, q)).rep();
  const Eigen::Index n = k.size();
  constexpr double kStep = 1e-2;
  constexpr double kHalfTol = 1e-9;
  constexpr double kMinOffset = 1e-3;

  auto is_midpoint = [&](const Vector& m) {
    return std::abs(variation_norm(QuotientFunction(a - m)) - 0.5 * d) <= kHalfTol &&
           std::abs(variation_norm(QuotientFunction(m - b)) - 0.5 * d) <= kHalfTol;
  };

  // The midpoint set is convex and contains the centre, so each ray of the
  // grid stays valid until its first failure.
  const Eigen::Index directions = 2 * n;
  const int per_direction = static_cast<int>(10000 / directions);
  std::vector<bool> active(static_cast<std::size_t>(directions), true);
  for (int step = 1; step <= per_direction; ++step) {
    for (Eigen::Index dir = 0; dir < directions; ++dir) {
      if (!active[static_cast<std::size_t>(dir)]) continue;
      const double sign = (dir % 2 == 0) ? 1.0 : -1.0;
      Vector m = center;
      m[dir / 2] += sign * step * kStep;
      if (!is_midpoint(m)) {
        active[static_cast<std::size_t>(dir)] = false;
        continue;
      }
      if (variation_norm(QuotientFunction(m - center)) >= kMinOffset) return exp_map(k, QuotientFunction(m));
    }
  }
  return std::nullopt;
}

}  // namespace hilbert
