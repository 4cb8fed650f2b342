#pragma once

#include "hilbert/linalg.hpp"

#include <optional>
#include <vector>

namespace hilbert {

/// A finite discrete space {0, ..., n-1} with a strictly positive measure.
class FiniteK {
 public:
  FiniteK(Eigen::Index n, Vector mu);

  static FiniteK uniform(Eigen::Index n);
  /// Weights 2^-(i+1), the truncation of the dyadic simplex.
  static FiniteK dyadic(Eigen::Index n);

  Eigen::Index size() const { return mu_.size(); }
  const Vector& mu() const { return mu_; }
  double integrate(const Vector& f) const { return mu_.dot(f); }

 private:
  Vector mu_;
};

/// A function on K modulo constants, stored as its sum-zero representative.
class QuotientFunction {
 public:
  explicit QuotientFunction(const Vector& any_rep);
  static QuotientFunction zero(Eigen::Index n) { return QuotientFunction(Vector::Zero(n)); }

  const Vector& rep() const { return rep_; }
  Eigen::Index size() const { return rep_.size(); }

  friend QuotientFunction operator-(const QuotientFunction& a, const QuotientFunction& b) {
    return QuotientFunction(a.rep_ - b.rep_);
  }
  friend QuotientFunction operator+(const QuotientFunction& a, const QuotientFunction& b) {
    return QuotientFunction(a.rep_ + b.rep_);
  }

 private:
  Vector rep_;
};

/// A strictly positive function with integral one against mu.
class DeltaPoint {
 public:
  /// Rescales any strictly positive vector onto the simplex.
  static DeltaPoint normalized(const FiniteK& k, const Vector& positive);

  const Vector& f() const { return f_; }

 private:
  explicit DeltaPoint(Vector f) : f_(std::move(f)) {}
  Vector f_;
};

/// h(f) = g (f o theta)^eps / integral, with theta[i] the point of K read
/// at position i. Canonical form has integral(g) = 1.
struct SimplexIsometry {
  int eps = 1;
  std::vector<int> theta;
  Vector g;

  static SimplexIsometry make(const FiniteK& k, int eps, std::vector<int> theta, const Vector& g);
  static SimplexIsometry identity(const FiniteK& k);
  /// Canonical representative of the translation by log g.
  static SimplexIsometry translation(const FiniteK& k, const Vector& g);
};

QuotientFunction log_map(const DeltaPoint& p);
/// Throws OverflowGuard when the sum-zero representative exceeds 700.
DeltaPoint exp_map(const FiniteK& k, const QuotientFunction& q);

double variation_norm(const QuotientFunction& q);
/// 2 min_lambda |rep - lambda 1|_inf evaluated at lambda = (max + min) / 2.
double quotient_norm_oracle(const QuotientFunction& q);

double simplex_dist(const FiniteK& k, const DeltaPoint& p, const DeltaPoint& q);

DeltaPoint isometry_apply(const FiniteK& k, const SimplexIsometry& h, const DeltaPoint& p);
/// h2 o h1.
SimplexIsometry isometry_compose(const FiniteK& k, const SimplexIsometry& h2, const SimplexIsometry& h1);
SimplexIsometry isometry_inverse(const FiniteK& k, const SimplexIsometry& h);

/// q -> eps (q o theta), the linear part of an isometry in Log coordinates.
QuotientFunction quotient_linear_isometry_apply(int eps, const std::vector<int>& theta, const QuotientFunction& q);

/// The isometry in Log coordinates: q -> log g + eps (q o theta).
QuotientFunction isometry_apply_log(const SimplexIsometry& h, const QuotientFunction& q);

/// Whether q -> eps1 (q o theta1) and q -> eps2 (q o theta2) agree on every
/// basis vector of the quotient.
bool linear_actions_coincide(int eps1, const std::vector<int>& theta1, int eps2, const std::vector<int>& theta2);

/// A relabelling theta with q o theta = -q on the whole quotient, found by
/// exhaustive search (n <= 8). Exists only for n = 2.
std::optional<std::vector<int>> find_inversion_relabeling(Eigen::Index n);

/// Grid search for a metric midpoint of p and q that is not the midpoint of
/// the straight chord: perturbs each Log coordinate of the chord midpoint in
/// steps of 1e-2, about 10^4 candidates in total. nullopt certifies only
/// that no grid candidate qualified.
std::optional<DeltaPoint> find_nonaffine_midpoint(const FiniteK& k, const DeltaPoint& p, const DeltaPoint& q);

/// Point of the straight segment [p, q] at distance simplex_dist(p, q)/2 from both.
DeltaPoint chord_midpoint(const FiniteK& k, const DeltaPoint& p, const DeltaPoint& q);

void validate_permutation(const std::vector<int>& theta, Eigen::Index n);
std::vector<int> invert_permutation(const std::vector<int>& theta);

}  // namespace hilbert
