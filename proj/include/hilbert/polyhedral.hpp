#pragma once

#include "hilbert/linalg.hpp"

#include <vector>

namespace hilbert::polyhedral {

/// Extreme rays of the pointed cone {x : A x >= 0} by the double-description
/// method (Motzkin's incremental algorithm with the combinatorial adjacency
/// test). Rays are returned scaled to unit Euclidean length.
///
/// Throws InvalidCone if A does not have full column rank (the cone would
/// contain a line).
std::vector<Vector> extreme_rays(const Matrix& constraints, double tol = 1e-10);

/// Numerical rank via column-pivoted QR with a relative threshold.
Eigen::Index rank(const Matrix& m, double rel_tol = 1e-10);

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vector x;
};

/// maximize c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0.
///
/// Dense two-phase tableau simplex with Bland's rule. Intended for the
/// small feasibility and oracle problems in this library, not for scale.
LpResult maximize(const Vector& c, const Matrix& a_ub, const Vector& b_ub,
                  const Matrix& a_eq, const Vector& b_eq);

}  // namespace hilbert::polyhedral
