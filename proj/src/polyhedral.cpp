#include "hilbert/polyhedral.hpp"

#include "hilbert/error.hpp"

#include <cmath>
#include <limits>

namespace hilbert::polyhedral {

Eigen::Index rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(rel_tol);
  return qr.rank();
}

namespace {

struct Ray {
  Vector v;
  std::vector<bool> zeros;  // indexed by constraint row
};

bool contains_all(const std::vector<bool>& sup, const std::vector<bool>& sub) {
  for (std::size_t k = 0; k < sub.size(); ++k) {
    if (sub[k] && !sup[k]) return false;
  }
  return true;
}

}  // namespace

std::vector<Vector> extreme_rays(const Matrix& constraints, double tol) {
  const Eigen::Index n = constraints.cols();
  const Eigen::Index m = constraints.rows();
  if (n == 0) fail(ErrorKind::InvalidCone, "cone of dimension zero");
  if (rank(constraints) < n) {
    fail(ErrorKind::InvalidCone, "constraints do not have full column rank; cone is not pointed");
  }

  Matrix a = constraints;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double norm = a.row(i).norm();
    if (norm == 0.0) fail(ErrorKind::InvalidCone, "zero constraint row");
    a.row(i) /= norm;
  }

  // Greedy selection of n independent rows for the initial simplicial cone.
  std::vector<Eigen::Index> selected;
  Matrix ortho(n, n);
  for (Eigen::Index i = 0; i < m && static_cast<Eigen::Index>(selected.size()) < n; ++i) {
    Vector r = a.row(i).transpose();
    for (std::size_t k = 0; k < selected.size(); ++k) {
      r -= ortho.col(static_cast<Eigen::Index>(k)).dot(r) * ortho.col(static_cast<Eigen::Index>(k));
    }
    if (r.norm() > 1e-8) {
      ortho.col(static_cast<Eigen::Index>(selected.size())) = r.normalized();
      selected.push_back(i);
    }
  }

  Matrix basis(n, n);
  for (Eigen::Index k = 0; k < n; ++k) basis.row(k) = a.row(selected[static_cast<std::size_t>(k)]);
  const Matrix inv = basis.inverse();

  std::vector<bool> processed(static_cast<std::size_t>(m), false);
  for (auto i : selected) processed[static_cast<std::size_t>(i)] = true;

  std::vector<Ray> rays;
  for (Eigen::Index j = 0; j < n; ++j) {
    Ray ray{inv.col(j).normalized(), std::vector<bool>(static_cast<std::size_t>(m), false)};
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != j) ray.zeros[static_cast<std::size_t>(selected[static_cast<std::size_t>(k)])] = true;
    }
    rays.push_back(std::move(ray));
  }

  for (Eigen::Index i = 0; i < m; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (processed[iu]) continue;
    const Vector row = a.row(i).transpose();

    std::vector<double> values(rays.size());
    std::vector<std::size_t> plus, minus;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      values[r] = row.dot(rays[r].v);
      if (values[r] > tol) {
        plus.push_back(r);
      } else if (values[r] < -tol) {
        minus.push_back(r);
      }
    }

    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (values[r] >= -tol) {
        Ray kept = rays[r];
        if (values[r] <= tol) kept.zeros[iu] = true;
        next.push_back(std::move(kept));
      }
    }

    for (auto p : plus) {
      for (auto q : minus) {
        std::vector<bool> common(static_cast<std::size_t>(m), false);
        std::size_t count = 0;
        for (std::size_t k = 0; k < common.size(); ++k) {
          common[k] = rays[p].zeros[k] && rays[q].zeros[k];
          if (common[k]) ++count;
        }
        if (static_cast<Eigen::Index>(count) < n - 2) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (contains_all(rays[r].zeros, common)) adjacent = false;
        }
        if (!adjacent) continue;
        Vector v = values[p] * rays[q].v - values[q] * rays[p].v;
        common[iu] = true;
        next.push_back(Ray{v.normalized(), std::move(common)});
      }
    }

    rays = std::move(next);
    processed[iu] = true;
  }

  std::vector<Vector> out;
  out.reserve(rays.size());
  for (auto& r : rays) {
    bool duplicate = false;
    for (const auto& o : out) {
      if ((o - r.v).norm() < 1e-9) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(r.v);
  }
  return out;
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-10;

enum class LoopResult { Optimal, Unbounded };

void pivot(Matrix& t, std::vector<int>& basis, Eigen::Index row, Eigen::Index col) {
  t.row(row) /= t(row, col);
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    if (r != row && t(r, col) != 0.0) t.row(r) -= t(r, col) * t.row(row);
  }
  basis[static_cast<std::size_t>(row)] = static_cast<int>(col);
}

LoopResult simplex_loop(Matrix& t, std::vector<int>& basis, const Vector& cost,
                        const std::vector<bool>& allowed) {
  const Eigen::Index rows = t.rows();
  const Eigen::Index cols = t.cols() - 1;
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < cols && entering < 0; ++j) {
      if (!allowed[static_cast<std::size_t>(j)]) continue;
      double reduced = -cost[j];
      for (Eigen::Index r = 0; r < rows; ++r) reduced += cost[basis[static_cast<std::size_t>(r)]] * t(r, j);
      if (reduced < -kCostEps) entering = j;
    }
    if (entering < 0) return LoopResult::Optimal;

    Eigen::Index leaving = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (t(r, entering) <= kPivotEps) continue;
      const double ratio = t(r, cols) / t(r, entering);
      if (ratio < best - 1e-14 ||
          (std::abs(ratio - best) <= 1e-14 && leaving >= 0 &&
           basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leaving)])) {
        best = ratio;
        leaving = r;
      }
    }
    if (leaving < 0) return LoopResult::Unbounded;
    pivot(t, basis, leaving, entering);
  }
  fail(ErrorKind::NumericalDegeneracy, "simplex iteration limit reached");
}

}  // namespace

LpResult maximize(const Vector& c, const Matrix& a_ub, const Vector& b_ub,
                  const Matrix& a_eq, const Vector& b_eq) {
  const Eigen::Index n = c.size();
  const Eigen::Index m_ub = a_ub.rows();
  const Eigen::Index m_eq = a_eq.rows();
  if ((m_ub > 0 && a_ub.cols() != n) || (m_eq > 0 && a_eq.cols() != n) ||
      b_ub.size() != m_ub || b_eq.size() != m_eq) {
    fail(ErrorKind::DimensionMismatch, "LP data shapes disagree");
  }
  const Eigen::Index m = m_ub + m_eq;
  const Eigen::Index art0 = n + m_ub;
  const Eigen::Index cols = art0 + m;

  Matrix t = Matrix::Zero(m, cols + 1);
  for (Eigen::Index r = 0; r < m_ub; ++r) {
    t.row(r).head(n) = a_ub.row(r);
    t(r, n + r) = 1.0;
    t(r, cols) = b_ub[r];
  }
  for (Eigen::Index r = 0; r < m_eq; ++r) {
    t.row(m_ub + r).head(n) = a_eq.row(r);
    t(m_ub + r, cols) = b_eq[r];
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    if (t(r, cols) < 0.0) t.row(r) = -t.row(r);
    t(r, art0 + r) = 1.0;
  }

  std::vector<int> basis(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = static_cast<int>(art0 + r);

  Vector phase1 = Vector::Zero(cols);
  phase1.tail(m).setConstant(-1.0);
  std::vector<bool> allowed(static_cast<std::size_t>(cols), true);
  simplex_loop(t, basis, phase1, allowed);

  double infeasibility = 0.0;
  for (Eigen::Index r = 0; r < m; ++r) {
    if (basis[static_cast<std::size_t>(r)] >= art0) infeasibility += t(r, cols);
  }
  const double scale = 1.0 + (m > 0 ? t.col(cols).cwiseAbs().maxCoeff() : 0.0);
  if (infeasibility > 1e-9 * scale) return LpResult{LpStatus::Infeasible, 0.0, Vector()};

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (Eigen::Index r = 0; r < t.rows();) {
    if (basis[static_cast<std::size_t>(r)] < art0) {
      ++r;
      continue;
    }
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < art0; ++j) {
      if (std::abs(t(r, j)) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      pivot(t, basis, r, col);
      ++r;
    } else {
      Matrix reduced(t.rows() - 1, t.cols());
      reduced.topRows(r) = t.topRows(r);
      reduced.bottomRows(t.rows() - r - 1) = t.bottomRows(t.rows() - r - 1);
      t = std::move(reduced);
      basis.erase(basis.begin() + r);
    }
  }

  Vector phase2 = Vector::Zero(cols);
  phase2.head(n) = c;
  for (Eigen::Index j = art0; j < cols; ++j) allowed[static_cast<std::size_t>(j)] = false;
  if (simplex_loop(t, basis, phase2, allowed) == LoopResult::Unbounded) {
    return LpResult{LpStatus::Unbounded, std::numeric_limits<double>::infinity(), Vector()};
  }

  Vector x = Vector::Zero(n);
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    const int b = basis[static_cast<std::size_t>(r)];
    if (b < n) x[b] = t(r, cols);
  }
  return LpResult{LpStatus::Optimal, c.dot(x), x};
}

}  // namespace hilbert::polyhedral
