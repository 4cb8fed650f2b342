#include "hilbert/linalg.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace hilbert {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Vector Rng::normal_vector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(index(static_cast<std::size_t>(i) + 1));
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  }
  return p;
}

Matrix random_rotation(Eigen::Index n, Rng& rng) {
  Matrix q(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector v = rng.normal_vector(n);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < j; ++k) v -= q.col(k).dot(v) * q.col(k);
    }
    q.col(j) = v.normalized();
  }
  if (n > 0 && q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

}  // namespace hilbert
