#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace hilbert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Portable random source. std::mt19937_64 is fully specified by the
// standard; the distributions in <random> are not, so the transforms live
// here to keep sampled output identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0x5eedULL) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  double normal();

  Vector normal_vector(Eigen::Index n);

  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Random orthogonal matrix with determinant +1 (Gram-Schmidt on Gaussians).
Matrix random_rotation(Eigen::Index n, Rng& rng);

}  // namespace hilbert
