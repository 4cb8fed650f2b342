#pragma once

#include "hilbert/cones.hpp"

#include <array>
#include <cstdint>
#include <functional>

namespace hilbert {

/// Black-box map from the cross section of one space to that of another.
/// Must be reentrant; reconstruction calls it many times.
using IsometryOracle = std::function<ProjectivePoint(const ProjectivePoint&)>;

/// The oracle x -> [T x]. No bi-positivity check; see check_bipositive.
IsometryOracle induced_oracle(Matrix t, OrderUnitSpace target);

/// A linear map known on span(basis) through the images of the basis
/// columns, together with an anchor point of the cross section in that span.
class PartialLinearMap {
 public:
  PartialLinearMap(Matrix basis, Matrix images, ProjectivePoint anchor);

  const Matrix& basis() const { return basis_; }
  const Matrix& images() const { return images_; }
  const ProjectivePoint& anchor() const { return anchor_; }
  Eigen::Index rank() const { return basis_.cols(); }

  /// |z - P z| / |z| where P projects onto span(basis).
  double span_residual(const Vector& z) const;

  /// Throws InvalidArgument if z is outside the span (residual above 1e-8).
  Vector apply(const Vector& z) const;

  /// images * basis^{-1}; requires a square basis.
  Matrix matrix() const;

 private:
  Vector coefficients(const Vector& z) const;

  Matrix basis_;
  Matrix images_;
  ProjectivePoint anchor_;
};

/// The two-dimensional base change: a linear map S on span{x', y'} with
/// [S x'] = f(x)', [S y'] = f(y)' and S x = f(x), where x', y' and f(x)',
/// f(y)' are the chord endpoints on either side.
///
/// Throws ChordDegenerate when the chord parameters leave (0, 1) and
/// OracleInconsistent when [S z] misses f(z) by more than 1e-6 in Hilbert
/// distance at the quarter points of the chord.
PartialLinearMap base_change(const OrderUnitSpace& s1, const OrderUnitSpace& s2, const IsometryOracle& f,
                             const ProjectivePoint& x, const ProjectivePoint& y);

/// Extends `partial` to span(basis) + span{z}: base change along the chord
/// through the anchor and z, rescaled to agree with `partial` at the anchor.
PartialLinearMap extend_collineation(const PartialLinearMap& partial, const OrderUnitSpace& s1,
                                     const OrderUnitSpace& s2, const ProjectivePoint& z, const IsometryOracle& f);

struct ReconstructionOptions {
  double isometry_tol = 1e-9;    ///< allowed |d_H(fx, fy) - d_H(x, y)| on probes
  double collinearity_tol = 1e-6;
  double agreement_tol = 1e-6;   ///< final Hilbert distance between f(x) and [T x]
  int isometry_probes = 16;
  int segment_probes = 16;
  int agreement_probes = 8;
  std::uint64_t seed = 0x5eedULL;
};

/// Recovers a bi-positive T with [T x] = f(x) from a black-box isometry of a
/// strictly convex geometry, by extending from the normalized order unit
/// along the perturbation directions unit + delta e_i.
Matrix reconstruct_linear(const OrderUnitSpace& s1, const OrderUnitSpace& s2, const IsometryOracle& f,
                          const ReconstructionOptions& options = {});

/// [T x] for a point x of the relative boundary of the cross section.
/// Throws NotOnBoundary or StateVanishes.
Vector extend_to_boundary(const Matrix& t, const OrderUnitSpace& s1, const OrderUnitSpace& s2, const Vector& x);

struct RadialLimitReport {
  std::array<double, 3> steps{0.9, 0.99, 0.999};
  std::array<double, 3> gaps{};    ///< |f((1-t) p + t x) - [T x]|
  std::array<double, 3> bounds{};  ///< admissible gap at each step
  bool consistent = false;
};

/// Compares the boundary extension with f along the ray from p towards x.
/// The admissible gap at step t is twice (1-t)/t * phi(Tp)/phi(Tx) * |[Tp] - [Tx]|,
/// the exact gap for a projective linear f, plus 1e-9.
RadialLimitReport radial_limit_check(const IsometryOracle& f, const Matrix& t, const OrderUnitSpace& s1,
                                     const OrderUnitSpace& s2, const Vector& boundary_x, const ProjectivePoint& p);

struct VerificationReport {
  double max_residual = 0.0;         ///< max d_H(f(x), [T x])
  double is_isometry_residual = 0.0; ///< max |d_H(f x, f y) - d_H(x, y)|
};

VerificationReport verify_projective_linearity(const IsometryOracle& f, const Matrix& t, const OrderUnitSpace& s1,
                                               const OrderUnitSpace& s2, int n_samples,
                                               std::uint64_t seed = 0x5eedULL);

/// |A/|A| - B/|B|| in the Frobenius norm.
double projective_matrix_distance(const Matrix& a, const Matrix& b);

// Built-in Lorentz-group families acting on Lorentz(n) (axis = coordinate 0).

Matrix lorentz_boost(Eigen::Index n, Eigen::Index axis, double rapidity);
Matrix spatial_rotation(Eigen::Index n, Eigen::Index i, Eigen::Index j, double angle);
/// R1 * boost(axis 1, eta) * R2 with random spatial rotations and
/// eta uniform in [-max_rapidity, max_rapidity].
Matrix random_lorentz(Eigen::Index n, Rng& rng, double max_rapidity = 1.5);

}  // namespace hilbert
