#include "hilbert/collineation.hpp"

#include "hilbert/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace hilbert {

namespace {

constexpr double kSpanTol = 1e-8;
constexpr double kRescaleTol = 1e-7;
constexpr double kBaseChangeTol = 1e-6;

}  // namespace

IsometryOracle induced_oracle(Matrix t, OrderUnitSpace target) {
  return [t = std::move(t), target = std::move(target)](const ProjectivePoint& x) {
    return ProjectivePoint::from(target, t * x.rep());
  };
}

PartialLinearMap::PartialLinearMap(Matrix basis, Matrix images, ProjectivePoint anchor)
    : basis_(std::move(basis)), images_(std::move(images)), anchor_(std::move(anchor)) {
  if (basis_.cols() != images_.cols()) fail(ErrorKind::DimensionMismatch, "basis and images differ in count");
}

Vector PartialLinearMap::coefficients(const Vector& z) const { return basis_.colPivHouseholderQr().solve(z); }

double PartialLinearMap::span_residual(const Vector& z) const {
  const double norm = z.norm();
  if (norm == 0.0) return 0.0;
  return (z - basis_ * coefficients(z)).norm() / norm;
}

Vector PartialLinearMap::apply(const Vector& z) const {
  const Vector c = coefficients(z);
  if ((z - basis_ * c).norm() > kSpanTol * std::max(z.norm(), 1e-300)) {
    fail(ErrorKind::InvalidArgument, "point lies outside the span of the partial map");
  }
  return images_ * c;
}

Matrix PartialLinearMap::matrix() const {
  if (basis_.rows() != basis_.cols()) fail(ErrorKind::DimensionMismatch, "partial map does not span the space yet");
  return images_ * basis_.inverse();
}

PartialLinearMap base_change(const OrderUnitSpace& s1, const OrderUnitSpace& s2, const IsometryOracle& f,
                             const ProjectivePoint& x, const ProjectivePoint& y) {
  const Chord source = chord_endpoints(s1, x, y);
  const ProjectivePoint fx = f(x);
  const ProjectivePoint fy = f(y);
  const Chord target = chord_endpoints(s2, fx, fy);

  const double t = source.t;
  const double s = target.t;
  constexpr double kEdge = 1e-12;
  if (!(t > kEdge && t < 1.0 - kEdge) || !(s > kEdge && s < 1.0 - kEdge)) {
    fail(ErrorKind::ChordDegenerate, "chord parameter outside (0, 1): t = " + std::to_string(t) +
                                         ", s = " + std::to_string(s));
  }

  // S(a t x' + b (1-t) y') = a s f(x)' + b (1-s) f(y)'.
  Matrix basis(s1.dim(), 2);
  basis.col(0) = source.x_prime;
  basis.col(1) = source.y_prime;
  Matrix images(s2.dim(), 2);
  images.col(0) = (s / t) * target.x_prime;
  images.col(1) = ((1.0 - s) / (1.0 - t)) * target.y_prime;
  PartialLinearMap map(std::move(basis), std::move(images), x);

  for (double lambda : {0.25, 0.5, 0.75}) {
    const Vector z = source.x_prime + lambda * (source.y_prime - source.x_prime);
    const auto pz = ProjectivePoint::from(s1, z);
    const Vector sz = map.apply(pz.rep());
    if (!s2.cone().is_interior(sz)) fail(ErrorKind::OracleInconsistent, "base change leaves the target cone");
    const double gap = hilbert_dist(s2, sz, f(pz).rep());
    if (gap > kBaseChangeTol) {
      fail(ErrorKind::OracleInconsistent, "base change misses the oracle by " + std::to_string(gap));
    }
  }
  return map;
}

PartialLinearMap extend_collineation(const PartialLinearMap& partial, const OrderUnitSpace& s1,
                                     const OrderUnitSpace& s2, const ProjectivePoint& z, const IsometryOracle& f) {
  if (partial.span_residual(z.rep()) < kSpanTol) {
    fail(ErrorKind::DependentDirection, "new direction lies in the current span");
  }
  const ProjectivePoint& anchor = partial.anchor();
  const PartialLinearMap plane = base_change(s1, s2, f, anchor, z);

  const Vector t_anchor = partial.apply(anchor.rep());
  const Vector s_anchor = plane.apply(anchor.rep());
  const double scale = t_anchor.dot(s_anchor) / s_anchor.squaredNorm();
  if (!(scale > 0.0) || (t_anchor - scale * s_anchor).norm() > kRescaleTol * t_anchor.norm()) {
    fail(ErrorKind::RescaleDegenerate, "base change and partial map disagree at the anchor");
  }

  const Eigen::Index k = partial.rank();
  Matrix basis(partial.basis().rows(), k + 1);
  basis.leftCols(k) = partial.basis();
  basis.col(k) = z.rep();
  Matrix images(partial.images().rows(), k + 1);
  images.leftCols(k) = partial.images();
  images.col(k) = scale * plane.apply(z.rep());
  return PartialLinearMap(std::move(basis), std::move(images), anchor);
}

namespace {

void validate_isometry(const OrderUnitSpace& s1, const OrderUnitSpace& s2, const IsometryOracle& f, Rng& rng,
                       const ReconstructionOptions& options) {
  for (int k = 0; k < options.isometry_probes; ++k) {
    const auto x = sample_interior(s1, rng);
    const auto y = sample_interior(s1, rng);
    const double d = hilbert_dist(s1, x.rep(), y.rep());
    const double fd = hilbert_dist(s2, f(x).rep(), f(y).rep());
    if (std::abs(fd - d) > options.isometry_tol * std::max(1.0, d)) {
      fail(ErrorKind::NotIsometry, "oracle changes a sampled distance by " + std::to_string(std::abs(fd - d)));
    }
  }
}

void probe_segments(const OrderUnitSpace& s1, const IsometryOracle& f, Rng& rng,
                    const ReconstructionOptions& options) {
  for (int k = 0; k < options.segment_probes; ++k) {
    const auto x = sample_interior(s1, rng);
    const auto y = sample_interior(s1, rng);
    const auto mid = ProjectivePoint::from(s1, 0.5 * (x.rep() + y.rep()));
    const Vector fx = f(x).rep();
    const Vector fy = f(y).rep();
    const Vector fm = f(mid).rep();
    const Vector axis = fy - fx;
    const double len = axis.norm();
    if (len == 0.0) fail(ErrorKind::NotSegmentPreserving, "oracle collapses a segment");
    const Vector rel = fm - fx;
    const double along = rel.dot(axis) / (len * len);
    const double off = (rel - along * axis).norm() / len;
    if (off > options.collinearity_tol || along < 0.0 || along > 1.0) {
      fail(ErrorKind::NotSegmentPreserving, "image of a segment midpoint is off the image chord by " +
                                                std::to_string(off));
    }
  }
}

}  // namespace

Matrix reconstruct_linear(const OrderUnitSpace& s1, const OrderUnitSpace& s2, const IsometryOracle& f,
                          const ReconstructionOptions& options) {
  const Eigen::Index n = s1.dim();
  if (s2.dim() != n) fail(ErrorKind::DimensionMismatch, "reconstruction needs spaces of equal dimension");
  Rng rng(options.seed);
  validate_isometry(s1, s2, f, rng, options);
  probe_segments(s1, f, rng, options);

  const auto anchor = ProjectivePoint::from(s1, s1.unit());
  Matrix basis(n, 1);
  basis.col(0) = anchor.rep();
  Matrix images(n, 1);
  images.col(0) = f(anchor).rep();
  PartialLinearMap partial(std::move(basis), std::move(images), anchor);

  const double delta = 1e-2 * s1.cone().margin(anchor.rep());
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  while (partial.rank() < n) {
    // Best-conditioned remaining perturbation direction.
    Eigen::Index best = -1;
    double best_residual = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const Vector z = anchor.rep() + delta * Vector::Unit(n, i);
      const double r = partial.span_residual(z / s1.state().dot(z));
      if (r > best_residual) {
        best_residual = r;
        best = i;
      }
    }
    if (best < 0) fail(ErrorKind::DependentDirection, "perturbation directions do not span the space");
    used[static_cast<std::size_t>(best)] = true;
    const auto z = ProjectivePoint::from(s1, anchor.rep() + delta * Vector::Unit(n, best));
    partial = extend_collineation(partial, s1, s2, z, f);
  }
  const Matrix t = partial.matrix();

  const auto report = verify_projective_linearity(f, t, s1, s2, options.agreement_probes, options.seed + 1);
  if (report.max_residual > options.agreement_tol) {
    fail(ErrorKind::OracleInconsistent,
         "reconstructed map misses the oracle by " + std::to_string(report.max_residual));
  }
  return t;
}

Vector extend_to_boundary(const Matrix& t, const OrderUnitSpace& s1, const OrderUnitSpace& s2, const Vector& x) {
  if (x.size() != s1.dim() || t.cols() != s1.dim() || t.rows() != s2.dim()) {
    fail(ErrorKind::DimensionMismatch, "boundary point or map has the wrong shape");
  }
  const double phi = s1.state().dot(x);
  if (!(phi > 0.0) || !s1.cone().on_boundary(x)) fail(ErrorKind::NotOnBoundary, "point is not on the boundary");
  const Vector image = t * (x / phi);
  const double phi2 = s2.state().dot(image);
  if (!(phi2 > 0.0)) fail(ErrorKind::StateVanishes, "state of the image is not positive");
  return image / phi2;
}

RadialLimitReport radial_limit_check(const IsometryOracle& f, const Matrix& t, const OrderUnitSpace& s1,
                                     const OrderUnitSpace& s2, const Vector& boundary_x, const ProjectivePoint& p) {
  const Vector x = boundary_x / s1.state().dot(boundary_x);
  const Vector ext = extend_to_boundary(t, s1, s2, x);
  const Vector tp = t * p.rep();
  const Vector tx = t * x;
  const double ratio = s2.state().dot(tp) / s2.state().dot(tx);
  const double span = (tp / s2.state().dot(tp) - ext).norm();

  RadialLimitReport report;
  report.consistent = true;
  for (std::size_t k = 0; k < report.steps.size(); ++k) {
    const double step = report.steps[k];
    const auto z = ProjectivePoint::from(s1, (1.0 - step) * p.rep() + step * x);
    report.gaps[k] = (f(z).rep() - ext).norm();
    report.bounds[k] = 2.0 * (1.0 - step) / step * ratio * span + 1e-9;
    if (report.gaps[k] > report.bounds[k]) report.consistent = false;
  }
  return report;
}

VerificationReport verify_projective_linearity(const IsometryOracle& f, const Matrix& t, const OrderUnitSpace& s1,
                                               const OrderUnitSpace& s2, int n_samples, std::uint64_t seed) {
  Rng rng(seed);
  VerificationReport report;
  std::optional<ProjectivePoint> prev;
  std::optional<ProjectivePoint> prev_image;
  for (int k = 0; k < n_samples; ++k) {
    const auto x = sample_interior(s1, rng);
    const auto fx = f(x);
    const Vector tx = t * x.rep();
    if (!s2.cone().is_interior(tx)) {
      report.max_residual = std::numeric_limits<double>::infinity();
    } else {
      report.max_residual = std::max(report.max_residual, hilbert_dist(s2, fx.rep(), tx));
    }
    if (prev) {
      const double d = hilbert_dist(s1, prev->rep(), x.rep());
      const double fd = hilbert_dist(s2, prev_image->rep(), fx.rep());
      report.is_isometry_residual = std::max(report.is_isometry_residual, std::abs(fd - d));
    }
    prev = x;
    prev_image = fx;
  }
  return report;
}

double projective_matrix_distance(const Matrix& a, const Matrix& b) {
  return (a / a.norm() - b / b.norm()).norm();
}

Matrix lorentz_boost(Eigen::Index n, Eigen::Index axis, double rapidity) {
  if (axis < 1 || axis >= n) fail(ErrorKind::InvalidArgument, "boost axis must be a spatial coordinate");
  Matrix m = Matrix::Identity(n, n);
  m(0, 0) = std::cosh(rapidity);
  m(axis, axis) = std::cosh(rapidity);
  m(0, axis) = std::sinh(rapidity);
  m(axis, 0) = std::sinh(rapidity);
  return m;
}

Matrix spatial_rotation(Eigen::Index n, Eigen::Index i, Eigen::Index j, double angle) {
  if (i < 1 || j < 1 || i >= n || j >= n || i == j) {
    fail(ErrorKind::InvalidArgument, "rotation plane must be two distinct spatial coordinates");
  }
  Matrix m = Matrix::Identity(n, n);
  m(i, i) = std::cos(angle);
  m(j, j) = std::cos(angle);
  m(i, j) = -std::sin(angle);
  m(j, i) = std::sin(angle);
  return m;
}

Matrix random_lorentz(Eigen::Index n, Rng& rng, double max_rapidity) {
  auto spatial = [&]() {
    Matrix r = Matrix::Identity(n, n);
    if (n > 2) r.bottomRightCorner(n - 1, n - 1) = random_rotation(n - 1, rng);
    return r;
  };
  const Matrix r1 = spatial();
  const Matrix r2 = spatial();
  const double eta = rng.uniform(-max_rapidity, max_rapidity);
  return r1 * lorentz_boost(n, 1, eta) * r2;
}

}  // namespace hilbert
