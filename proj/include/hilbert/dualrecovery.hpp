#pragma once

#include "hilbert/simplexgeom.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace hilbert {

/// A signed measure on a finite K, mu({i}) = weights[i].
struct SignedMeasure {
  Vector weights;
};

struct HahnJordan {
  Vector plus;
  Vector minus;
};

HahnJordan hahn_jordan(const SignedMeasure& m);
double tv_norm(const SignedMeasure& m);

/// Half the total variation: the norm dual to the variation norm on the
/// annihilator of the constants.
double dual_norm(const SignedMeasure& m);

/// A point of the dual unit ball: total mass zero, dual_norm at most one.
class DualBallPoint {
 public:
  /// Throws InvalidArgument unless |sum| <= 1e-12 and dual_norm <= 1 + 1e-12.
  static DualBallPoint make(SignedMeasure m);
  const SignedMeasure& measure() const { return m_; }

 private:
  explicit DualBallPoint(SignedMeasure m) : m_(std::move(m)) {}
  SignedMeasure m_;
};

/// <m, q> on sum-zero representatives.
double pairing(const SignedMeasure& m, const QuotientFunction& q);

/// delta_s - delta_t.
SignedMeasure dirac_difference(Eigen::Index n, int s, int t);

/// All n(n-1) measures delta_s - delta_t, ordered by s then t.
std::vector<SignedMeasure> extreme_points(Eigen::Index n);

/// Vertices of {w : sum w = 0, sum |w_i| <= 2} by double description on the
/// homogenized cone. Exponential in n; limited to n <= 6.
std::vector<Vector> dual_ball_vertices(Eigen::Index n);

struct DiracPair {
  int plus;
  int minus;
};

/// Matches w to delta_p - delta_q: every coordinate within tol of -1, 0 or
/// +1, with exactly one +1 and one -1.
std::optional<DiracPair> match_dirac_difference(const Vector& w, double tol = 1e-9);

struct EquilateralSource {
  int source;
  int sign;  ///< +1 for E_source, -1 for -E_source
};

struct NotEquilateral {
  std::size_t first;
  std::size_t second;
  double distance;
};

/// For a set of dual extreme points with pairwise distance one, the common
/// Dirac source (sign +1) or sink (sign -1). Repeated members are ignored.
/// A singleton reports its source. Throws MalformedInput for members that
/// are not of the form +-(delta_s - delta_t).
std::variant<EquilateralSource, NotEquilateral> equilateral_witness(const std::vector<SignedMeasure>& a);

/// P T P with P the projection onto sum-zero vectors, as a map of representatives.
Matrix effective_quotient_map(const Matrix& t);
/// Transpose of effective_quotient_map(t), acting on zero-mass weights.
Matrix adjoint(const Matrix& t);

struct EpsTheta {
  int eps;
  std::vector<int> theta;
};

/// Recovers (eps, theta) with T q = eps (q o theta) from a linear variation
/// norm isometry given on sum-zero representatives. For n = 2 both
/// readings exist and eps = +1 is returned.
///
/// Throws NotIsometricIsomorphism when an adjoint image of a Dirac
/// difference is not a signed Dirac difference or the result does not
/// reproduce T, and InconsistentSign when the E_s disagree on the sign.
EpsTheta recover_eps_theta(const Matrix& t, Eigen::Index n);

/// The matrix of q -> eps (q o theta) on sum-zero representatives.
Matrix quotient_isometry_matrix(int eps, const std::vector<int>& theta);

using SimplexOracle = std::function<DeltaPoint(const DeltaPoint&)>;

struct RecoveryOptions {
  double isometry_tol = 1e-8;
  double affinity_tol = 1e-7;
  double reproduce_tol = 1e-8;
  int isometry_probes = 32;
  int affinity_probes = 16;
  int reproduce_probes = 64;
  std::uint64_t seed = 0x5eedULL;
};

struct RecoveryReport {
  SimplexIsometry isometry;
  double isometry_residual = 0.0;   ///< max |d(h p, h q) - d(p, q)|
  double affinity_residual = 0.0;   ///< max deviation from affinity in Log coordinates
  double reproduce_residual = 0.0;  ///< max d(h p, recovered p) on fresh samples
};

/// Recovers the canonical (eps, theta, g) of a black-box Hilbert isometry of
/// the simplex over k. Throws NotIsometry when sampled distances are not
/// preserved, NotAffineInLog when the Log transport is not affine, and
/// OracleInconsistent when the recovered isometry does not reproduce h.
RecoveryReport recover_simplex_isometry(const FiniteK& k, const SimplexOracle& h, const RecoveryOptions& options = {});

}  // namespace hilbert
