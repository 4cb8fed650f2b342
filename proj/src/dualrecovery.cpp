#include "hilbert/dualrecovery.hpp"

#include "hilbert/error.hpp"
#include "hilbert/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hilbert {

HahnJordan hahn_jordan(const SignedMeasure& m) {
  return {m.weights.cwiseMax(0.0), (-m.weights).cwiseMax(0.0)};
}

double tv_norm(const SignedMeasure& m) { return m.weights.cwiseAbs().sum(); }

double dual_norm(const SignedMeasure& m) { return 0.5 * tv_norm(m); }

DualBallPoint DualBallPoint::make(SignedMeasure m) {
  if (!m.weights.allFinite()) fail(ErrorKind::InvalidArgument, "measure weights must be finite");
  if (std::abs(m.weights.sum()) > 1e-12) fail(ErrorKind::InvalidArgument, "measure does not annihilate constants");
  if (dual_norm(m) > 1.0 + 1e-12) fail(ErrorKind::InvalidArgument, "measure lies outside the dual unit ball");
  return DualBallPoint(std::move(m));
}

double pairing(const SignedMeasure& m, const QuotientFunction& q) {
  if (m.weights.size() != q.size()) fail(ErrorKind::DimensionMismatch, "measure and function lengths differ");
  return m.weights.dot(q.rep());
}

SignedMeasure dirac_difference(Eigen::Index n, int s, int t) {
  if (s < 0 || t < 0 || s >= n || t >= n || s == t) fail(ErrorKind::InvalidArgument, "need distinct points of K");
  Vector w = Vector::Zero(n);
  w[s] = 1.0;
  w[t] = -1.0;
  return {std::move(w)};
}

std::vector<SignedMeasure> extreme_points(Eigen::Index n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "the dual ball needs n >= 2");
  std::vector<SignedMeasure> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1)));
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s != t) out.push_back(dirac_difference(n, s, t));
    }
  }
  return out;
}

std::vector<Vector> dual_ball_vertices(Eigen::Index n) {
  if (n < 2 || n > 6) fail(ErrorKind::InvalidArgument, "vertex enumeration supports 2 <= n <= 6");
  // (w, tau): 2 tau - s.w >= 0 for every sign vector s, and +-sum w >= 0.
  const Eigen::Index signs = Eigen::Index{1} << n;
  Matrix a(signs + 2, n + 1);
  for (Eigen::Index mask = 0; mask < signs; ++mask) {
    for (Eigen::Index i = 0; i < n; ++i) a(mask, i) = ((mask >> i) & 1) ? 1.0 : -1.0;
    a(mask, n) = 2.0;
  }
  a.row(signs).head(n).setOnes();
  a(signs, n) = 0.0;
  a.row(signs + 1).head(n).setConstant(-1.0);
  a(signs + 1, n) = 0.0;

  std::vector<Vector> vertices;
  for (const Vector& ray : polyhedral::extreme_rays(a)) {
    if (ray[n] <= 1e-12) continue;
    Vector v = ray.head(n) / ray[n];
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v[i]) < 1e-12) v[i] = 0.0;
    }
    vertices.push_back(std::move(v));
  }
  return vertices;
}

std::optional<DiracPair> match_dirac_difference(const Vector& w, double tol) {
  int plus = -1;
  int minus = -1;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) <= tol) continue;
    if (std::abs(w[i] - 1.0) <= tol && plus < 0) {
      plus = static_cast<int>(i);
    } else if (std::abs(w[i] + 1.0) <= tol && minus < 0) {
      minus = static_cast<int>(i);
    } else {
      return std::nullopt;
    }
  }
  if (plus < 0 || minus < 0) return std::nullopt;
  return DiracPair{plus, minus};
}

std::variant<EquilateralSource, NotEquilateral> equilateral_witness(const std::vector<SignedMeasure>& a) {
  if (a.empty()) fail(ErrorKind::MalformedInput, "equilateral test needs a nonempty set");
  std::vector<DiracPair> pairs;
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto pair = match_dirac_difference(a[i].weights);
    if (!pair) fail(ErrorKind::MalformedInput, "member " + std::to_string(i) + " is not a signed Dirac difference");
    if (a[i].weights.size() != a.front().weights.size()) fail(ErrorKind::MalformedInput, "members differ in length");
    const bool repeated = std::any_of(pairs.begin(), pairs.end(), [&](const DiracPair& p) {
      return p.plus == pair->plus && p.minus == pair->minus;
    });
    if (!repeated) {
      pairs.push_back(*pair);
      index.push_back(i);
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const double d = dual_norm({a[index[i]].weights - a[index[j]].weights});
      if (std::abs(d - 1.0) > 1e-9) return NotEquilateral{index[i], index[j], d};
    }
  }
  const auto shared = [&](auto member) {
    return std::all_of(pairs.begin(), pairs.end(), [&](const DiracPair& p) { return member(p) == member(pairs[0]); });
  };
  if (shared([](const DiracPair& p) { return p.plus; })) return EquilateralSource{pairs[0].plus, 1};
  if (shared([](const DiracPair& p) { return p.minus; })) return EquilateralSource{pairs[0].minus, -1};
  // Pairwise distance one forces a common source or sink.
  fail(ErrorKind::NumericalDegeneracy, "equilateral set without a common source");
}

Matrix effective_quotient_map(const Matrix& t) {
  const Eigen::Index n = t.rows();
  const Matrix p = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  return p * t * p;
}

Matrix adjoint(const Matrix& t) { return effective_quotient_map(t).transpose(); }

Matrix quotient_isometry_matrix(int eps, const std::vector<int>& theta) {
  const auto n = static_cast<Eigen::Index>(theta.size());
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    m.col(j) = quotient_linear_isometry_apply(eps, theta, QuotientFunction(Vector::Unit(n, j))).rep();
  }
  return m;
}

EpsTheta recover_eps_theta(const Matrix& t, Eigen::Index n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "recovery needs n >= 2");
  if (t.rows() != n || t.cols() != n) fail(ErrorKind::DimensionMismatch, "map is not n x n");
  const Matrix t_star = adjoint(t);

  std::vector<int> sign(static_cast<std::size_t>(n));
  std::vector<int> theta(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::vector<SignedMeasure> images;
    for (int u = 0; u < n; ++u) {
      if (u == s) continue;
      Vector w = t_star * dirac_difference(n, s, u).weights;
      if (!match_dirac_difference(w)) {
        fail(ErrorKind::NotIsometricIsomorphism, "adjoint image of delta_" + std::to_string(s) + " - delta_" +
                                                     std::to_string(u) + " is not a signed Dirac difference");
      }
      images.push_back({std::move(w)});
    }
    const auto witness = equilateral_witness(images);
    if (const auto* bad = std::get_if<NotEquilateral>(&witness)) {
      fail(ErrorKind::NotIsometricIsomorphism,
           "images of E_" + std::to_string(s) + " are not equilateral (distance " + std::to_string(bad->distance) + ")");
    }
    const auto& src = std::get<EquilateralSource>(witness);
    sign[static_cast<std::size_t>(s)] = src.sign;
    theta[static_cast<std::size_t>(s)] = src.source;
  }
  const int eps = sign[0];
  if (std::any_of(sign.begin(), sign.end(), [&](int v) { return v != eps; })) {
    fail(ErrorKind::InconsistentSign, "the sets E_s are mapped with mixed signs");
  }
  try {
    validate_permutation(theta, n);
  } catch (const Error&) {
    fail(ErrorKind::NotIsometricIsomorphism, "recovered relabelling is not a bijection");
  }
  const double residual = (effective_quotient_map(t) - quotient_isometry_matrix(eps, theta)).cwiseAbs().maxCoeff();
  if (residual > 1e-9) {
    fail(ErrorKind::NotIsometricIsomorphism, "recovered (eps, theta) misses the map by " + std::to_string(residual));
  }
  return {eps, std::move(theta)};
}

RecoveryReport recover_simplex_isometry(const FiniteK& k, const SimplexOracle& h, const RecoveryOptions& options) {
  const Eigen::Index n = k.size();
  if (n < 2) fail(ErrorKind::InvalidArgument, "recovery needs n >= 2");
  Rng rng(options.seed);
  auto sample = [&] { return exp_map(k, QuotientFunction(rng.normal_vector(n))); };
  auto call = [&](const DeltaPoint& p) {
    DeltaPoint out = h(p);
    if (out.f().size() != n) fail(ErrorKind::DimensionMismatch, "oracle changed the size of K");
    return out;
  };

  RecoveryReport report;
  for (int i = 0; i < options.isometry_probes; ++i) {
    const DeltaPoint p = sample();
    const DeltaPoint q = sample();
    const double gap = std::abs(simplex_dist(k, call(p), call(q)) - simplex_dist(k, p, q));
    report.isometry_residual = std::max(report.isometry_residual, gap);
  }
  if (report.isometry_residual > options.isometry_tol) {
    fail(ErrorKind::NotIsometry, "oracle changes sampled distances by " + std::to_string(report.isometry_residual));
  }

  // Log transport and its linear part A(q) = L(q) - L(0).
  auto transport = [&](const Vector& q) { return log_map(call(exp_map(k, QuotientFunction(q)))).rep(); };
  const Vector origin_image = transport(Vector::Zero(n));
  auto linear = [&](const Vector& q) { return Vector(transport(q) - origin_image); };

  Matrix t(n, n);
  for (Eigen::Index j = 0; j < n; ++j) t.col(j) = linear(QuotientFunction(Vector::Unit(n, j)).rep());

  for (int i = 0; i < options.affinity_probes; ++i) {
    const Vector q1 = rng.normal_vector(n);
    const Vector q2 = rng.normal_vector(n);
    const double a = rng.uniform(-1.0, 1.0);
    const double b = rng.uniform(-1.0, 1.0);
    const Vector combined = linear(a * q1 + b * q2);
    const double split = variation_norm(QuotientFunction(combined - a * linear(q1) - b * linear(q2)));
    const double matrix = variation_norm(QuotientFunction(combined - t * QuotientFunction(a * q1 + b * q2).rep()));
    report.affinity_residual = std::max({report.affinity_residual, split, matrix});
  }
  if (report.affinity_residual > options.affinity_tol) {
    fail(ErrorKind::NotAffineInLog, "Log transport deviates from an affine map by " +
                                        std::to_string(report.affinity_residual));
  }

  auto [eps, theta] = recover_eps_theta(t, n);
  // h maps the constant point to the normalized gauge.
  const DeltaPoint image_of_constant = call(exp_map(k, QuotientFunction::zero(n)));
  report.isometry = SimplexIsometry::make(k, eps, std::move(theta), image_of_constant.f());

  for (int i = 0; i < options.reproduce_probes; ++i) {
    const DeltaPoint p = sample();
    const double gap = simplex_dist(k, call(p), isometry_apply(k, report.isometry, p));
    report.reproduce_residual = std::max(report.reproduce_residual, gap);
  }
  if (report.reproduce_residual > options.reproduce_tol) {
    fail(ErrorKind::OracleInconsistent, "recovered isometry misses the oracle by " +
                                            std::to_string(report.reproduce_residual));
  }
  return report;
}

}  // namespace hilbert
