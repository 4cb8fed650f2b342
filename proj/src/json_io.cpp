#include "hilbert/json_io.hpp"

#include <string>

namespace hilbert::json_io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number_from(const Json& j, const char* what) {
  if (!j.is_number()) throw SchemaError(std::string(what) + " must be a number");
  return j.get<double>();
}

Eigen::Index size_from(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return static_cast<Eigen::Index>(j.get<long long>());
}

}  // namespace

Vector vector_from(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number_from(j[i], what);
  return v;
}

Matrix matrix_from(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw SchemaError(std::string(what) + " must be a nonempty array of rows");
  const Vector first = vector_from(j[0], what);
  Matrix m(static_cast<Eigen::Index>(j.size()), first.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = vector_from(j[i], what);
    if (row.size() != m.cols()) throw SchemaError(std::string(what) + " has rows of different lengths");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

OrderUnitSpace space_from(const Json& j) {
  const Json& cone = field(j, "cone");
  const Json& type = field(cone, "type");
  if (!type.is_string()) throw SchemaError("cone type must be a string");
  const auto name = type.get<std::string>();
  ConeSpec spec = [&] {
    if (name == "orthant") return ConeSpec::orthant(size_from(field(cone, "dim"), "dim"));
    if (name == "lorentz") return ConeSpec::lorentz(size_from(field(cone, "dim"), "dim"));
    if (name == "facets") return ConeSpec::facets(matrix_from(field(cone, "facets"), "facets"));
    throw SchemaError("unknown cone type \"" + name + "\"");
  }();
  if (!j.contains("u") && !j.contains("phi")) return OrderUnitSpace::standard(std::move(spec));
  const OrderUnitSpace fallback = OrderUnitSpace::standard(spec);
  Vector u = j.contains("u") ? vector_from(j.at("u"), "u") : fallback.unit();
  Vector phi = j.contains("phi") ? vector_from(j.at("phi"), "phi") : fallback.state();
  return OrderUnitSpace(std::move(spec), std::move(u), std::move(phi));
}

Json to_json(const OrderUnitSpace& space) {
  Json cone;
  const auto& v = space.cone().variant();
  if (const auto* o = std::get_if<Orthant>(&v)) {
    cone = {{"type", "orthant"}, {"dim", o->dim}};
  } else if (const auto* l = std::get_if<Lorentz>(&v)) {
    cone = {{"type", "lorentz"}, {"dim", l->dim}};
  } else {
    cone = {{"type", "facets"}, {"facets", to_json(std::get<PolyhedralFacets>(v).facets)}};
  }
  return {{"cone", cone}, {"u", to_json(space.unit())}, {"phi", to_json(space.state())}};
}

ConvexBody body_from(const Json& j) {
  if (j.is_object() && j.contains("polytope")) {
    const Json& p = j.at("polytope");
    const Matrix v = matrix_from(field(p, "vertices"), "vertices");
    std::vector<Vector> vertices;
    for (Eigen::Index i = 0; i < v.rows(); ++i) vertices.emplace_back(v.row(i).transpose());
    if (p.contains("bounds")) return ConvexBody::polytope(std::move(vertices), matrix_from(p.at("bounds"), "bounds"));
    return ConvexBody::polytope(std::move(vertices));
  }
  if (j.is_object() && j.contains("ball")) {
    const Json& b = j.at("ball");
    const double radius = number_from(field(b, "radius"), "radius");
    const Eigen::Index dim = b.contains("dim") ? size_from(b.at("dim"), "dim") : 2;
    return ConvexBody::ball(radius, dim);
  }
  throw SchemaError("body must have a \"polytope\" or \"ball\" field");
}

FiniteK finite_k_from(const Json& j) {
  const Eigen::Index n = size_from(field(j, "n"), "n");
  if (j.contains("mu")) return FiniteK(n, vector_from(j.at("mu"), "mu"));
  if (j.contains("preset")) {
    const Json& preset = j.at("preset");
    if (preset == "dyadic") return FiniteK::dyadic(n);
    if (preset == "uniform") return FiniteK::uniform(n);
    throw SchemaError("unknown measure preset");
  }
  return FiniteK::uniform(n);
}

SimplexIsometry isometry_from(const FiniteK& k, const Json& j) {
  const Json& eps = field(j, "eps");
  if (!eps.is_number_integer()) throw SchemaError("eps must be an integer");
  const Json& theta_json = field(j, "theta");
  if (!theta_json.is_array()) throw SchemaError("theta must be an array of integers");
  std::vector<int> theta;
  for (const auto& t : theta_json) {
    if (!t.is_number_integer()) throw SchemaError("theta must be an array of integers");
    theta.push_back(t.get<int>());
  }
  return SimplexIsometry::make(k, eps.get<int>(), std::move(theta), vector_from(field(j, "g"), "g"));
}

Json to_json(const SimplexIsometry& h) { return {{"eps", h.eps}, {"theta", h.theta}, {"g", to_json(h.g)}}; }

}  // namespace hilbert::json_io
