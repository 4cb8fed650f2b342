#pragma once

#include "hilbert/collineation.hpp"
#include "hilbert/convexset.hpp"
#include "hilbert/dualrecovery.hpp"

#include <json.hpp>

#include <stdexcept>

namespace hilbert::json_io {

using Json = nlohmann::json;

/// Well-formed JSON that does not match the expected schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Vector vector_from(const Json& j, const char* what);
Matrix matrix_from(const Json& j, const char* what);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);

/// {"cone": {"type": "orthant" | "lorentz", "dim": n} or
///  {"type": "facets", "facets": [[...]]}, "u": [...], "phi": [...]}.
/// Missing "u" or "phi" fall back to OrderUnitSpace::standard.
OrderUnitSpace space_from(const Json& j);
Json to_json(const OrderUnitSpace& space);

/// {"polytope": {"vertices": [[...]], "bounds": [[...]]}} (bounds optional)
/// or {"ball": {"radius": r, "dim": d}} (dim defaults to 2).
ConvexBody body_from(const Json& j);

/// {"n": n, "mu": [...]} with mu optional (uniform), or
/// {"n": n, "preset": "dyadic"}.
FiniteK finite_k_from(const Json& j);

/// {"eps": +-1, "theta": [0-based permutation], "g": [...]}.
SimplexIsometry isometry_from(const FiniteK& k, const Json& j);
Json to_json(const SimplexIsometry& h);

}  // namespace hilbert::json_io
