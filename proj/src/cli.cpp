#include "hilbert/cli.hpp"

#include "hilbert/error.hpp"
#include "hilbert/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace hilbert::cli {

namespace {

using json_io::Json;
using json_io::SchemaError;

struct Settings {
  std::string input = "-";
  std::string output = "-";
  std::uint64_t seed = 0x5eedULL;
  std::optional<double> tolerance;
  std::optional<long long> n;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json error_json(std::string_view kind, const std::string& detail) {
  return {{"error", {{"kind", kind}, {"detail", detail}}}};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Eigen::Index index_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string(key) + " must be an integer");
  return static_cast<Eigen::Index>(v.get<long long>());
}

double number_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw SchemaError(std::string(key) + " must be a number");
  return v.get<double>();
}

Vector vector_field(const Json& j, const char* key) { return json_io::vector_from(field(j, key), key); }

Json chord_json(const Chord& c) {
  return {{"x_prime", json_io::to_json(c.x_prime)},
          {"y_prime", json_io::to_json(c.y_prime)},
          {"t", c.t},
          {"t_y", c.t_y}};
}

// The linear map behind an oracle description; always checked bi-positive.
Matrix oracle_matrix(const OrderUnitSpace& space, const Json& oracle) {
  Matrix t;
  if (oracle.contains("matrix")) {
    t = json_io::matrix_from(oracle.at("matrix"), "matrix");
  } else {
    const Json& family = field(oracle, "family");
    const Eigen::Index n = space.dim();
    if (family == "rotation") {
      const Json& plane = field(oracle, "plane");
      if (!plane.is_array() || plane.size() != 2 || !plane[0].is_number_integer() || !plane[1].is_number_integer()) {
        throw SchemaError("plane must be a pair of coordinate indices");
      }
      t = spatial_rotation(n, plane[0].get<Eigen::Index>(), plane[1].get<Eigen::Index>(), number_field(oracle, "angle"));
    } else if (family == "boost") {
      t = lorentz_boost(n, index_field(oracle, "axis"), number_field(oracle, "rapidity"));
    } else {
      throw SchemaError("unknown oracle family");
    }
  }
  check_bipositive(t, space, space);
  return t;
}

Json report_json(const VerificationReport& r) {
  return {{"max_residual", r.max_residual}, {"is_isometry_residual", r.is_isometry_residual}};
}

Json cmd_dist(const Json& in, const Settings&) {
  const auto space = json_io::space_from(field(in, "space"));
  return {{"d_H", hilbert_dist(space, vector_field(in, "x"), vector_field(in, "y"))}};
}

Json cmd_tdist(const Json& in, const Settings&) {
  const auto space = json_io::space_from(field(in, "space"));
  return {{"d_T", thompson_dist(space, vector_field(in, "x"), vector_field(in, "y"))}};
}

Json cmd_chord(const Json& in, const Settings&) {
  const auto space = json_io::space_from(field(in, "space"));
  const auto x = ProjectivePoint::from(space, vector_field(in, "x"));
  const auto y = ProjectivePoint::from(space, vector_field(in, "y"));
  return chord_json(chord_endpoints(space, x, y));
}

Json cmd_lift(const Json& in, const Settings&) {
  const LiftedCone lifted = lift(json_io::body_from(in));
  return {{"space", json_io::to_json(lifted.space)}, {"to_cone", json_io::to_json(lifted.to_cone)}};
}

Json cmd_body_dist(const Json& in, const Settings&) {
  const ConvexBody body = json_io::body_from(field(in, "body"));
  return {{"delta_H", body_dist(body, vector_field(in, "p"), vector_field(in, "q"))}};
}

Json cmd_norm(const Json& in, const Settings&) {
  if (in.contains("body")) {
    const ConvexBody body = json_io::body_from(in.at("body"));
    return {{"minkowski", minkowski_norm(body, vector_field(in, "y"))}};
  }
  const auto space = json_io::space_from(field(in, "space"));
  return {{"norm_u", order_unit_norm(space, vector_field(in, "x"))}};
}

Json cmd_reconstruct(const Json& in, const Settings& s) {
  const auto space = json_io::space_from(field(in, "space"));
  const Matrix l = oracle_matrix(space, field(in, "oracle"));
  const IsometryOracle f = induced_oracle(l, space);
  ReconstructionOptions options;
  options.seed = s.seed;
  if (s.tolerance) options.isometry_tol = *s.tolerance;
  Matrix t = reconstruct_linear(space, space, f, options);
  t /= t.norm();
  const auto report = verify_projective_linearity(f, t, space, space, 64, s.seed);
  return {{"T", json_io::to_json(t)},
          {"report", report_json(report)},
          {"oracle_distance", projective_matrix_distance(t, l)}};
}

Json cmd_verify(const Json& in, const Settings& s) {
  const auto space = json_io::space_from(field(in, "space"));
  const Matrix l = oracle_matrix(space, field(in, "oracle"));
  const Matrix t = json_io::matrix_from(field(in, "T"), "T");
  const int samples = in.contains("samples") ? static_cast<int>(index_field(in, "samples")) : 64;
  const auto report = verify_projective_linearity(induced_oracle(l, space), t, space, space, samples, s.seed);
  const double tol = s.tolerance.value_or(1e-9);
  Json out = report_json(report);
  out["samples"] = samples;
  out["within_tolerance"] = report.max_residual <= tol && report.is_isometry_residual <= tol;
  return out;
}

Json cmd_sdist(const Json& in, const Settings&) {
  const FiniteK k = json_io::finite_k_from(field(in, "k"));
  const auto p = DeltaPoint::normalized(k, vector_field(in, "p"));
  const auto q = DeltaPoint::normalized(k, vector_field(in, "q"));
  return {{"d_H", simplex_dist(k, p, q)}};
}

Json cmd_iso_apply(const Json& in, const Settings&) {
  const FiniteK k = json_io::finite_k_from(field(in, "k"));
  const auto h = json_io::isometry_from(k, field(in, "isometry"));
  const auto p = DeltaPoint::normalized(k, vector_field(in, "p"));
  return {{"point", json_io::to_json(isometry_apply(k, h, p).f())}};
}

Json cmd_iso_compose(const Json& in, const Settings&) {
  const FiniteK k = json_io::finite_k_from(field(in, "k"));
  const auto h2 = json_io::isometry_from(k, field(in, "h2"));
  const auto h1 = json_io::isometry_from(k, field(in, "h1"));
  return {{"isometry", json_io::to_json(isometry_compose(k, h2, h1))}};
}

Json cmd_iso_invert(const Json& in, const Settings&) {
  const FiniteK k = json_io::finite_k_from(field(in, "k"));
  return {{"isometry", json_io::to_json(isometry_inverse(k, json_io::isometry_from(k, field(in, "isometry"))))}};
}

Json cmd_recover(const Json& in, const Settings& s) {
  const FiniteK k = json_io::finite_k_from(field(in, "k"));
  const Json& oracle = field(in, "oracle");
  SimplexOracle h;
  if (oracle.contains("isometry")) {
    const auto iso = json_io::isometry_from(k, oracle.at("isometry"));
    h = [k, iso](const DeltaPoint& p) { return isometry_apply(k, iso, p); };
  } else {
    const Matrix m = json_io::matrix_from(field(oracle, "log_matrix"), "log_matrix");
    const Vector offset = vector_field(oracle, "offset");
    if (m.rows() != k.size() || m.cols() != k.size() || offset.size() != k.size()) {
      fail(ErrorKind::DimensionMismatch, "log oracle does not act on this K");
    }
    h = [k, m, offset](const DeltaPoint& p) {
      return exp_map(k, QuotientFunction(offset + m * log_map(p).rep()));
    };
  }
  RecoveryOptions options;
  options.seed = s.seed;
  if (s.tolerance) options.isometry_tol = *s.tolerance;
  const auto report = recover_simplex_isometry(k, h, options);
  return {{"isometry", json_io::to_json(report.isometry)},
          {"report",
           {{"isometry_residual", report.isometry_residual},
            {"affinity_residual", report.affinity_residual},
            {"reproduce_residual", report.reproduce_residual}}}};
}

Json cmd_midpoint(const Json& in, const Settings&) {
  if (in.contains("k")) {
    const FiniteK k = json_io::finite_k_from(in.at("k"));
    const auto p = DeltaPoint::normalized(k, vector_field(in, "p"));
    const auto q = DeltaPoint::normalized(k, vector_field(in, "q"));
    const auto chord = chord_midpoint(k, p, q);
    Json out = {{"chord_midpoint", json_io::to_json(chord.f())}, {"found", false}};
    if (const auto m = find_nonaffine_midpoint(k, p, q)) {
      out["found"] = true;
      out["midpoint"] = json_io::to_json(m->f());
      out["offset"] = simplex_dist(k, *m, chord);
    }
    return out;
  }
  const auto space = json_io::space_from(field(in, "space"));
  const auto x = ProjectivePoint::from(space, vector_field(in, "x"));
  const auto y = ProjectivePoint::from(space, vector_field(in, "y"));
  const auto chord = chord_midpoint(space, x, y);
  Json out = {{"chord_midpoint", json_io::to_json(chord.rep())}, {"found", false}};
  if (const auto m = find_nonaffine_midpoint(space, x, y)) {
    out["found"] = true;
    out["midpoint"] = json_io::to_json(m->rep());
    out["offset"] = hilbert_dist(space, m->rep(), chord.rep());
  }
  return out;
}

Json cmd_extreme_points(const Json& in, const Settings& s) {
  const Eigen::Index n = s.n ? static_cast<Eigen::Index>(*s.n) : index_field(in, "n");
  const auto points = extreme_points(n);
  Json list = Json::array();
  for (const auto& m : points) list.push_back(json_io::to_json(m.weights));
  return {{"n", n}, {"count", points.size()}, {"points", std::move(list)}};
}

using Handler = std::function<Json(const Json&, const Settings&)>;

const std::map<std::string, std::pair<Handler, std::string>>& commands() {
  static const std::map<std::string, std::pair<Handler, std::string>> table = {
      {"dist", {cmd_dist, "Hilbert distance of two interior cone points"}},
      {"tdist", {cmd_tdist, "Thompson distance of two interior cone points"}},
      {"chord", {cmd_chord, "chord endpoints through two points of the cross section"}},
      {"lift", {cmd_lift, "order unit space of the cone over a convex body"}},
      {"body-dist", {cmd_body_dist, "Hilbert distance inside a convex body"}},
      {"norm", {cmd_norm, "order unit norm, or Minkowski norm of a body"}},
      {"reconstruct", {cmd_reconstruct, "recover the linear map behind a Hilbert isometry"}},
      {"verify", {cmd_verify, "compare an isometry with a candidate projective linear map"}},
      {"sdist", {cmd_sdist, "Hilbert distance on the simplex over a finite K"}},
      {"iso-apply", {cmd_iso_apply, "apply a simplex isometry (eps, theta, g)"}},
      {"iso-compose", {cmd_iso_compose, "compose two simplex isometries, h2 after h1"}},
      {"iso-invert", {cmd_iso_invert, "invert a simplex isometry"}},
      {"recover", {cmd_recover, "recover (eps, theta, g) from a simplex isometry"}},
      {"midpoint", {cmd_midpoint, "search for a metric midpoint off the straight chord"}},
      {"extreme-points", {cmd_extreme_points, "extreme points of the dual unit ball"}},
  };
  return table;
}

Json read_input(const Settings& s, std::istream& in) {
  std::string text;
  if (s.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(s.input, std::ios::binary);
    if (!file) throw IoError("cannot open input file " + s.input);
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  return Json::parse(text);
}

void write_output(const Settings& s, const Json& result, std::ostream& out) {
  const std::string text = result.dump(2) + "\n";
  if (s.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(s.output, std::ios::binary);
  if (!file || !(file << text)) throw IoError("cannot write output file " + s.output);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Settings settings;
  CLI::App app("Hilbert and Thompson metric geometry on cones and simplices", "hilbert");
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--input", settings.input, "input JSON file (default: stdin)");
  app.add_option("--output", settings.output, "output JSON file (default: stdout)");
  app.add_option("--seed", settings.seed, "seed for sampled checks");
  app.add_option("--tolerance", settings.tolerance, "isometry tolerance override");
  app.add_option("--n", settings.n, "size of K for extreme-points");
  for (const auto& [name, entry] : commands()) app.add_subcommand(name, entry.second);

  std::vector<std::string> argv_storage{"hilbert"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitInputError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const Handler& handler = commands().at(name).first;
  try {
    const bool needs_input = !(name == "extreme-points" && settings.n);
    const Json input = needs_input ? read_input(settings, in) : Json::object();
    write_output(settings, handler(input, settings), out);
    return kExitOk;
  } catch (const Error& e) {
    out << error_json(kind_name(e.kind()), e.detail()).dump(2) << "\n";
    return kExitDomainError;
  } catch (const Json::parse_error& e) {
    out << error_json("ParseError", e.what()).dump(2) << "\n";
    return kExitInputError;
  } catch (const SchemaError& e) {
    out << error_json("SchemaError", e.what()).dump(2) << "\n";
    return kExitInputError;
  } catch (const Json::exception& e) {
    out << error_json("SchemaError", e.what()).dump(2) << "\n";
    return kExitInputError;
  } catch (const IoError& e) {
    out << error_json("IoError", e.what()).dump(2) << "\n";
    return kExitInputError;
  }
}

}  // namespace hilbert::cli
