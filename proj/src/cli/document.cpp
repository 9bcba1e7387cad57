#include <fstream>
#include <sstream>

#include "bargmann/cli.hpp"

namespace bargmann::cli {

namespace {

std::string path_of(std::size_t state) { return "/states/" + std::to_string(state); }

Complex parse_complex(const nlohmann::json& node, const std::string& pointer) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
    throw ValidationError(pointer, "format", 0.0, "expected a [re, im] pair of numbers");
  }
  return {node[0].get<double>(), node[1].get<double>()};
}

}  // namespace

ValidationError::ValidationError(std::string pointer, std::string invariant, double magnitude,
                                 const std::string& detail)
    : Error(Errc::validation_error, pointer + ": " + invariant + ": " + detail),
      pointer_(std::move(pointer)),
      invariant_(std::move(invariant)),
      magnitude_(magnitude) {}

StateTuple validate_document(const nlohmann::json& doc, const RunConfig& config) {
  if (!doc.is_object()) throw ValidationError("", "format", 0.0, "document must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw ValidationError("/dim", "dimension", 0.0, "dim must be a positive integer");
  }
  const int d = doc["dim"].get<int>();
  if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty()) {
    throw ValidationError("/states", "format", 0.0, "states must be a non-empty array");
  }

  std::vector<State> states;
  const auto& list = doc["states"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& s = list[i];
    const std::string base = path_of(i);
    if (!s.is_object() || !s.contains("kind") || !s["kind"].is_string()) {
      throw ValidationError(base + "/kind", "format", 0.0, "kind must be \"pure\" or \"mixed\"");
    }
    const std::string kind = s["kind"].get<std::string>();
    if (kind != "pure" && kind != "mixed") {
      throw ValidationError(base + "/kind", "format", 0.0, "unknown kind \"" + kind + "\"");
    }
    if (!s.contains("data") || !s["data"].is_array()) {
      throw ValidationError(base + "/data", "format", 0.0, "data must be an array of [re, im] pairs");
    }
    const auto& data = s["data"];
    const std::size_t expected = kind == "pure" ? static_cast<std::size_t>(d) : static_cast<std::size_t>(d) * d;
    if (data.size() != expected) {
      throw ValidationError(base + "/data", "dimension", static_cast<double>(data.size()),
                            "expected " + std::to_string(expected) + " entries, got " + std::to_string(data.size()));
    }
    std::vector<Complex> values(expected);
    for (std::size_t k = 0; k < expected; ++k) values[k] = parse_complex(data[k], base + "/data/" + std::to_string(k));

    if (kind == "pure") {
      Vector v(d);
      for (int k = 0; k < d; ++k) v(k) = values[static_cast<std::size_t>(k)];
      if (auto bad = check_unit_vector(v, config.norm_tol)) {
        std::ostringstream os;
        os << "deviation " << bad->magnitude;
        throw ValidationError(base, bad->invariant, bad->magnitude, os.str());
      }
      states.emplace_back(UnitVector(std::move(v), config.norm_tol));
    } else {
      Matrix m(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = values[static_cast<std::size_t>(r * d + c)];
      if (auto bad = check_density(m, config.norm_tol, config.norm_tol, config.psd_floor)) {
        std::ostringstream os;
        os << "deviation " << bad->magnitude;
        throw ValidationError(base, bad->invariant, bad->magnitude, os.str());
      }
      states.emplace_back(DensityMatrix(std::move(m), config.norm_tol, config.norm_tol, config.psd_floor));
    }
  }
  return StateTuple(std::move(states));
}

StateTuple load_document(const std::string& path, const RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ValidationError("", "io", 0.0, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("", "syntax", 0.0, e.what());
  }
  return validate_document(doc, config);
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json tuple_document(const StateTuple& tuple) {
  Json states = Json::array();
  for (const State& s : tuple) {
    Json data = Json::array();
    if (s.is_pure()) {
      for (Eigen::Index k = 0; k < s.vector().amplitudes().size(); ++k) data.push_back(complex_json(s.vector()[static_cast<int>(k)]));
      states.push_back(Json{{"kind", "pure"}, {"data", std::move(data)}});
    } else {
      const Matrix m = s.density();
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_json(m(r, c)));
      states.push_back(Json{{"kind", "mixed"}, {"data", std::move(data)}});
    }
  }
  return Json{{"dim", tuple.dim()}, {"states", std::move(states)}};
}

int exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::numerical_mismatch:
    case Errc::inconsistent_oracle:
    case Errc::not_realizable:
      return 1;
    default:
      return 2;
  }
}

}  // namespace bargmann::cli
