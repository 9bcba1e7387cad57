#pragma once

// Command-line front end. Tuples are read from JSON documents of the form
//
//   {"dim": 2, "states": [{"kind": "pure",  "data": [[re, im], ...]},
//                         {"kind": "mixed", "data": [[re, im], ...]}]}
//
// where pure data holds d amplitudes and mixed data holds the d² entries of
// the density matrix in row-major order.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bargmann/linalg.hpp"

namespace bargmann::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::uint64_t seed = 1;
  double norm_tol = tol::kNormalization;    // vector norm, trace and Hermiticity
  double psd_floor = tol::kDensityEigenFloor;
  double equality_tol = tol::kInvariantEquality;
  double boundary_tol = 1e-10;
  std::string format = "json";
  int threads = 0;
};

/// Input rejected by validate_document. `pointer` is a JSON pointer to the
/// offending node, `invariant` names the broken rule.
class ValidationError : public Error {
 public:
  ValidationError(std::string pointer, std::string invariant, double magnitude, const std::string& detail);

  const std::string& pointer() const noexcept { return pointer_; }
  const std::string& invariant() const noexcept { return invariant_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  std::string pointer_;
  std::string invariant_;
  double magnitude_;
};

StateTuple validate_document(const nlohmann::json& doc, const RunConfig& config = {});
StateTuple load_document(const std::string& path, const RunConfig& config = {});

/// Inverse of validate_document.
Json tuple_document(const StateTuple& tuple);

Json complex_json(Complex z);
Json matrix_json(const Matrix& m);

/// Exit status for a library error: 1 for numerical failures, 2 otherwise.
int exit_code(Errc code) noexcept;

/// Runs one subcommand; `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bargmann::cli
