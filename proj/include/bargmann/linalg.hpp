#pragma once

// Dense complex substrate: validated state types, Haar sampling, Gram
// assembly/factorization and bipartite partial operations.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bargmann/error.hpp"
#include "bargmann/rng.hpp"

namespace bargmann {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kNormalization = 1e-12;
inline constexpr double kDensityEigenFloor = 1e-10;
inline constexpr double kPsdFloor = 1e-9;
inline constexpr double kInvariantEquality = 1e-8;
}  // namespace tol

/// Largest absolute entry, ‖A‖_max.
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Eigenvalues of a Hermitian matrix in ascending order.
RealVector hermitian_eigenvalues(const Matrix& a);

/// Describes the first broken invariant of a candidate state.
struct Violation {
  Errc code;
  std::string invariant;  // "normalization", "hermiticity", "trace", "positivity", "dimension"
  double magnitude;       // size of the deviation that tripped the check
};

std::optional<Violation> check_unit_vector(const Vector& v, double tol = tol::kNormalization);
std::optional<Violation> check_density(const Matrix& m, double hermitian_tol = tol::kHermitian,
                                       double trace_tol = tol::kNormalization,
                                       double eigen_floor = tol::kDensityEigenFloor);

class UnitVector {
 public:
  /// Throws Error{not_normalized} unless Σ|a_k|² = 1 within `tol`.
  explicit UnitVector(Vector amplitudes, double tol = tol::kNormalization);

  /// Rescales a nonzero vector to unit norm.
  static UnitVector normalized(const Vector& v);

  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const noexcept { return amps_; }
  Complex operator[](int i) const { return amps_(i); }
  Matrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  Vector amps_;
};

class DensityMatrix {
 public:
  /// Throws Error on broken Hermiticity, trace or positivity.
  explicit DensityMatrix(Matrix m);
  DensityMatrix(Matrix m, double hermitian_tol, double trace_tol, double eigen_floor);

  static DensityMatrix from_pure(const UnitVector& v) { return DensityMatrix(v.projector()); }
  static DensityMatrix maximally_mixed(int d);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  double purity() const { return (m_ * m_).trace().real(); }

 private:
  Matrix m_;
};

/// One tuple member. Pure members stay vectors; the projector is formed on demand.
class State {
 public:
  State(UnitVector v) : data_(std::move(v)) {}     // NOLINT(google-explicit-constructor)
  State(DensityMatrix m) : data_(std::move(m)) {}  // NOLINT(google-explicit-constructor)

  bool is_pure() const noexcept { return std::holds_alternative<UnitVector>(data_); }
  int dim() const noexcept;
  const UnitVector& vector() const;  // throws not_pure_tuple for mixed members
  Matrix density() const;

 private:
  std::variant<UnitVector, DensityMatrix> data_;
};

class StateTuple {
 public:
  /// Throws invalid_tuple on an empty list or mismatched dimensions.
  explicit StateTuple(std::vector<State> states);
  static StateTuple from_vectors(const std::vector<UnitVector>& vs);
  static StateTuple from_densities(const std::vector<DensityMatrix>& ms);

  std::size_t size() const noexcept { return states_.size(); }
  int dim() const noexcept { return dim_; }
  bool all_pure() const noexcept;
  const State& operator[](std::size_t i) const { return states_.at(i); }
  auto begin() const noexcept { return states_.begin(); }
  auto end() const noexcept { return states_.end(); }

  /// Columns are the member vectors (pure tuples only).
  Matrix as_columns() const;

 private:
  std::vector<State> states_;
  int dim_;
};

/// Hermitian matrix of pairwise inner products.
class GramMatrix {
 public:
  /// Requires a square matrix, Hermitian within `hermitian_tol`.
  explicit GramMatrix(Matrix g, double hermitian_tol = 1e-10);

  std::size_t order() const noexcept { return static_cast<std::size_t>(g_.rows()); }
  const Matrix& matrix() const noexcept { return g_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return g_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix g_;
};

enum class Subsystem { A, B };

UnitVector haar_unit_vector(int d, Rng& rng);
DensityMatrix random_density(int d, int rank, Rng& rng);
/// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed.
Matrix haar_unitary(int d, Rng& rng);

GramMatrix gram_matrix(const StateTuple& tuple);

/// Realizes a PSD Gram matrix by vectors in C^r, r the numerical rank.
StateTuple factor_gram(const GramMatrix& g, double tol);

/// Traces out `traced` from a state on C^dA ⊗ C^dB.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced, int dA, int dB);
Matrix partial_trace(const Matrix& rho, Subsystem traced, int dA, int dB);

/// Transposes the `which` tensor factor.
Matrix partial_transpose(const Matrix& rho, Subsystem which, int dA, int dB);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix pauli(int k);  // k = 0 (identity), 1 (X), 2 (Y), 3 (Z)

}  // namespace bargmann
