#pragma once

// Circulant matrices C(z) = Σ_k z_k P^k with P the cyclic shift
// (P|j⟩ = |j−1 mod n⟩, i.e. P has ones on the superdiagonal and in the
// bottom-left corner), so C(z)[i][j] = z_{(j−i) mod n}.

#include <cstddef>
#include <string_view>
#include <vector>

#include "bargmann/linalg.hpp"

namespace bargmann {

struct CirculantSpec {
  std::vector<Complex> coefficients;

  std::size_t order() const noexcept { return coefficients.size(); }
};

/// The cyclic shift P of order n.
Matrix cyclic_shift(std::size_t n);

/// Columns are the Fourier vectors f_k with entries ω_n^{jk}/√n.
Matrix fourier_basis(std::size_t n);

Matrix circulant_matrix(const CirculantSpec& spec);

/// λ_j = Σ_k z_k ω_n^{jk}, by direct O(n²) summation, j = 0..n−1.
std::vector<Complex> circulant_eigenvalues(const CirculantSpec& spec);

enum class GramCheckFailure { none, empty, leading_not_one, not_hermitian, negative_eigenvalue };
std::string_view to_string(GramCheckFailure f) noexcept;

struct GramCheck {
  bool ok = false;
  GramCheckFailure reason = GramCheckFailure::none;
  double magnitude = 0.0;  // size of the violation that decided the answer

  explicit operator bool() const noexcept { return ok; }
};

/// True iff C(z) is a Gram matrix: z_0 = 1, conj(z_k) = z_{n−k} and every λ_j ≥ −tol.
GramCheck is_circulant_gram(const CirculantSpec& spec, double tol);

/// Φ(X) = (1/n) Σ_k P^k X P^{−k}.
Matrix circulant_channel_by_shifts(const Matrix& x);
/// Φ(X) = Σ_k |f_k⟩⟨f_k| X |f_k⟩⟨f_k|.
Matrix circulant_channel_by_fourier(const Matrix& x);
/// Evaluates both forms and returns the shift-average; throws
/// numerical_mismatch if they differ by more than 1e-12 (relative to ‖X‖_max).
Matrix circulant_channel_apply(const Matrix& x);

/// (1/n) Σ_k |f_k⟩⟨f_k| ⊗ conj(|f_k⟩⟨f_k|).
Matrix circulant_channel_choi(std::size_t n);

/// Reads z back from row 0 of a circulant matrix (z_k = C[0][k]).
CirculantSpec circulant_spec_of(const Matrix& c);

struct Circulantization {
  GramMatrix gram;             // circulant, unit diagonal
  std::vector<double> phases;  // gauge phases α_k with α_0 = 0
  Complex edge_overlap;        // common consecutive overlap ((1/n) Σ r_k) e^{iθ/n}
  StateTuple realized;         // vectors in C^rank realizing `gram`
  std::size_t rank;
};

/// Gauge-fixes a pure tuple so all consecutive overlaps share the phase
/// θ/n (θ = arg Δ), then projects its Gram matrix with the circulant channel.
Circulantization circulantize(const StateTuple& tuple);

}  // namespace bargmann
