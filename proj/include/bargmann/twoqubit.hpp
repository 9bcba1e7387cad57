#pragma once

// Qubit tuples in the Bloch picture and two-qubit local-unitary invariants.
//
// For ρ_i = (1 + r_i·σ)/2 the ordered product is ρ_1⋯ρ_n = 2^{−n}(p0 + p·σ)
// with p0 = 1, p = r_1 at n = 1 and
//   p0 ← p0 + p·r,   p ← p0 r + p + i p × r
// for each further factor, so Δ_n = 2^{1−n} p0.

#include <array>
#include <cstddef>
#include <vector>

#include "bargmann/linalg.hpp"

namespace bargmann {

using BlochVector = Eigen::Vector3d;

struct ProductRep {
  Complex p0;
  Eigen::Vector3cd p;

  /// 2^{−n}(p0·1 + p·σ) for an n-fold product.
  Matrix matrix(std::size_t n) const;
};

/// r_k = Tr(ρ σ_k). Throws not_a_qubit unless d = 2.
BlochVector bloch_decompose(const Matrix& rho);
BlochVector bloch_decompose(const State& s);
Matrix bloch_density(const BlochVector& r);

ProductRep product_rep(const std::vector<BlochVector>& rs);
ProductRep product_rep(const StateTuple& tuple);
/// 2^{1−n} p0; checked against the dense invariant to 1e-10.
Complex bloch_invariant(const StateTuple& tuple);

/// Coefficients of z² − 2pz + q = 0, whose roots are Δ_n and its conjugate.
struct ImaginarityQuadratic {
  double p;  // Re Δ_n
  double q;  // |Δ_n|²
};

struct ImaginarityReport {
  ImaginarityQuadratic from_recurrence;    // real/imag parts of p0 directly
  ImaginarityQuadratic from_second_order;  // only Δ_ij = Tr(ρ_i ρ_j) used
  Complex invariant;                       // dense Δ_n
  double residual;                         // |Δ² − 2pΔ + q| with the second-order coefficients
  double route_gap;                        // max coefficient difference between routes
};

ImaginarityReport imaginarity_quadratic(const StateTuple& tuple);

/// Quadratic from the matrix of second-order invariants Δ_ij (Δ_ii = Tr ρ_i²).
/// Bloch vectors are realized from the Gram matrix 2Δ_ij − 1 (unique up to
/// O(3), which leaves Re p0 and (Im p0)² unchanged) and fed to the recurrence.
ImaginarityQuadratic quadratic_from_second_order(const Eigen::MatrixXd& delta);

/// Closed forms in Δ_ij: a0 = Re p0 and b0² = (Im p0)².
struct ClosedForm {
  double a0;
  double b0_squared;
};
ClosedForm closed_form_order3(const Eigen::MatrixXd& delta);
ClosedForm closed_form_order4(const Eigen::MatrixXd& delta);

/// Δ_ij = Re Tr(ρ_i ρ_j) for all pairs.
Eigen::MatrixXd second_order_invariants(const StateTuple& tuple);

/// Reflects every Bloch vector through the xz-plane (r_y ↦ −r_y), which
/// conjugates Δ_n and keeps every Δ_ij.
StateTuple reflect_bloch(const StateTuple& tuple);

/// Traces of the 18 words in X0 = ρ, X1 = ρ_A ⊗ 1, X2 = 1 ⊗ ρ_B, stored
/// B_1..B_18 at indices 0..17.
struct LuInvariants {
  std::array<Complex, 18> b;

  double operator()(int k) const { return b[static_cast<std::size_t>(k - 1)].real(); }  // 1-based, real part
  double max_imag_real_words() const;  // over B_1..B_12
};

/// Throws not_two_qubit unless ρ is 4×4; numerical_mismatch if one of
/// B_1..B_12 has an imaginary part above 1e-10.
LuInvariants lu_invariants(const Matrix& rho);

/// The 18 words as sequences over {0, 1, 2}.
const std::array<std::vector<int>, 18>& lu_words();

/// 6(B1 + B2 − B1B2 − B4 − B10) + 12(B5 − B3) + 3B4² + 4B6.
double entanglement_lhs(const LuInvariants& b);

enum class EntanglementVerdict { entangled, separable, boundary_indeterminate };
const char* to_string(EntanglementVerdict v) noexcept;

struct EntanglementDecision {
  EntanglementVerdict verdict;
  double lhs;
};

inline constexpr double kEntanglementBoundaryTol = 1e-10;

EntanglementDecision entangled_by_invariants(const Matrix& rho, double tol = kEntanglementBoundaryTol);

struct PptDecision {
  double det_gamma;
  bool entangled;
};

/// det of ρ^Γ (transpose on B) as the product of its eigenvalues.
PptDecision ppt_oracle(const Matrix& rho, double tol = kEntanglementBoundaryTol);

bool lu_similar(const Matrix& rho, const Matrix& sigma, double tol = 1e-8);

/// p|Ψ⁻⟩⟨Ψ⁻| + (1 − p) I/4.
Matrix werner_state(double p);

struct CriterionSweep {
  std::size_t samples = 0;
  std::size_t in_band = 0;    // |det ρ^Γ| below the band, not compared
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t entangled = 0;  // per the PPT oracle, outside the band
  bool operator==(const CriterionSweep&) const = default;
};

/// Random two-qubit states of rank 1 + (i mod 4), state i from rng.split(i);
/// compares the invariant criterion with the PPT oracle. OpenMP-parallel.
CriterionSweep criterion_agreement_sweep(std::size_t samples, const Rng& rng, double band = 1e-9);

/// State i of the sweep.
Matrix sweep_state(std::size_t i, const Rng& rng);

/// Outcome of comparing both deciders on one state: -1 in band, 0 disagree, 1 agree.
int criterion_agreement(const Matrix& rho, double band);

}  // namespace bargmann
