#pragma once

// Cycle-test estimation of Δ: a control qubit in |+⟩ drives a cyclic
// permutation of the n registers; after a final Hadamard, outcome 0 has
// probability (1 + Re Δ)/2, or (1 + Im Δ)/2 when diag(1, i) is applied to
// the control first. Shots are drawn from that probability.

#include <cstddef>
#include <cstdint>

#include <Eigen/SparseCore>

#include "bargmann/linalg.hpp"

namespace bargmann {

enum class Part { real, imag };

inline constexpr std::size_t kCircuitDimensionCap = std::size_t{1} << 13;

struct ShotPlan {
  double epsilon;
  double delta;
  std::size_t shots;
};

/// Probability of outcome +1 (control reads 0).
double cycle_probability(const StateTuple& tuple, Part part);

/// P_{(12…n)} on (C^d)^{⊗n}: |i_1 i_2 … i_n⟩ ↦ |i_n i_1 … i_{n−1}⟩, with
/// i_1 the most significant digit.
Eigen::SparseMatrix<Complex> cyclic_permutation_operator(int d, int n, std::size_t cap = kCircuitDimensionCap);

/// |0⟩⟨0| ⊗ 1 + |1⟩⟨1| ⊗ P_{(12…n)}, control qubit most significant.
/// Throws too_large when 2·d^n exceeds `cap`.
Eigen::SparseMatrix<Complex> controlled_cycle_unitary(int d, int n, std::size_t cap = kCircuitDimensionCap);

/// P(control = 0) from a full statevector run of the circuit on a pure tuple.
double circuit_probability(const StateTuple& tuple, Part part, std::size_t cap = kCircuitDimensionCap);

/// ⌈(2/ε²) ln(2/δ)⌉, at least 1.
std::size_t hoeffding_shots(double epsilon, double delta);
ShotPlan make_shot_plan(double epsilon, double delta);

/// Mean of `shots` ±1 outcomes with P(+1) = p. Shots are cut into blocks of
/// kShotBlock; block b draws from rng.split(b). OpenMP-parallel over blocks.
double sample_plus_minus_mean(double p, std::size_t shots, const Rng& rng);
inline constexpr std::size_t kShotBlock = 4096;

/// Number of +1 outcomes among `count` draws from `rng`.
std::size_t count_plus_outcomes(double p, std::size_t count, Rng rng);

double simulate_cycle_test(const StateTuple& tuple, Part part, std::size_t shots, const Rng& rng);

struct EstimateResult {
  Complex estimate;
  double mean_real;
  double mean_imag;
  std::size_t shots_per_part;
  std::uint64_t seed;
};

/// Both parts with hoeffding_shots(ε, δ) shots each; the real part uses
/// rng.split(0) and the imaginary part rng.split(1).
EstimateResult estimate_bargmann(const StateTuple& tuple, double epsilon, double delta, const Rng& rng);

struct CoverageReport {
  std::size_t trials = 0;
  std::size_t shots_per_part = 0;
  std::size_t real_within = 0;
  std::size_t imag_within = 0;
  std::size_t both_within = 0;

  double real_fraction() const { return static_cast<double>(real_within) / static_cast<double>(trials); }
  double imag_fraction() const { return static_cast<double>(imag_within) / static_cast<double>(trials); }
  double both_fraction() const { return static_cast<double>(both_within) / static_cast<double>(trials); }
  bool operator==(const CoverageReport&) const = default;
};

/// Repeats estimate_bargmann `trials` times (trial i uses rng.split(i)) and
/// counts per-part errors within ε of the exact invariant. OpenMP-parallel
/// over trials.
CoverageReport calibrate_coverage(const StateTuple& tuple, double epsilon, double delta, std::size_t trials,
                                  const Rng& rng);

}  // namespace bargmann
