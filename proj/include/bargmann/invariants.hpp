#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bargmann/linalg.hpp"

namespace bargmann {

/// Δ_{i_1…i_n} = Tr(ρ_{i_1}⋯ρ_{i_n}) together with the index word used.
struct InvariantValue {
  std::vector<std::size_t> indices;  // 0-based
  Complex value;

  std::size_t order() const noexcept { return indices.size(); }
};

/// Δ_n(Ψ) = Tr(ρ_1⋯ρ_n). For pure tuples the value is the product of
/// consecutive overlaps and the dense trace is computed as a cross-check
/// (throws numerical_mismatch if they disagree by more than 1e-10).
InvariantValue bargmann(const StateTuple& tuple);

/// Dense route: trace of the left-to-right product of density matrices.
Complex bargmann_dense(const StateTuple& tuple);

/// Overlap route for pure tuples: ∏_k ⟨ψ_k|ψ_{k⊕1}⟩.
Complex bargmann_overlaps(const StateTuple& tuple);

/// Invariant of the re-indexed tuple (repetitions allowed).
InvariantValue n_product(const StateTuple& tuple, std::span<const std::size_t> indices);

/// Density of z = ⟨u|v⟩ for independent Haar vectors in C^d (closed disk support).
double inner_product_density(int d, Complex z);

/// Marginal density of Re z (equivalently Im z).
double marginal_density(int d, double t);

/// 10×10 equal-area polar grid on the unit disk: ring edges at √(k/10),
/// sectors of width 2π/10.
struct PolarHistogram {
  static constexpr int kRings = 10;
  static constexpr int kSectors = 10;
  std::array<std::size_t, kRings * kSectors> counts{};

  static int bin(Complex z);
  std::size_t total() const;
  bool operator==(const PolarHistogram&) const = default;
};

/// Probability that z = ⟨u|v⟩ for Haar u, v ∈ C^d lands in `bin`. Ring k
/// (r² ∈ [k/10, (k+1)/10)) carries (1 − k/10)^{d−1} − (1 − (k+1)/10)^{d−1},
/// split evenly over its sectors.
double polar_bin_probability(int d, int bin);

/// Pearson χ² of a histogram against polar_bin_probability(d, ·).
double chi_square_statistic(const PolarHistogram& h, int d);

struct OverlapStatistics {
  std::size_t pairs = 0;
  double mean_abs2 = 0.0;
  double max_abs = 0.0;
  PolarHistogram histogram;
};

/// Draws `pairs` independent Haar pairs (pair i uses rng.split(i)) and
/// summarizes z = ⟨u|v⟩. OpenMP-parallel over fixed blocks.
OverlapStatistics sample_overlap_statistics(int d, std::size_t pairs, const Rng& rng);

/// One Haar pair draw shared by the parallel kernel and the serial reference.
Complex haar_overlap_draw(int d, Rng rng);

}  // namespace bargmann
