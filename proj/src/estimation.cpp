#include "bargmann/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bargmann/invariants.hpp"
#include "bargmann/parallel.hpp"

namespace bargmann {

namespace {

std::size_t checked_register_dim(int d, int n, std::size_t cap) {
  if (d < 1) throw Error(Errc::invalid_dimension, "d must be >= 1");
  if (n < 1) throw Error(Errc::invalid_order, "n must be >= 1");
  std::size_t dim = 1;
  for (int k = 0; k < n; ++k) {
    dim *= static_cast<std::size_t>(d);
    if (2 * dim > cap) {
      throw Error(Errc::too_large, "circuit dimension exceeds the cap of " + std::to_string(cap));
    }
  }
  return dim;
}

double part_of(Complex z, Part part) { return part == Part::real ? z.real() : z.imag(); }

}  // namespace

double cycle_probability(const StateTuple& tuple, Part part) {
  const double p = 0.5 * (1.0 + part_of(bargmann(tuple).value, part));
  return std::clamp(p, 0.0, 1.0);
}

Eigen::SparseMatrix<Complex> cyclic_permutation_operator(int d, int n, std::size_t cap) {
  const std::size_t dim = checked_register_dim(d, n, 2 * cap);
  const auto ud = static_cast<std::size_t>(d);
  const std::size_t high = dim / ud;  // place value of i_1
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(dim);
  for (std::size_t in = 0; in < dim; ++in) {
    // |i_1 … i_n⟩ ↦ |i_n i_1 … i_{n−1}⟩: last digit moves to the front.
    const std::size_t last = in % ud;
    const std::size_t out = last * high + in / ud;
    entries.emplace_back(static_cast<int>(out), static_cast<int>(in), Complex(1.0, 0.0));
  }
  Eigen::SparseMatrix<Complex> p(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  p.setFromTriplets(entries.begin(), entries.end());
  return p;
}

Eigen::SparseMatrix<Complex> controlled_cycle_unitary(int d, int n, std::size_t cap) {
  const std::size_t dim = checked_register_dim(d, n, cap);
  const Eigen::SparseMatrix<Complex> p = cyclic_permutation_operator(d, n, cap);
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(2 * dim);
  for (std::size_t i = 0; i < dim; ++i) entries.emplace_back(static_cast<int>(i), static_cast<int>(i), Complex(1.0, 0.0));
  for (int col = 0; col < p.outerSize(); ++col)
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(p, col); it; ++it)
      entries.emplace_back(static_cast<int>(dim + it.row()), static_cast<int>(dim + it.col()), it.value());
  Eigen::SparseMatrix<Complex> u(static_cast<Eigen::Index>(2 * dim), static_cast<Eigen::Index>(2 * dim));
  u.setFromTriplets(entries.begin(), entries.end());
  return u;
}

double circuit_probability(const StateTuple& tuple, Part part, std::size_t cap) {
  if (!tuple.all_pure()) throw Error(Errc::not_pure_tuple, "statevector simulation needs a pure tuple");
  const int n = static_cast<int>(tuple.size());
  const auto u = controlled_cycle_unitary(tuple.dim(), n, cap);
  Vector reg = tuple[0].vector().amplitudes();
  for (int k = 1; k < n; ++k) {
    const Vector next = tuple[static_cast<std::size_t>(k)].vector().amplitudes();
    Vector joined(reg.size() * next.size());
    for (Eigen::Index a = 0; a < reg.size(); ++a) joined.segment(a * next.size(), next.size()) = reg(a) * next;
    reg = std::move(joined);
  }
  const Eigen::Index half = reg.size();
  const double h = 1.0 / std::sqrt(2.0);

  // Hadamard on |0⟩ ⊗ Ψ, controlled cycle, optional diag(1, i), Hadamard.
  Vector state(2 * half);
  state.head(half) = h * reg;
  state.tail(half) = h * reg;
  state = u * state;
  if (part == Part::imag) state.tail(half) *= Complex(0.0, 1.0);
  const Vector zero = h * (state.head(half) + state.tail(half));
  return std::clamp(zero.squaredNorm(), 0.0, 1.0);
}

std::size_t hoeffding_shots(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(Errc::invalid_parameter, "epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::invalid_parameter, "delta must lie in (0, 1)");
  const double n = std::ceil(2.0 / (epsilon * epsilon) * std::log(2.0 / delta));
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

ShotPlan make_shot_plan(double epsilon, double delta) { return {epsilon, delta, hoeffding_shots(epsilon, delta)}; }

std::size_t count_plus_outcomes(double p, std::size_t count, Rng rng) {
  std::size_t plus = 0;
  for (std::size_t s = 0; s < count; ++s) plus += rng.uniform() < p ? 1 : 0;
  return plus;
}

double sample_plus_minus_mean(double p, std::size_t shots, const Rng& rng) {
  if (shots < 1) throw Error(Errc::invalid_parameter, "need at least one shot");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_parameter, "probability outside [0, 1]");
  const std::size_t blocks = parallel::block_count(shots, kShotBlock);
  std::vector<std::size_t> plus(blocks, 0);

#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t count = std::min(shots, (b + 1) * kShotBlock) - b * kShotBlock;
    plus[b] = count_plus_outcomes(p, count, rng.split(b));
  }

  std::size_t total = 0;
  for (std::size_t c : plus) total += c;
  return (2.0 * static_cast<double>(total) - static_cast<double>(shots)) / static_cast<double>(shots);
}

double simulate_cycle_test(const StateTuple& tuple, Part part, std::size_t shots, const Rng& rng) {
  return sample_plus_minus_mean(cycle_probability(tuple, part), shots, rng);
}

EstimateResult estimate_bargmann(const StateTuple& tuple, double epsilon, double delta, const Rng& rng) {
  const std::size_t shots = hoeffding_shots(epsilon, delta);
  const double re = simulate_cycle_test(tuple, Part::real, shots, rng.split(0));
  const double im = simulate_cycle_test(tuple, Part::imag, shots, rng.split(1));
  return {Complex(re, im), re, im, shots, rng.seed()};
}

CoverageReport calibrate_coverage(const StateTuple& tuple, double epsilon, double delta, std::size_t trials,
                                  const Rng& rng) {
  if (trials < 1) throw Error(Errc::invalid_parameter, "need at least one trial");
  const Complex exact = bargmann(tuple).value;
  const double p_real = cycle_probability(tuple, Part::real);
  const double p_imag = cycle_probability(tuple, Part::imag);
  const std::size_t shots = hoeffding_shots(epsilon, delta);
  std::vector<unsigned char> hit(2 * trials, 0);

  // Same streams as estimate_bargmann(tuple, ε, δ, rng.split(i)), drawn
  // serially inside each trial.
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < trials; ++i) {
    const Rng trial = rng.split(i);
    for (int part = 0; part < 2; ++part) {
      const Rng stream = trial.split(static_cast<std::uint64_t>(part));
      const double p = part == 0 ? p_real : p_imag;
      std::size_t plus = 0;
      for (std::size_t b = 0; b < parallel::block_count(shots, kShotBlock); ++b) {
        const std::size_t count = std::min(shots, (b + 1) * kShotBlock) - b * kShotBlock;
        plus += count_plus_outcomes(p, count, stream.split(b));
      }
      const double mean = (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) / static_cast<double>(shots);
      const double target = part == 0 ? exact.real() : exact.imag();
      hit[2 * i + static_cast<std::size_t>(part)] = std::abs(mean - target) <= epsilon ? 1 : 0;
    }
  }

  CoverageReport out;
  out.trials = trials;
  out.shots_per_part = shots;
  for (std::size_t i = 0; i < trials; ++i) {
    out.real_within += hit[2 * i];
    out.imag_within += hit[2 * i + 1];
    out.both_within += hit[2 * i] & hit[2 * i + 1];
  }
  return out;
}

}  // namespace bargmann
