#include "bargmann/reference.hpp"

#include <algorithm>
#include <cmath>

namespace bargmann::reference {

OverlapStatistics sample_overlap_statistics(int d, std::size_t pairs, const Rng& rng) {
  if (d < 1) throw Error(Errc::invalid_dimension, "d must be >= 1");
  if (pairs < 1) throw Error(Errc::invalid_parameter, "need at least one pair");
  OverlapStatistics out;
  out.pairs = pairs;
  // Sums are taken per 1024-pair block so rounding matches the parallel kernel.
  constexpr std::size_t kBlock = 1024;
  double sum = 0.0;
  for (std::size_t start = 0; start < pairs; start += kBlock) {
    double block_sum = 0.0;
    for (std::size_t i = start; i < std::min(pairs, start + kBlock); ++i) {
      const Complex z = haar_overlap_draw(d, rng.split(i));
      block_sum += std::norm(z);
      out.max_abs = std::max(out.max_abs, std::abs(z));
      ++out.histogram.counts[static_cast<std::size_t>(PolarHistogram::bin(z))];
    }
    sum += block_sum;
  }
  out.mean_abs2 = sum / static_cast<double>(pairs);
  return out;
}

RegionSweep sweep_random_tuples(int n, int d, std::size_t samples, const Rng& rng, double tol) {
  if (n < 3) throw Error(Errc::invalid_order, "order must be >= 3");
  if (d < 1) throw Error(Errc::invalid_dimension, "d must be >= 1");
  RegionSweep out;
  out.min_real = INFINITY;
  for (std::size_t i = 0; i < samples; ++i) {
    const Complex z = random_tuple_invariant(n, d, rng.split(i));
    ++out.samples;
    if (!region_contains({n, z}, tol)) ++out.outside;
    out.min_real = std::min(out.min_real, z.real());
    out.max_abs_imag = std::max(out.max_abs_imag, std::abs(z.imag()));
  }
  return out;
}

double sample_plus_minus_mean(double p, std::size_t shots, const Rng& rng) {
  if (shots < 1) throw Error(Errc::invalid_parameter, "need at least one shot");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_parameter, "probability outside [0, 1]");
  std::size_t plus = 0;
  for (std::size_t b = 0; b * kShotBlock < shots; ++b) {
    Rng stream = rng.split(b);
    for (std::size_t s = b * kShotBlock; s < std::min(shots, (b + 1) * kShotBlock); ++s)
      plus += stream.uniform() < p ? 1 : 0;
  }
  return (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) / static_cast<double>(shots);
}

CoverageReport calibrate_coverage(const StateTuple& tuple, double epsilon, double delta, std::size_t trials,
                                  const Rng& rng) {
  if (trials < 1) throw Error(Errc::invalid_parameter, "need at least one trial");
  const Complex exact = bargmann(tuple).value;
  const double p_real = cycle_probability(tuple, Part::real);
  const double p_imag = cycle_probability(tuple, Part::imag);
  CoverageReport out;
  out.trials = trials;
  out.shots_per_part = hoeffding_shots(epsilon, delta);
  for (std::size_t i = 0; i < trials; ++i) {
    const Rng trial = rng.split(i);
    const double re = reference::sample_plus_minus_mean(p_real, out.shots_per_part, trial.split(0));
    const double im = reference::sample_plus_minus_mean(p_imag, out.shots_per_part, trial.split(1));
    const bool re_ok = std::abs(re - exact.real()) <= epsilon;
    const bool im_ok = std::abs(im - exact.imag()) <= epsilon;
    out.real_within += re_ok;
    out.imag_within += im_ok;
    out.both_within += re_ok && im_ok;
  }
  return out;
}

CriterionSweep criterion_agreement_sweep(std::size_t samples, const Rng& rng, double band) {
  CriterionSweep out;
  for (std::size_t i = 0; i < samples; ++i) {
    const Matrix rho = sweep_state(i, rng);
    ++out.samples;
    const double det = ppt_oracle(rho, 0.0).det_gamma;
    if (std::abs(det) < band) {
      ++out.in_band;
      continue;
    }
    const bool entangled_lhs = entanglement_lhs(lu_invariants(rho)) < 1.0;
    if (entangled_lhs == (det < 0.0)) {
      ++out.agree;
    } else {
      ++out.disagree;
    }
    if (det < 0.0) ++out.entangled;
  }
  return out;
}

MixedOrbitResult mixed_orbit_equal(const StateTuple& psi, const StateTuple& phi, const MixedOrbitOptions& options) {
  if (psi.size() != phi.size() || psi.dim() != phi.dim()) throw Error(Errc::invalid_pair, "tuples do not match");
  const auto d = static_cast<std::size_t>(psi.dim());
  MixedOrbitResult out;
  out.degree = options.max_degree == 0 ? d * d : options.max_degree;
  double words_total = 0.0;
  for (std::size_t k = 1; k <= out.degree; ++k) words_total += std::pow(static_cast<double>(psi.size()), k);
  if (words_total > static_cast<double>(options.word_cap)) {
    throw Error(Errc::budget_exceeded, "word enumeration exceeds the cap");
  }
  std::vector<Matrix> rp;
  std::vector<Matrix> rf;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    rp.push_back(psi[i].density());
    rf.push_back(phi[i].density());
  }
  for (const auto& w : necklace_words(psi.size(), out.degree)) {
    const double dev = std::abs(word_invariant(rp, w) - word_invariant(rf, w));
    ++out.words_compared;
    out.max_deviation = std::max(out.max_deviation, dev);
    if (out.first_mismatch.empty() && dev > options.tol) out.first_mismatch = w;
  }
  out.equal = out.first_mismatch.empty();
  return out;
}

}  // namespace bargmann::reference
