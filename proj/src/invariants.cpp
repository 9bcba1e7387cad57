#include "bargmann/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bargmann/parallel.hpp"

namespace bargmann {

namespace {
constexpr double kCrossCheckTol = 1e-10;
constexpr std::size_t kOverlapBlock = 1024;
}  // namespace

Complex bargmann_dense(const StateTuple& tuple) {
  Matrix product = tuple[0].density();
  for (std::size_t k = 1; k < tuple.size(); ++k) product = product * tuple[k].density();
  return product.trace();
}

Complex bargmann_overlaps(const StateTuple& tuple) {
  const std::size_t n = tuple.size();
  Complex acc(1.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const Vector& a = tuple[k].vector().amplitudes();
    const Vector& b = tuple[(k + 1) % n].vector().amplitudes();
    acc *= a.dot(b);
  }
  return acc;
}

InvariantValue bargmann(const StateTuple& tuple) {
  InvariantValue out;
  out.indices.resize(tuple.size());
  for (std::size_t k = 0; k < tuple.size(); ++k) out.indices[k] = k;
  if (!tuple.all_pure()) {
    out.value = bargmann_dense(tuple);
    return out;
  }
  out.value = bargmann_overlaps(tuple);
  const Complex dense = bargmann_dense(tuple);
  if (std::abs(dense - out.value) > kCrossCheckTol) {
    throw Error(Errc::numerical_mismatch, "overlap and dense routes disagree");
  }
  return out;
}

InvariantValue n_product(const StateTuple& tuple, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(Errc::invalid_index, "empty index word");
  std::vector<State> members;
  members.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= tuple.size()) throw Error(Errc::invalid_index, "index " + std::to_string(i) + " out of range");
    members.push_back(tuple[i]);
  }
  InvariantValue v = bargmann(StateTuple(std::move(members)));
  v.indices.assign(indices.begin(), indices.end());
  return v;
}

double inner_product_density(int d, Complex z) {
  if (d < 2) throw Error(Errc::invalid_dimension, "density defined for d >= 2");
  const double r2 = std::norm(z);
  if (r2 > 1.0) return 0.0;
  return (d - 1) / std::numbers::pi * std::pow(1.0 - r2, d - 2);
}

double marginal_density(int d, double t) {
  if (d < 2) throw Error(Errc::invalid_dimension, "density defined for d >= 2");
  if (std::abs(t) > 1.0) return 0.0;
  const double log_norm = std::lgamma(d) - 0.5 * std::log(std::numbers::pi) - std::lgamma(d - 0.5);
  return std::exp(log_norm) * std::pow(1.0 - t * t, d - 1.5);
}

int PolarHistogram::bin(Complex z) {
  const double r2 = std::min(std::norm(z), 1.0);
  const int ring = std::min(static_cast<int>(r2 * kRings), kRings - 1);
  double phi = std::arg(z);
  if (phi < 0) phi += 2 * std::numbers::pi;
  const int sector = std::min(static_cast<int>(phi / (2 * std::numbers::pi) * kSectors), kSectors - 1);
  return ring * kSectors + sector;
}

std::size_t PolarHistogram::total() const {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

double polar_bin_probability(int d, int bin) {
  if (d < 2) throw Error(Errc::invalid_dimension, "overlap law defined for d >= 2");
  if (bin < 0 || bin >= PolarHistogram::kRings * PolarHistogram::kSectors) {
    throw Error(Errc::invalid_index, "bin out of range");
  }
  const int ring = bin / PolarHistogram::kSectors;
  const double lo = static_cast<double>(ring) / PolarHistogram::kRings;
  const double hi = static_cast<double>(ring + 1) / PolarHistogram::kRings;
  const double mass = std::pow(1.0 - lo, d - 1) - std::pow(1.0 - hi, d - 1);
  return mass / PolarHistogram::kSectors;
}

double chi_square_statistic(const PolarHistogram& h, int d) {
  const auto total = static_cast<double>(h.total());
  double chi2 = 0.0;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const double expected = total * polar_bin_probability(d, static_cast<int>(k));
    const double diff = static_cast<double>(h.counts[k]) - expected;
    chi2 += diff * diff / expected;
  }
  return chi2;
}

Complex haar_overlap_draw(int d, Rng rng) {
  const UnitVector u = haar_unit_vector(d, rng);
  const UnitVector v = haar_unit_vector(d, rng);
  return u.amplitudes().dot(v.amplitudes());
}

OverlapStatistics sample_overlap_statistics(int d, std::size_t pairs, const Rng& rng) {
  if (d < 1) throw Error(Errc::invalid_dimension, "d must be >= 1");
  if (pairs < 1) throw Error(Errc::invalid_parameter, "need at least one pair");

  struct Partial {
    double sum_abs2 = 0.0;
    double max_abs = 0.0;
    PolarHistogram hist;
  };
  const std::size_t blocks = parallel::block_count(pairs, kOverlapBlock);
  std::vector<Partial> partial(blocks);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < blocks; ++b) {
    Partial& p = partial[b];
    const std::size_t end = std::min(pairs, (b + 1) * kOverlapBlock);
    for (std::size_t i = b * kOverlapBlock; i < end; ++i) {
      const Complex z = haar_overlap_draw(d, rng.split(i));
      p.sum_abs2 += std::norm(z);
      p.max_abs = std::max(p.max_abs, std::abs(z));
      ++p.hist.counts[static_cast<std::size_t>(PolarHistogram::bin(z))];
    }
  }

  OverlapStatistics out;
  out.pairs = pairs;
  double sum = 0.0;
  for (const Partial& p : partial) {
    sum += p.sum_abs2;
    out.max_abs = std::max(out.max_abs, p.max_abs);
    for (std::size_t k = 0; k < p.hist.counts.size(); ++k) out.histogram.counts[k] += p.hist.counts[k];
  }
  out.mean_abs2 = sum / static_cast<double>(pairs);
  return out;
}

}  // namespace bargmann
