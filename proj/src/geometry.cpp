#include "bargmann/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bargmann/invariants.hpp"
#include "bargmann/parallel.hpp"

namespace bargmann {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBranchTol = 1e-12;
constexpr std::size_t kSweepBlock = 512;
constexpr int kScanCells = 1000;
constexpr int kBisectionSteps = 80;

void require_order(int n) {
  if (n < 3) throw Error(Errc::invalid_order, "order must be >= 3, got " + std::to_string(n));
}

double reduce_angle(double theta) {
  if (theta >= 0.0 && theta <= kTwoPi) return theta;
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

Complex omega(int n, int k = 1) { return std::polar(1.0, kTwoPi * k / n); }

}  // namespace

double polar_angle(Complex z) {
  double phi = std::arg(z);
  if (phi < 0.0) phi += kTwoPi;
  if (phi > kTwoPi - kBranchTol) phi = 0.0;
  return phi;
}

double boundary_radius(int n, double theta) {
  require_order(n);
  theta = reduce_angle(theta);
  const double c = std::cos(kPi / n) / std::cos((theta - kPi) / n);
  return std::pow(c, n);
}

bool region_contains(const RegionQuery& query, double tol) {
  require_order(query.n);
  const double modulus = std::abs(query.z);
  if (modulus == 0.0) return true;
  return modulus <= boundary_radius(query.n, polar_angle(query.z)) + tol;
}

RegionBounds region_bounds(int n) {
  require_order(n);
  const double cn = std::pow(std::cos(kPi / n), n);
  const double tau = cn / std::pow(std::cos(kPi / (2.0 * (n - 1))), n - 1);
  const double stationary = (n - 2.0) / (n - 1.0) * kPi / 2.0;
  const double at_stationary = boundary_radius(n, stationary) * std::sin(stationary);
  if (std::abs(at_stationary - tau) > 1e-10) {
    throw Error(Errc::numerical_mismatch, "tau disagrees with the boundary curve at its stationary point");
  }
  return {-cn, tau};
}

std::vector<BoundarySample> boundary_curve(int n, std::size_t points) {
  require_order(n);
  if (points < 1) throw Error(Errc::invalid_parameter, "need at least one boundary segment");
  std::vector<BoundarySample> out;
  out.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    // written as π·(2k/points) so that θ = π is hit exactly for even `points`
    const double theta = kPi * (2.0 * static_cast<double>(k) / static_cast<double>(points));
    out.push_back({theta, boundary_radius(n, theta), theta_to_t(n, theta)});
  }
  return out;
}

StateTuple obg_tuple(int n, double t) {
  require_order(n);
  if (!(t >= 0.0 && t <= 1.0)) throw Error(Errc::invalid_parameter, "t must lie in [0, 1]");
  const double s = std::sqrt(t);
  const double c = std::sqrt(1.0 - t);
  std::vector<UnitVector> vs;
  vs.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Vector v(2);
    v << s, omega(n, k) * c;
    vs.push_back(UnitVector::normalized(v));
  }
  return StateTuple::from_vectors(vs);
}

Complex obg_invariant(int n, double t) {
  const StateTuple tuple = obg_tuple(n, t);
  const Complex closed = std::pow(t + (1.0 - t) * omega(n), n);
  const Complex dense = bargmann_dense(tuple);
  if (std::abs(closed - dense) > 1e-10) {
    throw Error(Errc::numerical_mismatch, "closed form and explicit tuple disagree");
  }
  return closed;
}

double theta_to_t(int n, double theta) {
  require_order(n);
  theta = reduce_angle(theta);
  const double t = 0.5 * (1.0 - std::tan((theta - kPi) / n) / std::tan(kPi / n));
  return std::clamp(t, 0.0, 1.0);
}

bool ngon_contains(int n, Complex w, double tol) {
  require_order(n);
  const Complex u = std::polar(1.0, kPi / n);
  const double bound = std::cos(kPi / n) + tol;
  for (int k = 0; k < n; ++k) {
    if ((std::conj(omega(n, k) * u) * w).real() > bound) return false;
  }
  return true;
}

EnvelopeResidual envelope_residual(int n, double theta, double r, double t) {
  if (n == 3) {
    const double c = std::cos(theta);
    return {r * (1.0 - t * c) - t * (1.0 - t * t) / 2.0, (3.0 * t * t - 2.0 * r * c - 1.0) / 2.0};
  }
  if (n == 4) {
    const double c = std::cos(theta / 2.0);
    const double u = 1.0 - t * c;
    const double v = 1.0 - t * t;
    return {r * u * u - v * v / 4.0, -2.0 * r * c * u + t * v};
  }
  throw Error(Errc::unsupported_order, "envelope family exists for n = 3 and n = 4 only");
}

double envelope_angle(int n, double theta) {
  theta = reduce_angle(theta);
  if (n == 4 && theta > kPi) return theta + kTwoPi;
  return theta;
}

EnvelopeContact locate_envelope_parameter(int n, double theta) {
  if (n != 3 && n != 4) throw Error(Errc::unsupported_order, "envelope family exists for n = 3 and n = 4 only");
  const double r = boundary_radius(n, theta);
  const double phi = envelope_angle(n, theta);
  auto eval = [&](double t) { return envelope_residual(n, phi, r, t); };

  std::vector<double> grid(kScanCells + 1);
  std::vector<EnvelopeResidual> values(kScanCells + 1);
  int best = 0;
  for (int i = 0; i <= kScanCells; ++i) {
    grid[i] = static_cast<double>(i) / kScanCells;
    values[i] = eval(grid[i]);
    if (values[i].f < values[best].f) best = i;
  }
  if ((best == 0 || best == kScanCells) && std::abs(values[best].df_dt) <= 1e-12) {
    return {grid[best], values[best]};
  }

  // Sign change of ∂F/∂t closest to the grid minimum.
  int cell = -1;
  for (int offset = 0; offset <= kScanCells && cell < 0; ++offset) {
    for (int i : {best - offset, best + offset - 1}) {
      if (i < 0 || i >= kScanCells) continue;
      if ((values[i].df_dt <= 0.0) != (values[i + 1].df_dt <= 0.0) || values[i].df_dt == 0.0) {
        cell = i;
        break;
      }
    }
  }
  if (cell < 0) return {grid[best], values[best]};

  double lo = grid[cell];
  double hi = grid[cell + 1];
  const bool lo_negative = values[cell].df_dt <= 0.0;
  for (int step = 0; step < kBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if ((eval(mid).df_dt <= 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  return {t, eval(t)};
}

double cubic_boundary_residual(double theta, double r) {
  const double c = std::cos(theta);
  return 8.0 * c * c * c * r * r * r + (12.0 * c * c - 27.0) * r * r + 6.0 * c * r + 1.0;
}

Complex random_tuple_invariant(int n, int d, Rng rng) {
  std::vector<Vector> vs;
  vs.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) vs.push_back(haar_unit_vector(d, rng).amplitudes());
  Complex delta(1.0, 0.0);
  for (int k = 0; k < n; ++k) delta *= vs[k].dot(vs[(k + 1) % n]);
  return delta;
}

RegionSweep sweep_random_tuples(int n, int d, std::size_t samples, const Rng& rng, double tol) {
  require_order(n);
  if (d < 1) throw Error(Errc::invalid_dimension, "d must be >= 1");
  const std::size_t blocks = parallel::block_count(samples, kSweepBlock);
  std::vector<RegionSweep> partial(blocks);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < blocks; ++b) {
    RegionSweep& p = partial[b];
    p.min_real = INFINITY;
    const std::size_t end = std::min(samples, (b + 1) * kSweepBlock);
    for (std::size_t i = b * kSweepBlock; i < end; ++i) {
      const Complex z = random_tuple_invariant(n, d, rng.split(i));
      ++p.samples;
      if (!region_contains({n, z}, tol)) ++p.outside;
      p.min_real = std::min(p.min_real, z.real());
      p.max_abs_imag = std::max(p.max_abs_imag, std::abs(z.imag()));
    }
  }

  RegionSweep out;
  out.min_real = INFINITY;
  for (const RegionSweep& p : partial) {
    out.samples += p.samples;
    out.outside += p.outside;
    out.min_real = std::min(out.min_real, p.min_real);
    out.max_abs_imag = std::max(out.max_abs_imag, p.max_abs_imag);
  }
  return out;
}

}  // namespace bargmann
