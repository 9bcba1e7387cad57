#pragma once

// The attainable region B_n of n-th order invariants. Its boundary is the
// polar curve r_n(θ) = cos^n(π/n)·sec^n((θ−π)/n), θ ∈ [0, 2π], traced by
// the qubit tuples |ψ_{k+1}⟩ = sinγ|0⟩ + ω^k cosγ|1⟩.

#include <cstddef>
#include <vector>

#include "bargmann/linalg.hpp"

namespace bargmann {

struct RegionQuery {
  int n;
  Complex z;
};

struct BoundarySample {
  double theta;
  double radius;
  double t;
};

struct RegionBounds {
  double min_real;  // −cos^n(π/n)
  double tau;       // max |Im Δ| over B_n
};

/// arg z mapped to [0, 2π); angles within 1e-12 below 2π fold to 0.
double polar_angle(Complex z);

double boundary_radius(int n, double theta);
bool region_contains(const RegionQuery& query, double tol);
RegionBounds region_bounds(int n);

/// `points` samples θ_k = 2πk/points, k = 0..points−1.
std::vector<BoundarySample> boundary_curve(int n, std::size_t points);

/// (t + (1−t)ω_n)^n, cross-checked against the dense invariant of obg_tuple.
Complex obg_invariant(int n, double t);
StateTuple obg_tuple(int n, double t);

/// f_n(θ) = ½[1 − cot(π/n) tan((θ−π)/n)].
double theta_to_t(int n, double theta);

/// Regular n-gon with vertices at the n-th roots of unity.
bool ngon_contains(int n, Complex w, double tol);

struct EnvelopeResidual {
  double f;
  double df_dt;
};

/// Family F_n(r, θ, t) whose envelope in t is ∂B_n, for n ∈ {3, 4}.
/// For n = 4 the family is written in θ/2 and covers ∂B_4 once as θ runs
/// over [0, 4π]; pass the lifted angle (see envelope_angle).
EnvelopeResidual envelope_residual(int n, double theta, double r, double t);

/// Angle to feed to envelope_residual for the boundary point at polar
/// angle θ ∈ [0, 2π]: θ itself for n = 3, θ + 2π for n = 4 when θ > π.
double envelope_angle(int n, double theta);

struct EnvelopeContact {
  double t;
  EnvelopeResidual residual;
};

/// Locates t* ∈ [0, 1] where ∂F/∂t vanishes at the minimum of F along t
/// for the boundary point (θ, r_n(θ)).
EnvelopeContact locate_envelope_parameter(int n, double theta);

/// (8cos³θ)r³ + (12cos²θ − 27)r² + (6cosθ)r + 1.
double cubic_boundary_residual(double theta, double r);

struct RegionSweep {
  std::size_t samples = 0;
  std::size_t outside = 0;
  double min_real = 0.0;
  double max_abs_imag = 0.0;
};

/// Invariants of `samples` Haar-random pure n-tuples in C^d, checked against
/// region_contains. Sample i uses rng.split(i); OpenMP-parallel over blocks.
RegionSweep sweep_random_tuples(int n, int d, std::size_t samples, const Rng& rng, double tol);

/// One sweep draw: Δ of a Haar-random pure n-tuple in C^d.
Complex random_tuple_invariant(int n, int d, Rng rng);

}  // namespace bargmann
