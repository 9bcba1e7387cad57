#pragma once

// Single-threaded versions of the OpenMP kernels. They consume the same
// random streams in the same order and must return identical results; tests
// and the benchmark compare against them.

#include <cstddef>

#include "bargmann/equivalence.hpp"
#include "bargmann/estimation.hpp"
#include "bargmann/geometry.hpp"
#include "bargmann/invariants.hpp"
#include "bargmann/twoqubit.hpp"

namespace bargmann::reference {

OverlapStatistics sample_overlap_statistics(int d, std::size_t pairs, const Rng& rng);
RegionSweep sweep_random_tuples(int n, int d, std::size_t samples, const Rng& rng, double tol);
double sample_plus_minus_mean(double p, std::size_t shots, const Rng& rng);
CoverageReport calibrate_coverage(const StateTuple& tuple, double epsilon, double delta, std::size_t trials,
                                  const Rng& rng);
CriterionSweep criterion_agreement_sweep(std::size_t samples, const Rng& rng, double band = 1e-9);
MixedOrbitResult mixed_orbit_equal(const StateTuple& psi, const StateTuple& phi, const MixedOrbitOptions& options = {});

}  // namespace bargmann::reference
