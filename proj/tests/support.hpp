#pragma once

#include <cmath>
#include <vector>

#include "bargmann/linalg.hpp"

namespace bargmann::testing {

inline StateTuple random_pure_tuple(std::size_t n, int d, Rng& rng) {
  std::vector<UnitVector> vs;
  for (std::size_t k = 0; k < n; ++k) vs.push_back(haar_unit_vector(d, rng));
  return StateTuple::from_vectors(vs);
}

inline StateTuple random_mixed_tuple(std::size_t n, int d, Rng& rng) {
  std::vector<DensityMatrix> ms;
  for (std::size_t k = 0; k < n; ++k) {
    const int rank = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
    ms.push_back(random_density(d, rank, rng));
  }
  return StateTuple::from_densities(ms);
}

/// U applied to every member (vectors stay vectors).
inline StateTuple rotate(const StateTuple& t, const Matrix& u) {
  std::vector<State> out;
  for (const State& s : t) {
    if (s.is_pure()) {
      out.emplace_back(UnitVector::normalized(u * s.vector().amplitudes()));
    } else {
      Matrix m = u * s.density() * u.adjoint();
      m = (m + m.adjoint()) / 2.0;
      out.emplace_back(DensityMatrix(m));
    }
  }
  return StateTuple(std::move(out));
}

inline StateTuple with_phases(const StateTuple& t, const std::vector<double>& phases) {
  std::vector<UnitVector> vs;
  for (std::size_t k = 0; k < t.size(); ++k)
    vs.push_back(UnitVector::normalized(std::polar(1.0, phases[k]) * t[k].vector().amplitudes()));
  return StateTuple::from_vectors(vs);
}

inline UnitVector ket(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (Complex a : amps) v(i++) = a;
  return UnitVector::normalized(v);
}

inline Matrix bell_phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

}  // namespace bargmann::testing
