#include "bargmann/circulant.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bargmann/invariants.hpp"

namespace bargmann {

namespace {

Complex root_of_unity(std::size_t n, std::size_t power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % n) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

constexpr double kOverlapFloor = 1e-12;
constexpr double kChannelAgreement = 1e-12;

}  // namespace

Matrix cyclic_shift(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  Matrix p = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) p(i, (i + 1) % m) = 1.0;
  return p;
}

Matrix fourier_basis(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  Matrix f(m, m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k)
      f(j, k) = scale * root_of_unity(n, static_cast<std::size_t>(j * k));
  return f;
}

Matrix circulant_matrix(const CirculantSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.order());
  if (n < 1) throw Error(Errc::invalid_order, "empty coefficient vector");
  Matrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = spec.coefficients[static_cast<std::size_t>((j - i + n) % n)];
  return c;
}

std::vector<Complex> circulant_eigenvalues(const CirculantSpec& spec) {
  const std::size_t n = spec.order();
  std::vector<Complex> lambda(n, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) lambda[j] += spec.coefficients[k] * root_of_unity(n, j * k);
  return lambda;
}

std::string_view to_string(GramCheckFailure f) noexcept {
  switch (f) {
    case GramCheckFailure::none: return "none";
    case GramCheckFailure::empty: return "empty";
    case GramCheckFailure::leading_not_one: return "leading-coefficient-not-one";
    case GramCheckFailure::not_hermitian: return "not-hermitian";
    case GramCheckFailure::negative_eigenvalue: return "negative-eigenvalue";
  }
  return "unknown";
}

GramCheck is_circulant_gram(const CirculantSpec& spec, double tol) {
  const std::size_t n = spec.order();
  if (n == 0) return {false, GramCheckFailure::empty, 0.0};
  const auto& z = spec.coefficients;
  if (const double dev = std::abs(z[0] - Complex(1.0, 0.0)); dev > tol) {
    return {false, GramCheckFailure::leading_not_one, dev};
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (const double dev = std::abs(std::conj(z[k]) - z[n - k]); dev > tol) {
      return {false, GramCheckFailure::not_hermitian, dev};
    }
  }
  double lowest = INFINITY;
  for (const Complex& l : circulant_eigenvalues(spec)) lowest = std::min(lowest, l.real());
  if (lowest < -tol) return {false, GramCheckFailure::negative_eigenvalue, -lowest};
  return {true, GramCheckFailure::none, 0.0};
}

Matrix circulant_channel_by_shifts(const Matrix& x) {
  if (x.rows() == 0 || x.rows() != x.cols()) throw Error(Errc::invalid_input, "channel input must be square");
  const auto n = x.rows();
  // (P^k X P^{−k})[i][j] = X[i+k][j+k]
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) out(i, j) += x((i + k) % n, (j + k) % n);
  return out / static_cast<double>(n);
}

Matrix circulant_channel_by_fourier(const Matrix& x) {
  if (x.rows() == 0 || x.rows() != x.cols()) throw Error(Errc::invalid_input, "channel input must be square");
  const auto n = static_cast<std::size_t>(x.rows());
  const Matrix f = fourier_basis(n);
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (Eigen::Index k = 0; k < x.rows(); ++k) {
    const Vector fk = f.col(k);
    const Complex weight = fk.dot(x * fk);
    out += weight * (fk * fk.adjoint());
  }
  return out;
}

Matrix circulant_channel_apply(const Matrix& x) {
  Matrix by_shifts = circulant_channel_by_shifts(x);
  const Matrix by_fourier = circulant_channel_by_fourier(x);
  const double scale = std::max(1.0, max_abs(x));
  if (max_abs_diff(by_shifts, by_fourier) > kChannelAgreement * scale) {
    throw Error(Errc::numerical_mismatch, "shift and Fourier forms of the channel disagree");
  }
  return by_shifts;
}

Matrix circulant_channel_choi(std::size_t n) {
  const Matrix f = fourier_basis(n);
  const auto m = static_cast<Eigen::Index>(n);
  Matrix j = Matrix::Zero(m * m, m * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Matrix proj = f.col(k) * f.col(k).adjoint();
    j += kron(proj, proj.conjugate());
  }
  return j / static_cast<double>(n);
}

CirculantSpec circulant_spec_of(const Matrix& c) {
  CirculantSpec spec;
  spec.coefficients.resize(static_cast<std::size_t>(c.cols()));
  for (Eigen::Index k = 0; k < c.cols(); ++k) spec.coefficients[static_cast<std::size_t>(k)] = c(0, k);
  return spec;
}

Circulantization circulantize(const StateTuple& tuple) {
  if (!tuple.all_pure()) throw Error(Errc::not_pure_tuple, "circulantize needs a pure tuple");
  const std::size_t n = tuple.size();
  const GramMatrix g = gram_matrix(tuple);

  std::vector<double> edge_phase(n);
  double modulus_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex overlap = g(k, (k + 1) % n);
    if (std::abs(overlap) < kOverlapFloor) {
      throw Error(Errc::degenerate_cycle, "consecutive overlap " + std::to_string(k) + " vanishes");
    }
    edge_phase[k] = std::arg(overlap);
    modulus_sum += std::abs(overlap);
  }
  const Complex delta = bargmann_overlaps(tuple);
  if (std::abs(delta) < std::numeric_limits<double>::min()) throw Error(Errc::zero_invariant, "invariant is zero");
  double theta = std::arg(delta);
  if (theta < 0) theta += 2.0 * std::numbers::pi;

  // α_0 = 0, α_{k+1} = α_k + θ/n − θ_k makes every consecutive phase θ/n.
  std::vector<double> alpha(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) alpha[k + 1] = alpha[k] + theta / static_cast<double>(n) - edge_phase[k];

  const auto m = static_cast<Eigen::Index>(n);
  Matrix gauged(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      gauged(i, j) = std::polar(1.0, alpha[static_cast<std::size_t>(j)] - alpha[static_cast<std::size_t>(i)]) * g(
          static_cast<std::size_t>(i), static_cast<std::size_t>(j));

  Matrix projected = circulant_channel_apply(gauged);
  projected = (projected + projected.adjoint()) / 2.0;
  GramMatrix circ(projected);
  StateTuple realized = factor_gram(circ, 1e-12);
  const auto rank = static_cast<std::size_t>(realized.dim());
  const Complex edge = std::polar(modulus_sum / static_cast<double>(n), theta / static_cast<double>(n));
  return Circulantization{std::move(circ), std::move(alpha), edge, std::move(realized), rank};
}

}  // namespace bargmann
