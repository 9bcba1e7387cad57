#include "bargmann/twoqubit.hpp"

#include <algorithm>
#include <cmath>

#include "bargmann/invariants.hpp"
#include "bargmann/parallel.hpp"

namespace bargmann {

namespace {

constexpr double kRecurrenceTol = 1e-10;
constexpr double kLuImagTol = 1e-10;
constexpr std::size_t kSweepBlock = 256;

void require_qubit(int d) {
  if (d != 2) throw Error(Errc::not_a_qubit, "expected a qubit, got dimension " + std::to_string(d));
}

void require_two_qubit(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw Error(Errc::not_two_qubit, "expected a 4x4 two-qubit state, got " + std::to_string(rho.rows()) + "x" +
                                         std::to_string(rho.cols()));
  }
}

std::vector<BlochVector> bloch_vectors(const StateTuple& tuple) {
  require_qubit(tuple.dim());
  std::vector<BlochVector> rs;
  rs.reserve(tuple.size());
  for (const State& s : tuple) rs.push_back(bloch_decompose(s));
  return rs;
}

// Bilinear a × b; Eigen's cross conjugates complex results.
Eigen::Vector3cd cross(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

ImaginarityQuadratic quadratic_of(const ProductRep& rep, std::size_t n) {
  const double scale = std::pow(2.0, 1.0 - static_cast<double>(n));
  return {scale * rep.p0.real(), scale * scale * std::norm(rep.p0)};
}

}  // namespace

Matrix ProductRep::matrix(std::size_t n) const {
  Matrix m = p0 * pauli(0);
  for (int k = 0; k < 3; ++k) m += p(k) * pauli(k + 1);
  return m * std::pow(2.0, -static_cast<double>(n));
}

BlochVector bloch_decompose(const Matrix& rho) {
  require_qubit(static_cast<int>(rho.rows()));
  BlochVector r;
  for (int k = 0; k < 3; ++k) r(k) = (rho * pauli(k + 1)).trace().real();
  return r;
}

BlochVector bloch_decompose(const State& s) { return bloch_decompose(s.density()); }

Matrix bloch_density(const BlochVector& r) {
  Matrix m = pauli(0);
  for (int k = 0; k < 3; ++k) m += r(k) * pauli(k + 1);
  return m / 2.0;
}

ProductRep product_rep(const std::vector<BlochVector>& rs) {
  if (rs.empty()) throw Error(Errc::invalid_tuple, "empty tuple");
  ProductRep rep{Complex(1.0, 0.0), rs[0].cast<Complex>()};
  const Complex i(0.0, 1.0);
  for (std::size_t k = 1; k < rs.size(); ++k) {
    const Eigen::Vector3cd r = rs[k].cast<Complex>();
    const Complex p0 = rep.p0 + rep.p.cwiseProduct(r).sum();
    rep.p = rep.p0 * r + rep.p + i * cross(rep.p, r);
    rep.p0 = p0;
  }
  return rep;
}

ProductRep product_rep(const StateTuple& tuple) { return product_rep(bloch_vectors(tuple)); }

Complex bloch_invariant(const StateTuple& tuple) {
  const ProductRep rep = product_rep(tuple);
  const Complex delta = std::pow(2.0, 1.0 - static_cast<double>(tuple.size())) * rep.p0;
  if (std::abs(delta - bargmann_dense(tuple)) > kRecurrenceTol) {
    throw Error(Errc::numerical_mismatch, "Bloch recurrence disagrees with the dense invariant");
  }
  return delta;
}

Eigen::MatrixXd second_order_invariants(const StateTuple& tuple) {
  const auto n = static_cast<Eigen::Index>(tuple.size());
  std::vector<Matrix> rho;
  for (const State& s : tuple) rho.push_back(s.density());
  Eigen::MatrixXd delta(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      delta(i, j) = delta(j, i) =
          (rho[static_cast<std::size_t>(i)] * rho[static_cast<std::size_t>(j)]).trace().real();
  return delta;
}

ImaginarityQuadratic quadratic_from_second_order(const Eigen::MatrixXd& delta) {
  const Eigen::Index n = delta.rows();
  if (n < 1 || delta.cols() != n) throw Error(Errc::invalid_input, "second-order table must be square");
  const Eigen::MatrixXd m = 2.0 * delta - Eigen::MatrixXd::Ones(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::Index rank = std::min<Eigen::Index>(3, n);
  std::vector<BlochVector> rs(static_cast<std::size_t>(n), BlochVector::Zero());
  for (Eigen::Index k = 0; k < rank; ++k) {
    const Eigen::Index col = n - 1 - k;  // eigenvalues ascend
    const double scale = std::sqrt(std::max(0.0, eig.eigenvalues()(col)));
    for (Eigen::Index i = 0; i < n; ++i) rs[static_cast<std::size_t>(i)](k) = scale * eig.eigenvectors()(i, col);
  }
  return quadratic_of(product_rep(rs), static_cast<std::size_t>(n));
}

ImaginarityReport imaginarity_quadratic(const StateTuple& tuple) {
  ImaginarityReport out;
  out.invariant = bargmann_dense(tuple);
  out.from_recurrence = quadratic_of(product_rep(tuple), tuple.size());
  out.from_second_order = quadratic_from_second_order(second_order_invariants(tuple));
  const Complex z = out.invariant;
  out.residual = std::abs(z * z - 2.0 * out.from_second_order.p * z + out.from_second_order.q);
  out.route_gap = std::max(std::abs(out.from_recurrence.p - out.from_second_order.p),
                           std::abs(out.from_recurrence.q - out.from_second_order.q));
  return out;
}

ClosedForm closed_form_order3(const Eigen::MatrixXd& d) {
  if (d.rows() != 3 || d.cols() != 3) throw Error(Errc::invalid_order, "closed form needs a 3x3 table");
  const double a0 = 2.0 * (d(0, 1) + d(0, 2) + d(1, 2) - 1.0);
  const Eigen::Matrix3d m = 2.0 * d - Eigen::Matrix3d::Ones();
  return {a0, m.determinant()};
}

ClosedForm closed_form_order4(const Eigen::MatrixXd& d) {
  if (d.rows() != 4 || d.cols() != 4) throw Error(Errc::invalid_order, "closed form needs a 4x4 table");
  const double a0 = 4.0 * (d(0, 1) * d(2, 3) + d(0, 3) * d(1, 2) - d(0, 2) * d(1, 3) + d(0, 2) + d(1, 3) - 1.0);
  // Half the Gram matrix of r_1 + r_2, r_2 + r_3, r_3 + r_4.
  Eigen::Matrix3d m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = d(a, b) + d(a, b + 1) + d(a + 1, b) + d(a + 1, b + 1) - 2.0;
  return {a0, 8.0 * m.determinant()};
}

StateTuple reflect_bloch(const StateTuple& tuple) {
  require_qubit(tuple.dim());
  std::vector<State> out;
  out.reserve(tuple.size());
  for (const State& s : tuple) {
    if (s.is_pure()) {
      out.emplace_back(UnitVector(s.vector().amplitudes().conjugate()));
    } else {
      out.emplace_back(DensityMatrix(s.density().conjugate()));
    }
  }
  return StateTuple(std::move(out));
}

const std::array<std::vector<int>, 18>& lu_words() {
  static const std::array<std::vector<int>, 18> words = {{
      {0, 1},
      {0, 2},
      {0, 1, 2},
      {0, 0},
      {0, 0, 1, 2},
      {0, 0, 0},
      {0, 0, 0, 1},
      {0, 0, 0, 2},
      {0, 0, 0, 1, 2},
      {0, 0, 0, 0},
      {0, 0, 1, 0, 0, 1},
      {0, 0, 2, 0, 0, 2},
      {0, 1, 2, 0, 0, 1},
      {0, 1, 2, 0, 0, 2},
      {0, 1, 2, 0, 0, 0, 1},
      {0, 1, 2, 0, 0, 0, 2},
      {0, 1, 0, 0, 1, 0, 0, 0, 1},
      {0, 2, 0, 0, 2, 0, 0, 0, 2},
  }};
  return words;
}

double LuInvariants::max_imag_real_words() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < 12; ++k) worst = std::max(worst, std::abs(b[k].imag()));
  return worst;
}

LuInvariants lu_invariants(const Matrix& rho) {
  require_two_qubit(rho);
  const Matrix id2 = Matrix::Identity(2, 2);
  const std::array<Matrix, 3> x = {rho, kron(partial_trace(rho, Subsystem::B, 2, 2), id2),
                                   kron(id2, partial_trace(rho, Subsystem::A, 2, 2))};
  LuInvariants out;
  const auto& words = lu_words();
  for (std::size_t k = 0; k < words.size(); ++k) {
    Matrix product = x[static_cast<std::size_t>(words[k][0])];
    for (std::size_t i = 1; i < words[k].size(); ++i) product = product * x[static_cast<std::size_t>(words[k][i])];
    out.b[k] = product.trace();
  }
  if (const double imag = out.max_imag_real_words(); imag > kLuImagTol) {
    throw Error(Errc::numerical_mismatch, "real LU invariant has imaginary part " + std::to_string(imag));
  }
  return out;
}

double entanglement_lhs(const LuInvariants& b) {
  return 6.0 * (b(1) + b(2) - b(1) * b(2) - b(4) - b(10)) + 12.0 * (b(5) - b(3)) + 3.0 * b(4) * b(4) + 4.0 * b(6);
}

const char* to_string(EntanglementVerdict v) noexcept {
  switch (v) {
    case EntanglementVerdict::entangled: return "entangled";
    case EntanglementVerdict::separable: return "separable";
    case EntanglementVerdict::boundary_indeterminate: return "boundary-indeterminate";
  }
  return "unknown";
}

EntanglementDecision entangled_by_invariants(const Matrix& rho, double tol) {
  const double lhs = entanglement_lhs(lu_invariants(rho));
  EntanglementVerdict v = EntanglementVerdict::boundary_indeterminate;
  if (lhs < 1.0 - tol) v = EntanglementVerdict::entangled;
  if (lhs > 1.0 + tol) v = EntanglementVerdict::separable;
  return {v, lhs};
}

PptDecision ppt_oracle(const Matrix& rho, double tol) {
  require_two_qubit(rho);
  const RealVector ev = hermitian_eigenvalues(partial_transpose(rho, Subsystem::B, 2, 2));
  const double det = ev.prod();
  return {det, det < -tol};
}

bool lu_similar(const Matrix& rho, const Matrix& sigma, double tol) {
  const LuInvariants a = lu_invariants(rho);
  const LuInvariants b = lu_invariants(sigma);
  for (std::size_t k = 0; k < a.b.size(); ++k)
    if (std::abs(a.b[k] - b.b[k]) > tol) return false;
  return true;
}

Matrix werner_state(double p) {
  Vector singlet = Vector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  return p * singlet * singlet.adjoint() + (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
}

Matrix sweep_state(std::size_t i, const Rng& rng) {
  Rng r = rng.split(i);
  return random_density(4, 1 + static_cast<int>(i % 4), r).matrix();
}

int criterion_agreement(const Matrix& rho, double band) {
  const double det = ppt_oracle(rho, 0.0).det_gamma;
  if (std::abs(det) < band) return -1;
  const double lhs = entanglement_lhs(lu_invariants(rho));
  return (lhs < 1.0) == (det < 0.0) ? 1 : 0;
}

CriterionSweep criterion_agreement_sweep(std::size_t samples, const Rng& rng, double band) {
  const std::size_t blocks = parallel::block_count(samples, kSweepBlock);
  std::vector<CriterionSweep> partial(blocks);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < blocks; ++b) {
    CriterionSweep& p = partial[b];
    const std::size_t end = std::min(samples, (b + 1) * kSweepBlock);
    for (std::size_t i = b * kSweepBlock; i < end; ++i) {
      const Matrix rho = sweep_state(i, rng);
      ++p.samples;
      switch (criterion_agreement(rho, band)) {
        case -1: ++p.in_band; continue;
        case 0: ++p.disagree; break;
        default: ++p.agree; break;
      }
      if (ppt_oracle(rho, 0.0).det_gamma < 0.0) ++p.entangled;
    }
  }

  CriterionSweep out;
  for (const CriterionSweep& p : partial) {
    out.samples += p.samples;
    out.in_band += p.in_band;
    out.agree += p.agree;
    out.disagree += p.disagree;
    out.entangled += p.entangled;
  }
  return out;
}

}  // namespace bargmann
