#include "bargmann/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bargmann {

namespace {

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << v.invariant << " violated by " << v.magnitude;
  return os.str();
}

}  // namespace

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::invalid_input, "max_abs_diff: shape mismatch");
  }
  return max_abs(a - b);
}

RealVector hermitian_eigenvalues(const Matrix& a) {
  const Matrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::optional<Violation> check_unit_vector(const Vector& v, double tol) {
  if (v.size() == 0) return Violation{Errc::invalid_dimension, "dimension", 0.0};
  if (!v.allFinite()) return Violation{Errc::invalid_input, "finiteness", INFINITY};
  const double dev = std::abs(v.squaredNorm() - 1.0);
  if (dev > tol) return Violation{Errc::not_normalized, "normalization", dev};
  return std::nullopt;
}

std::optional<Violation> check_density(const Matrix& m, double hermitian_tol, double trace_tol,
                                       double eigen_floor) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    return Violation{Errc::invalid_dimension, "dimension", static_cast<double>(m.rows())};
  }
  if (!m.allFinite()) return Violation{Errc::invalid_input, "finiteness", INFINITY};
  const double herm = max_abs(m - m.adjoint());
  if (herm > hermitian_tol) return Violation{Errc::not_hermitian, "hermiticity", herm};
  const double tr = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr > trace_tol) return Violation{Errc::not_normalized, "trace", tr};
  const double lo = hermitian_eigenvalues(m).minCoeff();
  if (lo < -eigen_floor) return Violation{Errc::not_psd, "positivity", -lo};
  return std::nullopt;
}

UnitVector::UnitVector(Vector amplitudes, double tol) : amps_(std::move(amplitudes)) {
  if (auto v = check_unit_vector(amps_, tol)) throw Error(v->code, describe(*v));
}

UnitVector UnitVector::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::invalid_input, "cannot normalize a zero vector");
  return UnitVector(v / n, 1e-10);
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (auto v = check_density(m_)) throw Error(v->code, describe(*v));
}

DensityMatrix::DensityMatrix(Matrix m, double hermitian_tol, double trace_tol, double eigen_floor)
    : m_(std::move(m)) {
  if (auto v = check_density(m_, hermitian_tol, trace_tol, eigen_floor)) throw Error(v->code, describe(*v));
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  if (d < 1) throw Error(Errc::invalid_dimension, "d must be positive");
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

int State::dim() const noexcept {
  return std::visit([](const auto& s) { return s.dim(); }, data_);
}

const UnitVector& State::vector() const {
  if (const auto* v = std::get_if<UnitVector>(&data_)) return *v;
  throw Error(Errc::not_pure_tuple, "member is mixed");
}

Matrix State::density() const {
  if (const auto* v = std::get_if<UnitVector>(&data_)) return v->projector();
  return std::get<DensityMatrix>(data_).matrix();
}

StateTuple::StateTuple(std::vector<State> states) : states_(std::move(states)), dim_(0) {
  if (states_.empty()) throw Error(Errc::invalid_tuple, "empty tuple");
  dim_ = states_.front().dim();
  for (const auto& s : states_) {
    if (s.dim() != dim_) throw Error(Errc::invalid_tuple, "members have different dimensions");
  }
}

StateTuple StateTuple::from_vectors(const std::vector<UnitVector>& vs) {
  return StateTuple(std::vector<State>(vs.begin(), vs.end()));
}

StateTuple StateTuple::from_densities(const std::vector<DensityMatrix>& ms) {
  return StateTuple(std::vector<State>(ms.begin(), ms.end()));
}

bool StateTuple::all_pure() const noexcept {
  return std::all_of(states_.begin(), states_.end(), [](const State& s) { return s.is_pure(); });
}

Matrix StateTuple::as_columns() const {
  Matrix a(dim_, static_cast<Eigen::Index>(states_.size()));
  for (std::size_t k = 0; k < states_.size(); ++k) {
    a.col(static_cast<Eigen::Index>(k)) = states_[k].vector().amplitudes();
  }
  return a;
}

GramMatrix::GramMatrix(Matrix g, double hermitian_tol) : g_(std::move(g)) {
  if (g_.rows() == 0 || g_.rows() != g_.cols()) throw Error(Errc::invalid_input, "Gram matrix must be square");
  const double herm = max_abs(g_ - g_.adjoint());
  if (herm > hermitian_tol) throw Error(Errc::not_hermitian, "Gram matrix hermiticity violated by " + std::to_string(herm));
}

UnitVector haar_unit_vector(int d, Rng& rng) {
  if (d < 1) throw Error(Errc::invalid_dimension, "d must be >= 1");
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_gaussian();
  return UnitVector(v / v.norm(), 1e-12);
}

DensityMatrix random_density(int d, int rank, Rng& rng) {
  if (d < 1) throw Error(Errc::invalid_dimension, "d must be >= 1");
  if (rank < 1 || rank > d) throw Error(Errc::invalid_rank, "rank must lie in [1, d]");
  Matrix w(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) w(i, j) = rng.complex_gaussian();
  Matrix rho = w * w.adjoint();
  rho = (rho + rho.adjoint()) / 2.0;
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

Matrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw Error(Errc::invalid_dimension, "d must be >= 1");
  Matrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex rkk = r(k, k);
    q.col(k) *= rkk / std::abs(rkk);
  }
  return q;
}

GramMatrix gram_matrix(const StateTuple& tuple) {
  if (!tuple.all_pure()) throw Error(Errc::not_pure_tuple, "gram_matrix needs unit-vector members");
  const auto n = static_cast<Eigen::Index>(tuple.size());
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector& vi = tuple[static_cast<std::size_t>(i)].vector().amplitudes();
    g(i, i) = vi.squaredNorm();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      g(i, j) = vi.dot(tuple[static_cast<std::size_t>(j)].vector().amplitudes());
      g(j, i) = std::conj(g(i, j));
    }
  }
  return GramMatrix(std::move(g));
}

StateTuple factor_gram(const GramMatrix& g, double tol) {
  const Matrix& m = g.matrix();
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double dev = std::abs(m(i, i) - Complex(1.0, 0.0));
    if (dev > tol) throw Error(Errc::not_normalized, "Gram diagonal deviates from 1 by " + std::to_string(dev));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  const RealVector& lambda = es.eigenvalues();
  if (lambda(0) < -tol) throw Error(Errc::not_psd, "Gram eigenvalue " + std::to_string(lambda(0)));

  // Eigenvalues arrive ascending; keep the ones above tol, largest first.
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (lambda(k) > tol) kept.push_back(k);
  }
  const auto r = static_cast<Eigen::Index>(kept.size());
  std::vector<UnitVector> vs;
  vs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector v(r);
    for (Eigen::Index c = 0; c < r; ++c) {
      const Eigen::Index k = kept[static_cast<std::size_t>(c)];
      v(c) = std::sqrt(lambda(k)) * std::conj(es.eigenvectors()(i, k));
    }
    vs.push_back(UnitVector::normalized(v));
  }
  return StateTuple::from_vectors(vs);
}

Matrix partial_trace(const Matrix& rho, Subsystem traced, int dA, int dB) {
  if (dA < 1 || dB < 1 || rho.rows() != dA * dB || rho.cols() != dA * dB) {
    throw Error(Errc::invalid_factorization, "matrix dimension is not dA*dB");
  }
  if (traced == Subsystem::B) {
    Matrix out = Matrix::Zero(dA, dA);
    for (int a = 0; a < dA; ++a)
      for (int ap = 0; ap < dA; ++ap)
        for (int b = 0; b < dB; ++b) out(a, ap) += rho(a * dB + b, ap * dB + b);
    return out;
  }
  Matrix out = Matrix::Zero(dB, dB);
  for (int b = 0; b < dB; ++b)
    for (int bp = 0; bp < dB; ++bp)
      for (int a = 0; a < dA; ++a) out(b, bp) += rho(a * dB + b, a * dB + bp);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced, int dA, int dB) {
  return DensityMatrix(partial_trace(rho.matrix(), traced, dA, dB));
}

Matrix partial_transpose(const Matrix& rho, Subsystem which, int dA, int dB) {
  if (dA < 1 || dB < 1 || rho.rows() != dA * dB || rho.cols() != dA * dB) {
    throw Error(Errc::invalid_factorization, "matrix dimension is not dA*dB");
  }
  Matrix out(dA * dB, dA * dB);
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b)
      for (int ap = 0; ap < dA; ++ap)
        for (int bp = 0; bp < dB; ++bp) {
          if (which == Subsystem::B) {
            out(a * dB + b, ap * dB + bp) = rho(a * dB + bp, ap * dB + b);
          } else {
            out(a * dB + b, ap * dB + bp) = rho(ap * dB + b, a * dB + bp);
          }
        }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix pauli(int k) {
  Matrix p(2, 2);
  switch (k) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: p << 1, 0, 0, -1; break;
    default: throw Error(Errc::invalid_index, "Pauli index must be 0..3");
  }
  return p;
}

}  // namespace bargmann
