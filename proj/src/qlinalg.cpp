#include "uniprobe/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "uniprobe/error.hpp"

namespace uniprobe {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x"
       << m.cols();
    throw DimensionMismatch(os.str());
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InvariantViolation(std::string(what) + ": non-finite entry");
  }
}

double phase_key(Complex z) {
  double a = std::arg(z);
  if (a < 0) a += 2 * std::numbers::pi;
  // Values a hair below 2pi belong with the ones at angle 0.
  if (2 * std::numbers::pi - a < kClusterTol) a = 0;
  return a;
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double identity_deviation(const ComplexMatrix& m) {
  require_square(m, "identity_deviation");
  return max_abs(m - ComplexMatrix::Identity(m.rows(), m.cols()));
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite()) return false;
  return identity_deviation(m.adjoint() * m) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || !m.allFinite()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

// ---------------------------------------------------------------------------

UnitaryOperator::UnitaryOperator(ComplexMatrix matrix, double tol)
    : matrix_(std::move(matrix)) {
  require_square(matrix_, "UnitaryOperator");
  if (matrix_.rows() == 0) throw InvariantViolation("UnitaryOperator: empty");
  require_finite(matrix_, "UnitaryOperator");
  const double dev = identity_deviation(matrix_.adjoint() * matrix_);
  if (dev > tol) {
    std::ostringstream os;
    os << "UnitaryOperator: max|U^dagger U - I| = " << dev << " exceeds "
       << tol;
    throw InvariantViolation(os.str());
  }
}

UnitaryOperator UnitaryOperator::identity(int dim) {
  return UnitaryOperator(ComplexMatrix::Identity(dim, dim));
}

PureState::PureState(int dimA, int dimB, ComplexVector amplitudes, double tol)
    : dimA_(dimA), dimB_(dimB), amplitudes_(std::move(amplitudes)) {
  if (dimA_ < 1 || dimB_ < 1) {
    throw InvalidArgument("PureState: subsystem dimensions must be >= 1");
  }
  if (amplitudes_.size() != static_cast<Eigen::Index>(dimA_) * dimB_) {
    std::ostringstream os;
    os << "PureState: " << amplitudes_.size() << " amplitudes for dimensions "
       << dimA_ << "x" << dimB_;
    throw DimensionMismatch(os.str());
  }
  if (!amplitudes_.allFinite()) {
    throw InvariantViolation("PureState: non-finite amplitude");
  }
  const double n2 = amplitudes_.squaredNorm();
  if (std::abs(n2 - 1.0) > tol) {
    std::ostringstream os;
    os << "PureState: squared norm " << n2 << " is not 1";
    throw InvariantViolation(os.str());
  }
}

PureState PureState::normalized(int dimA, int dimB, ComplexVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0) || !std::isfinite(n)) {
    throw InvalidArgument("PureState::normalized: zero or non-finite vector");
  }
  amplitudes /= n;
  return PureState(dimA, dimB, std::move(amplitudes));
}

PureState PureState::product(const ComplexVector& a, const ComplexVector& b) {
  return PureState(static_cast<int>(a.size()), static_cast<int>(b.size()),
                   tensor(a, b));
}

ComplexMatrix PureState::coefficient_matrix() const {
  ComplexMatrix c(dimA_, dimB_);
  for (int a = 0; a < dimA_; ++a)
    for (int b = 0; b < dimB_; ++b) c(a, b) = amplitudes_(a * dimB_ + b);
  return c;
}

DensityOperator::DensityOperator(ComplexMatrix matrix, double tol)
    : matrix_(std::move(matrix)) {
  require_square(matrix_, "DensityOperator");
  if (matrix_.rows() == 0) throw InvariantViolation("DensityOperator: empty");
  require_finite(matrix_, "DensityOperator");
  if (!is_hermitian(matrix_, tol)) {
    throw InvariantViolation("DensityOperator: not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream os;
    os << "DensityOperator: trace " << tr.real() << " is not 1";
    throw InvariantViolation(os.str());
  }
  if (min_eigenvalue(matrix_) < kDensityEigenFloor) {
    throw InvariantViolation("DensityOperator: negative eigenvalue");
  }
}

DensityOperator DensityOperator::from_ket(const ComplexVector& ket) {
  if (std::abs(ket.squaredNorm() - 1.0) > kStructuralTol) {
    throw InvariantViolation("DensityOperator::from_ket: ket not normalized");
  }
  return DensityOperator(ket * ket.adjoint());
}

int SchmidtDecomposition::rank(double cutoff) const {
  return static_cast<int>(std::count_if(coefficients.begin(),
                                        coefficients.end(),
                                        [&](double c) { return c > cutoff; }));
}

ComplexVector SchmidtDecomposition::reconstruct() const {
  ComplexVector out = ComplexVector::Zero(left.rows() * right.rows());
  for (std::size_t l = 0; l < coefficients.size(); ++l) {
    const auto i = static_cast<Eigen::Index>(l);
    out += coefficients[l] * tensor(ComplexVector(left.col(i)),
                                    ComplexVector(right.col(i)));
  }
  return out;
}

// ---------------------------------------------------------------------------

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "multiply: " << a.rows() << "x" << a.cols() << " times " << b.rows()
       << "x" << b.cols();
    throw DimensionMismatch(os.str());
  }
  return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexVector apply_local(const ComplexMatrix& u, const PureState& state) {
  if (u.rows() != state.dimA() || u.cols() != state.dimA()) {
    throw DimensionMismatch("apply_local: operator does not act on system A");
  }
  const ComplexMatrix c = u * state.coefficient_matrix();
  ComplexVector out(state.dim());
  for (int a = 0; a < state.dimA(); ++a)
    for (int b = 0; b < state.dimB(); ++b) out(a * state.dimB() + b) = c(a, b);
  return out;
}

NormalEigen eig_normal(const ComplexMatrix& m, double tol, int max_sweeps) {
  require_square(m, "eig_normal");
  require_finite(m, "eig_normal");
  const double scale = std::max(1.0, max_abs(m) * max_abs(m));
  const double commutator = max_abs(m * m.adjoint() - m.adjoint() * m);
  if (commutator > tol * scale) {
    std::ostringstream os;
    os << "eig_normal: matrix is not normal (commutator " << commutator
       << ")";
    throw InvalidArgument(os.str());
  }

  Eigen::ComplexSchur<ComplexMatrix> schur(m.rows());
  if (max_sweeps > 0) schur.setMaxIterations(max_sweeps);
  schur.compute(m);
  if (schur.info() != Eigen::Success) {
    throw ConvergenceFailure("eig_normal: Schur iteration did not converge");
  }
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();

  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> keys(n);
  for (std::size_t j = 0; j < n; ++j)
    keys[j] = phase_key(t(static_cast<Eigen::Index>(j),
                          static_cast<Eigen::Index>(j)));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return keys[a] < keys[b];
                   });

  NormalEigen out;
  out.values.reserve(n);
  out.vectors.resize(m.rows(), m.cols());
  for (std::size_t k = 0; k < n; ++k) {
    const auto j = static_cast<Eigen::Index>(order[k]);
    out.values.push_back(t(j, j));
    out.vectors.col(static_cast<Eigen::Index>(k)) = q.col(j);
  }
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

SchmidtDecomposition schmidt(const PureState& state) {
  const ComplexMatrix c = state.coefficient_matrix();
  Eigen::JacobiSVD<ComplexMatrix> svd(c, Eigen::ComputeThinU |
                                             Eigen::ComputeThinV);
  SchmidtDecomposition out;
  const RealVector& s = svd.singularValues();
  out.coefficients.assign(s.data(), s.data() + s.size());
  out.left = svd.matrixU();
  // C = U S V^dagger  =>  |psi> = sum_l s_l |u_l> (x) conj(|v_l>)
  out.right = svd.matrixV().conjugate();
  return out;
}

UnitaryOperator haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw InvalidArgument("haar_unitary: dim must be >= 1");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0 ? rjj / mag : Complex(1.0);
  }
  return UnitaryOperator(std::move(q));
}

ComplexVector haar_vector(int dim, Rng& rng) {
  if (dim < 1) throw InvalidArgument("haar_vector: dim must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

ComplexMatrix transposition(int dim, int a, int b) {
  if (a < 0 || b < 0 || a >= dim || b >= dim) {
    throw InvalidArgument("transposition: index out of range");
  }
  ComplexMatrix p = ComplexMatrix::Identity(dim, dim);
  p.row(a).swap(p.row(b));
  return p;
}

double min_eigenvalue(const ComplexMatrix& h) {
  require_square(h, "min_eigenvalue");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

ComplexMatrix psd_projection(const ComplexMatrix& h) {
  require_square(h, "psd_projection");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const RealVector clamped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clamped.asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix inverse_sqrt_psd(const ComplexMatrix& h, double cutoff) {
  require_square(h, "inverse_sqrt_psd");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector inv(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    const double ev = es.eigenvalues()(i);
    inv(i) = ev > cutoff ? 1.0 / std::sqrt(ev) : 0.0;
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix support_basis(const ComplexMatrix& h, double cutoff) {
  require_square(h, "support_basis");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > cutoff) keep.push_back(i);
  ComplexMatrix basis(h.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  return basis;
}

}  // namespace uniprobe
