#pragma once

// Dense complex linear algebra used throughout the library. Storage and the
// heavy decompositions are delegated to Eigen; this header adds the
// validated value types (unitaries, pure states, density operators) and the
// handful of operations the rest of the code is written against.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace uniprobe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Explicit RNG stream. Every randomized routine takes one by reference.
using Rng = std::mt19937_64;

/// Tolerance for structural invariants (unitarity, normalization, hermiticity).
inline constexpr double kStructuralTol = 1e-10;
/// Tolerance for spectral reconstructions.
inline constexpr double kSpectralTol = 1e-8;
/// Eigenvalues closer than this are treated as one cluster.
inline constexpr double kClusterTol = 1e-8;
/// Lowest admissible eigenvalue of a density operator.
inline constexpr double kDensityEigenFloor = -1e-9;

/// Largest entry modulus.
double max_abs(const ComplexMatrix& m);

/// max |m - I| over all entries. `m` must be square.
double identity_deviation(const ComplexMatrix& m);

bool is_unitary(const ComplexMatrix& m, double tol = kStructuralTol);
bool is_hermitian(const ComplexMatrix& m, double tol = kStructuralTol);

/// d x d unitary, checked on construction: max|U^dagger U - I| <= tol.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix matrix, double tol = kStructuralTol);

  static UnitaryOperator identity(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Pure state on C^dimA (x) C^dimB, amplitudes in row-major order
/// (index a * dimB + b). Single-system states use dimB = 1.
class PureState {
 public:
  PureState(int dimA, int dimB, ComplexVector amplitudes,
            double tol = kStructuralTol);

  /// Rescales `amplitudes` to unit norm before validating.
  static PureState normalized(int dimA, int dimB, ComplexVector amplitudes);
  static PureState product(const ComplexVector& a, const ComplexVector& b);

  int dimA() const { return dimA_; }
  int dimB() const { return dimB_; }
  int dim() const { return dimA_ * dimB_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }

  /// dimA x dimB matrix C with |psi> = sum_ab C(a,b) |a>|b>.
  ComplexMatrix coefficient_matrix() const;

 private:
  int dimA_;
  int dimB_;
  ComplexVector amplitudes_;
};

/// Hermitian, unit trace, eigenvalues >= -1e-9.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix matrix, double tol = kStructuralTol);

  static DensityOperator from_ket(const ComplexVector& ket);
  static DensityOperator from_state(const PureState& state) {
    return from_ket(state.amplitudes());
  }

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// |psi> = sum_l c_l |left_l>|right_l>, coefficients descending. `left` and
/// `right` hold the Schmidt vectors as columns; there are min(dimA, dimB) of
/// them, zero coefficients included.
struct SchmidtDecomposition {
  std::vector<double> coefficients;
  ComplexMatrix left;
  ComplexMatrix right;

  /// Number of coefficients above `cutoff`.
  int rank(double cutoff = 1e-9) const;
  /// Amplitude vector sum_l c_l left_l (x) right_l.
  ComplexVector reconstruct() const;
};

/// Spectral data of a normal matrix: m = sum_j values[j] v_j v_j^dagger with
/// v_j the j-th column of `vectors`.
struct NormalEigen {
  std::vector<Complex> values;
  ComplexMatrix vectors;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);

/// Kronecker product; the first factor is the slow (system A) index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

/// (u (x) I_B)|state>. Throws DimensionMismatch unless u is dimA x dimA.
ComplexVector apply_local(const ComplexMatrix& u, const PureState& state);

/// Eigendecomposition of a normal matrix through the complex Schur form,
/// whose triangular factor is diagonal for normal input. Eigenpairs are
/// ordered by phase angle in [0, 2pi).
///
/// Throws InvalidArgument if ||m m^dagger - m^dagger m||_max exceeds
/// tol * max(1, ||m||_max^2), ConvergenceFailure if the QR sweeps stall.
NormalEigen eig_normal(const ComplexMatrix& m, double tol = kSpectralTol,
                       int max_sweeps = 0);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

SchmidtDecomposition schmidt(const PureState& state);

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) folded back into Q.
UnitaryOperator haar_unitary(int dim, Rng& rng);

/// Uniformly random unit vector in C^dim.
ComplexVector haar_vector(int dim, Rng& rng);

/// Permutation matrix exchanging basis vectors `a` and `b` (0-based).
ComplexMatrix transposition(int dim, int a, int b);

// Hermitian helpers. All of them read only the lower triangle.

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& h);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clamped to 0).
ComplexMatrix psd_projection(const ComplexMatrix& h);

/// Pseudo-inverse square root of a PSD matrix; eigenvalues <= cutoff are
/// treated as zero.
ComplexMatrix inverse_sqrt_psd(const ComplexMatrix& h, double cutoff);

/// Orthonormal basis (as columns) of the eigenspace of `h` with eigenvalues
/// above `cutoff`.
ComplexMatrix support_basis(const ComplexMatrix& h, double cutoff);

}  // namespace uniprobe
