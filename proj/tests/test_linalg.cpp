#include "doctest.h"
#include "oracles.hpp"
#include "uniprobe/error.hpp"
#include "uniprobe/qlinalg.hpp"

using namespace uniprobe;

TEST_CASE("multiply and tensor agree with the naive loops") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const int a = 1 + t % 4, b = 1 + (t / 4) % 3;
    const ComplexMatrix x = oracle::random_unitary(a, rng).leftCols(a);
    const ComplexMatrix y = oracle::random_unitary(b, rng);
    CHECK(max_abs(tensor(x, y) - oracle::naive_kron(x, y)) < 1e-14);
    const ComplexMatrix z = oracle::random_unitary(a, rng);
    CHECK(max_abs(multiply(x, z) - oracle::naive_product(x, z)) < 1e-13);
  }
  CHECK_THROWS_AS(multiply(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3)),
                  DimensionMismatch);
}

TEST_CASE("apply_local is (U x I)|psi>") {
  std::mt19937_64 rng(3);
  for (int dA = 1; dA <= 4; ++dA) {
    for (int dB = 1; dB <= 3; ++dB) {
      const ComplexVector v = oracle::random_ket(dA * dB, rng);
      const ComplexMatrix u = oracle::random_unitary(dA, rng);
      const PureState s(dA, dB, v);
      const ComplexVector ref =
          oracle::naive_kron(u, ComplexMatrix::Identity(dB, dB)) * v;
      CHECK((apply_local(u, s) - ref).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  const PureState s(2, 2, ComplexVector::Unit(4, 0));
  CHECK_THROWS_AS(apply_local(ComplexMatrix::Identity(3, 3), s), DimensionMismatch);
}

TEST_CASE("validated types reject bad input") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(UnitaryOperator{m}, InvariantViolation);
  CHECK_NOTHROW(UnitaryOperator{ComplexMatrix::Identity(3, 3)});
  CHECK_THROWS_AS(PureState(2, 2, ComplexVector::Ones(4)), InvariantViolation);
  CHECK_THROWS_AS(PureState(2, 2, ComplexVector::Unit(3, 0)), DimensionMismatch);
  CHECK_THROWS_AS(PureState::normalized(2, 1, ComplexVector::Zero(2)), InvalidArgument);
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 1.2;
  rho(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityOperator{rho}, InvariantViolation);
}

TEST_CASE("eig_normal reconstructs and orders by phase") {
  std::mt19937_64 rng(5);
  for (int d = 1; d <= 7; ++d) {
    const ComplexMatrix u = oracle::random_unitary(d, rng);
    const NormalEigen e = eig_normal(u);
    ComplexMatrix rec = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j)
      rec += e.values[j] * e.vectors.col(j) * e.vectors.col(j).adjoint();
    CHECK(max_abs(rec - u) < 1e-8);
    CHECK(identity_deviation(e.vectors.adjoint() * e.vectors) < 1e-10);
    for (int j = 1; j < d; ++j) {
      auto arg = [](Complex z) {
        double a = std::arg(z);
        return a < 0 ? a + 2 * std::numbers::pi : a;
      };
      CHECK(arg(e.values[j - 1]) <= arg(e.values[j]) + 1e-12);
    }
  }
  ComplexMatrix nn = ComplexMatrix::Zero(2, 2);
  nn(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_normal(nn), InvalidArgument);
}

TEST_CASE("eig_normal on a degenerate spectrum") {
  ComplexMatrix m = transposition(4, 0, 1);
  const NormalEigen e = eig_normal(m);
  int minus = 0;
  for (auto z : e.values) minus += std::abs(z + 1.0) < 1e-12;
  CHECK(minus == 1);
  CHECK(identity_deviation(e.vectors.adjoint() * e.vectors) < 1e-10);
}

TEST_CASE("Haar sampler moments") {
  // E|Tr U|^2 = 1 for Haar U in every dimension.
  Rng rng(2024);
  for (int d : {2, 3, 5}) {
    double acc = 0.0;
    const int n = 4000;
    for (int t = 0; t < n; ++t) acc += std::norm(haar_unitary(d, rng).matrix().trace());
    CHECK(acc / n == doctest::Approx(1.0).epsilon(0.1));
  }
  // |<e_0|v>|^2 has mean 1/d.
  double acc = 0.0;
  for (int t = 0; t < 4000; ++t) acc += std::norm(haar_vector(4, rng)(0));
  CHECK(acc / 4000 == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("trace norm") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m.diagonal() << 1.0, -2.0, Complex(0, 3);
  CHECK(trace_norm(m) == doctest::Approx(6.0));
  std::mt19937_64 rng(8);
  const ComplexMatrix u = oracle::random_unitary(4, rng);
  CHECK(trace_norm(u) == doctest::Approx(4.0));
}

TEST_CASE("Schmidt decomposition") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const int dA = 1 + t % 4, dB = 1 + (t / 2) % 4;
    const PureState s(dA, dB, oracle::random_ket(dA * dB, rng));
    const SchmidtDecomposition sd = schmidt(s);
    CHECK((sd.reconstruct() - s.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    double total = 0.0;
    for (std::size_t i = 0; i < sd.coefficients.size(); ++i) {
      total += sd.coefficients[i] * sd.coefficients[i];
      if (i) CHECK(sd.coefficients[i - 1] >= sd.coefficients[i]);
    }
    CHECK(total == doctest::Approx(1.0));
  }
  ComplexVector a = ComplexVector::Zero(3), b = ComplexVector::Zero(2);
  a(1) = 1.0;
  b(0) = Complex(0, 1);
  CHECK(schmidt(PureState::product(a, b)).rank() == 1);
}

TEST_CASE("PSD helpers") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h.diagonal() << 4.0, -1.0, 0.0;
  CHECK(min_eigenvalue(h) == doctest::Approx(-1.0));
  const ComplexMatrix p = psd_projection(h);
  CHECK(min_eigenvalue(p) >= -1e-15);
  CHECK(std::abs(p(0, 0) - 4.0) < 1e-12);
  const ComplexMatrix is = inverse_sqrt_psd(h, 1e-12);
  CHECK(std::abs(is(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(is(1, 1)) < 1e-12);
  CHECK(support_basis(h, 1e-12).cols() == 1);
}
