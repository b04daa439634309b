#include <random>

#include <gtest/gtest.h>

#include "ontolab/linalg.hpp"
#include "oracles/oracles.hpp"

using namespace ontolab;

namespace {

ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST(Linalg, ThreeByThreeMatchesCubicFormula) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix a = random_hermitian(3, rng);
    std::array<std::array<std::complex<double>, 3>, 3> m{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = a(i, j);
    const auto expected = oracle::hermitian3_eigenvalues(m);
    for (auto method : {EigenMethod::kTridiagonalQR, EigenMethod::kJacobi}) {
      const Spectrum s = hermitian_eigensystem(a, 1e-12, method);
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(s.eigenvalues(k), expected[static_cast<std::size_t>(k)], 1e-10);
    }
  }
}

TEST(Linalg, JacobiAgreesWithTridiagonalQR) {
  std::mt19937_64 rng(11);
  for (Eigen::Index n : {1, 2, 5, 17, 40}) {
    const ComplexMatrix a = random_hermitian(n, rng);
    const Spectrum q = hermitian_eigensystem(a);
    const Spectrum j = hermitian_eigensystem(a, 1e-12, EigenMethod::kJacobi);
    EXPECT_LT((q.eigenvalues - j.eigenvalues).cwiseAbs().maxCoeff(), 1e-10) << n;
    EXPECT_LT(eigen_residual(a, j), 1e-10 * std::max(1.0, a.norm()));
    EXPECT_LT(orthonormality_residual(j.eigenvectors), 1e-10);
    EXPECT_LT(orthonormality_residual(q.eigenvectors), 1e-10);
  }
}

TEST(Linalg, EigenvaluesAscendingAndDegeneracyHandled) {
  ComplexMatrix a = ComplexMatrix::Identity(4, 4) * 2.0;
  a(3, 3) = -1.0;
  for (auto method : {EigenMethod::kTridiagonalQR, EigenMethod::kJacobi}) {
    const Spectrum s = hermitian_eigensystem(a, 1e-12, method);
    EXPECT_DOUBLE_EQ(s.eigenvalues(0), -1.0);
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(s.eigenvalues(k), 2.0, 1e-14);
    EXPECT_LT(orthonormality_residual(s.eigenvectors), 1e-12);
  }
}

TEST(Linalg, RejectsNonHermitianAndNonSquare) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  try {
    hermitian_eigensystem(a);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
  }
  try {
    hermitian_eigensystem(ComplexMatrix::Zero(2, 3));
    FAIL() << "expected DimMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimMismatch);
  }
  try {
    commutator(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3));
    FAIL() << "expected DimMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimMismatch);
  }
}

TEST(Linalg, DftIsUnitaryAndDiagonalisesCyclicShift) {
  const Eigen::Index n = 5;
  const ComplexMatrix f = dft_matrix(n);
  EXPECT_LT((f.adjoint() * f - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) p((k + 1) % n, k) = 1.0;
  const ComplexMatrix d = f.adjoint() * p * f;
  const ComplexMatrix off = d - ComplexMatrix(d.diagonal().asDiagonal());
  EXPECT_LT(off.norm(), 1e-12);
  for (Eigen::Index k = 0; k < n; ++k) EXPECT_NEAR(std::abs(d(k, k)), 1.0, 1e-12);
}

TEST(Linalg, UnitarySpectrumRecoversPhases) {
  std::mt19937_64 rng(3);
  const ComplexMatrix h = random_hermitian(12, rng);
  const Spectrum hs = hermitian_eigensystem(h);
  const double t = 0.37;
  const ComplexMatrix u = unitary_from_spectrum(hs, t);
  const UnitarySpectrum us = unitary_eigensystem(u);
  for (Eigen::Index k = 0; k < us.phases.size(); ++k) {
    const Complex lhs = (u * us.eigenvectors.col(k) - std::polar(1.0, us.phases(k)) * us.eigenvectors.col(k)).norm();
    EXPECT_LT(std::abs(lhs), 1e-10);
  }
  EXPECT_LT(orthonormality_residual(us.eigenvectors), 1e-10);
}

TEST(Linalg, UnitarySpectrumSplitsConjugatePhasePairs) {
  // diag(e^{i a}, e^{-i a}) rotated: C is degenerate, S separates the pair
  std::mt19937_64 rng(5);
  const ComplexMatrix h = random_hermitian(2, rng);
  const ComplexMatrix v = hermitian_eigensystem(h).eigenvectors;
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = std::polar(1.0, 0.8);
  d(1, 1) = std::polar(1.0, -0.8);
  const UnitarySpectrum us = unitary_eigensystem(v * d * v.adjoint());
  EXPECT_NEAR(us.phases(0), -0.8, 1e-12);
  EXPECT_NEAR(us.phases(1), 0.8, 1e-12);
}
