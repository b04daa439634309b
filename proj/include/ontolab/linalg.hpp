#pragma once

// Dense complex linear algebra shared by every model in the lab: Hermitian
// eigensystems (tridiagonal QR through Eigen, plus an in-house cyclic Jacobi
// solver), eigen-decomposition of unitary matrices, commutators and the
// discrete Fourier basis.
//
// Matrices are plain Eigen::MatrixXcd values. Hermiticity and unitarity are
// predicates checked on demand, never assumed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ontolab/error.hpp"

namespace ontolab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Largest dimension accepted by the eigensolvers. Jacobi is O(n^3) per sweep
/// and only practical well below this; the QR route handles the full range.
inline constexpr Eigen::Index kMaxEigenDim = 8192;

struct Spectrum {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, phase-fixed
};

/// Eigen-decomposition of a unitary matrix. Eigenvalues are e^{i phase}.
struct UnitarySpectrum {
  RealVector phases;          // in (-pi, pi], ascending
  ComplexMatrix eigenvectors;
};

enum class EigenMethod {
  kTridiagonalQR,  // Householder tridiagonalisation + implicit QR (Eigen)
  kJacobi,         // cyclic complex Jacobi rotations
};

// ---------------------------------------------------------------------------
// Predicates and small helpers

inline void require_square(const ComplexMatrix& a, const char* what) {
  require(a.rows() >= 1 && a.rows() == a.cols(), ErrorCode::kDimMismatch,
          std::string(what) + " must be a non-empty square matrix");
  require(a.allFinite(), ErrorCode::kInvalidParameter,
          std::string(what) + " has non-finite entries");
}

inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// max |A - A^dagger|
inline double hermiticity_defect(const ComplexMatrix& a) {
  return max_abs(a - a.adjoint());
}

/// max |U^dagger U - I|
inline double unitarity_defect(const ComplexMatrix& u) {
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

inline bool is_hermitian(const ComplexMatrix& a, double eps) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= eps;
}

inline bool is_unitary(const ComplexMatrix& u, double eps) {
  return u.rows() == u.cols() && unitarity_defect(u) <= eps;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
          ErrorCode::kDimMismatch, "commutator operands must be square with equal dimension");
  return a * b - b * a;
}

/// Unitary DFT matrix, F[n][nu] = exp(2 pi i n nu / N) / sqrt(N).
/// Column nu is the basis state nu re-expanded in the Fourier (energy) basis;
/// since F is symmetric, column n is also the n-th Fourier mode written in
/// the position basis.
inline ComplexMatrix dft_matrix(Eigen::Index n) {
  require(n >= 1, ErrorCode::kInvalidParameter, "dft_matrix needs N >= 1");
  ComplexMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index row = 0; row < n; ++row) {
    for (Eigen::Index col = 0; col < n; ++col) {
      // reduce n*nu mod N first so large N keeps full phase accuracy
      const auto k = (row * col) % n;
      f(row, col) = std::polar(scale, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Eigensolvers

namespace detail {

/// Makes the first non-negligible component of every column real and positive.
inline void fix_phases(ComplexMatrix& v) {
  for (Eigen::Index col = 0; col < v.cols(); ++col) {
    const double scale = v.col(col).cwiseAbs().maxCoeff();
    for (Eigen::Index row = 0; row < v.rows(); ++row) {
      const Complex z = v(row, col);
      if (std::abs(z) > 1e-8 * scale) {
        v.col(col) *= std::conj(z) / std::abs(z);
        v(row, col) = std::abs(z);
        break;
      }
    }
  }
}

inline bool lexicographic_less(const ComplexMatrix& v, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index row = 0; row < v.rows(); ++row) {
    if (v(row, a).real() != v(row, b).real()) return v(row, a).real() < v(row, b).real();
    if (v(row, a).imag() != v(row, b).imag()) return v(row, a).imag() < v(row, b).imag();
  }
  return false;
}

/// Sorts ascending by eigenvalue; exact ties fall back to the phase-fixed vectors.
inline Spectrum sorted_spectrum(const RealVector& values, ComplexMatrix vectors) {
  fix_phases(vectors);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values(a) != values(b)) return values(a) < values(b);
    return lexicographic_less(vectors, a, b);
  });
  Spectrum out{RealVector(values.size()), ComplexMatrix(vectors.rows(), vectors.cols())};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    out.eigenvalues(idx) = values(order[k]);
    out.eigenvectors.col(idx) = vectors.col(order[k]);
  }
  return out;
}

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index col = 0; col < a.cols(); ++col)
    for (Eigen::Index row = 0; row < a.rows(); ++row)
      if (row != col) sum += std::norm(a(row, col));
  return std::sqrt(sum);
}

/// Cyclic Jacobi for a Hermitian matrix. Each rotation first removes the phase
/// of a(p,q) with a diagonal unitary, then applies the real symmetric rotation.
inline Spectrum jacobi(ComplexMatrix a, double tol, int max_sweeps) {
  const Eigen::Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = a.norm();
  const double target = 0.1 * tol * scale;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i alpha}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const Complex g_pp = c;
        const Complex g_pq = s;
        const Complex g_qp = -s * std::conj(phase);
        const Complex g_qq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {  // A <- A G
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- G^dagger A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {  // V <- V G
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }
  const double off = off_diagonal_norm(a);
  if (off > target) {
    fail(ErrorCode::kNoConvergence, "Jacobi did not converge in " + std::to_string(max_sweeps) +
                                        " sweeps; off-diagonal norm " + std::to_string(off));
  }
  return sorted_spectrum(a.diagonal().real(), std::move(v));
}

}  // namespace detail

/// Residual ||A V - V diag(lambda)||_F.
inline double eigen_residual(const ComplexMatrix& a, const Spectrum& s) {
  return (a * s.eigenvectors - s.eigenvectors * s.eigenvalues.cast<Complex>().asDiagonal()).norm();
}

/// ||V^dagger V - I||_F.
inline double orthonormality_residual(const ComplexMatrix& v) {
  return (v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols())).norm();
}

/// Eigenvalues ascending with orthonormal eigenvectors. Throws NotHermitian
/// when max|A - A^dagger| > tol * ||A||_F, and NoConvergence when the solver
/// fails or the residual exceeds 10 * tol * ||A||_F.
inline Spectrum hermitian_eigensystem(const ComplexMatrix& a, double tol = 1e-12,
                                      EigenMethod method = EigenMethod::kTridiagonalQR) {
  require_square(a, "hermitian_eigensystem input");
  require(a.rows() <= kMaxEigenDim, ErrorCode::kInvalidParameter,
          "dimension " + std::to_string(a.rows()) + " exceeds limit " + std::to_string(kMaxEigenDim));
  require(tol > 0.0, ErrorCode::kInvalidParameter, "tolerance must be positive");
  const double scale = a.norm();
  const double defect = hermiticity_defect(a);
  if (defect > tol * scale) {
    fail(ErrorCode::kNotHermitian, "max|A - A^dagger| = " + std::to_string(defect));
  }
  const ComplexMatrix h = 0.5 * (a + a.adjoint());

  Spectrum out;
  if (method == EigenMethod::kJacobi) {
    out = detail::jacobi(h, tol, 30);
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) fail(ErrorCode::kNoConvergence, "tridiagonal QR failed");
    out = detail::sorted_spectrum(solver.eigenvalues(), solver.eigenvectors());
  }
  const double residual = eigen_residual(h, out);
  if (residual > 10.0 * tol * std::max(scale, 1e-300)) {
    fail(ErrorCode::kNoConvergence, "eigen residual " + std::to_string(residual));
  }
  return out;
}

/// Diagonalises a unitary matrix through its commuting Hermitian parts
/// C = (U + U^dagger)/2 and S = (U - U^dagger)/2i. Degenerate clusters of C
/// (eigenphases +theta and -theta share a cosine) are split by diagonalising
/// S inside the cluster; phases then come from Rayleigh quotients.
inline UnitarySpectrum unitary_eigensystem(const ComplexMatrix& u, double tol = 1e-12) {
  require_square(u, "unitary_eigensystem input");
  const double defect = unitarity_defect(u);
  require(defect <= 1e3 * tol * static_cast<double>(u.rows()), ErrorCode::kInvalidParameter,
          "matrix is not unitary, max|U^dagger U - I| = " + std::to_string(defect));
  const Eigen::Index n = u.rows();
  const ComplexMatrix cos_part = 0.5 * (u + u.adjoint());
  const ComplexMatrix sin_part = (u - u.adjoint()) / (2.0 * kI);

  const Spectrum c = hermitian_eigensystem(cos_part, tol);
  ComplexMatrix vectors = c.eigenvectors;
  const double cluster_tol = 1e-8;
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index stop = start + 1;
    while (stop < n && c.eigenvalues(stop) - c.eigenvalues(stop - 1) <= cluster_tol) ++stop;
    const Eigen::Index width = stop - start;
    if (width > 1) {
      const ComplexMatrix block = vectors.middleCols(start, width);
      const ComplexMatrix reduced = block.adjoint() * sin_part * block;
      const Spectrum s = hermitian_eigensystem(0.5 * (reduced + reduced.adjoint()), tol);
      vectors.middleCols(start, width) = block * s.eigenvectors;
    }
    start = stop;
  }

  RealVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex rq = vectors.col(k).dot(u * vectors.col(k));  // v^dagger U v
    phases(k) = std::arg(rq);
  }
  Spectrum sorted = detail::sorted_spectrum(phases, std::move(vectors));
  return {std::move(sorted.eigenvalues), std::move(sorted.eigenvectors)};
}

/// exp(-i H t) for Hermitian H given its spectrum.
inline ComplexMatrix unitary_from_spectrum(const Spectrum& s, double t) {
  ComplexVector phases(s.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(-kI * s.eigenvalues(k) * t);
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

}  // namespace ontolab
