#pragma once

// SU(2) bridge between the (2l+1)-state clock and the harmonic oscillator.
//
// Matrices live in the L_z eigenbasis with index n = m + l, m = -l..l, which
// is also the energy basis of the clock. x = alpha L_x and p = beta L_y with
//   alpha = sqrt(tau / pi),   beta = -2 / (2l+1) * sqrt(pi / tau)
// (beta keeps its negative sign). Then, exactly at every finite l,
//   [x, p] = i (1 - tau H / pi)
//   H      = w^2 x^2 / 2 + p^2 / 2 + tau / (2 pi) (w^2 / 4 + H^2)
// with H = w (L_z + l + 1/2) and w = 2 pi / ((2l+1) tau).

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ontolab/clock.hpp"
#include "ontolab/error.hpp"
#include "ontolab/linalg.hpp"

namespace ontolab::oscillator {

struct SpinRep {
  std::int64_t ell = 0;
  double tau = 0.0;
  double omega = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  ComplexMatrix lx, ly, lz;
  ComplexMatrix xhat, phat;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(2 * ell + 1); }

  /// H = w (L_z + l + 1/2), diagonal in this basis.
  ComplexMatrix hamiltonian() const {
    return omega * (lz + (static_cast<double>(ell) + 0.5) * ComplexMatrix::Identity(dim(), dim()));
  }
};

inline SpinRep build_spin_rep(std::int64_t ell, double tau) {
  require(ell >= 1, ErrorCode::kInvalidParameter, "spin representation needs l >= 1");
  require(tau > 0.0 && std::isfinite(tau), ErrorCode::kInvalidParameter, "tau must be positive");
  SpinRep rep;
  rep.ell = ell;
  rep.tau = tau;
  const double l = static_cast<double>(ell);
  const double two_l_plus_1 = 2.0 * l + 1.0;
  rep.omega = 2.0 * kPi / (two_l_plus_1 * tau);
  rep.alpha = std::sqrt(tau / kPi);
  rep.beta = -2.0 / two_l_plus_1 * std::sqrt(kPi / tau);

  const Eigen::Index d = rep.dim();
  ComplexMatrix raise = ComplexMatrix::Zero(d, d);
  rep.lz = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    const double m = static_cast<double>(n) - l;
    rep.lz(n, n) = m;
    // L+ |m> = sqrt(l(l+1) - m(m+1)) |m+1>
    if (n + 1 < d) raise(n + 1, n) = std::sqrt(l * (l + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix lower = raise.adjoint();
  rep.lx = 0.5 * (raise + lower);
  rep.ly = (raise - lower) / (2.0 * kI);
  rep.xhat = rep.alpha * rep.lx;
  rep.phat = rep.beta * rep.ly;
  return rep;
}

/// Largest ||[L_i, L_j] - i eps_ijk L_k||_F over the three cyclic pairs.
inline double su2_residual(const SpinRep& rep) {
  const double a = (commutator(rep.lx, rep.ly) - kI * rep.lz).norm();
  const double b = (commutator(rep.ly, rep.lz) - kI * rep.lx).norm();
  const double c = (commutator(rep.lz, rep.lx) - kI * rep.ly).norm();
  return std::max({a, b, c});
}

/// ||L_x^2 + L_y^2 + L_z^2 - l(l+1) I||_F
inline double casimir_residual(const SpinRep& rep) {
  const double l = static_cast<double>(rep.ell);
  const ComplexMatrix c2 = rep.lx * rep.lx + rep.ly * rep.ly + rep.lz * rep.lz;
  return (c2 - l * (l + 1.0) * ComplexMatrix::Identity(rep.dim(), rep.dim())).norm();
}

/// ||[x, p] - i (I - tau H / pi)||_F
inline double commutator_identity_residual(const SpinRep& rep) {
  const ComplexMatrix id = ComplexMatrix::Identity(rep.dim(), rep.dim());
  const ComplexMatrix rhs = kI * (id - (rep.tau / kPi) * rep.hamiltonian());
  return (commutator(rep.xhat, rep.phat) - rhs).norm();
}

/// w^2 x^2 / 2 + p^2 / 2
inline ComplexMatrix oscillator_hamiltonian(const SpinRep& rep) {
  return 0.5 * rep.omega * rep.omega * (rep.xhat * rep.xhat) + 0.5 * (rep.phat * rep.phat);
}

/// ||H - w^2 x^2/2 - p^2/2 - tau/(2 pi) (w^2/4 I + H^2)||_F
inline double hamiltonian_identity_residual(const SpinRep& rep) {
  const ComplexMatrix h = rep.hamiltonian();
  const ComplexMatrix id = ComplexMatrix::Identity(rep.dim(), rep.dim());
  const ComplexMatrix rhs = oscillator_hamiltonian(rep) +
                            rep.tau / (2.0 * kPi) * (0.25 * rep.omega * rep.omega * id + h * h);
  return (h - rhs).norm();
}

/// Eigenvalues of -i [x, p] against 1 - tau E_n / pi, max abs difference.
inline double deformation_residual(const SpinRep& rep) {
  const ComplexMatrix c = -kI * commutator(rep.xhat, rep.phat);
  const Spectrum s = hermitian_eigensystem(0.5 * (c + c.adjoint()));
  const clock::ClockModel model(2 * rep.ell + 1, rep.tau);
  double worst = 0.0;
  for (Eigen::Index n = 0; n < rep.dim(); ++n) {
    // 1 - tau E_n / pi decreases with n, eigenvalues ascend
    const Eigen::Index level = rep.dim() - 1 - n;
    worst = std::max(worst, std::abs(s.eigenvalues(n) - (1.0 - rep.tau * model.energy_level(level) / kPi)));
  }
  return worst;
}

struct ClockCrossCheck {
  double spectrum_residual = 0.0;   // max |E_H - E_clock| (numerical vs numerical)
  double evolution_residual = 0.0;  // max |F e^{-iH tau} F^dagger - U_clock|
};

/// The same clock seen two ways: diagonalise H from the spin construction,
/// diagonalise the clock evolution matrix, and rotate e^{-i H tau} into the
/// ontological basis with the DFT to compare against U entrywise.
inline ClockCrossCheck clock_cross_check(const SpinRep& rep) {
  const clock::ClockModel model(2 * rep.ell + 1, rep.tau);
  const Spectrum spin = hermitian_eigensystem(rep.hamiltonian());
  const Spectrum clk = clock::energy_spectrum(model);
  ClockCrossCheck out;
  out.spectrum_residual = (spin.eigenvalues - clk.eigenvalues).cwiseAbs().maxCoeff();

  ComplexVector phases(rep.dim());
  const ComplexMatrix h = rep.hamiltonian();
  for (Eigen::Index n = 0; n < rep.dim(); ++n) phases(n) = std::exp(-kI * h(n, n).real() * rep.tau);
  const ComplexMatrix f = dft_matrix(rep.dim());
  const ComplexMatrix u_from_h = f * phases.asDiagonal() * f.adjoint();
  out.evolution_residual = max_abs(u_from_h - clock::build_evolution_matrix(model));
  return out;
}

// ---------------------------------------------------------------------------
// Continuum limit

struct ScanRow {
  std::int64_t ell = 0;
  std::int64_t level = 0;
  double eigenvalue = 0.0;
  double deviation = 0.0;            // eigenvalue - w (n + 1/2)
  double predicted_deviation = 0.0;  // -w (1/4 + (n + 1/2)^2) / (2l + 1)
  int multiplicity = 0;
};

struct LevelFit {
  std::int64_t level = 0;
  double coefficient = 0.0;  // least-squares slope of deviation against 1/(2l+1)
  double predicted = 0.0;
  double relative_error = 0.0;
  double order = 0.0;        // -d log|dev| / d log(2l+1)
};

struct ContinuumScan {
  double omega = 0.0;
  std::vector<ScanRow> rows;
  std::vector<LevelFit> fits;
  double extrapolated_ground = 0.0;  // polynomial extrapolation of level 0 to 1/(2l+1) -> 0
};

inline double predicted_deviation(double omega, std::int64_t ell, std::int64_t level) {
  const double h = static_cast<double>(level) + 0.5;
  return -omega * (0.25 + h * h) / (2.0 * static_cast<double>(ell) + 1.0);
}

/// Neville extrapolation of samples y(h) to h = 0.
inline double extrapolate_to_zero(const std::vector<double>& h, std::vector<double> y) {
  require(h.size() == y.size() && !h.empty(), ErrorCode::kInvalidParameter, "extrapolation needs matched samples");
  const std::size_t n = h.size();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = n - 1; i >= k; --i) {
      y[i] = (h[i - k] * y[i] - h[i] * y[i - 1]) / (h[i - k] - h[i]);
      if (i == k) break;
    }
  }
  return y[n - 1];
}

/// Lowest distinct levels of w^2 x^2/2 + p^2/2 at fixed w for each l, with
/// tau = 2 pi / ((2l+1) w).
///
/// The operator equals w (l(l+1) - L_z^2) / (2l+1), so every level with
/// m != 0 is doubly degenerate (m and -m). Only the branch with low clock
/// energy survives the continuum limit; the scan groups degenerate pairs and
/// reports each distinct value once.
inline ContinuumScan continuum_scan(const std::vector<std::int64_t>& ells, double omega, std::int64_t levels) {
  require(omega > 0.0 && std::isfinite(omega), ErrorCode::kInvalidParameter, "omega must be positive");
  require(levels >= 1, ErrorCode::kInvalidParameter, "levels must be >= 1");
  require(!ells.empty(), ErrorCode::kInvalidParameter, "need at least one l");
  for (auto l : ells) {
    require(l >= levels, ErrorCode::kInvalidParameter,
            "l = " + std::to_string(l) + " is smaller than the requested level count");
  }

  ContinuumScan scan;
  scan.omega = omega;
  for (const auto ell : ells) {
    const double tau = 2.0 * kPi / ((2.0 * static_cast<double>(ell) + 1.0) * omega);
    const SpinRep rep = build_spin_rep(ell, tau);
    const Spectrum s = hermitian_eigensystem(oscillator_hamiltonian(rep));
    const double group_tol = 1e-9 * std::max(1.0, std::abs(s.eigenvalues(s.eigenvalues.size() - 1)));

    Eigen::Index k = 0;
    for (std::int64_t level = 0; level < levels; ++level) {
      double sum = s.eigenvalues(k);
      int count = 1;
      while (k + count < s.eigenvalues.size() && s.eigenvalues(k + count) - s.eigenvalues(k) <= group_tol) {
        sum += s.eigenvalues(k + count);
        ++count;
      }
      const double value = sum / count;
      k += count;
      ScanRow row;
      row.ell = ell;
      row.level = level;
      row.eigenvalue = value;
      row.deviation = value - omega * (static_cast<double>(level) + 0.5);
      row.predicted_deviation = predicted_deviation(omega, ell, level);
      row.multiplicity = count;
      scan.rows.push_back(row);
    }
  }

  for (std::int64_t level = 0; level < levels; ++level) {
    double sxy = 0.0, sxx = 0.0;
    double lx = 0.0, ly = 0.0, lxx = 0.0, lxy = 0.0;
    int n = 0;
    std::vector<double> hs, ys;
    for (const auto& row : scan.rows) {
      if (row.level != level) continue;
      const double h = 1.0 / (2.0 * static_cast<double>(row.ell) + 1.0);
      sxy += h * row.deviation;
      sxx += h * h;
      const double a = std::log(1.0 / h);
      const double b = std::log(std::abs(row.deviation));
      lx += a; ly += b; lxx += a * a; lxy += a * b;
      ++n;
      hs.push_back(h);
      ys.push_back(row.eigenvalue);
    }
    LevelFit fit;
    fit.level = level;
    fit.coefficient = sxy / sxx;
    const double h = static_cast<double>(level) + 0.5;
    fit.predicted = -omega * (0.25 + h * h);
    fit.relative_error = std::abs(fit.coefficient - fit.predicted) / std::abs(fit.predicted);
    if (n >= 2) {
      const double slope = (n * lxy - lx * ly) / (n * lxx - lx * lx);
      fit.order = -slope;
    }
    scan.fits.push_back(fit);
    if (level == 0) scan.extrapolated_ground = extrapolate_to_zero(hs, ys);
  }
  return scan;
}

}  // namespace ontolab::oscillator
