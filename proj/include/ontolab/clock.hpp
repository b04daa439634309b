#pragma once

// The N-state periodic clock: a deterministic cyclic automaton and its exact
// unitary lift.
//
// Ontological states are indexed 0..N-1. Fourier sums elsewhere are often
// written over 1..N; the two agree because the phases are periodic in N.

#include <cmath>
#include <cstdint>
#include <string>

#include "ontolab/error.hpp"
#include "ontolab/linalg.hpp"

namespace ontolab::clock {

class ClockModel {
 public:
  ClockModel(std::int64_t n, double tau) : n_(n), tau_(tau) {
    require(n >= 1, ErrorCode::kInvalidParameter, "clock needs N >= 1");
    require(tau > 0.0 && std::isfinite(tau), ErrorCode::kInvalidParameter, "clock needs tau > 0");
  }

  std::int64_t size() const noexcept { return n_; }
  double tau() const noexcept { return tau_; }

  /// Closed-form level 2 pi (n + 1/2) / (N tau).
  double energy_level(std::int64_t level) const {
    return 2.0 * kPi * (static_cast<double>(level) + 0.5) / (static_cast<double>(n_) * tau_);
  }

 private:
  std::int64_t n_;
  double tau_;
};

inline void check_state(const ClockModel& model, std::int64_t nu) {
  require(nu >= 0 && nu < model.size(), ErrorCode::kIndexOutOfRange,
          "state " + std::to_string(nu) + " outside [0, " + std::to_string(model.size()) + ")");
}

/// (nu + steps) mod N
inline std::int64_t step_state(const ClockModel& model, std::int64_t nu, std::int64_t steps) {
  check_state(model, nu);
  require(steps >= 0, ErrorCode::kInvalidParameter, "steps must be non-negative");
  return (nu + steps % model.size()) % model.size();
}

/// U = e^{-i pi / N} P with P[mu][nu] = 1 iff mu = nu + 1 mod N.
inline ComplexMatrix build_evolution_matrix(const ClockModel& model) {
  const auto n = static_cast<Eigen::Index>(model.size());
  const Complex prefactor = std::polar(1.0, -kPi / static_cast<double>(n));
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (Eigen::Index nu = 0; nu < n; ++nu) u((nu + 1) % n, nu) = prefactor;
  return u;
}

/// Maps an eigenphase theta of U = e^{-i H tau} to the energy in (0, 2 pi / tau].
inline double energy_from_phase(double theta, double tau) {
  double x = std::fmod(-theta, 2.0 * kPi);
  if (x <= 0.0) x += 2.0 * kPi;
  return x / tau;
}

/// Energies obtained by numerically diagonalising U and reading off phases.
/// Eigenvectors are the matching columns, written in the ontological basis.
inline Spectrum energy_spectrum(const ClockModel& model) {
  const UnitarySpectrum us = unitary_eigensystem(build_evolution_matrix(model));
  RealVector energies(us.phases.size());
  for (Eigen::Index k = 0; k < energies.size(); ++k) energies(k) = energy_from_phase(us.phases(k), model.tau());
  return detail::sorted_spectrum(energies, us.eigenvectors);
}

/// Amplitudes <n|(nu)> = e^{2 pi i n nu / N} / sqrt(N), n = 0..N-1.
inline ComplexVector ontological_to_energy(const ClockModel& model, std::int64_t nu) {
  check_state(model, nu);
  const auto n = static_cast<Eigen::Index>(model.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexVector amps(n);
  for (Eigen::Index level = 0; level < n; ++level) {
    const auto k = (level * nu) % n;
    amps(level) = std::polar(scale, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  }
  return amps;
}

/// Diagonal of e^{-i E_n tau}, the eigenvalues U should show in the DFT basis.
inline ComplexVector evolution_eigenvalues(const ClockModel& model) {
  ComplexVector out(static_cast<Eigen::Index>(model.size()));
  for (Eigen::Index level = 0; level < out.size(); ++level) {
    out(level) = std::polar(1.0, -model.energy_level(level) * model.tau());
  }
  return out;
}

}  // namespace ontolab::clock
