#pragma once

// Quantum generator for a classical first-order flow dq/dt = f(q) on the
// periodic interval [0, 2 pi), hbar = 1.
//
// H = (P F + F P) / 2 with P = -i d/dq applied spectrally and F = diag(f).
// The symmetric ordering keeps H Hermitian on the grid; with it |psi|^2 obeys
// the continuity equation of the flow, so the density is carried along the
// classical characteristics. H is linear in P and unbounded below whenever f
// has a nonzero mean.

#include <cmath>
#include <string>
#include <vector>

#include "ontolab/error.hpp"
#include "ontolab/linalg.hpp"

namespace ontolab::flow {

struct FlowSystem {
  std::size_t grid_size = 0;
  std::vector<double> f_samples;  // f(q_j) at q_j = 2 pi j / grid_size
  double dt = 0.01;               // step of the characteristic integrator

  double spacing() const { return 2.0 * kPi / static_cast<double>(grid_size); }
  double node(std::size_t j) const { return spacing() * static_cast<double>(j); }
};

inline void validate(const FlowSystem& sys) {
  require(sys.grid_size >= 16, ErrorCode::kInvalidParameter, "flow grid needs at least 16 points");
  require(sys.f_samples.size() == sys.grid_size, ErrorCode::kInvalidParameter,
          "f_samples length differs from grid_size");
  require(sys.dt > 0.0, ErrorCode::kInvalidParameter, "dt must be positive");
  for (double v : sys.f_samples) require(std::isfinite(v), ErrorCode::kInvalidParameter, "f must be finite");
}

/// Samples f(q) = c0 + a1 sin q + b1 cos q.
inline FlowSystem harmonic_flow(std::size_t grid_size, double c0, double a1, double b1, double dt = 0.01) {
  FlowSystem sys;
  sys.grid_size = grid_size;
  sys.dt = dt;
  sys.f_samples.resize(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double q = sys.node(j);
    sys.f_samples[j] = c0 + a1 * std::sin(q) + b1 * std::cos(q);
  }
  return sys;
}

/// Signed integer wavenumber of DFT index k; the Nyquist mode is zeroed so the
/// derivative maps real functions to real functions.
inline double wavenumber(std::size_t k, std::size_t n) {
  if (2 * k == n) return 0.0;
  return k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
}

/// Spectral momentum P = -i d/dq on the periodic grid.
inline ComplexMatrix momentum_operator(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  // e_k(q_j) = exp(i k q_j) / sqrt(n)
  ComplexMatrix modes(dim, dim);
  ComplexVector k(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    k(c) = wavenumber(static_cast<std::size_t>(c), n);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto phase = (j * c) % dim;
      modes(j, c) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                               2.0 * kPi * static_cast<double>(phase) / static_cast<double>(n));
    }
  }
  return modes * k.asDiagonal() * modes.adjoint();
}

inline ComplexMatrix build_flow_generator(const FlowSystem& sys) {
  validate(sys);
  const ComplexMatrix p = momentum_operator(sys.grid_size);
  const auto dim = static_cast<Eigen::Index>(sys.grid_size);
  ComplexVector f(dim);
  for (Eigen::Index j = 0; j < dim; ++j) f(j) = sys.f_samples[static_cast<std::size_t>(j)];
  const ComplexMatrix pf = p * f.asDiagonal();
  ComplexMatrix h = 0.5 * (pf + f.asDiagonal() * p);
  return h;
}

/// Trigonometric interpolant of the samples, evaluated anywhere.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const FlowSystem& sys) : n_(sys.grid_size) {
    const std::size_t half = (n_ - 1) / 2;  // modes 1..half pair with their negatives
    coeff_.assign(half + 1, Complex{});
    for (std::size_t k = 0; k <= half; ++k) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) acc += sys.f_samples[j] * std::polar(1.0, -static_cast<double>(k) * sys.node(j));
      coeff_[k] = acc / static_cast<double>(n_);
    }
    if (n_ % 2 == 0) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) acc += sys.f_samples[j] * ((j % 2 == 0) ? 1.0 : -1.0);
      nyquist_ = acc / static_cast<double>(n_);
    }
  }

  double operator()(double q) const {
    const Complex step = std::polar(1.0, q);
    Complex z = step;
    double sum = coeff_[0].real();
    for (std::size_t k = 1; k < coeff_.size(); ++k) {
      sum += 2.0 * (coeff_[k] * z).real();
      z *= step;
    }
    if (n_ % 2 == 0) sum += nyquist_ * std::cos(0.5 * static_cast<double>(n_) * q);
    return sum;
  }

 private:
  std::size_t n_;
  std::vector<Complex> coeff_;
  double nyquist_ = 0.0;
};

/// Classical RK4 integration of dq/dt = f(q) for every starting point at once.
template <class F>
std::vector<double> integrate_characteristics(const F& f, std::vector<double> q, double t, double dt) {
  if (t == 0.0) return q;
  const auto steps = static_cast<long>(std::ceil(std::abs(t) / dt));
  const double h = t / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    for (auto& x : q) {
      const double k1 = f(x);
      const double k2 = f(x + 0.5 * h * k1);
      const double k3 = f(x + 0.5 * h * k2);
      const double k4 = f(x + h * k3);
      x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return q;
}

/// Wrapped difference in (-pi, pi].
inline double circular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * kPi));
}

/// Circular mean arg(sum_j w_j e^{i q_j}), in [0, 2 pi).
inline double circular_mean(const std::vector<double>& weights, const std::vector<double>& q) {
  Complex acc = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) acc += weights[j] * std::polar(1.0, q[j]);
  double m = std::arg(acc);
  if (m < 0.0) m += 2.0 * kPi;
  return m;
}

/// Gaussian packet with density standard deviation `width`, wrapped onto the
/// circle and normalised on the grid.
inline ComplexVector gaussian_packet(const FlowSystem& sys, double center, double width) {
  const auto dim = static_cast<Eigen::Index>(sys.grid_size);
  ComplexVector psi(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    double amp = 0.0;
    for (int wrap = -3; wrap <= 3; ++wrap) {
      const double d = sys.node(static_cast<std::size_t>(j)) - center + 2.0 * kPi * wrap;
      amp += std::exp(-d * d / (4.0 * width * width));
    }
    psi(j) = amp;
  }
  psi.normalize();
  return psi;
}

struct TransportSample {
  double t = 0.0;
  double mean_quantum = 0.0;
  double mean_classical = 0.0;  // initial density carried along RK4 characteristics
  double center_classical = 0.0;  // single characteristic from the packet centre
  double deviation = 0.0;       // circular |mean_quantum - mean_classical|
  double norm_drift = 0.0;      // | ||psi(t)|| - 1 |
};

struct TransportReport {
  double packet_center = 0.0;
  double packet_width = 0.0;
  /// Expected O(width^2) offset between the packet mean and the single
  /// central characteristic, estimated as |center_classical - mean_classical|.
  double width_bias = 0.0;
  double waveform_residual = 0.0;  // only for constant f: max|psi(t) - shifted psi(0)|
  std::vector<TransportSample> samples;

  const TransportSample& final() const { return samples.back(); }
};

/// Evolves a Gaussian packet with e^{-iHt} and compares the circular mean of
/// |psi|^2 with the initial density transported along independently integrated
/// characteristics.
inline TransportReport transport_check(const FlowSystem& sys, double packet_center, double t_final,
                                       double packet_width = 0.1, std::size_t samples = 1) {
  validate(sys);
  require(samples >= 1, ErrorCode::kInvalidParameter, "need at least one sample time");
  if (!(packet_width >= 4.0 * sys.spacing() * (1.0 - 1e-12))) {
    fail(ErrorCode::kPacketUnresolved, "packet width " + std::to_string(packet_width) +
                                           " is below 4 grid spacings (" + std::to_string(4.0 * sys.spacing()) + ")");
  }

  const ComplexMatrix h = build_flow_generator(sys);
  const Spectrum spec = hermitian_eigensystem(h);
  const ComplexVector psi0 = gaussian_packet(sys, packet_center, packet_width);
  const ComplexVector coeff = spec.eigenvectors.adjoint() * psi0;

  const TrigInterpolant f(sys);
  const auto n = sys.grid_size;
  std::vector<double> nodes(n), rho0(n);
  for (std::size_t j = 0; j < n; ++j) {
    nodes[j] = sys.node(j);
    rho0[j] = std::norm(psi0(static_cast<Eigen::Index>(j)));
  }

  TransportReport report;
  report.packet_center = packet_center;
  report.packet_width = packet_width;
  for (std::size_t s = 1; s <= samples; ++s) {
    const double t = t_final * static_cast<double>(s) / static_cast<double>(samples);
    ComplexVector phased(coeff.size());
    for (Eigen::Index k = 0; k < coeff.size(); ++k) phased(k) = coeff(k) * std::exp(-kI * spec.eigenvalues(k) * t);
    const ComplexVector psi = spec.eigenvectors * phased;

    std::vector<double> rho(n);
    for (std::size_t j = 0; j < n; ++j) rho[j] = std::norm(psi(static_cast<Eigen::Index>(j)));

    TransportSample sample;
    sample.t = t;
    sample.mean_quantum = circular_mean(rho, nodes);
    sample.mean_classical = circular_mean(rho0, integrate_characteristics(f, nodes, t, sys.dt));
    double c = integrate_characteristics(f, std::vector<double>{packet_center}, t, sys.dt).front();
    c = std::fmod(c, 2.0 * kPi);
    sample.center_classical = c < 0.0 ? c + 2.0 * kPi : c;
    sample.deviation = circular_distance(sample.mean_quantum, sample.mean_classical);
    sample.norm_drift = std::abs(psi.norm() - 1.0);
    report.samples.push_back(sample);

    if (s == samples) {
      report.width_bias = circular_distance(sample.center_classical, sample.mean_classical);
      bool constant = true;
      for (double v : sys.f_samples) constant = constant && v == sys.f_samples.front();
      if (constant) {
        const ComplexVector moved = gaussian_packet(sys, packet_center + sys.f_samples.front() * t, packet_width);
        // a rigid shift preserves the packet up to a global phase
        const Complex overlap = moved.dot(psi);
        report.waveform_residual = (psi - moved * (overlap / std::abs(overlap))).cwiseAbs().maxCoeff();
      }
    }
  }
  return report;
}

}  // namespace ontolab::flow
