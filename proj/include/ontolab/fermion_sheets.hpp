#pragma once

// A massless chiral (Weyl) fermion described by deterministic sheets.
//
// A sheet is an oriented plane with unit normal k (the direction it moves in)
// at signed distance z from the origin; it moves rigidly, z(t) = z(0) + t.
// Quantum states are amplitudes psi(k, z), stored on a grid in the variable
// conjugate to z, q = -i d/dz, with q = eta * exp(rho) and eta = sign(q) the
// helicity. Momentum is p = q k, so H = sigma.p acts on the sheet spinor as
// multiplication by q.
//
// Grid: Gauss-Legendre nodes in cos(theta), uniform phi, uniform rho.
//
// Position-space wave:
//   psi(x, s) = C (1 / 2 pi) Lap_x  Int dOmega  chi(k)_s  psi(k, z = k.x)
// with the Laplacian applied per plane wave (-q^2) and chi(k) the +1
// eigenvector of k.sigma,
//   chi(k) = (cos(theta/2), e^{+i phi} sin(theta/2)).
// The +i phi sign is what makes chi an eigenvector of k.sigma for
// k = (sin th cos ph, sin th sin ph, cos th); with it the deterministic sheet
// motion and Weyl evolution agree. C = -2 pi is fixed by requiring a unit
// single-direction state at q = 1 to give a unit-amplitude plane wave.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <Eigen/Sparse>

#include "ontolab/error.hpp"
#include "ontolab/linalg.hpp"
#include "ontolab/quadrature.hpp"

namespace ontolab::fermion {

using Vec3 = Eigen::Vector3d;
using Spinor = Eigen::Vector2cd;

inline constexpr double kWaveCalibration = -2.0 * kPi;

inline Vec3 direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Polar angles of a unit vector, theta in [0, pi], phi in [0, 2 pi).
inline std::array<double, 2> angles(const Vec3& k) {
  const double theta = std::acos(std::clamp(k.z(), -1.0, 1.0));
  double phi = std::atan2(k.y(), k.x());
  if (phi < 0.0) phi += 2.0 * kPi;
  return {theta, phi};
}

/// Positive-helicity spinor of direction k.
inline Spinor helicity_spinor(const Vec3& k) {
  const auto [theta, phi] = angles(k);
  return {std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi)};
}

/// k.sigma as a 2x2 matrix.
inline Eigen::Matrix2cd sigma_dot(const Vec3& k) {
  Eigen::Matrix2cd m;
  m << k.z(), Complex(k.x(), -k.y()), Complex(k.x(), k.y()), -k.z();
  return m;
}

/// A rotation taking the z axis to the unit vector `pole`.
inline Eigen::Matrix3d frame_for_pole(const Vec3& pole) {
  require(std::abs(pole.norm() - 1.0) < 1e-12, ErrorCode::kInvalidParameter, "pole must be a unit vector");
  const Eigen::Quaterniond q = Eigen::Quaterniond::FromTwoVectors(Vec3::UnitZ(), pole);
  Eigen::Matrix3d r = q.toRotationMatrix();
  r.col(2) = pole;  // exact pole, rest orthonormal to rounding
  return r;
}

/// Helicity-(+) plane wave e^{i q k.x} chi(k) with unit amplitude.
inline Spinor plane_wave(const Vec3& k, double q, const Vec3& x) {
  return std::polar(1.0, q * k.dot(x)) * helicity_spinor(k);
}

// ---------------------------------------------------------------------------
// Single sheets

struct SheetState {
  double theta = 0.0;
  double phi = 0.0;
  double z = 0.0;

  Vec3 normal() const { return direction(theta, phi); }
};

inline SheetState evolve_sheet(const SheetState& s, double t) { return {s.theta, s.phi, s.z + t}; }

/// Weighted mean of z over a sheet ensemble.
inline double mean_distance(std::span<const SheetState> sheets, std::span<const double> weights) {
  require(sheets.size() == weights.size() && !sheets.empty(), ErrorCode::kInvalidParameter,
          "sheet ensemble and weights differ in size");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < sheets.size(); ++i) {
    num += weights[i] * sheets[i].z;
    den += weights[i];
  }
  return num / den;
}

// ---------------------------------------------------------------------------
// Grids and states

struct GridSpec {
  int n_theta = 32;
  int n_phi = 64;
  int n_rho = 64;
  double rho_min = -3.0;
  double rho_max = 3.0;
  Eigen::Matrix3d frame = Eigen::Matrix3d::Identity();  // grid pole is frame * z

  Vec3 pole() const { return frame.col(2); }
};

/// One ingredient of a grid state. kappa > 0 gives a smooth cap
/// exp(kappa (k.n - 1)) around `direction`; kappa == 0 gives a
/// single-direction state, which must sit on the grid pole. rho_width > 0
/// gives a Gaussian profile in rho = log|q| around log|q0|; rho_width == 0
/// puts all weight on the rho node nearest log|q0|. sign(q0) is the helicity.
struct SheetComponent {
  Vec3 direction = Vec3::UnitZ();
  double kappa = 0.0;
  double q0 = 1.0;
  double rho_width = 0.0;
  Complex amplitude = 1.0;
};

/// A flattened quadrature sample: direction, signed q, measure and amplitude.
struct WaveSample {
  Vec3 k;
  double q = 0.0;
  double weight = 0.0;
  Complex amplitude;
};

class SheetGrid {
 public:
  explicit SheetGrid(GridSpec spec) : spec_(std::move(spec)) {
    require(spec_.n_theta >= 1 && spec_.n_phi >= 1 && spec_.n_rho >= 2, ErrorCode::kInvalidParameter,
            "grid sizes must be positive (n_rho >= 2)");
    require(spec_.rho_max > spec_.rho_min, ErrorCode::kInvalidParameter, "rho range is empty");
    require((spec_.frame.transpose() * spec_.frame - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12 &&
                spec_.frame.determinant() > 0.0,
            ErrorCode::kInvalidParameter, "grid frame must be a rotation");
    rule_ = quadrature::gauss_legendre(spec_.n_theta);
    directions_.reserve(static_cast<std::size_t>(spec_.n_theta * spec_.n_phi));
    for (int a = 0; a < spec_.n_theta; ++a) {
      const double theta = std::acos(rule_.nodes[static_cast<std::size_t>(a)]);
      for (int b = 0; b < spec_.n_phi; ++b) {
        directions_.push_back(spec_.frame * direction(theta, phi_node(b)));
      }
    }
    values_.assign(size(), Complex{});
  }

  const GridSpec& spec() const { return spec_; }
  std::size_t rays() const { return directions_.size(); }
  std::size_t size() const { return rays() * 2 * static_cast<std::size_t>(spec_.n_rho); }

  double phi_node(int b) const { return 2.0 * kPi * b / spec_.n_phi; }
  double rho_step() const { return (spec_.rho_max - spec_.rho_min) / (spec_.n_rho - 1); }
  double rho_node(int r) const { return spec_.rho_min + r * rho_step(); }
  /// Signed q of helicity slot h (0: eta = +1, 1: eta = -1) at rho node r.
  double q_node(int h, int r) const { return (h == 0 ? 1.0 : -1.0) * std::exp(rho_node(r)); }

  /// Angular weight of ray (a, b); the weights sum to 4 pi.
  double ray_weight(std::size_t ray) const {
    const auto a = ray / static_cast<std::size_t>(spec_.n_phi);
    return rule_.weights[a] * 2.0 * kPi / spec_.n_phi;
  }
  /// dq measure |q| d rho with trapezoid end weights.
  double q_weight(int r) const {
    const double end = (r == 0 || r == spec_.n_rho - 1) ? 0.5 : 1.0;
    return end * rho_step() * std::exp(rho_node(r));
  }
  const Vec3& ray_direction(std::size_t ray) const { return directions_[ray]; }
  double cos_theta_node(std::size_t ray) const { return rule_.nodes[ray / static_cast<std::size_t>(spec_.n_phi)]; }

  std::size_t index(std::size_t ray, int h, int r) const {
    return (ray * 2 + static_cast<std::size_t>(h)) * static_cast<std::size_t>(spec_.n_rho) + static_cast<std::size_t>(r);
  }
  Complex& at(std::size_t ray, int h, int r) { return values_[index(ray, h, r)]; }
  const Complex& at(std::size_t ray, int h, int r) const { return values_[index(ray, h, r)]; }
  std::vector<Complex>& values() { return values_; }
  const std::vector<Complex>& values() const { return values_; }

  const std::vector<SheetComponent>& components() const { return components_; }

  /// Sum over the grid of |psi|^2 times the angular and dq weights.
  double norm() const {
    double sum = 0.0;
    for (std::size_t ray = 0; ray < rays(); ++ray)
      for (int h = 0; h < 2; ++h)
        for (int r = 0; r < spec_.n_rho; ++r) sum += ray_weight(ray) * q_weight(r) * std::norm(at(ray, h, r));
    return std::sqrt(sum);
  }

  void normalize() {
    const double n = norm();
    require(n > 0.0, ErrorCode::kInvalidParameter, "cannot normalise a zero state");
    for (auto& v : values_) v /= n;
  }

  void add(const SheetComponent& c) {
    require(std::abs(c.direction.norm() - 1.0) < 1e-12, ErrorCode::kInvalidParameter, "direction must be a unit vector");
    require(c.q0 != 0.0 && std::isfinite(c.q0), ErrorCode::kInvalidParameter, "q0 must be nonzero");
    require(c.kappa >= 0.0 && c.rho_width >= 0.0, ErrorCode::kInvalidParameter, "kappa and rho_width must be >= 0");
    const int h = c.q0 > 0.0 ? 0 : 1;
    const std::vector<double> angular = angular_profile(c);
    const std::vector<double> radial = radial_profile(c);
    const Spinor centre = helicity_spinor(c.direction);
    for (std::size_t ray = 0; ray < rays(); ++ray) {
      Complex g = angular[ray];
      if (c.kappa == 0.0) {
        // single-direction kernel: divide by the spinor overlap so the
        // integrand seen by the quadrature stays analytic on the sphere
        g /= centre.dot(helicity_spinor(directions_[ray]));
      }
      if (g == Complex{}) continue;
      for (int r = 0; r < spec_.n_rho; ++r) {
        if (radial[static_cast<std::size_t>(r)] != 0.0) at(ray, h, r) += c.amplitude * g * radial[static_cast<std::size_t>(r)];
      }
    }
    components_.push_back(c);
  }

  /// The same components resampled on another grid.
  SheetGrid resampled(const GridSpec& spec) const {
    SheetGrid g(spec);
    for (const auto& c : components_) g.add(c);
    return g;
  }

  /// Deterministic motion: every sheet advances by t, i.e. psi(k, z) -> psi(k, z - t),
  /// which multiplies each q component by e^{-i q t}.
  SheetGrid evolved(double t) const {
    SheetGrid out = *this;
    for (std::size_t ray = 0; ray < rays(); ++ray)
      for (int h = 0; h < 2; ++h)
        for (int r = 0; r < spec_.n_rho; ++r) out.at(ray, h, r) *= std::exp(-kI * q_node(h, r) * t);
    return out;
  }

  std::vector<WaveSample> samples() const {
    std::vector<WaveSample> out;
    for (std::size_t ray = 0; ray < rays(); ++ray)
      for (int h = 0; h < 2; ++h)
        for (int r = 0; r < spec_.n_rho; ++r) {
          const Complex v = at(ray, h, r);
          if (v == Complex{}) continue;
          out.push_back({directions_[ray], q_node(h, r), ray_weight(ray) * q_weight(r), v});
        }
    return out;
  }

 private:
  std::vector<double> angular_profile(const SheetComponent& c) const {
    std::vector<double> g(rays(), 0.0);
    if (c.kappa > 0.0) {
      const double norm = c.kappa / (2.0 * kPi * (1.0 - std::exp(-2.0 * c.kappa)));
      for (std::size_t ray = 0; ray < rays(); ++ray) {
        g[ray] = norm * std::exp(c.kappa * (directions_[ray].dot(c.direction) - 1.0));
      }
      return g;
    }
    require((c.direction - spec_.pole()).norm() < 1e-12, ErrorCode::kInvalidParameter,
            "a single-direction component must lie on the grid pole; rotate the grid frame");
    const std::vector<double> kernel = quadrature::endpoint_kernel(rule_);
    for (std::size_t ray = 0; ray < rays(); ++ray) {
      g[ray] = kernel[ray / static_cast<std::size_t>(spec_.n_phi)] / (2.0 * kPi);
    }
    return g;
  }

  std::vector<double> radial_profile(const SheetComponent& c) const {
    std::vector<double> p(static_cast<std::size_t>(spec_.n_rho), 0.0);
    const double centre = std::log(std::abs(c.q0));
    if (c.rho_width > 0.0) {
      double total = 0.0;
      for (int r = 0; r < spec_.n_rho; ++r) {
        const double d = (rho_node(r) - centre) / c.rho_width;
        p[static_cast<std::size_t>(r)] = std::exp(-0.5 * d * d);
        total += q_weight(r) * p[static_cast<std::size_t>(r)];
      }
      for (auto& v : p) v /= total;
      return p;
    }
    require(centre >= spec_.rho_min - 0.5 * rho_step() && centre <= spec_.rho_max + 0.5 * rho_step(),
            ErrorCode::kInvalidParameter, "|q0| outside the rho grid");
    const int r = static_cast<int>(std::lround((centre - spec_.rho_min) / rho_step()));
    p[static_cast<std::size_t>(r)] = 1.0 / q_weight(r);
    return p;
  }

  GridSpec spec_;
  quadrature::Rule rule_;
  std::vector<Vec3> directions_;
  std::vector<Complex> values_;
  std::vector<SheetComponent> components_;
};

// ---------------------------------------------------------------------------
// Position-space wave

struct QuadratureConfig {
  bool check_refinement = false;
  double tolerance = 1e-6;  // relative change allowed when angular resolution grows by 50%
};

/// Calibrated wave at x from flattened samples.
inline Spinor position_wave(std::span<const WaveSample> samples, const Vec3& x) {
  Spinor acc = Spinor::Zero();
  for (const auto& s : samples) {
    const Complex laplacian = -s.q * s.q;
    const Complex phase = std::polar(1.0, s.q * s.k.dot(x));
    acc += (s.weight * laplacian * s.amplitude * phase) * helicity_spinor(s.k);
  }
  return (kWaveCalibration / (2.0 * kPi)) * acc;
}

inline GridSpec refined(const GridSpec& spec) {
  GridSpec out = spec;
  out.n_theta = (3 * spec.n_theta + 1) / 2;
  out.n_phi = (3 * spec.n_phi + 1) / 2;
  return out;
}

inline Spinor beable_to_position_wave(const SheetGrid& grid, const Vec3& x, const QuadratureConfig& cfg = {}) {
  const std::vector<WaveSample> samples = grid.samples();
  const Spinor psi = position_wave(samples, x);
  if (cfg.check_refinement && !grid.components().empty()) {
    const SheetGrid fine = grid.resampled(refined(grid.spec()));
    const std::vector<WaveSample> fine_samples = fine.samples();
    const Spinor psi_fine = position_wave(fine_samples, x);
    const double change = (psi - psi_fine).norm() / std::max(psi_fine.norm(), 1e-300);
    if (change > cfg.tolerance) {
      fail(ErrorCode::kQuadratureUnderResolved,
           "refining the angular grid by 50% changed the wave by " + std::to_string(change));
    }
  }
  return psi;
}

/// The same wave, evolved by Weyl dynamics after the transform: every plane
/// wave component with momentum p = q k is propagated with exp(-i sigma.p t)
/// acting on its spinor, without using the helicity label.
inline Spinor weyl_evolved_wave(std::span<const WaveSample> samples, const Vec3& x, double t) {
  Spinor acc = Spinor::Zero();
  for (const auto& s : samples) {
    const Vec3 p = s.q * s.k;
    const double mag = p.norm();
    const Eigen::Matrix2cd u = std::cos(mag * t) * Eigen::Matrix2cd::Identity() -
                               kI * std::sin(mag * t) * sigma_dot(p / mag);
    const Complex laplacian = -s.q * s.q;
    const Complex phase = std::polar(1.0, p.dot(x));
    acc += (s.weight * laplacian * s.amplitude * phase) * (u * helicity_spinor(s.k));
  }
  return (kWaveCalibration / (2.0 * kPi)) * acc;
}

struct WeylCheck {
  double max_deviation = 0.0;
  std::vector<double> deviations;  // one per x sample
};

/// Deterministic sheet motion followed by the transform, against the
/// transform followed by Weyl evolution. The diagram commutes exactly when
/// the sheet spinor is the k.sigma = +1 eigenvector.
inline WeylCheck weyl_consistency_check(const SheetGrid& grid, double t, std::span<const Vec3> xs) {
  const std::vector<WaveSample> moved = grid.evolved(t).samples();
  const std::vector<WaveSample> base = grid.samples();
  WeylCheck out;
  for (const auto& x : xs) {
    const Spinor a = position_wave(moved, x);
    const Spinor b = weyl_evolved_wave(base, x, t);
    out.deviations.push_back((a - b).norm());
    out.max_deviation = std::max(out.max_deviation, out.deviations.back());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Beable commutators

using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct CommutatorEntry {
  std::string pair;
  double norm = 0.0;
};

struct BeableReport {
  std::vector<CommutatorEntry> commutators;
  double max_commutator = 0.0;
  double helicity_spectrum_residual = 0.0;     // max | eig(k.sigma) -/+ 1 |
  double dilatation_hermiticity = 0.0;         // max |D - D^dagger|
  double dilatation_discretization_error = 0.0;  // max |D f - i f'| on a Gaussian, interior nodes
  std::size_t dimension = 0;
};

/// Builds the beable operators on the grid Hilbert space (ray x helicity x rho):
/// the direction components k_i and the helicity are diagonal, and the
/// dilatation p.x, represented as i d/d rho with an antisymmetric central
/// stencil, acts only along rho. Returns all pairwise commutator norms.
inline BeableReport beable_commutator_residuals(const SheetGrid& grid) {
  const int n_rho = grid.spec().n_rho;
  require(n_rho >= 8, ErrorCode::kGridTooSmall, "beable check needs n_rho >= 8");
  const auto dim = static_cast<Eigen::Index>(grid.size());
  const double step = grid.rho_step();

  std::array<SparseMatrix, 3> k;
  SparseMatrix helicity(dim, dim), dilatation(dim, dim);
  {
    std::array<std::vector<Eigen::Triplet<Complex>>, 3> kt;
    std::vector<Eigen::Triplet<Complex>> ht, dt;
    for (std::size_t ray = 0; ray < grid.rays(); ++ray) {
      for (int h = 0; h < 2; ++h) {
        for (int r = 0; r < n_rho; ++r) {
          const auto i = static_cast<Eigen::Index>(grid.index(ray, h, r));
          for (int c = 0; c < 3; ++c) kt[static_cast<std::size_t>(c)].emplace_back(i, i, grid.ray_direction(ray)(c));
          ht.emplace_back(i, i, h == 0 ? 1.0 : -1.0);
          if (r + 1 < n_rho) dt.emplace_back(i, i + 1, kI / (2.0 * step));
          if (r > 0) dt.emplace_back(i, i - 1, -kI / (2.0 * step));
        }
      }
    }
    for (int c = 0; c < 3; ++c) {
      k[static_cast<std::size_t>(c)].resize(dim, dim);
      k[static_cast<std::size_t>(c)].setFromTriplets(kt[static_cast<std::size_t>(c)].begin(), kt[static_cast<std::size_t>(c)].end());
    }
    helicity.setFromTriplets(ht.begin(), ht.end());
    dilatation.setFromTriplets(dt.begin(), dt.end());
  }

  BeableReport report;
  report.dimension = grid.size();
  auto record = [&](const std::string& name, const SparseMatrix& a, const SparseMatrix& b) {
    const SparseMatrix c = SparseMatrix(a * b) - SparseMatrix(b * a);
    report.commutators.push_back({name, c.norm()});
    report.max_commutator = std::max(report.max_commutator, report.commutators.back().norm);
  };
  const char* axes[] = {"kx", "ky", "kz"};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      record(std::string("[") + axes[i] + "," + axes[j] + "]", k[static_cast<std::size_t>(i)], k[static_cast<std::size_t>(j)]);
  for (int i = 0; i < 3; ++i) record(std::string("[") + axes[i] + ",helicity]", k[static_cast<std::size_t>(i)], helicity);
  for (int i = 0; i < 3; ++i) record(std::string("[") + axes[i] + ",dilatation]", k[static_cast<std::size_t>(i)], dilatation);
  record("[helicity,dilatation]", helicity, dilatation);

  const SparseMatrix dd = SparseMatrix(dilatation.adjoint()) - dilatation;
  report.dilatation_hermiticity = dd.nonZeros() == 0 ? 0.0 : dd.coeffs().cwiseAbs().maxCoeff();

  for (std::size_t ray = 0; ray < grid.rays(); ++ray) {
    const Spectrum s = hermitian_eigensystem(sigma_dot(grid.ray_direction(ray)));
    report.helicity_spectrum_residual =
        std::max({report.helicity_spectrum_residual, std::abs(s.eigenvalues(0) + 1.0), std::abs(s.eigenvalues(1) - 1.0)});
  }

  // Discretisation of i d/d rho on f = exp(-rho^2), interior nodes of one block.
  const double centre = 0.5 * (grid.spec().rho_min + grid.spec().rho_max);
  Eigen::VectorXcd f(dim);
  f.setZero();
  for (int r = 0; r < n_rho; ++r) {
    const double x = grid.rho_node(r) - centre;
    f(static_cast<Eigen::Index>(grid.index(0, 0, r))) = std::exp(-x * x);
  }
  const Eigen::VectorXcd df = dilatation * f;
  for (int r = 1; r + 1 < n_rho; ++r) {
    const double x = grid.rho_node(r) - centre;
    const Complex exact = kI * (-2.0 * x * std::exp(-x * x));
    report.dilatation_discretization_error =
        std::max(report.dilatation_discretization_error, std::abs(df(static_cast<Eigen::Index>(grid.index(0, 0, r))) - exact));
  }
  return report;
}

}  // namespace ontolab::fermion
