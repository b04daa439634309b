#pragma once

// Black-hole state counting in Planck units (hbar = c = G = k = 1).

#include <cmath>
#include <numbers>

#include "ontolab/error.hpp"

namespace ontolab::blackhole {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLn2 = std::numbers::ln2;

struct PlanckQuantities {
  double mass = 1.0;
  double delta_e = 0.0;
  double integration_constant = 0.0;  // additive offset C in ln rho, shared by all holes
};

inline void check_mass(double m) {
  require(m > 0.0 && std::isfinite(m), ErrorCode::kNonpositiveMass, "black-hole mass must be positive");
}

/// T_H = 1 / (8 pi M)
inline double hawking_temperature(double mass) {
  check_mass(mass);
  return 1.0 / (8.0 * kPi * mass);
}

/// r_+ = 2M
inline double horizon_radius(double mass) {
  check_mass(mass);
  return 2.0 * mass;
}

/// sigma = 2 pi r_+^2 = 8 pi M^2
inline double absorption_cross_section(double mass) {
  const double r = horizon_radius(mass);
  return 2.0 * kPi * r * r;
}

struct DensityRatio {
  double first_order = 0.0;  // delta_e / T_H = 8 pi M delta_e
  double exact = 0.0;        // 4 pi (M + dE)^2 - 4 pi M^2
};

inline DensityRatio log_density_ratio(double mass, double delta_e) {
  check_mass(mass);
  require(mass + delta_e > 0.0, ErrorCode::kNonpositiveMass, "M + delta_e must stay positive");
  DensityRatio r;
  r.first_order = delta_e / hawking_temperature(mass);
  r.exact = 8.0 * kPi * mass * delta_e + 4.0 * kPi * delta_e * delta_e;
  return r;
}

struct HorizonCount {
  double area = 0.0;    // A = 4 pi r_+^2 = 16 pi M^2
  double bits = 0.0;    // A / A0 with A0 = 4 ln 2
  double ln_rho = 0.0;  // 4 pi M^2 + C
};

inline constexpr double kBitArea = 4.0 * kLn2;

inline HorizonCount horizon_bits(double mass, double integration_constant = 0.0) {
  const double r = horizon_radius(mass);
  HorizonCount h;
  h.area = 4.0 * kPi * r * r;
  h.bits = h.area / kBitArea;
  h.ln_rho = 4.0 * kPi * mass * mass + integration_constant;
  return h;
}

// Presentation only: SI conversion of the Hawking temperature (CODATA 2018).
namespace si {
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kSpeedOfLight = 299792458.0;  // m / s
inline constexpr double kGravitational = 6.67430e-11; // m^3 / (kg s^2)
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K
inline constexpr double kSolarMass = 1.98847e30;      // kg

/// T_H in kelvin for a mass in kilograms.
inline double hawking_temperature_kelvin(double mass_kg) {
  check_mass(mass_kg);
  return kHbar * kSpeedOfLight * kSpeedOfLight * kSpeedOfLight /
         (8.0 * kPi * kBoltzmann * kGravitational * mass_kg);
}
}  // namespace si

}  // namespace ontolab::blackhole
