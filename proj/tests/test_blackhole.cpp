#include <gtest/gtest.h>

#include "ontolab/blackhole.hpp"
#include "oracles/oracles.hpp"

using namespace ontolab;

TEST(Blackhole, UnitMassQuantities) {
  const double pi = oracle::kPi;
  EXPECT_NEAR(blackhole::hawking_temperature(1.0), 1.0 / (8.0 * pi), 1e-15);
  EXPECT_NEAR(blackhole::absorption_cross_section(1.0), 8.0 * pi, 1e-13);
  const auto h = blackhole::horizon_bits(1.0, 0.25);
  EXPECT_NEAR(h.bits, 4.0 * pi / std::log(2.0), 1e-12);
  EXPECT_NEAR(h.area, 16.0 * pi, 1e-12);
  EXPECT_NEAR(h.ln_rho, 4.0 * pi + 0.25, 1e-12);
  EXPECT_NEAR(blackhole::hawking_temperature(1.0), 0.03978874, 1e-8);
  EXPECT_NEAR(blackhole::absorption_cross_section(1.0), 25.1327, 1e-4);
}

TEST(Blackhole, DetailedBalanceIsExact) {
  for (double m : {0.01, 1.0, 3.7, 1e6}) {
    for (double de : {-1e-3, 1e-9, 0.5}) {
      if (m + de <= 0) continue;
      const auto r = blackhole::log_density_ratio(m, de);
      EXPECT_EQ(r.first_order, de / blackhole::hawking_temperature(m));
      const double exact = 4 * oracle::kPi * de * (2 * m + de);  // factored: no cancellation
      EXPECT_NEAR(r.exact, exact, 1e-9 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST(Blackhole, LogDensitySlopeIsInverseTemperature) {
  for (double m : {0.5, 1.0, 10.0}) {
    const double h = 1e-4 * m;
    const double fd = (blackhole::horizon_bits(m + h).ln_rho - blackhole::horizon_bits(m - h).ln_rho) / (2 * h);
    EXPECT_NEAR(fd / (8 * oracle::kPi * m), 1.0, 1e-6);
    EXPECT_NEAR(fd, 1.0 / blackhole::hawking_temperature(m), 1e-6 * fd);
  }
}

TEST(Blackhole, SolarMassTemperatureInKelvin) {
  EXPECT_NEAR(blackhole::si::hawking_temperature_kelvin(blackhole::si::kSolarMass), 6.17e-8, 0.01e-8);
}

TEST(Blackhole, NonpositiveMassRejected) {
  for (double m : {0.0, -1.0}) {
    try {
      blackhole::hawking_temperature(m);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNonpositiveMass);
    }
  }
  EXPECT_THROW(blackhole::log_density_ratio(1.0, -1.0), Error);
}
