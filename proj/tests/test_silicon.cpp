#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include "iscr/silicon.hpp"
#include "testutil.hpp"

using namespace iscr;

TEST_CASE("reference operating points carry the committed dataset") {
  const auto& table = reference_operating_points();
  REQUIRE(table.size() == 6);
  validate_operating_point_table(table);

  const double coolant[6] = {25, 25, 35, 45, 60, 85};
  const double junction[6] = {31, 31, 41, 87.5, 104, 105};
  const VthFlavor flavor[6] = {VthFlavor::kULVT, VthFlavor::kLVT,
                               VthFlavor::kLVT,  VthFlavor::kSVT,
                               VthFlavor::kHVT,  VthFlavor::kHVT};
  const CoolingSystem cooling[6] = {
      CoolingSystem::kVaporChamber, CoolingSystem::kVaporChamber,
      CoolingSystem::kVaporChamber, CoolingSystem::kLiquid,
      CoolingSystem::kLiquid,       CoolingSystem::kLiquid};
  const double vdd[6] = {0.64, 0.69, 0.74, 0.82, 0.85, 0.88};
  const double clock[6] = {2.78, 2.72, 2.6, 2.38, 2.05, 1.35};
  const double e_dyn[6] = {0.138, 0.149, 0.170, 0.195, 0.209, 0.224};
  const double e_stat[6] = {0.032, 0.022, 0.034, 0.018, 0.065, 0.098};
  const double total[6] = {0.170, 0.171, 0.204, 0.213, 0.274, 0.322};

  for (int i = 0; i < 6; ++i) {
    const auto& p = table[i];
    REQUIRE(p.coolant_temp_c == coolant[i]);
    REQUIRE(p.junction_temp_c == junction[i]);
    REQUIRE(p.flavor == flavor[i]);
    REQUIRE(p.cooling == cooling[i]);
    REQUIRE(p.vdd_v == vdd[i]);
    REQUIRE(p.clock_ghz == clock[i]);
    REQUIRE(p.e_dynamic_j == e_dyn[i]);
    REQUIRE(p.e_static_j == e_stat[i]);
    REQUIRE(std::abs(total_energy_per_token(p) - total[i]) < 1e-12);
  }
}

TEST_CASE("table trends with coolant temperature") {
  const auto& table = reference_operating_points();
  for (std::size_t i = 1; i < table.size(); ++i) {
    REQUIRE(table[i].clock_ghz <= table[i - 1].clock_ghz);
    REQUIRE(table[i].vdd_v >= table[i - 1].vdd_v);
    REQUIRE(total_energy_per_token(table[i]) >=
            total_energy_per_token(table[i - 1]));
  }
  for (const auto& p : table) {
    REQUIRE(p.junction_temp_c > p.coolant_temp_c);
  }
  // Energy per token grows by more than 30% between 35 C and 60 C.
  const double e35 = total_energy_per_token(select_operating_point(35.0));
  const double e60 = total_energy_per_token(select_operating_point(60.0));
  REQUIRE(e60 / e35 - 1.0 > 0.30);
  REQUIRE(std::abs(e60 / e35 - 1.0 - 0.343137) < 0.0005);
}

TEST_CASE("total energy per token sums the two contributions") {
  SiliconOperatingPoint p = select_operating_point(35.0);
  REQUIRE(std::abs(total_energy_per_token(p) - 0.204) < 1e-12);
  p = select_operating_point(60.0);
  REQUIRE(std::abs(total_energy_per_token(p) - 0.274) < 1e-12);
  p.e_static_j = 0.0;
  REQUIRE(total_energy_per_token(p) == p.e_dynamic_j);
}

TEST_CASE("dynamic energy follows C times vdd squared") {
  // Anchors reproduce their own table cells.
  REQUIRE(std::abs(dynamic_energy(VthFlavor::kULVT, 0.64) - 0.138) < 1e-12);
  REQUIRE(std::abs(dynamic_energy(VthFlavor::kLVT, 0.74) - 0.170) < 1e-12);
  REQUIRE(std::abs(dynamic_energy(VthFlavor::kSVT, 0.82) - 0.195) < 1e-12);
  REQUIRE(std::abs(dynamic_energy(VthFlavor::kHVT, 0.85) - 0.209) < 1e-12);

  // Off-anchor cells land near the printed values.
  REQUIRE(std::abs(dynamic_energy(VthFlavor::kHVT, 0.88) - 0.224) < 0.002);
  REQUIRE(std::abs(dynamic_energy(VthFlavor::kLVT, 0.69) - 0.1478) < 0.002);
  REQUIRE(std::abs(dynamic_energy(VthFlavor::kLVT, 0.69) - 0.147804) <
          0.0005);

  // Every table cell is within the committed fit tolerance.
  for (const auto& p : reference_operating_points()) {
    REQUIRE(std::abs(dynamic_energy(p.flavor, p.vdd_v) - p.e_dynamic_j) <=
            0.003);
  }

  REQUIRE(dynamic_energy(VthFlavor::kSVT, 0.0) == 0.0);
  REQUIRE_THROWS_AS(dynamic_energy(VthFlavor::kSVT, -0.1), std::domain_error);
  REQUIRE_THROWS_AS(dynamic_energy(VthFlavor::kSVT, 1.6), std::domain_error);
}

TEST_CASE("dynamic energy is exactly quadratic in vdd") {
  std::mt19937_64 g(301);
  const VthFlavor flavors[] = {VthFlavor::kULVT, VthFlavor::kLVT,
                               VthFlavor::kSVT, VthFlavor::kHVT};
  for (int i = 0; i < 64; ++i) {
    const VthFlavor f = flavors[i % 4];
    const double v = testutil::uniform(g, 0.1, 0.7);
    const double ratio = dynamic_energy(f, 2.0 * v) / dynamic_energy(f, v);
    REQUIRE(std::abs(ratio - 4.0) < 1e-12);
  }
}

TEST_CASE("operating point selection is nearest row, ties toward cooler") {
  const auto p35 = select_operating_point(35.0);
  REQUIRE(p35.flavor == VthFlavor::kLVT);
  REQUIRE(p35.vdd_v == 0.74);
  REQUIRE(p35.clock_ghz == 2.6);
  REQUIRE(std::abs(total_energy_per_token(p35) - 0.204) < 1e-12);

  const auto p45 = select_operating_point(45.0);
  REQUIRE(p45.flavor == VthFlavor::kSVT);
  REQUIRE(p45.vdd_v == 0.82);
  REQUIRE(p45.clock_ghz == 2.38);
  REQUIRE(std::abs(total_energy_per_token(p45) - 0.213) < 1e-12);

  REQUIRE(select_operating_point(50.0).coolant_temp_c == 45.0);
  REQUIRE(select_operating_point(52.5).coolant_temp_c == 45.0);
  REQUIRE(select_operating_point(53.0).coolant_temp_c == 60.0);
  REQUIRE(select_operating_point(85.0).vdd_v == 0.88);
  REQUIRE(select_operating_point(73.0).coolant_temp_c == 85.0);
  REQUIRE(select_operating_point(72.5).coolant_temp_c == 60.0);

  // Two rows share the 25 C slot; the flag picks between them.
  REQUIRE(select_operating_point(25.0).flavor == VthFlavor::kULVT);
  REQUIRE(select_operating_point(25.0, false).flavor == VthFlavor::kLVT);

  REQUIRE_THROWS_AS(select_operating_point(24.9), std::domain_error);
  REQUIRE_THROWS_AS(select_operating_point(85.1), std::domain_error);
}

TEST_CASE("token normalized power rescales by the reference energy") {
  REQUIRE(std::abs(token_normalized_power(367.0, 0.204) - 383.2) < 0.05);
  REQUIRE(std::abs(token_normalized_power(408.0, 0.274) - 317.2) < 0.05);
  REQUIRE(std::abs(token_normalized_power(500.0, kReferenceEnergyPerToken) -
                   500.0) < 1e-9);
  REQUIRE_THROWS_AS(token_normalized_power(400.0, 0.0), std::domain_error);
  REQUIRE_THROWS_AS(token_normalized_power(400.0, -0.1), std::domain_error);

  std::mt19937_64 g(302);
  for (int i = 0; i < 32; ++i) {
    const double p = testutil::uniform(g, 100.0, 1000.0);
    const double e = testutil::uniform(g, 0.05, 0.5);
    const double s = testutil::uniform(g, 0.5, 4.0);
    const double a = token_normalized_power(p, e, 0.213);
    const double b = token_normalized_power(p, s * e, s * 0.213);
    REQUIRE(std::abs(a - b) / a < 1e-12);
  }
}

TEST_CASE("leakage fraction") {
  const auto p60 = select_operating_point(60.0);
  REQUIRE(std::abs(leakage_fraction(p60) - 0.065 / 0.209) < 1e-15);
  REQUIRE(std::abs(leakage_fraction(p60) - 0.311) < 0.0005);
  const auto p35 = select_operating_point(35.0);
  REQUIRE(std::abs(leakage_fraction(p35) - 0.20) < 1e-12);
  auto p = p35;
  p.e_static_j = 0.0;
  REQUIRE(leakage_fraction(p) == 0.0);
}

TEST_CASE("operating point invariants are enforced") {
  SiliconOperatingPoint p = select_operating_point(45.0);
  p.junction_temp_c = p.coolant_temp_c;
  REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);

  p = select_operating_point(45.0);
  p.vdd_v = 0.5;
  REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
  p.vdd_v = 1.0;
  REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);

  p = select_operating_point(45.0);
  p.e_dynamic_j = 0.0;
  REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);

  p = select_operating_point(45.0);
  p.e_static_j = -0.01;
  REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);

  // A custom table must keep clock non-increasing.
  auto table = reference_operating_points();
  table[2].clock_ghz = 2.8;
  REQUIRE_THROWS_AS(validate_operating_point_table(table),
                    std::invalid_argument);
  table = reference_operating_points();
  std::swap(table[2], table[4]);
  REQUIRE_THROWS_AS(validate_operating_point_table(table),
                    std::invalid_argument);
}
