#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "iscr/panel_budget.hpp"

using namespace iscr;

TEST_CASE("baseline materials dataset") {
  const PanelDesign d = baseline_panel_design();
  REQUIRE(d.solar.size() == 4);
  REQUIRE(d.compute.size() == 5);
  REQUIRE(d.radiator.size() == 7);
  d.validate();

  // Published per-row masses, kg/m^2, in dataset order.
  const double solar_mass[4] = {0.13, 0.23, 0.09, 0.06};
  const double compute_mass[5] = {0.04, 0.01, 0.09, 0.07, 0.02};
  const double radiator_mass[7] = {0.45, 0.35, 0.675, 0.56, 0.18, 0.13,
                                   0.02};
  for (int i = 0; i < 4; ++i) {
    REQUIRE(std::abs(d.solar[i].mass_kg_m2() - solar_mass[i]) <= 0.01);
  }
  for (int i = 0; i < 5; ++i) {
    REQUIRE(std::abs(d.compute[i].mass_kg_m2() - compute_mass[i]) <= 0.01);
  }
  for (int i = 0; i < 7; ++i) {
    REQUIRE(std::abs(d.radiator[i].mass_kg_m2() - radiator_mass[i]) <= 0.01);
  }
}

TEST_CASE("group subtotals at full precision") {
  const PanelDesign d = baseline_panel_design();
  const double solar = group_mass_density(d.solar);
  const double compute = group_mass_density(d.compute);
  const double radiator = group_mass_density(d.radiator);

  REQUIRE(std::abs(solar - 0.52007) < 1e-9);
  REQUIRE(std::abs(compute - 0.228497) < 1e-9);
  REQUIRE(std::abs(radiator - 2.3675) < 1e-9);

  REQUIRE(std::abs(solar - 0.52) < 0.05);
  REQUIRE(std::abs(compute - 0.23) < 0.05);
  REQUIRE(std::abs(radiator - 2.4) < 0.05);

  REQUIRE(group_mass_density({}) == 0.0);
}

TEST_CASE("panel mass density sums the groups") {
  const PanelDesign d = baseline_panel_design();
  const double total = panel_mass_density(d);
  REQUIRE(std::abs(total - 3.116067) < 1e-9);
  REQUIRE(std::abs(total - 3.15) < 0.05);
  REQUIRE(std::abs(total - (group_mass_density(d.solar) +
                            group_mass_density(d.compute) +
                            group_mass_density(d.radiator))) < 1e-12);

  PanelDesign single = d;
  single.compute.clear();
  single.radiator.clear();
  REQUIRE(panel_mass_density(single) == group_mass_density(d.solar));
}

TEST_CASE("mass density is permutation invariant") {
  PanelDesign d = baseline_panel_design();
  const double before = panel_mass_density(d);
  std::mt19937_64 g(401);
  for (int i = 0; i < 8; ++i) {
    std::shuffle(d.solar.begin(), d.solar.end(), g);
    std::shuffle(d.compute.begin(), d.compute.end(), g);
    std::shuffle(d.radiator.begin(), d.radiator.end(), g);
    REQUIRE(std::abs(panel_mass_density(d) - before) / before < 1e-12);
  }
}

TEST_CASE("panel area for a power target") {
  REQUIRE(std::abs(panel_area_for_power(1000.0, 345.0) - 2.898551) < 5e-7);
  REQUIRE(std::abs(panel_area_for_power(1000.0, 345.0) - 2.90) < 0.005);
  REQUIRE(std::abs(panel_area_for_power(1000.0, 363.0) - 2.754821) < 5e-7);
  REQUIRE(panel_area_for_power(0.0, 345.0) == 0.0);
  REQUIRE_THROWS_AS(panel_area_for_power(1000.0, 0.0), std::domain_error);
  REQUIRE_THROWS_AS(panel_area_for_power(1000.0, -5.0), std::domain_error);
  REQUIRE_THROWS_AS(panel_area_for_power(-1.0, 345.0), std::domain_error);
}

TEST_CASE("array specific power") {
  REQUIRE(std::abs(array_specific_power(363.0, 0.718) - 505.571) < 0.0005);
  REQUIRE(std::abs(array_specific_power(363.0, 0.718) - 505.6) < 0.05);
  REQUIRE(array_specific_power(42.0, 1.0) == 42.0);
  REQUIRE(std::abs(array_specific_power(239.0, 4.78) - 50.0) < 1e-9);
  REQUIRE_THROWS_AS(array_specific_power(100.0, 0.0), std::domain_error);
  REQUIRE_THROWS_AS(array_specific_power(100.0, -1.0), std::domain_error);
}

TEST_CASE("stack thickness counts load-path layers only") {
  const auto& stack = baseline_cross_section();
  const double t = panel_stack_thickness_mm(stack);
  REQUIRE(std::abs(t - 6.45) < 1e-12);
  REQUIRE(std::abs(t - 6.4) < 0.2);

  // The reflector films ride inside the gap and add no height.
  double within_gap = 0.0;
  for (const auto& layer : stack) {
    if (layer.within_gap) within_gap += layer.thickness_mm;
  }
  REQUIRE(std::abs(within_gap - 0.31) < 1e-12);
}

TEST_CASE("baseline flux figures") {
  REQUIRE(std::abs(kBaselineNetComputeFluxW_m2 - 344.8) < 0.05);
  REQUIRE(kCellFluxSsoW_m2 == 363.0);
}

TEST_CASE("design invariants are enforced") {
  PanelDesign d = baseline_panel_design();
  REQUIRE(d.side_m == 1.7);
  REQUIRE(d.area_m2 == 2.9);
  REQUIRE(d.compute_power_w == 1000.0);
  REQUIRE(d.link_bandwidth_gb_s == 100.0);

  d.area_m2 = 3.2;  // no longer side^2 within 0.5%
  REQUIRE_THROWS_AS(d.validate(), std::invalid_argument);

  d = baseline_panel_design();
  d.solar[0].density_g_cm3 = -1.0;
  REQUIRE_THROWS_AS(d.validate(), std::invalid_argument);

  d = baseline_panel_design();
  d.radiator[2].volume_cm3_per_m2 = -10.0;
  REQUIRE_THROWS_AS(d.validate(), std::invalid_argument);
}
