#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iscr/errors.hpp"

namespace iscr {

// 1 kW delivered from the 2.9 m^2 baseline panel. Lower than the cell-level
// sun-synchronous figure; the gap is unmodeled derating, both are exposed.
inline constexpr double kBaselineNetComputeFluxW_m2 = 1000.0 / 2.9;
inline constexpr double kCellFluxSsoW_m2 = 363.0;

struct MaterialLayer {
  std::string name;
  double density_g_cm3 = 0.0;
  std::string role;
  std::optional<double> area_cm2;
  double volume_cm3_per_m2 = 0.0;
  std::optional<double> thickness_mm;

  double mass_kg_m2() const { return density_g_cm3 * volume_cm3_per_m2 / 1000.0; }

  void validate() const {
    if (density_g_cm3 < 0.0 || volume_cm3_per_m2 < 0.0) {
      throw std::invalid_argument("layer density and volume must be "
                                  "non-negative");
    }
    if (area_cm2 && *area_cm2 < 0.0) {
      throw std::invalid_argument("layer area must be non-negative");
    }
    if (thickness_mm && *thickness_mm < 0.0) {
      throw std::invalid_argument("layer thickness must be non-negative");
    }
  }
};

struct PanelDesign {
  double side_m = 1.7;
  double area_m2 = 2.9;  // nominal; must match side^2 within 0.5%
  double compute_power_w = 1000.0;
  double link_bandwidth_gb_s = 100.0;
  std::vector<MaterialLayer> solar;
  std::vector<MaterialLayer> compute;
  std::vector<MaterialLayer> radiator;

  void validate() const {
    if (!(side_m > 0.0) || !(area_m2 > 0.0)) {
      throw std::invalid_argument("panel dimensions must be positive");
    }
    if (std::abs(area_m2 - side_m * side_m) / (side_m * side_m) > 0.005) {
      throw std::invalid_argument("nominal area must match side^2 within "
                                  "0.5%");
    }
    if (compute_power_w < 0.0 || link_bandwidth_gb_s < 0.0) {
      throw std::invalid_argument("power and bandwidth must be non-negative");
    }
    for (const auto* group : {&solar, &compute, &radiator}) {
      for (const auto& layer : *group) layer.validate();
    }
  }
};

inline double group_mass_density(const std::vector<MaterialLayer>& layers) {
  double sum = 0.0;
  for (const auto& layer : layers) sum += layer.mass_kg_m2();
  return sum;
}

inline double panel_mass_density(const PanelDesign& design) {
  return group_mass_density(design.solar) +
         group_mass_density(design.compute) +
         group_mass_density(design.radiator);
}

inline double panel_area_for_power(double target_w, double net_flux_w_m2) {
  if (target_w < 0.0) {
    throw std::domain_error("power target must be non-negative");
  }
  if (!(net_flux_w_m2 > 0.0)) {
    throw std::domain_error("net flux must be positive");
  }
  return target_w / net_flux_w_m2;
}

inline double array_specific_power(double power_flux_w_m2,
                                   double mass_density_kg_m2) {
  if (!(mass_density_kg_m2 > 0.0)) {
    throw std::domain_error("mass density must be positive");
  }
  return power_flux_w_m2 / mass_density_kg_m2;
}

inline PanelDesign baseline_panel_design() {
  PanelDesign d;
  d.solar = {
      {"Si", 2.33, "solar cells", 9500.0, 57.0, 0.06},
      {"ETFE", 1.75, "cell cover", 9500.0, 133.0, 0.14},
      {"Kapton", 0.95, "support", 9500.0, 95.0, 0.1},
      {"Al", 2.7, "power wiring", 950.0, 23.8, 0.25},
  };
  d.compute = {
      {"HD polyethylene", 0.95, "proton shield", 130.0, 39.0, 3.0},
      {"Si", 2.33, "ICs, interposers", 65.0, 3.9, 0.6},
      {"SiC", 2.3, "PCB, heat spread", 130.0, 39.0, 3.0},
      {"Cu", 8.96, "inter-panel wiring", 3000.0, 8.0, 0.008},
      {"Ag", 10.49, "plating for HF", 3000.0, 2.0, 0.002},
  };
  d.radiator = {
      {"Graphite-doped LCP", 1.5, "vapor chamber top", std::nullopt, 300.0,
       0.3},
      {"Boron nitride", 2.2, "vapor chamber pillars", 800.0, 160.0, 2.0},
      {"Aluminum", 2.7, "radiator, vapor chamber bottom", 10000.0, 250.0,
       0.25},
      {"Diamond/Cu mesh", 2.5, "wick", 9000.0, 225.0, 0.25},
      {"Water", 1.0, "working fluid", 9000.0, 180.0, 0.2},
      {"CFR polycarbonate", 1.3, "flexible structure", std::nullopt, 100.0,
       std::nullopt},
      {"Argon", 0.0018, "pneumatic stiffener", std::nullopt, 10000.0,
       1000.0},
  };
  return d;
}

// One entry in the front-to-back stack. Layers flagged within_gap ride
// inside the thermal gap and add no height of their own.
struct CrossSectionLayer {
  std::string name;
  double thickness_mm = 0.0;
  bool within_gap = false;
};

inline const std::vector<CrossSectionLayer>& baseline_cross_section() {
  static const std::vector<CrossSectionLayer> kStack = {
      {"solar cells", 0.2, false},
      {"thermal gap", 4.0, false},
      {"thermal reflector", 0.01, true},
      {"chamber top", 0.3, true},
      {"vapor chamber", 2.0, false},
      {"radiator skin", 0.25, false},
  };
  return kStack;
}

inline double panel_stack_thickness_mm(
    const std::vector<CrossSectionLayer>& stack) {
  double sum = 0.0;
  for (const auto& layer : stack) {
    if (layer.thickness_mm < 0.0) {
      throw std::invalid_argument("layer thickness must be non-negative");
    }
    if (!layer.within_gap) sum += layer.thickness_mm;
  }
  return sum;
}

}  // namespace iscr
