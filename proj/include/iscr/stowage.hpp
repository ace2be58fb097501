#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "iscr/errors.hpp"
#include "iscr/panel_budget.hpp"

namespace iscr {

// Pinned roll-up area density, kg/m^2. Slightly above the full-precision
// panel budget; satellite-level mass lines are quoted against this figure.
inline constexpr double kRollupAreaDensityKg_m2 = 3.15;

struct StowageConfig {
  double inner_radius_m = 2.5;
  double outer_radius_m = 4.0;
  double layer_pitch_m = 0.010;
  double bay_diameter_m = 8.0;
  double bay_length_m = 22.0;
  double usable_roll_width_m = 20.4;

  void validate(double panel_thickness_m = 0.0) const {
    if (!(inner_radius_m >= 0.0) || !(outer_radius_m > 0.0)) {
      throw std::invalid_argument("roll radii must be non-negative");
    }
    if (inner_radius_m > outer_radius_m) {
      throw std::invalid_argument("inner radius exceeds outer radius");
    }
    if (outer_radius_m > bay_diameter_m / 2.0) {
      throw std::invalid_argument("outer radius exceeds the bay radius");
    }
    if (!(layer_pitch_m > panel_thickness_m) || !(layer_pitch_m > 0.0)) {
      throw std::invalid_argument("layer pitch must exceed panel thickness");
    }
    if (usable_roll_width_m > bay_length_m) {
      throw std::invalid_argument("roll width exceeds the bay length");
    }
    if (!(usable_roll_width_m > 0.0) || !(bay_length_m > 0.0)) {
      throw std::invalid_argument("bay dimensions must be positive");
    }
  }
};

struct SpiralCapacity {
  double length_m = 0.0;
  double stowable_area_m2 = 0.0;
};

// Archimedean-spiral annulus approximation: length = pi(R^2 - r^2)/pitch.
// Error against exact arc length is under 0.2% at these radii.
inline SpiralCapacity spiral_capacity(const StowageConfig& cfg) {
  if (cfg.inner_radius_m > cfg.outer_radius_m) {
    throw std::domain_error("inner radius exceeds outer radius");
  }
  cfg.validate();
  SpiralCapacity cap;
  cap.length_m = std::numbers::pi *
                 (cfg.outer_radius_m * cfg.outer_radius_m -
                  cfg.inner_radius_m * cfg.inner_radius_m) /
                 cfg.layer_pitch_m;
  cap.stowable_area_m2 = cap.length_m * cfg.usable_roll_width_m;
  return cap;
}

struct SatelliteDesign {
  PanelDesign panel;
  int panel_count = 16600;
  int panels_per_row = 12;
  double overhead_mass_fraction = 0.05;
  double overhead_power_fraction = 0.04;
  double mass_cap_tons = 150.0;
  // Array area as published rather than panel_count x panel area; the two
  // disagree in the source material, so the override is explicit.
  std::optional<double> array_area_override_m2;
  // Roll-up density override; absent means derive from the panel budget.
  std::optional<double> area_density_kg_m2 = kRollupAreaDensityKg_m2;

  void validate() const {
    panel.validate();
    if (panel_count < 0) {
      throw std::invalid_argument("panel count must be non-negative");
    }
    if (panels_per_row <= 0) {
      throw std::invalid_argument("panels per row must be positive");
    }
    if (overhead_mass_fraction < 0.0 || overhead_mass_fraction >= 1.0 ||
        overhead_power_fraction < 0.0 || overhead_power_fraction >= 1.0) {
      throw std::invalid_argument("overhead fractions must lie in [0, 1)");
    }
    if (!(mass_cap_tons > 0.0)) {
      throw std::invalid_argument("mass cap must be positive");
    }
    if (array_area_override_m2 && *array_area_override_m2 < 0.0) {
      throw std::invalid_argument("array area must be non-negative");
    }
    if (area_density_kg_m2 && !(*area_density_kg_m2 > 0.0)) {
      throw std::invalid_argument("area density must be positive");
    }
  }
};

struct SatelliteRollup {
  double array_area_m2 = 0.0;
  double array_length_m = 0.0;
  double distributed_mass_tons = 0.0;
  double total_mass_tons = 0.0;
  double compute_power_kw = 0.0;
  double specific_power_kw_ton = 0.0;
};

inline SatelliteRollup satellite_rollup(const SatelliteDesign& design) {
  design.validate();
  const double density = design.area_density_kg_m2
                             ? *design.area_density_kg_m2
                             : panel_mass_density(design.panel);
  SatelliteRollup r;
  r.array_area_m2 = design.array_area_override_m2
                        ? *design.array_area_override_m2
                        : design.panel_count * design.panel.area_m2;
  r.array_length_m = static_cast<double>(design.panel_count) /
                     design.panels_per_row * design.panel.side_m;
  r.distributed_mass_tons = r.array_area_m2 * density / 1000.0;
  r.total_mass_tons =
      r.distributed_mass_tons * (1.0 + design.overhead_mass_fraction);
  r.compute_power_kw =
      design.panel_count * design.panel.compute_power_w / 1000.0;
  r.specific_power_kw_ton =
      r.total_mass_tons > 0.0
          ? r.compute_power_kw * (1.0 - design.overhead_power_fraction) /
                r.total_mass_tons
          : 0.0;
  return r;
}

inline SatelliteDesign baseline_satellite_design() {
  SatelliteDesign d;
  d.panel = baseline_panel_design();
  d.array_area_override_m2 = 45000.0;
  return d;
}

struct FitReport {
  bool fits = false;
  double length_required_m = 0.0;
  double length_available_m = 0.0;
  double length_margin = 0.0;
  double outer_radius_m = 0.0;
  double bay_radius_m = 0.0;
  double radius_margin = 0.0;
  double mass_tons = 0.0;
  double mass_cap_tons = 0.0;
  double mass_margin = 0.0;
};

// Roll length, coil radius, and launch mass against the payload bay.
inline FitReport fit_check(const StowageConfig& cfg,
                           const SatelliteDesign& design) {
  const SpiralCapacity cap = spiral_capacity(cfg);
  const SatelliteRollup rollup = satellite_rollup(design);

  FitReport fit;
  fit.length_required_m = rollup.array_area_m2 / cfg.usable_roll_width_m;
  fit.length_available_m = cap.length_m;
  fit.length_margin =
      cap.length_m > 0.0 ? 1.0 - fit.length_required_m / cap.length_m
                         : (fit.length_required_m > 0.0 ? -1.0 : 0.0);
  fit.outer_radius_m = cfg.outer_radius_m;
  fit.bay_radius_m = cfg.bay_diameter_m / 2.0;
  fit.radius_margin = 1.0 - cfg.outer_radius_m / fit.bay_radius_m;
  fit.mass_tons = rollup.total_mass_tons;
  fit.mass_cap_tons = design.mass_cap_tons;
  fit.mass_margin = 1.0 - rollup.total_mass_tons / design.mass_cap_tons;
  fit.fits = fit.length_margin >= 0.0 && fit.radius_margin >= 0.0 &&
             fit.mass_margin >= 0.0;
  return fit;
}

}  // namespace iscr
