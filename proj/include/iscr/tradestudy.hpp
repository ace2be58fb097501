#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iscr/constants.hpp"
#include "iscr/silicon.hpp"
#include "iscr/thermal.hpp"

namespace iscr {

// GPU vendor ceiling; hotter junctions are out of scope for the comparison.
inline constexpr double kMaxJunctionTempC = 105.0;

// One architecture column of the cooling-technology comparison. Cell
// efficiency is quoted at the cells' own operating temperature, so no curve
// lookup happens here.
struct ArchitectureDesign {
  std::string name;
  double cell_efficiency = 0.27;
  double solar_absorption = 0.82;
  double radiator_temp_c = 35.0;
  double junction_temp_c = 41.0;
  int radiator_sides = 1;
  double emissivity = 0.90;
  double earth_ir_w_m2 = 12.0;
  double gap_leak_w_m2 = 0.0;
  CoolingSystem cooling = CoolingSystem::kVaporChamber;
  // Silicon rows are keyed by coolant temperature. High performance cooling
  // shrinks the junction-to-radiator delta, so its radiator runs hotter
  // than the coolant temperature that lines up with the silicon table.
  std::optional<double> silicon_coolant_temp_c;

  void validate() const {
    if (!(cell_efficiency > 0.0) || !(cell_efficiency < 1.0)) {
      throw std::invalid_argument("cell efficiency must lie in (0, 1)");
    }
    if (!(solar_absorption > 0.0) || solar_absorption > 1.0) {
      throw std::invalid_argument("solar absorption must lie in (0, 1]");
    }
    if (!(emissivity > 0.0) || emissivity > 1.0) {
      throw std::invalid_argument("emissivity must lie in (0, 1]");
    }
    if (radiator_sides != 1 && radiator_sides != 2) {
      throw std::invalid_argument("radiators have one or two sides");
    }
    if (radiator_temp_c < -kKelvinOffset) {
      throw std::invalid_argument("radiator below absolute zero");
    }
    if (junction_temp_c < radiator_temp_c) {
      throw std::invalid_argument("junction cannot run cooler than radiator");
    }
    if (junction_temp_c > kMaxJunctionTempC) {
      throw std::invalid_argument("junction temperature above the GPU limit");
    }
    if (earth_ir_w_m2 < 0.0) {
      throw std::invalid_argument("Earth IR load must be non-negative");
    }
    if (gap_leak_w_m2 < 0.0) {
      throw std::invalid_argument("gap leak must be non-negative");
    }
  }

  double compute_power_w_m2(double solar_flux_w_m2 = kSolarFluxW_m2) const {
    return cell_efficiency * solar_flux_w_m2;
  }

  // Everything the radiator must reject: compute waste heat, absorbed Earth
  // IR, and whatever leaks across from the solar cells.
  double rejected_load_w_m2(double solar_flux_w_m2 = kSolarFluxW_m2) const {
    return compute_power_w_m2(solar_flux_w_m2) + earth_ir_w_m2 +
           gap_leak_w_m2;
  }
};

// Required radiator area over solar array area. For the integrated panel
// the back face is the radiator, which pins the value at one.
inline double radiator_area_fraction(
    const ArchitectureDesign& d, double solar_flux_w_m2 = kSolarFluxW_m2) {
  d.validate();
  const RadiatorSurface surface{d.emissivity, d.radiator_sides};
  const double flux =
      radiated_flux(celsius_to_kelvin(d.radiator_temp_c), surface);
  if (!(flux > 0.0)) {
    throw std::domain_error("radiator emits nothing at this temperature");
  }
  return d.rejected_load_w_m2(solar_flux_w_m2) / flux;
}

struct TradeColumn {
  ArchitectureDesign design;
  double compute_power_w_m2 = 0.0;
  double radiated_flux_w_m2 = 0.0;  // one side, at the radiator temperature
  double radiator_fraction = 0.0;
  SiliconOperatingPoint silicon;
  double energy_per_token_j = 0.0;
  double normalized_power_w_m2 = 0.0;
};

// Side-by-side figures of merit, one column per design, input order kept.
inline std::vector<TradeColumn> compare(
    const std::vector<ArchitectureDesign>& designs,
    const std::vector<SiliconOperatingPoint>& silicon_table =
        reference_operating_points(),
    double solar_flux_w_m2 = kSolarFluxW_m2) {
  if (designs.empty()) {
    throw std::invalid_argument("comparison needs at least one design");
  }
  std::vector<TradeColumn> columns;
  columns.reserve(designs.size());
  for (const ArchitectureDesign& d : designs) {
    d.validate();
    TradeColumn col;
    col.design = d;
    col.compute_power_w_m2 = d.compute_power_w_m2(solar_flux_w_m2);
    const RadiatorSurface one_side{d.emissivity, 1};
    col.radiated_flux_w_m2 =
        radiated_flux(celsius_to_kelvin(d.radiator_temp_c), one_side);
    col.radiator_fraction = radiator_area_fraction(d, solar_flux_w_m2);
    const double coolant_c =
        d.silicon_coolant_temp_c.value_or(d.radiator_temp_c);
    col.silicon = select_operating_point(silicon_table, coolant_c);
    col.energy_per_token_j = total_energy_per_token(col.silicon);
    col.normalized_power_w_m2 =
        token_normalized_power(col.compute_power_w_m2, col.energy_per_token_j);
    columns.push_back(col);
  }
  return columns;
}

inline std::vector<ArchitectureDesign> reference_trade_designs() {
  std::vector<ArchitectureDesign> designs(4);

  designs[0].name = "ISCR";
  designs[0].cell_efficiency = 0.27;
  designs[0].solar_absorption = 0.82;
  designs[0].radiator_temp_c = 35.0;
  designs[0].junction_temp_c = 41.0;
  designs[0].radiator_sides = 1;
  designs[0].emissivity = 0.90;
  designs[0].earth_ir_w_m2 = 12.0;
  designs[0].gap_leak_w_m2 = 80.0;
  designs[0].cooling = CoolingSystem::kVaporChamber;

  designs[1].name = "Low-T radiator";
  designs[1].cell_efficiency = 0.30;
  designs[1].solar_absorption = 0.82;
  designs[1].radiator_temp_c = 45.0;
  designs[1].junction_temp_c = 90.0;
  designs[1].radiator_sides = 2;
  designs[1].emissivity = 0.90;
  designs[1].earth_ir_w_m2 = 24.0;
  designs[1].gap_leak_w_m2 = 0.0;
  designs[1].cooling = CoolingSystem::kLiquid;

  designs[2] = designs[1];
  designs[2].name = "Medium-T radiator";
  designs[2].radiator_temp_c = 60.0;
  designs[2].junction_temp_c = 105.0;

  designs[3] = designs[2];
  designs[3].name = "High-T radiator";
  designs[3].radiator_temp_c = 80.0;
  designs[3].cooling = CoolingSystem::kHighPerformance;
  designs[3].silicon_coolant_temp_c = 60.0;

  return designs;
}

}  // namespace iscr
