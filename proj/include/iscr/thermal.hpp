#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "iscr/constants.hpp"
#include "iscr/errors.hpp"

namespace iscr {

inline constexpr double kFrontSolveDamping = 0.5;
inline constexpr double kFrontSolveToleranceK = 0.01;
inline constexpr int kFrontSolveMaxIterations = 1000;
inline constexpr double kFrontSolveInitialGuessK = 290.0;

// One radiating face set. `sides` counts how many identical faces share the
// same load (1 for a panel face, 2 for a free-flying radiator fin).
struct RadiatorSurface {
  double emissivity = 0.92;
  int sides = 1;

  void validate() const {
    if (!(emissivity > 0.0) || emissivity > 1.0) {
      throw std::invalid_argument("emissivity must be in (0, 1]");
    }
    if (sides != 1 && sides != 2) {
      throw std::invalid_argument("sides must be 1 or 2");
    }
  }
};

// Grey-body flux in W/m^2 for all sides together.
inline double radiated_flux(double t_k, const RadiatorSurface& surface) {
  surface.validate();
  if (t_k < 0.0) {
    throw std::domain_error("temperature below absolute zero");
  }
  return (surface.sides * surface.emissivity) * kStefanBoltzmann *
         std::pow(t_k, 4.0);
}

// Analytic inverse of radiated_flux.
inline double equilibrium_temperature(double load_w_m2,
                                      const RadiatorSurface& surface) {
  surface.validate();
  if (load_w_m2 < 0.0) {
    throw std::domain_error("radiated load must be non-negative");
  }
  return std::pow(
      load_w_m2 / ((surface.sides * surface.emissivity) * kStefanBoltzmann),
      0.25);
}

enum class CellTechnology {
  kPerovskiteSiTandem,
  kCrystallineSi90um,
  kThinFilmASi,
  kTripleJunctionGaAs,
};

struct CellCurvePoint {
  double temperature_c = 0.0;
  double efficiency = 0.0;
};

// Conversion efficiency versus cell temperature, linear between points,
// clamped outside. Efficiency must not rise with temperature.
struct SolarCellCurve {
  std::string name;
  CellTechnology technology = CellTechnology::kTripleJunctionGaAs;
  std::vector<CellCurvePoint> points;

  void validate() const {
    if (points.size() < 2) {
      throw std::invalid_argument("cell curve needs at least two points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!(points[i].efficiency > 0.0) || points[i].efficiency >= 1.0) {
        throw std::invalid_argument("cell efficiency must be in (0, 1)");
      }
      if (i == 0) continue;
      if (!(points[i].temperature_c > points[i - 1].temperature_c)) {
        throw std::invalid_argument("cell curve temperatures must increase");
      }
      if (points[i].efficiency > points[i - 1].efficiency) {
        throw std::invalid_argument("cell efficiency must not rise with "
                                    "temperature");
      }
    }
  }
};

inline double cell_efficiency(const SolarCellCurve& curve, double t_cell_c) {
  curve.validate();
  const auto& pts = curve.points;
  if (t_cell_c <= pts.front().temperature_c) return pts.front().efficiency;
  if (t_cell_c >= pts.back().temperature_c) return pts.back().efficiency;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (t_cell_c <= pts[i].temperature_c) {
      const auto& a = pts[i - 1];
      const auto& b = pts[i];
      const double w =
          (t_cell_c - a.temperature_c) / (b.temperature_c - a.temperature_c);
      return a.efficiency + w * (b.efficiency - a.efficiency);
    }
  }
  return pts.back().efficiency;
}

inline const SolarCellCurve& reference_cell_curve(CellTechnology technology) {
  static const SolarCellCurve kPerovskite{
      "perovskite-si-tandem",
      CellTechnology::kPerovskiteSiTandem,
      {{25.0, 0.30}, {85.0, 0.254}}};
  static const SolarCellCurve kCrystallineSi{
      "crystalline-si-90um",
      CellTechnology::kCrystallineSi90um,
      {{25.0, 0.20}, {85.0, 0.155}}};
  static const SolarCellCurve kThinFilm{
      "thin-film-a-si",
      CellTechnology::kThinFilmASi,
      {{25.0, 0.14}, {85.0, 0.119}}};
  static const SolarCellCurve kGaAs{
      "triple-junction-gaas",
      CellTechnology::kTripleJunctionGaAs,
      {{32.0, 0.307}, {87.0, 0.27}}};
  switch (technology) {
    case CellTechnology::kPerovskiteSiTandem: return kPerovskite;
    case CellTechnology::kCrystallineSi90um: return kCrystallineSi;
    case CellTechnology::kThinFilmASi: return kThinFilm;
    case CellTechnology::kTripleJunctionGaAs: return kGaAs;
  }
  throw std::invalid_argument("unknown cell technology");
}

// Back-face infrared load in W/m^2 versus circular orbit altitude,
// calibrated at 600/1000/2000 km and clamped outside that span.
// No altitude means deep space: zero load.
inline double earth_ir_back_load(std::optional<double> altitude_km) {
  if (!altitude_km) return 0.0;
  const double alt = *altitude_km;
  if (alt <= 0.0) {
    throw std::domain_error("orbit altitude must be positive");
  }
  static constexpr double kAltKm[] = {600.0, 1000.0, 2000.0};
  static constexpr double kLoad[] = {34.0, 24.0, 14.0};
  if (alt <= kAltKm[0]) return kLoad[0];
  if (alt >= kAltKm[2]) return kLoad[2];
  const std::size_t hi = alt <= kAltKm[1] ? 1 : 2;
  const double w = (alt - kAltKm[hi - 1]) / (kAltKm[hi] - kAltKm[hi - 1]);
  return kLoad[hi - 1] + w * (kLoad[hi] - kLoad[hi - 1]);
}

struct OrbitEnvironment {
  std::string label = "deep-space";
  double solar_flux_w_m2 = kSolarFluxW_m2;
  std::optional<double> altitude_km;
  // Explicit override; otherwise the altitude calibration applies.
  std::optional<double> earth_ir_w_m2;

  double earth_ir() const {
    if (earth_ir_w_m2) return *earth_ir_w_m2;
    return earth_ir_back_load(altitude_km);
  }

  void validate() const {
    if (!(solar_flux_w_m2 > 0.0)) {
      throw std::invalid_argument("solar flux must be positive");
    }
    if (altitude_km && !(*altitude_km > 0.0)) {
      throw std::invalid_argument("orbit altitude must be positive");
    }
    if (earth_ir_w_m2 && *earth_ir_w_m2 < 0.0) {
      throw std::invalid_argument("infrared load must be non-negative");
    }
    if (!altitude_km && earth_ir_w_m2 && *earth_ir_w_m2 > 0.0) {
      throw std::invalid_argument("deep space carries no infrared load");
    }
  }
};

// Sun-facing cell sheet over an isolation gap over a radiating backplane.
// gap_leak_w_m2 is the conductive bypass through the gap structure.
struct PanelThermalConfig {
  std::string name = "panel";
  double absorptivity = 0.895;
  SolarCellCurve cell_curve =
      reference_cell_curve(CellTechnology::kTripleJunctionGaAs);
  RadiatorSurface front{0.92, 1};
  RadiatorSurface back{0.92, 1};
  double gap_leak_w_m2 = 0.0;

  void validate() const {
    if (!(absorptivity > 0.0) || absorptivity > 1.0) {
      throw std::invalid_argument("absorptivity must be in (0, 1]");
    }
    if (gap_leak_w_m2 < 0.0) {
      throw std::invalid_argument("gap leak must be non-negative");
    }
    cell_curve.validate();
    front.validate();
    back.validate();
  }
};

struct FrontFaceResult {
  double t_front_k = 0.0;
  double p_electric_w_m2 = 0.0;
  int iterations = 0;
};

// Damped fixed point for the front-face balance: absorbed sunlight plus
// infrared, minus converted electric power and gap leak, radiates from the
// front surface. Efficiency couples back through the face temperature.
inline FrontFaceResult solve_front_face(
    const PanelThermalConfig& config, const OrbitEnvironment& env,
    double initial_guess_k = kFrontSolveInitialGuessK) {
  config.validate();
  env.validate();
  if (initial_guess_k < 0.0) {
    throw std::domain_error("initial guess below absolute zero");
  }

  const double absorbed =
      config.absorptivity * env.solar_flux_w_m2 + env.earth_ir();
  double t = initial_guess_k;
  for (int iter = 1; iter <= kFrontSolveMaxIterations; ++iter) {
    const double eta = cell_efficiency(config.cell_curve, kelvin_to_celsius(t));
    const double net = std::max(
        0.0, absorbed - eta * env.solar_flux_w_m2 - config.gap_leak_w_m2);
    const double t_star = equilibrium_temperature(net, config.front);
    if (std::abs(t_star - t) < kFrontSolveToleranceK) {
      return {t, eta * env.solar_flux_w_m2, iter};
    }
    t += kFrontSolveDamping * (t_star - t);
  }
  throw solver_error("front-face balance did not converge", t,
                     kFrontSolveMaxIterations);
}

struct PanelState {
  double t_front_k = 0.0;
  double t_back_k = 0.0;
  double p_electric_w_m2 = 0.0;
  double p_front_radiated_w_m2 = 0.0;
  double p_back_radiated_w_m2 = 0.0;
  int iterations = 0;
};

// Front solve, then the backplane: it rejects the converted electric power
// plus its own infrared load plus whatever leaks across the gap.
inline PanelState solve_panel_equilibrium(
    const PanelThermalConfig& config, const OrbitEnvironment& env,
    double initial_guess_k = kFrontSolveInitialGuessK) {
  const FrontFaceResult front = solve_front_face(config, env, initial_guess_k);
  PanelState state;
  state.t_front_k = front.t_front_k;
  state.p_electric_w_m2 = front.p_electric_w_m2;
  state.iterations = front.iterations;
  state.p_front_radiated_w_m2 = radiated_flux(front.t_front_k, config.front);
  state.p_back_radiated_w_m2 =
      front.p_electric_w_m2 + env.earth_ir() + config.gap_leak_w_m2;
  state.t_back_k = equilibrium_temperature(state.p_back_radiated_w_m2,
                                           config.back);
  return state;
}

// |in - out| across the whole panel; both faces see the infrared load.
inline double energy_closure_residual(const PanelState& state,
                                      const PanelThermalConfig& config,
                                      const OrbitEnvironment& env) {
  const double in =
      config.absorptivity * env.solar_flux_w_m2 + 2.0 * env.earth_ir();
  const double out =
      state.p_front_radiated_w_m2 + state.p_back_radiated_w_m2;
  return std::abs(in - out);
}

}  // namespace iscr
