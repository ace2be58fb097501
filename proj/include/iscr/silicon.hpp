#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "iscr/errors.hpp"

namespace iscr {

// Normalization point for token-normalized power: the 45 C baseline total.
inline constexpr double kReferenceEnergyPerToken = 0.213;

inline constexpr double kMaxVddV = 1.5;

enum class VthFlavor { kULVT, kLVT, kSVT, kHVT };

enum class CoolingSystem { kVaporChamber, kLiquid, kHighPerformance };

// J/V^2, calibrated per flavor from one anchor row each. A single global
// value misses the low-voltage rows by over 10%.
inline double effective_capacitance(VthFlavor flavor) {
  switch (flavor) {
    case VthFlavor::kULVT: return 0.138 / (0.64 * 0.64);
    case VthFlavor::kLVT: return 0.170 / (0.74 * 0.74);
    case VthFlavor::kSVT: return 0.195 / (0.82 * 0.82);
    case VthFlavor::kHVT: return 0.209 / (0.85 * 0.85);
  }
  throw std::invalid_argument("unknown transistor flavor");
}

inline double dynamic_energy(VthFlavor flavor, double vdd_v) {
  if (vdd_v < 0.0 || vdd_v > kMaxVddV) {
    throw std::domain_error("vdd out of range");
  }
  return effective_capacitance(flavor) * vdd_v * vdd_v;
}

// One calibrated compute operating point. Junction temperature is carried
// as data; the coolant-to-junction delta is a property of the cooling
// system, not modeled here.
struct SiliconOperatingPoint {
  double coolant_temp_c = 0.0;
  double junction_temp_c = 0.0;
  VthFlavor flavor = VthFlavor::kSVT;
  CoolingSystem cooling = CoolingSystem::kVaporChamber;
  double vdd_v = 0.0;
  double clock_ghz = 0.0;
  double e_dynamic_j = 0.0;  // J/token
  double e_static_j = 0.0;   // J/token

  void validate() const {
    if (!(junction_temp_c > coolant_temp_c)) {
      throw std::invalid_argument("junction must run hotter than coolant");
    }
    if (!(e_dynamic_j > 0.0)) {
      throw std::invalid_argument("dynamic energy must be positive");
    }
    if (e_static_j < 0.0) {
      throw std::invalid_argument("static energy must be non-negative");
    }
    if (!(vdd_v > 0.5) || !(vdd_v < 1.0)) {
      throw std::invalid_argument("vdd must lie in (0.5, 1.0)");
    }
  }
};

inline double total_energy_per_token(const SiliconOperatingPoint& p) {
  return p.e_dynamic_j + p.e_static_j;
}

inline double leakage_fraction(const SiliconOperatingPoint& p) {
  if (!(p.e_dynamic_j > 0.0)) {
    throw std::domain_error("dynamic energy must be positive");
  }
  return p.e_static_j / p.e_dynamic_j;
}

inline const std::vector<SiliconOperatingPoint>& reference_operating_points() {
  using F = VthFlavor;
  using C = CoolingSystem;
  static const std::vector<SiliconOperatingPoint> kTable = {
      {25.0, 31.0, F::kULVT, C::kVaporChamber, 0.64, 2.78, 0.138, 0.032},
      {25.0, 31.0, F::kLVT, C::kVaporChamber, 0.69, 2.72, 0.149, 0.022},
      {35.0, 41.0, F::kLVT, C::kVaporChamber, 0.74, 2.6, 0.170, 0.034},
      {45.0, 87.5, F::kSVT, C::kLiquid, 0.82, 2.38, 0.195, 0.018},
      {60.0, 104.0, F::kHVT, C::kLiquid, 0.85, 2.05, 0.209, 0.065},
      {85.0, 105.0, F::kHVT, C::kLiquid, 0.88, 1.35, 0.224, 0.098},
  };
  return kTable;
}

inline void validate_operating_point_table(
    const std::vector<SiliconOperatingPoint>& table) {
  if (table.empty()) {
    throw std::invalid_argument("operating point table is empty");
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i].validate();
    if (i == 0) continue;
    if (table[i].coolant_temp_c < table[i - 1].coolant_temp_c) {
      throw std::invalid_argument(
          "coolant temperatures must be non-decreasing");
    }
    if (table[i].clock_ghz > table[i - 1].clock_ghz) {
      throw std::invalid_argument(
          "clock must not rise with coolant temperature");
    }
  }
}

// Nearest-row lookup by coolant temperature. Exact distance ties resolve
// toward the cooler row. Two rows share the 25 C slot; prefer_ulvt picks
// between them.
inline SiliconOperatingPoint select_operating_point(
    const std::vector<SiliconOperatingPoint>& table, double coolant_temp_c,
    bool prefer_ulvt = true) {
  validate_operating_point_table(table);
  if (coolant_temp_c < table.front().coolant_temp_c ||
      coolant_temp_c > table.back().coolant_temp_c) {
    throw std::domain_error("coolant temperature outside the table span");
  }

  double best_dist = 0.0;
  double best_temp = 0.0;
  bool have = false;
  for (const auto& p : table) {
    const double d = std::abs(coolant_temp_c - p.coolant_temp_c);
    if (!have || d < best_dist) {
      have = true;
      best_dist = d;
      best_temp = p.coolant_temp_c;
    }
  }

  const SiliconOperatingPoint* pick = nullptr;
  for (const auto& p : table) {
    if (p.coolant_temp_c != best_temp) continue;
    if (!pick) pick = &p;
    const bool is_ulvt = p.flavor == VthFlavor::kULVT;
    if (prefer_ulvt == is_ulvt) {
      pick = &p;
      break;
    }
  }
  return *pick;
}

inline SiliconOperatingPoint select_operating_point(double coolant_temp_c,
                                                    bool prefer_ulvt = true) {
  return select_operating_point(reference_operating_points(), coolant_temp_c,
                                prefer_ulvt);
}

// Rescales areal compute power to a common energy-per-token basis.
inline double token_normalized_power(
    double p_compute_w_m2, double e_j_per_token,
    double e_ref_j_per_token = kReferenceEnergyPerToken) {
  if (!(e_j_per_token > 0.0)) {
    throw std::domain_error("energy per token must be positive");
  }
  if (!(e_ref_j_per_token > 0.0)) {
    throw std::domain_error("reference energy must be positive");
  }
  return p_compute_w_m2 * e_ref_j_per_token / e_j_per_token;
}

}  // namespace iscr
