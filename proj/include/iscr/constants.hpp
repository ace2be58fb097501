#pragma once

namespace iscr {

// W / (m^2 K^4)
inline constexpr double kStefanBoltzmann = 5.670374419e-8;

// Mean solar flux at 1 AU, W / m^2.
inline constexpr double kSolarFluxW_m2 = 1361.0;

inline constexpr double kKelvinOffset = 273.15;

constexpr double kelvin_to_celsius(double t_k) { return t_k - kKelvinOffset; }
constexpr double celsius_to_kelvin(double t_c) { return t_c + kKelvinOffset; }

}  // namespace iscr
