#pragma once

namespace casimir::units {

// Angular frequency per electron-volt, rad/s. All frequency parsing goes
// through this constant; internal code works in rad/s only.
inline constexpr double rad_s_per_ev = 1.519267e15;

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double hbar = 1.054571817e-34;        // J s

inline constexpr double ev_to_rad_s(double ev) { return ev * rad_s_per_ev; }
inline constexpr double rad_s_to_ev(double w) { return w / rad_s_per_ev; }

}  // namespace casimir::units
