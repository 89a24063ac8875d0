#pragma once

namespace wqtherm {

// 2018 CODATA (exact SI) values.
inline constexpr double k_boltzmann = 1.380649e-23;    // J / K
inline constexpr double hbar = 1.054571817e-34;        // J * s

}  // namespace wqtherm
