#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

namespace hypvol::fixtures {

/// Standard figure-eight PD code (writhe 0).
inline constexpr std::string_view kFigureEightPd =
    "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

/// The same knot after a Reidemeister II move pushing edge 7 over edge 2.
inline constexpr std::string_view kFigureEightPdR2 =
    "X(6,2,7,1) X(12,8,1,7) X(8,5,9,6) X(4,11,5,12) X(2,9,3,10) X(3,11,4,10)";

/// Hyperbolic volume of the figure-eight complement, 2 D(e^{i pi/3}).
inline constexpr double kFigureEightVolume = 2.0298832128193072;

/// Holonomy rho on the Wirtinger generators x, y, z, w over Q(sqrt -3).
nlohmann::json figure_eight_holonomy();

/// Holonomy rho_- of the reversed knot on generators "x^-1" ... "w^-1".
nlohmann::json figure_eight_holonomy_reversed();

}  // namespace hypvol::fixtures
