#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hypvol/hypvol.hpp"

namespace testing_support {

using hypvol::BoundaryPoint;
using hypvol::Complex;

inline const double kSqrt3 = std::sqrt(3.0);
inline const Complex kOmega{0.5, kSqrt3 / 2};         // (1 + sqrt -3) / 2
inline const Complex kOmegaPrime{-0.5, kSqrt3 / 2};   // (-1 + sqrt -3) / 2
inline const Complex kOmegaBar{0.5, -kSqrt3 / 2};     // (1 - sqrt -3) / 2

// 2 D(e^{i pi / 3}) from the test oracle.
inline constexpr double kVolume = 2.0298832128193072;

inline BoundaryPoint pt(Complex z) { return BoundaryPoint::finite(z); }
inline BoundaryPoint inf() { return BoundaryPoint::infinity(); }

inline hypvol::Diagram fig8() { return hypvol::parse_pd(hypvol::fixtures::kFigureEightPd); }
inline hypvol::Diagram fig8_r2() { return hypvol::parse_pd(hypvol::fixtures::kFigureEightPdR2); }

inline hypvol::HolonomyRep rho(const hypvol::Diagram& d) {
  return hypvol::load_holonomy(hypvol::fixtures::figure_eight_holonomy(), d);
}
inline hypvol::HolonomyRep rho_rev(const hypvol::Diagram& d) {
  return hypvol::load_holonomy(hypvol::fixtures::figure_eight_holonomy_reversed(), d);
}

// Colorings of the 4-crossing figure-eight diagram whose state-sum chains
// reduce to the two tetrahedra listed for each worked example.
struct Golden {
  std::string name;
  bool reversed;
  std::string base_meridian;
  std::string region0;
  std::vector<std::string> arcs;
  int k;
  // Surviving tetrahedra: first with coefficient +1, second with -1.
  std::array<BoundaryPoint, 4> plus;
  std::array<BoundaryPoint, 4> minus;
};

inline std::vector<Golden> golden_colorings() {
  const Complex i{0.0, 1.0};
  return {
      {"S1", false, "w", "x y x^-1", {"z^-1 x z", "x", "w^-1 x w", "x y x^-1"}, 1,
       {pt(0.0), pt(kOmegaPrime), inf(), pt(kOmega)},
       {pt(0.0), inf(), pt(kOmega), pt(1.0)}},
      {"S2", false, "w", "w^-1 x w", {"z^-1 x z", "x y x^-1", "z^-1 y z", "w^-1 x w"}, -1,
       {pt(0.0), pt(-1.0), pt(kOmegaPrime), inf()},
       {pt(0.0), pt(kOmegaPrime), inf(), pt(kOmega)}},
      {"S3", true, "x^-1", "x^-1", {"x^-1", "z^-1 x^-1 z", "w z^-1 w^-1", "x y^-1 x^-1"}, 1,
       {pt(0.0), pt(1.0), pt(kOmega), inf()},
       {pt(0.0), pt(kOmegaBar), inf(), pt(1.0)}},
      {"S4", true, "x^-1", "x^-1", {"x^-1", "x y^-1 x^-1", "x z^-1 x^-1", "w z^-1 w^-1"}, -1,
       {pt(0.0), pt(kOmega), inf(), pt(kOmegaPrime)},
       {pt(0.0), pt(kSqrt3 / 3.0 * i), pt(kOmegaPrime), pt(kOmega)}},
  };
}

inline nlohmann::json golden_document(const Golden& g) {
  nlohmann::json arcs = nlohmann::json::object();
  for (std::size_t a = 0; a < g.arcs.size(); ++a) arcs[std::to_string(a)] = g.arcs[a];
  return {{"base_meridian", g.base_meridian}, {"arcs", arcs}, {"regions", {{"0", g.region0}}}};
}

}  // namespace testing_support
