#pragma once

#include <complex>

#include "hypvol/hypgeom.hpp"

namespace hypvol {

/// Volume of the regular ideal tetrahedron, D(e^{i pi/3}); the maximum of |D|.
inline constexpr double kRegularIdealVolume = 1.0149416064096536;

/// Principal branch of the dilogarithm Li2(z), cut along [1, inf).
/// Absolute error ~1e-15 away from the cut.
Complex dilog(Complex z);

/// Bloch-Wigner dilogarithm D(z) = Im Li2(z) + arg(1 - z) log|z|.
/// Returns exactly 0 on the real axis, at 0 and 1.
double bloch_wigner(Complex z);

/// D extended to the sphere; D(inf) = 0.
double bloch_wigner(const BoundaryPoint& z);

}  // namespace hypvol
