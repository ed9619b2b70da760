#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypvol/diagram.hpp"
#include "hypvol/holquandle.hpp"
#include "hypvol/hypgeom.hpp"

namespace hypvol {

/// Default classification tolerance against the reference volume.
inline constexpr double kLatticeTol = 1e-6;

/// Arc and region colors, both in the knot quandle. Crossing rule:
/// color(under_out) = color(under_in) * color(over). Region rule: crossing
/// an arc along its normal (right to left) acts by * arc color.
struct ShadowColoring {
  std::vector<QuandleElement> arc_colors;
  std::vector<QuandleElement> region_colors;
};

/// vol^w(z, x, y): signed volume of the four ideal tetrahedra
///   (w, z, x, y) + (w, z*x, y, x) + (w, (z*x)*y, x*y, y) + (w, z*y, y, x*y)
/// on the fixed points of the listed elements.
double cocycle_vol(const QuandleElement& w, const QuandleElement& z,
                   const QuandleElement& x, const QuandleElement& y);

/// The same four tetrahedra, in order.
std::array<IdealTetrahedron, 4> cocycle_chain(const QuandleElement& w,
                                              const QuandleElement& z,
                                              const QuandleElement& x,
                                              const QuandleElement& y);

struct CocycleResiduals {
  double condition_i = 0.0;   // max |theta(r, x, x)|
  double condition_ii = 0.0;  // max |lhs - rhs| of the 2-cocycle identity
  int samples = 0;

  double max() const { return std::max(condition_i, condition_ii); }
};

/// Samples `samples` quadruples (r, x, y, z) from `pool` (fixed seed) and
/// evaluates both 2-cocycle conditions for theta = vol^w.
CocycleResiduals cocycle_residuals(const QuandleElement& w,
                                   std::span<const QuandleElement> pool,
                                   int samples, std::uint64_t seed = 20240101);

enum class ViolationKind { Crossing, Region };

struct Violation {
  ViolationKind kind;
  int location;  // crossing id, or edge label for a region rule
  double residual;
};

/// Empty when both rules hold everywhere.
std::vector<Violation> validate_coloring(const Diagram& d,
                                         const ShadowColoring& s);

/// Region colors determined by one region's color, transported across arcs
/// breadth-first. Throws Error(InconsistentExtension) if two routes disagree.
std::vector<QuandleElement> extend_region_colors(
    const Diagram& d, std::span<const QuandleElement> arc_colors,
    int base_region, const QuandleElement& base_color);

/// Wirtinger generators on the arcs, regions extended from `base_region`.
ShadowColoring natural_coloring(const Diagram& d, const HolonomyRep& h,
                                int base_region,
                                const QuandleElement& base_color);

/// eps(c) * vol^w(r, x, y) with (r, x, y) the source-region, under_in and
/// over colors of the crossing frame.
double boltzmann_weight(const Diagram& d, const ShadowColoring& s, int crossing,
                        const QuandleElement& w);

/// Sum of Boltzmann weights over all crossings.
double state_sum(const Diagram& d, const ShadowColoring& s,
                 const QuandleElement& w);

struct SignedTetrahedron {
  IdealTetrahedron tet;
  int coefficient;
};

/// The state sum as a chain of ideal tetrahedra: degenerate simplices are
/// dropped, and simplices on the same vertex set combine with the sign of
/// the relative permutation. Sum of coefficient * volume equals state_sum.
std::vector<SignedTetrahedron> state_sum_chain(const Diagram& d,
                                               const ShadowColoring& s,
                                               const QuandleElement& w);

struct PhiResult {
  double phi = 0.0;
  double volume = 0.0;
  int k = 0;
  double residual = 0.0;
};

/// Nearest k in {-1, 0, 1} to phi / volume. Throws Error(OutOfLattice) when
/// |phi - k V| >= tol.
PhiResult classify(double phi, double volume, double tol = kLatticeTol);

PhiResult phi(const Diagram& d, const ShadowColoring& s,
              const QuandleElement& w, double volume,
              double tol = kLatticeTol);

/// Declared volume of `h` if present, otherwise |phi| of the natural coloring
/// (base region 0 colored by w).
double reference_volume(const Diagram& d, const HolonomyRep& h,
                        const QuandleElement& w);

struct EnumerationSummary {
  std::size_t emitted = 0;
  std::size_t arc_colorings = 0;
  bool truncated = false;
};

using ColoringSink = std::function<void(const ShadowColoring&)>;

/// Every shadow coloring with arc colors and region-0 color in `pool`. Arc
/// colorings are generated lexicographically by pool index in arc-id order
/// (backtracking on the crossing rule); for each, region 0 runs through the
/// pool. Stops after `cap` colorings and reports whether more existed.
EnumerationSummary enumerate_colorings(const Diagram& d,
                                       std::span<const QuandleElement> pool,
                                       std::size_t cap,
                                       const ColoringSink& sink);

struct Witness {
  ShadowColoring coloring;
  double phi;
  int k;
};

/// Census of k over enumerated colorings for one representation.
struct ColoringCensus {
  std::map<int, std::size_t> k_counts;  // keys -1, 0, 1
  std::vector<double> phis;
  std::map<int, Witness> first_witness;
  double max_residual = 0.0;
  double volume = 0.0;
  std::size_t pool_size = 0;
  EnumerationSummary summary;
};

/// Enumerates colorings from the depth-`depth` conjugate pool of `h` and
/// classifies each with vol^w. Propagates Error(OutOfLattice).
ColoringCensus census_colorings(const Diagram& d, const HolonomyRep& h,
                                const QuandleElement& w, double volume,
                                int depth, std::size_t cap,
                                double tol = kLatticeTol);

enum class Detection { Detected, NotDetectedWithinBound, NotComputed };

std::string_view to_string(Detection d);

struct SymmetryReport {
  ColoringCensus standard;
  std::optional<ColoringCensus> reversed;
  Detection negatively_amphicheiral = Detection::NotComputed;
  Detection invertible = Detection::NotComputed;
  Detection positively_amphicheiral = Detection::NotComputed;
  double volume = 0.0;
};

/// Bounded symmetry search. K ~ -K* is detected by a k = -1 coloring for
/// `h_std`; K ~ -K by k = +1 and K ~ K* by k = -1 for `h_rev` (optional).
/// Base meridians default to each rep's first generator. Non-detection only
/// means none was found within depth and cap.
SymmetryReport symmetry_report(const Diagram& d, const HolonomyRep& h_std,
                               const HolonomyRep* h_rev, int depth,
                               std::size_t cap, double tol = kLatticeTol);

/// A coloring document
///   { "base_meridian": word, "arcs": { id: word }, "regions": { id: word } }
/// All arcs are required. Missing regions are extended from the
/// lowest-numbered region present. Throws Error(InvalidDocument |
/// UnknownGenerator | InconsistentExtension).
struct ColoringDocument {
  ShadowColoring coloring;
  QuandleElement base_meridian;
};

ColoringDocument coloring_from_json(const nlohmann::json& doc,
                                    const Diagram& d, const HolonomyRep& h);

nlohmann::json coloring_to_json(const ShadowColoring& s, const HolonomyRep& h,
                                const QuandleElement& base_meridian);

}  // namespace hypvol
