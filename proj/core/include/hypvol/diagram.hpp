#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hypvol {

/// Which side of an edge, looking along the knot's orientation.
enum class Side { Left, Right };

/// One PD quadruple: edge labels counterclockwise from the incoming
/// under-edge. `sign` is +1 when the over-strand runs from position 3 to
/// position 1, -1 when it runs from 1 to 3.
struct Crossing {
  std::array<int, 4> edges;
  int sign;
  int over_in;   // edge label entering along the over-strand
  int over_out;  // edge label leaving along the over-strand
};

struct BoundaryStep {
  int arc;
  int edge;  // PD label; 0 for the crossingless unknot
  Side side;  // side of the edge the region lies on
};

struct Region {
  std::vector<BoundaryStep> boundary;
};

/// Colors around a crossing. Arc normals point to the left of travel. The
/// source region is the unique corner region that both the under- and the
/// over-strand normals point away from. `under_in_arc` is the under arc
/// bordering the source region (the one that gets acted on), `under_out_arc`
/// the one across the over-strand. At a negative crossing the source-side
/// under arc is the one leaving the crossing.
struct CrossingFrame {
  int under_in_arc;
  int under_out_arc;
  int over_arc;
  int source_region;
  int sign;
};

/// g(result_arc) = g(over_arc)^{-sign} g(source_arc) g(over_arc)^{sign}, with
/// result/source the outgoing/incoming under arcs along the orientation.
struct WirtingerRelation {
  int crossing;
  int result_arc;
  int over_arc;
  int source_arc;
  int sign;
};

/// One dual-graph step across an arc.
struct WalkStep {
  int arc;
  bool with_normal;  // from the right region of the arc to its left region
  int from_region;
  int to_region;
};

/// An oriented diagram of a single knot on S^2, immutable after parsing.
class Diagram {
 public:
  /// Builds and validates a diagram from PD quadruples. Throws
  /// Error(EdgeCountMismatch | MalformedTerm | Disconnected | NonPlanar).
  static Diagram from_pd(std::span<const std::array<int, 4>> quads);
  /// The crossingless diagram: one arc, two regions (0 left, 1 right).
  static Diagram unknot();

  int num_crossings() const { return static_cast<int>(crossings_.size()); }
  int num_edges() const { return static_cast<int>(edge_arc_.size()); }
  int num_arcs() const { return num_arcs_; }
  int num_regions() const { return static_cast<int>(regions_.size()); }

  const Crossing& crossing(int c) const { return crossings_.at(c); }
  std::span<const Crossing> crossings() const { return crossings_; }
  std::span<const Region> regions() const { return regions_; }

  /// Edges are addressed by PD label 1..2n (label 0 for the unknot's loop).
  int arc_of_edge(int label) const { return edge_arc_.at(index(label)); }
  int left_region(int label) const { return left_.at(index(label)); }
  int right_region(int label) const { return right_.at(index(label)); }
  int successor(int label) const;
  /// Edge labels of an arc in travel order.
  std::span<const int> arc_edges(int arc) const { return arc_edges_.at(arc); }
  /// All edge labels, ascending.
  std::vector<int> edge_labels() const;

  int crossing_sign(int c) const { return crossings_.at(c).sign; }
  int writhe() const;
  CrossingFrame crossing_frame(int c) const;

  /// Region incident to the corner between PD positions p and p + 1 (ccw).
  int corner_region(int c, int position) const {
    return corners_.at(c).at(position);
  }

 private:
  Diagram() = default;
  int index(int label) const { return crossings_.empty() ? 0 : label - 1; }

  std::vector<Crossing> crossings_;
  std::vector<int> succ_;       // by edge index
  std::vector<int> edge_arc_;   // by edge index
  std::vector<int> left_;       // by edge index
  std::vector<int> right_;      // by edge index
  std::vector<std::array<int, 4>> corners_;
  std::vector<std::vector<int>> arc_edges_;
  std::vector<Region> regions_;
  int num_arcs_ = 0;
};

/// Parses whitespace-separated X(a,b,c,d) terms. Empty input is the unknot.
/// Throws Error(MalformedTerm) on bad syntax, plus the Diagram::from_pd errors.
Diagram parse_pd(std::string_view text);

/// Serializes back to "X(a,b,c,d) ..." in crossing order.
std::string to_pd(const Diagram& d);

/// Mirror image: each quadruple's cyclic order reversed, X(a,b,c,d) ->
/// X(a,d,c,b). Every crossing sign flips.
Diagram mirror(const Diagram& d);

std::vector<WirtingerRelation> wirtinger_relations(const Diagram& d);

/// Shortest dual-graph path (breadth-first, edges scanned in label order).
std::vector<WalkStep> region_walk(const Diagram& d, int from_region,
                                  int to_region);

/// Crossings, edges, arcs, regions and signs with stable integer ids.
nlohmann::json to_json(const Diagram& d);

}  // namespace hypvol
