#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypvol/diagram.hpp"
#include "hypvol/hypgeom.hpp"

namespace hypvol {

struct Letter {
  int generator;  // index into HolonomyRep::generators()
  int exponent;   // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the meridian generators.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters);  // reduces
  static GroupWord generator(int g) { return GroupWord({{g, 1}}); }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  GroupWord inverse() const;
  friend GroupWord operator*(const GroupWord& u, const GroupWord& v);
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

enum class Orientation { Standard, Reversed };

class HolonomyRep;

/// A meridian realized through the holonomy: word, its matrix and the
/// matrix's parabolic fixed point. Equality is by matrix up to sign.
class QuandleElement {
 public:
  QuandleElement(GroupWord word, MoebiusMap matrix, BoundaryPoint fixed_point)
      : word_(std::move(word)),
        matrix_(matrix),
        fixed_point_(fixed_point) {}

  const GroupWord& word() const { return word_; }
  const MoebiusMap& matrix() const { return matrix_; }
  const BoundaryPoint& fixed_point() const { return fixed_point_; }

  bool same_as(const QuandleElement& other, double tol = kMatrixTol) const {
    return matrix_.approx_equal(other.matrix_, tol);
  }

 private:
  GroupWord word_;
  MoebiusMap matrix_;
  BoundaryPoint fixed_point_;
};

/// a * b = b^-1 a b.
QuandleElement quandle_op(const QuandleElement& a, const QuandleElement& b);
/// The unique c with c * b = a, i.e. b a b^-1.
QuandleElement quandle_op_inv(const QuandleElement& a, const QuandleElement& b);

/// A holonomy representation on named meridian generators, validated against
/// a diagram whose arcs it colors.
class HolonomyRep {
 public:
  std::span<const std::string> generators() const { return names_; }
  const MoebiusMap& matrix(int g) const { return matrices_.at(g); }
  Orientation orientation() const { return orientation_; }
  std::optional<double> declared_volume() const { return volume_; }

  /// Throws Error(UnknownGenerator).
  int generator_index(std::string_view name) const;
  /// Generator assigned to an arc of the companion diagram.
  int arc_generator(int arc) const { return arc_generator_.at(arc); }
  std::span<const int> arc_labeling() const { return arc_generator_; }

  QuandleElement generator(int g) const;
  QuandleElement generator(std::string_view name) const {
    return generator(generator_index(name));
  }
  QuandleElement element(const GroupWord& w) const;
  QuandleElement element(std::string_view word_text) const {
    return element(parse_word(word_text));
  }

  /// Space-separated generators with "^-1" for inverses. A token equal to a
  /// generator name is that generator, so a rep with generators "x^-1" reads
  /// "x^-1" as the generator and "x" as its inverse. Throws
  /// Error(UnknownGenerator).
  GroupWord parse_word(std::string_view text) const;
  std::string format_word(const GroupWord& w) const;

  /// Ordered product of generator matrices and their inverses.
  MoebiusMap evaluate(const GroupWord& w) const;

  /// Largest residual of the diagram's Wirtinger relations under the arc
  /// labeling.
  double max_relation_residual(const Diagram& d) const;

 private:
  friend HolonomyRep load_holonomy(const nlohmann::json& doc, const Diagram& d);

  std::vector<std::string> names_;
  std::vector<MoebiusMap> matrices_;
  std::vector<MoebiusMap> inverses_;
  std::unordered_map<std::string, int> index_;
  Orientation orientation_ = Orientation::Standard;
  std::optional<double> volume_;
  std::vector<int> arc_generator_;
};

/// Reads a holonomy document
///   { "generators": [...], "matrices": { name: [[[re,im],[re,im]],
///     [[re,im],[re,im]]] }, "orientation": "standard" | "reversed",
///     "volume": V, "arcs": { arc-id: name } }
/// ("volume" and "arcs" optional) and validates it against `d`. Without an
/// "arcs" map the arc labeling is recovered by searching bijections between
/// arcs and generators. Throws Error(BadMatrix | NotParabolic |
/// RelationViolated | UnknownGenerator | InvalidDocument).
HolonomyRep load_holonomy(const nlohmann::json& doc, const Diagram& d);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json point_to_json(const BoundaryPoint& p);
nlohmann::json matrix_to_json(const MoebiusMap& m);

/// Hash index over elements keyed by sign-normalized entries rounded to a
/// 1e-7 grid; hits are confirmed with approx_equal.
class ElementIndex {
 public:
  /// Index of a matching element, or -1.
  int find(const MoebiusMap& m) const;
  /// Inserts if absent; returns {index, inserted}.
  std::pair<int, bool> insert(const MoebiusMap& m);
  std::size_t size() const { return stored_.size(); }

 private:
  using Key = std::array<std::int64_t, 8>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  static Key key_of(const MoebiusMap& m);

  std::unordered_map<Key, std::vector<int>, KeyHash> buckets_;
  std::vector<MoebiusMap> stored_;
};

/// All conjugates g^-1 x g for generators x and reduced words g of length
/// <= depth, deduplicated by matrix, in order of first appearance (word
/// length, then letter order, then generator).
std::vector<QuandleElement> enumerate_conjugates(const HolonomyRep& h,
                                                 int depth);

}  // namespace hypvol
