#include "hypvol/holquandle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypvol/error.hpp"

namespace hypvol {

namespace {

constexpr std::string_view kInverseSuffix = "^-1";

bool ends_with_inverse(std::string_view s) {
  return s.size() > kInverseSuffix.size() && s.ends_with(kInverseSuffix);
}

}  // namespace

GroupWord::GroupWord(std::vector<Letter> letters) {
  for (const Letter& l : letters) {
    if (!letters_.empty() && letters_.back().generator == l.generator &&
        letters_.back().exponent == -l.exponent) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

GroupWord GroupWord::inverse() const {
  GroupWord out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back({it->generator, -it->exponent});
  }
  return out;
}

GroupWord operator*(const GroupWord& u, const GroupWord& v) {
  std::vector<Letter> all(u.letters_);
  all.insert(all.end(), v.letters_.begin(), v.letters_.end());
  return GroupWord(std::move(all));
}

QuandleElement quandle_op(const QuandleElement& a, const QuandleElement& b) {
  const MoebiusMap binv = inverse(b.matrix());
  const MoebiusMap m = binv * a.matrix() * b.matrix();
  return QuandleElement(b.word().inverse() * a.word() * b.word(), m, apply(binv, a.fixed_point()));
}

QuandleElement quandle_op_inv(const QuandleElement& a, const QuandleElement& b) {
  const MoebiusMap m = b.matrix() * a.matrix() * inverse(b.matrix());
  return QuandleElement(b.word() * a.word() * b.word().inverse(), m, apply(b.matrix(), a.fixed_point()));
}

int HolonomyRep::generator_index(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + std::string(name) + "'");
  }
  return it->second;
}

QuandleElement HolonomyRep::generator(int g) const {
  return QuandleElement(GroupWord::generator(g), matrices_.at(g),
                        fixed_point_of(matrices_.at(g)));
}

QuandleElement HolonomyRep::element(const GroupWord& w) const {
  const MoebiusMap m = evaluate(w);
  if (!is_parabolic(m)) {
    throw Error(ErrorKind::NotParabolic, "word '" + format_word(w) + "' is not a meridian");
  }
  return QuandleElement(w, m, fixed_point_of(m));
}

GroupWord HolonomyRep::parse_word(std::string_view text) const {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (const auto it = index_.find(token); it != index_.end()) {
      letters.push_back({it->second, 1});
      continue;
    }
    if (ends_with_inverse(token)) {
      const std::string base = token.substr(0, token.size() - kInverseSuffix.size());
      if (const auto it = index_.find(base); it != index_.end()) {
        letters.push_back({it->second, -1});
        continue;
      }
    }
    if (const auto it = index_.find(token + std::string(kInverseSuffix)); it != index_.end()) {
      letters.push_back({it->second, -1});
      continue;
    }
    throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + token + "'");
  }
  return GroupWord(std::move(letters));
}

std::string HolonomyRep::format_word(const GroupWord& w) const {
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    const std::string& name = names_.at(l.generator);
    if (l.exponent > 0) {
      out += name;
    } else if (ends_with_inverse(name) &&
               !index_.contains(name.substr(0, name.size() - kInverseSuffix.size()))) {
      out += name.substr(0, name.size() - kInverseSuffix.size());
    } else {
      out += name + std::string(kInverseSuffix);
    }
  }
  return out;
}

MoebiusMap HolonomyRep::evaluate(const GroupWord& w) const {
  MoebiusMap m;
  for (const Letter& l : w.letters()) {
    m = m * (l.exponent > 0 ? matrices_.at(l.generator) : inverses_.at(l.generator));
  }
  return m;
}

namespace {

// Residual of g(result) = g(over)^-s g(source) g(over)^s.
double relation_residual(const WirtingerRelation& r, const std::vector<MoebiusMap>& m,
                         const std::vector<int>& label) {
  const MoebiusMap& over = m[label[r.over_arc]];
  const MoebiusMap conj = r.sign > 0 ? inverse(over) * m[label[r.source_arc]] * over
                                     : over * m[label[r.source_arc]] * inverse(over);
  return conj.distance(m[label[r.result_arc]]);
}

}  // namespace

double HolonomyRep::max_relation_residual(const Diagram& d) const {
  double worst = 0.0;
  for (const auto& r : wirtinger_relations(d)) {
    worst = std::max(worst, relation_residual(r, matrices_, arc_generator_));
  }
  return worst;
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorKind::InvalidDocument, "complex number must be [re, im], got " + j.dump());
}

nlohmann::json point_to_json(const BoundaryPoint& p) {
  if (p.is_infinite()) return "inf";
  return complex_to_json(p.value());
}

nlohmann::json matrix_to_json(const MoebiusMap& m) {
  return nlohmann::json::array({nlohmann::json::array({complex_to_json(m.a()), complex_to_json(m.b())}),
                                nlohmann::json::array({complex_to_json(m.c()), complex_to_json(m.d())})});
}

namespace {

MoebiusMap matrix_from_json(const std::string& name, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
      j[0].size() != 2 || j[1].size() != 2) {
    throw Error(ErrorKind::InvalidDocument, "matrix for '" + name + "' must be 2x2");
  }
  try {
    return MoebiusMap::from_entries(complex_from_json(j[0][0]), complex_from_json(j[0][1]),
                                    complex_from_json(j[1][0]), complex_from_json(j[1][1]));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BadMatrix) throw;
    throw Error(ErrorKind::BadMatrix, "matrix for '" + name + "' is singular or not finite");
  }
}

// First injective arc -> generator assignment (lexicographic in generator
// index, arcs in id order) satisfying every relation; empty if none.
std::vector<int> search_labeling(const Diagram& d, const std::vector<MoebiusMap>& m) {
  const int arcs = d.num_arcs();
  const int gens = static_cast<int>(m.size());
  const auto relations = wirtinger_relations(d);
  std::vector<int> label(arcs, -1);
  std::vector<bool> used(gens, false);
  auto consistent = [&](int upto) {
    for (const auto& r : relations) {
      if (std::max({r.result_arc, r.over_arc, r.source_arc}) > upto) continue;
      if (relation_residual(r, m, label) >= kMatrixTol) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int arc) -> bool {
    if (arc == arcs) return true;
    for (int g = 0; g < gens; ++g) {
      if (used[g] && gens >= arcs) continue;
      label[arc] = g;
      used[g] = true;
      if (consistent(arc) && self(self, arc + 1)) return true;
      used[g] = false;
    }
    label[arc] = -1;
    return false;
  };
  if (!rec(rec, 0)) return {};
  return label;
}

}  // namespace

HolonomyRep load_holonomy(const nlohmann::json& doc, const Diagram& d) {
  if (!doc.is_object()) throw Error(ErrorKind::InvalidDocument, "holonomy document must be an object");
  const auto gens = doc.find("generators");
  if (gens == doc.end() || !gens->is_array() || gens->empty()) {
    throw Error(ErrorKind::InvalidDocument, "'generators' must be a non-empty array");
  }
  const auto mats = doc.find("matrices");
  if (mats == doc.end() || !mats->is_object()) {
    throw Error(ErrorKind::InvalidDocument, "'matrices' must be an object");
  }

  HolonomyRep h;
  for (const auto& g : *gens) {
    if (!g.is_string() || g.get<std::string>().empty()) {
      throw Error(ErrorKind::InvalidDocument, "generator names must be non-empty strings");
    }
    const std::string name = g.get<std::string>();
    if (name.find_first_of(" \t\n") != std::string::npos) {
      throw Error(ErrorKind::InvalidDocument, "generator name '" + name + "' contains whitespace");
    }
    if (!h.index_.emplace(name, static_cast<int>(h.names_.size())).second) {
      throw Error(ErrorKind::InvalidDocument, "duplicate generator '" + name + "'");
    }
    h.names_.push_back(name);
    const auto m = mats->find(name);
    if (m == mats->end()) {
      throw Error(ErrorKind::InvalidDocument, "no matrix for generator '" + name + "'");
    }
    const MoebiusMap matrix = matrix_from_json(name, *m);
    if (!is_parabolic(matrix)) {
      throw Error(ErrorKind::NotParabolic, "generator '" + name + "'");
    }
    h.matrices_.push_back(matrix);
    h.inverses_.push_back(inverse(matrix));
  }

  const std::string orientation = doc.value("orientation", std::string("standard"));
  if (orientation == "standard") {
    h.orientation_ = Orientation::Standard;
  } else if (orientation == "reversed") {
    h.orientation_ = Orientation::Reversed;
  } else {
    throw Error(ErrorKind::InvalidDocument, "orientation must be 'standard' or 'reversed'");
  }

  if (const auto v = doc.find("volume"); v != doc.end() && !v->is_null()) {
    if (!v->is_number() || v->get<double>() <= 0.0) {
      throw Error(ErrorKind::InvalidDocument, "'volume' must be a positive number");
    }
    h.volume_ = v->get<double>();
  }

  if (const auto arcs = doc.find("arcs"); arcs != doc.end()) {
    if (!arcs->is_object()) throw Error(ErrorKind::InvalidDocument, "'arcs' must be an object");
    h.arc_generator_.assign(d.num_arcs(), -1);
    for (const auto& [key, value] : arcs->items()) {
      int arc = -1;
      try {
        arc = std::stoi(key);
      } catch (const std::exception&) {
      }
      if (arc < 0 || arc >= d.num_arcs() || !value.is_string()) {
        throw Error(ErrorKind::InvalidDocument, "bad arc entry '" + key + "'");
      }
      h.arc_generator_[arc] = h.generator_index(value.get<std::string>());
    }
    if (std::ranges::count(h.arc_generator_, -1) > 0) {
      throw Error(ErrorKind::InvalidDocument, "'arcs' must name a generator for every arc");
    }
    for (const auto& r : wirtinger_relations(d)) {
      const double res = relation_residual(r, h.matrices_, h.arc_generator_);
      if (res >= kMatrixTol) {
        std::ostringstream os;
        os << "crossing " << r.crossing << ", residual " << res;
        throw Error(ErrorKind::RelationViolated, os.str());
      }
    }
  } else {
    h.arc_generator_ = search_labeling(d, h.matrices_);
    if (h.arc_generator_.empty()) {
      throw Error(ErrorKind::RelationViolated,
                  "no assignment of generators to arcs satisfies the Wirtinger relations");
    }
  }
  return h;
}

ElementIndex::Key ElementIndex::key_of(const MoebiusMap& m) {
  std::array<double, 8> v = {m.a().real(), m.a().imag(), m.b().real(), m.b().imag(),
                             m.c().real(), m.c().imag(), m.d().real(), m.d().imag()};
  const auto lead = std::ranges::find_if(v, [](double x) { return std::abs(x) > 1e-6; });
  const double sign = (lead != v.end() && *lead < 0.0) ? -1.0 : 1.0;
  Key k;
  for (std::size_t i = 0; i < v.size(); ++i) {
    k[i] = static_cast<std::int64_t>(std::llround(sign * v[i] * 1e7));
  }
  return k;
}

std::size_t ElementIndex::KeyHash::operator()(const Key& k) const {
  std::size_t h = 0;
  for (auto x : k) h = h * 1000003u ^ std::hash<std::int64_t>{}(x);
  return h;
}

int ElementIndex::find(const MoebiusMap& m) const {
  const auto it = buckets_.find(key_of(m));
  if (it == buckets_.end()) return -1;
  for (int i : it->second) {
    if (stored_[i].approx_equal(m)) return i;
  }
  return -1;
}

std::pair<int, bool> ElementIndex::insert(const MoebiusMap& m) {
  auto& bucket = buckets_[key_of(m)];
  for (int i : bucket) {
    if (stored_[i].approx_equal(m)) return {i, false};
  }
  const int id = static_cast<int>(stored_.size());
  stored_.push_back(m);
  bucket.push_back(id);
  return {id, true};
}

std::vector<QuandleElement> enumerate_conjugates(const HolonomyRep& h, int depth) {
  const int gens = static_cast<int>(h.generators().size());
  struct Conjugator {
    GroupWord word;
    MoebiusMap matrix;
  };
  std::vector<Conjugator> level{{GroupWord(), MoebiusMap()}};
  std::vector<QuandleElement> out;
  ElementIndex index;
  for (int len = 0; len <= depth; ++len) {
    for (const auto& g : level) {
      const MoebiusMap ginv = inverse(g.matrix);
      for (int x = 0; x < gens; ++x) {
        const MoebiusMap m = ginv * h.matrix(x) * g.matrix;
        if (index.insert(m).second) {
          out.emplace_back(g.word.inverse() * GroupWord::generator(x) * g.word, m,
                           apply(ginv, fixed_point_of(h.matrix(x))));
        }
      }
    }
    if (len == depth) break;
    std::vector<Conjugator> next;
    for (const auto& g : level) {
      const auto letters = g.word.letters();
      for (int x = 0; x < gens; ++x) {
        for (int e : {1, -1}) {
          if (!letters.empty() && letters.back().generator == x && letters.back().exponent == -e) {
            continue;
          }
          std::vector<Letter> w(letters.begin(), letters.end());
          w.push_back({x, e});
          const MoebiusMap step = e > 0 ? h.matrix(x) : inverse(h.matrix(x));
          next.push_back({GroupWord(std::move(w)), g.matrix * step});
        }
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace hypvol
