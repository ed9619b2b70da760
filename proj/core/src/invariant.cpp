#include "hypvol/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include "hypvol/error.hpp"

namespace hypvol {

namespace {

// Matrix and fixed point only; words are not needed inside the cocycle.
struct Meridian {
  MoebiusMap m;
  BoundaryPoint p;
};

Meridian meridian(const QuandleElement& e) { return {e.matrix(), e.fixed_point()}; }

Meridian op(const Meridian& a, const Meridian& b) {
  const MoebiusMap m = inverse(b.m) * a.m * b.m;
  return {m, fixed_point_of(m)};
}

std::array<IdealTetrahedron, 4> chain(const BoundaryPoint& w, const Meridian& z,
                                      const Meridian& x, const Meridian& y) {
  const Meridian zx = op(z, x);
  const Meridian xy = op(x, y);
  const Meridian zxy = op(zx, y);
  const Meridian zy = op(z, y);
  return {IdealTetrahedron{{w, z.p, x.p, y.p}}, IdealTetrahedron{{w, zx.p, y.p, x.p}},
          IdealTetrahedron{{w, zxy.p, xy.p, y.p}}, IdealTetrahedron{{w, zy.p, y.p, xy.p}}};
}

double chain_volume(const std::array<IdealTetrahedron, 4>& c) {
  double v = 0.0;
  for (const auto& t : c) v += ideal_tet_volume(t);
  return v;
}

double theta(const QuandleElement& w, const QuandleElement& r, const QuandleElement& x,
             const QuandleElement& y) {
  return cocycle_vol(w, r, x, y);
}

// Region transport: crossing an arc along its normal (right -> left) maps
// r to r * arc; against the normal, to the inverse operation.
QuandleElement transport(const QuandleElement& r, const QuandleElement& arc, bool with_normal) {
  return with_normal ? quandle_op(r, arc) : quandle_op_inv(r, arc);
}

// Breadth-first extension. When `strict`, every dual edge is re-checked.
std::vector<QuandleElement> extend(const Diagram& d, std::span<const QuandleElement> arcs,
                                   int base_region, const QuandleElement& base, bool strict) {
  const int regions = d.num_regions();
  if (base_region < 0 || base_region >= regions) {
    throw Error(ErrorKind::InvalidDocument, "base region " + std::to_string(base_region) +
                                                " out of range");
  }
  if (static_cast<int>(arcs.size()) != d.num_arcs()) {
    throw Error(ErrorKind::InvalidDocument, "coloring needs one color per arc");
  }
  std::vector<std::optional<QuandleElement>> color(regions);
  color[base_region] = base;
  std::deque<int> queue{base_region};
  const auto labels = d.edge_labels();
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (int e : labels) {
      const int l = d.left_region(e);
      const int r = d.right_region(e);
      if (l != f && r != f) continue;
      const QuandleElement& a = arcs[d.arc_of_edge(e)];
      if (r == f && !color[l]) {
        color[l] = transport(*color[f], a, true);
        queue.push_back(l);
      }
      if (l == f && !color[r]) {
        color[r] = transport(*color[f], a, false);
        queue.push_back(r);
      }
    }
  }
  std::vector<QuandleElement> out;
  out.reserve(regions);
  for (auto& c : color) out.push_back(std::move(*c));
  if (strict) {
    for (int e : labels) {
      const auto expect = quandle_op(out[d.right_region(e)], arcs[d.arc_of_edge(e)]);
      if (!expect.same_as(out[d.left_region(e)])) {
        throw Error(ErrorKind::InconsistentExtension,
                    "region colors disagree across edge " + std::to_string(e));
      }
    }
  }
  return out;
}

}  // namespace

double cocycle_vol(const QuandleElement& w, const QuandleElement& z, const QuandleElement& x,
                   const QuandleElement& y) {
  return chain_volume(chain(w.fixed_point(), meridian(z), meridian(x), meridian(y)));
}

std::array<IdealTetrahedron, 4> cocycle_chain(const QuandleElement& w, const QuandleElement& z,
                                              const QuandleElement& x, const QuandleElement& y) {
  return chain(w.fixed_point(), meridian(z), meridian(x), meridian(y));
}

CocycleResiduals cocycle_residuals(const QuandleElement& w, std::span<const QuandleElement> pool,
                                   int samples, std::uint64_t seed) {
  CocycleResiduals out;
  if (pool.empty() || samples <= 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int s = 0; s < samples; ++s) {
    const auto& r = pool[pick(rng)];
    const auto& x = pool[pick(rng)];
    const auto& y = pool[pick(rng)];
    const auto& z = pool[pick(rng)];
    out.condition_i = std::max(out.condition_i, std::abs(theta(w, r, x, x)));
    const double lhs = theta(w, r, x, y) + theta(w, quandle_op(r, y), quandle_op(x, y), z) +
                       theta(w, r, y, z);
    const double rhs = theta(w, quandle_op(r, x), y, z) + theta(w, r, x, z) +
                       theta(w, quandle_op(r, z), quandle_op(x, z), quandle_op(y, z));
    out.condition_ii = std::max(out.condition_ii, std::abs(lhs - rhs));
    ++out.samples;
  }
  return out;
}

std::vector<Violation> validate_coloring(const Diagram& d, const ShadowColoring& s) {
  if (static_cast<int>(s.arc_colors.size()) != d.num_arcs() ||
      static_cast<int>(s.region_colors.size()) != d.num_regions()) {
    throw Error(ErrorKind::InvalidDocument, "coloring does not match the diagram's arcs/regions");
  }
  std::vector<Violation> out;
  for (int c = 0; c < d.num_crossings(); ++c) {
    const auto f = d.crossing_frame(c);
    const auto expect = quandle_op(s.arc_colors[f.under_in_arc], s.arc_colors[f.over_arc]);
    const auto& got = s.arc_colors[f.under_out_arc];
    const double res = expect.matrix().distance(got.matrix());
    if (!expect.same_as(got)) out.push_back({ViolationKind::Crossing, c, res});
  }
  for (int e : d.edge_labels()) {
    const auto expect = quandle_op(s.region_colors[d.right_region(e)], s.arc_colors[d.arc_of_edge(e)]);
    const auto& got = s.region_colors[d.left_region(e)];
    const double res = expect.matrix().distance(got.matrix());
    if (!expect.same_as(got)) out.push_back({ViolationKind::Region, e, res});
  }
  return out;
}

std::vector<QuandleElement> extend_region_colors(const Diagram& d,
                                                 std::span<const QuandleElement> arc_colors,
                                                 int base_region,
                                                 const QuandleElement& base_color) {
  return extend(d, arc_colors, base_region, base_color, true);
}

ShadowColoring natural_coloring(const Diagram& d, const HolonomyRep& h, int base_region,
                                const QuandleElement& base_color) {
  ShadowColoring s;
  for (int a = 0; a < d.num_arcs(); ++a) s.arc_colors.push_back(h.generator(h.arc_generator(a)));
  s.region_colors = extend_region_colors(d, s.arc_colors, base_region, base_color);
  return s;
}

double boltzmann_weight(const Diagram& d, const ShadowColoring& s, int crossing,
                        const QuandleElement& w) {
  const auto f = d.crossing_frame(crossing);
  return f.sign * cocycle_vol(w, s.region_colors[f.source_region], s.arc_colors[f.under_in_arc],
                              s.arc_colors[f.over_arc]);
}

double state_sum(const Diagram& d, const ShadowColoring& s, const QuandleElement& w) {
  double sum = 0.0;
  for (int c = 0; c < d.num_crossings(); ++c) sum += boltzmann_weight(d, s, c, w);
  return sum;
}

namespace {

// Sign of the permutation taking t's vertices onto u's, or 0 when the vertex
// sets differ.
int relative_parity(const IdealTetrahedron& t, const IdealTetrahedron& u) {
  std::array<int, 4> perm{};
  for (int i = 0; i < 4; ++i) {
    perm[i] = -1;
    for (int j = 0; j < 4; ++j) {
      if (t.v[i].approx_equal(u.v[j])) perm[i] = j;
    }
    if (perm[i] < 0) return 0;
  }
  int inversions = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (perm[i] == perm[j]) return 0;
      if (perm[i] > perm[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<SignedTetrahedron> state_sum_chain(const Diagram& d, const ShadowColoring& s,
                                               const QuandleElement& w) {
  std::vector<SignedTetrahedron> terms;
  for (int c = 0; c < d.num_crossings(); ++c) {
    const auto f = d.crossing_frame(c);
    const auto tets = cocycle_chain(w, s.region_colors[f.source_region],
                                    s.arc_colors[f.under_in_arc], s.arc_colors[f.over_arc]);
    for (const auto& t : tets) {
      if (t.degenerate()) continue;
      bool merged = false;
      for (auto& term : terms) {
        if (const int p = relative_parity(t, term.tet); p != 0) {
          term.coefficient += f.sign * p;
          merged = true;
          break;
        }
      }
      if (!merged) terms.push_back({t, f.sign});
    }
  }
  std::erase_if(terms, [](const SignedTetrahedron& t) { return t.coefficient == 0; });
  return terms;
}

PhiResult classify(double phi_value, double volume, double tol) {
  if (!(volume > 0.0)) throw Error(ErrorKind::InvalidDocument, "reference volume must be positive");
  PhiResult r;
  r.phi = phi_value;
  r.volume = volume;
  r.k = static_cast<int>(std::clamp(std::lround(phi_value / volume), -1L, 1L));
  r.residual = std::abs(phi_value - r.k * volume);
  if (!(r.residual < tol)) {
    std::ostringstream os;
    os.precision(15);
    os << "phi = " << phi_value << " is " << r.residual << " from the nearest of {-V, 0, V}, V = "
       << volume;
    throw Error(ErrorKind::OutOfLattice, os.str());
  }
  return r;
}

PhiResult phi(const Diagram& d, const ShadowColoring& s, const QuandleElement& w, double volume,
              double tol) {
  return classify(state_sum(d, s, w), volume, tol);
}

double reference_volume(const Diagram& d, const HolonomyRep& h, const QuandleElement& w) {
  if (h.declared_volume()) return *h.declared_volume();
  return std::abs(state_sum(d, natural_coloring(d, h, 0, w), w));
}

EnumerationSummary enumerate_colorings(const Diagram& d, std::span<const QuandleElement> pool,
                                       std::size_t cap, const ColoringSink& sink) {
  EnumerationSummary summary;
  if (pool.empty()) return summary;
  const int arcs = d.num_arcs();
  std::vector<CrossingFrame> frames;
  for (int c = 0; c < d.num_crossings(); ++c) frames.push_back(d.crossing_frame(c));
  ElementIndex index;
  for (const auto& e : pool) index.insert(e.matrix());

  std::vector<int> pick(arcs, -1);
  std::vector<QuandleElement> colors;
  colors.reserve(arcs);
  bool stop = false;

  // Quandle operation on pool indices, filled on demand: -1 unknown, -2 when
  // the product leaves the pool.
  const std::size_t n = pool.size();
  const bool tabulate = n <= 4096;
  std::vector<int> table(tabulate ? n * n : 0, -1);
  std::vector<int> table_inv(tabulate ? n * n : 0, -1);
  auto op = [&](int x, int y) {
    auto compute = [&] {
      const int i = index.find(inverse(pool[y].matrix()) * pool[x].matrix() * pool[y].matrix());
      return i < 0 ? -2 : i;
    };
    if (!tabulate) return compute();
    int& slot = table[x * n + y];
    if (slot == -1) slot = compute();
    return slot;
  };
  auto op_inv = [&](int x, int y) {
    auto compute = [&] {
      const int i = index.find(pool[y].matrix() * pool[x].matrix() * inverse(pool[y].matrix()));
      return i < 0 ? -2 : i;
    };
    if (!tabulate) return compute();
    int& slot = table_inv[x * n + y];
    if (slot == -1) slot = compute();
    return slot;
  };

  // Crossings are checked once all three of their arcs are assigned, i.e.
  // at their highest arc id.
  std::vector<std::vector<const CrossingFrame*>> closes(arcs);
  for (const auto& f : frames) {
    closes[std::max({f.under_in_arc, f.under_out_arc, f.over_arc})].push_back(&f);
  }
  auto rule_holds = [&](int arc) {
    for (const CrossingFrame* f : closes[arc]) {
      if (op(pick[f->under_in_arc], pick[f->over_arc]) != pick[f->under_out_arc]) return false;
    }
    return true;
  };

  auto emit = [&] {
    ++summary.arc_colorings;
    colors.clear();
    for (int a = 0; a < arcs; ++a) colors.push_back(pool[pick[a]]);
    for (const auto& base : pool) {
      if (summary.emitted == cap) {
        summary.truncated = true;
        stop = true;
        return;
      }
      ShadowColoring s{colors, extend(d, colors, 0, base, false)};
      ++summary.emitted;
      sink(s);
    }
  };

  auto rec = [&](auto&& self, int arc) -> void {
    if (stop) return;
    if (arc == arcs) {
      emit();
      return;
    }
    // An arc whose color is forced by an earlier crossing gets only that one:
    // out = in * over, or in = out *^-1 over.
    std::optional<int> forced;
    for (const auto& f : frames) {
      if (f.over_arc >= arc) continue;
      if (f.under_out_arc == arc && f.under_in_arc < arc) {
        forced = op(pick[f.under_in_arc], pick[f.over_arc]);
        break;
      }
      if (f.under_in_arc == arc && f.under_out_arc < arc) {
        forced = op_inv(pick[f.under_out_arc], pick[f.over_arc]);
        break;
      }
    }
    if (forced && *forced < 0) return;
    const int lo = forced ? *forced : 0;
    const int hi = forced ? *forced + 1 : static_cast<int>(pool.size());
    for (int i = lo; i < hi && !stop; ++i) {
      pick[arc] = i;
      if (rule_holds(arc)) self(self, arc + 1);
    }
    pick[arc] = -1;
  };
  rec(rec, 0);
  return summary;
}

ColoringCensus census_colorings(const Diagram& d, const HolonomyRep& h, const QuandleElement& w,
                                double volume, int depth, std::size_t cap, double tol) {
  ColoringCensus census;
  census.volume = volume;
  census.k_counts = {{-1, 0}, {0, 0}, {1, 0}};
  const auto pool = enumerate_conjugates(h, depth);
  census.pool_size = pool.size();
  census.summary = enumerate_colorings(d, pool, cap, [&](const ShadowColoring& s) {
    const PhiResult r = phi(d, s, w, volume, tol);
    ++census.k_counts[r.k];
    census.phis.push_back(r.phi);
    census.max_residual = std::max(census.max_residual, r.residual);
    if (!census.first_witness.contains(r.k)) census.first_witness.emplace(r.k, Witness{s, r.phi, r.k});
  });
  return census;
}

std::string_view to_string(Detection d) {
  switch (d) {
    case Detection::Detected: return "detected";
    case Detection::NotDetectedWithinBound: return "not detected within bound";
    case Detection::NotComputed: return "not computed";
  }
  return "not computed";
}

SymmetryReport symmetry_report(const Diagram& d, const HolonomyRep& h_std, const HolonomyRep* h_rev,
                               int depth, std::size_t cap, double tol) {
  auto flag = [](const ColoringCensus& c, int k) {
    return c.k_counts.at(k) > 0 ? Detection::Detected : Detection::NotDetectedWithinBound;
  };
  SymmetryReport report;
  const QuandleElement w = h_std.generator(0);
  report.volume = reference_volume(d, h_std, w);
  report.standard = census_colorings(d, h_std, w, report.volume, depth, cap, tol);
  report.negatively_amphicheiral = flag(report.standard, -1);
  if (h_rev != nullptr) {
    const QuandleElement w_rev = h_rev->generator(0);
    const double v_rev = reference_volume(d, *h_rev, w_rev);
    report.reversed = census_colorings(d, *h_rev, w_rev, v_rev, depth, cap, tol);
    report.invertible = flag(*report.reversed, 1);
    report.positively_amphicheiral = flag(*report.reversed, -1);
  }
  return report;
}

ColoringDocument coloring_from_json(const nlohmann::json& doc, const Diagram& d,
                                    const HolonomyRep& h) {
  if (!doc.is_object()) throw Error(ErrorKind::InvalidDocument, "coloring document must be an object");
  auto word_at = [&](const nlohmann::json& j, const std::string& where) {
    if (!j.is_string()) throw Error(ErrorKind::InvalidDocument, where + " must be a word string");
    return h.element(j.get<std::string>());
  };
  auto id_of = [](const std::string& key, int limit, const std::string& what) {
    int id = -1;
    try {
      std::size_t used = 0;
      id = std::stoi(key, &used);
      if (used != key.size()) id = -1;
    } catch (const std::exception&) {
    }
    if (id < 0 || id >= limit) throw Error(ErrorKind::InvalidDocument, "bad " + what + " id '" + key + "'");
    return id;
  };

  const QuandleElement base = doc.contains("base_meridian")
                                  ? word_at(doc["base_meridian"], "base_meridian")
                                  : h.generator(0);

  const auto arcs = doc.find("arcs");
  if (arcs == doc.end() || !arcs->is_object()) {
    throw Error(ErrorKind::InvalidDocument, "'arcs' must be an object");
  }
  std::vector<std::optional<QuandleElement>> arc_colors(d.num_arcs());
  for (const auto& [key, value] : arcs->items()) {
    arc_colors[id_of(key, d.num_arcs(), "arc")] = word_at(value, "arc " + key);
  }
  ShadowColoring s;
  for (int a = 0; a < d.num_arcs(); ++a) {
    if (!arc_colors[a]) throw Error(ErrorKind::InvalidDocument, "no color for arc " + std::to_string(a));
    s.arc_colors.push_back(*arc_colors[a]);
  }

  const auto regions = doc.find("regions");
  if (regions == doc.end() || !regions->is_object() || regions->empty()) {
    throw Error(ErrorKind::InvalidDocument, "'regions' must color at least one region");
  }
  std::vector<std::optional<QuandleElement>> given(d.num_regions());
  for (const auto& [key, value] : regions->items()) {
    given[id_of(key, d.num_regions(), "region")] = word_at(value, "region " + key);
  }
  const auto first = std::ranges::find_if(given, [](const auto& g) { return g.has_value(); });
  const int base_region = static_cast<int>(first - given.begin());
  // Lenient extension: rule breaks are reported by validate_coloring.
  s.region_colors = extend(d, s.arc_colors, base_region, **first, false);
  for (int r = 0; r < d.num_regions(); ++r) {
    if (given[r]) s.region_colors[r] = *given[r];
  }
  return {std::move(s), base};
}

nlohmann::json coloring_to_json(const ShadowColoring& s, const HolonomyRep& h,
                                const QuandleElement& base_meridian) {
  nlohmann::json arcs = nlohmann::json::object();
  for (std::size_t a = 0; a < s.arc_colors.size(); ++a) {
    arcs[std::to_string(a)] = h.format_word(s.arc_colors[a].word());
  }
  nlohmann::json regions = nlohmann::json::object();
  for (std::size_t r = 0; r < s.region_colors.size(); ++r) {
    regions[std::to_string(r)] = h.format_word(s.region_colors[r].word());
  }
  return {{"base_meridian", h.format_word(base_meridian.word())}, {"arcs", arcs}, {"regions", regions}};
}

}  // namespace hypvol
