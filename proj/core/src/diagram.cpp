#include "hypvol/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>

#include "hypvol/error.hpp"

namespace hypvol {

namespace {

struct Position {
  int crossing;
  int slot;
};

}  // namespace

Diagram Diagram::unknot() {
  Diagram d;
  d.succ_ = {0};
  d.edge_arc_ = {0};
  d.left_ = {0};
  d.right_ = {1};
  d.arc_edges_ = {{0}};
  d.regions_ = {Region{{{0, 0, Side::Left}}}, Region{{{0, 0, Side::Right}}}};
  d.num_arcs_ = 1;
  return d;
}

Diagram Diagram::from_pd(std::span<const std::array<int, 4>> quads) {
  if (quads.empty()) return unknot();
  const int n = static_cast<int>(quads.size());
  const int edges = 2 * n;

  std::vector<std::vector<Position>> where(edges);
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < 4; ++p) {
      const int e = quads[i][p];
      if (e < 1 || e > edges) {
        throw Error(ErrorKind::EdgeCountMismatch,
                    "edge label " + std::to_string(e) + " outside 1.." + std::to_string(edges));
      }
      where[e - 1].push_back({i, p});
    }
  }
  for (int e = 0; e < edges; ++e) {
    if (where[e].size() != 2) {
      throw Error(ErrorKind::EdgeCountMismatch,
                  "edge label " + std::to_string(e + 1) + " appears " +
                      std::to_string(where[e].size()) + " times");
    }
  }

  Diagram d;
  auto next = [edges](int e) { return e % edges + 1; };
  std::vector<int> out_count(edges, 0);
  std::vector<int> in_count(edges, 0);
  for (int i = 0; i < n; ++i) {
    const auto [a, b, c, dd] = quads[i];
    if (c != next(a)) {
      throw Error(ErrorKind::Disconnected,
                  "crossing " + std::to_string(i) + ": under-strand " + std::to_string(a) +
                      " -> " + std::to_string(c) + " breaks the single edge cycle");
    }
    Crossing x{quads[i], 0, 0, 0};
    if (b == next(dd)) {
      x.sign = 1;
      x.over_in = dd;
      x.over_out = b;
    } else if (dd == next(b)) {
      x.sign = -1;
      x.over_in = b;
      x.over_out = dd;
    } else {
      throw Error(ErrorKind::Disconnected,
                  "crossing " + std::to_string(i) + ": over-strand edges " + std::to_string(b) +
                      ", " + std::to_string(dd) + " are not consecutive");
    }
    ++in_count[a - 1];
    ++out_count[c - 1];
    ++in_count[x.over_in - 1];
    ++out_count[x.over_out - 1];
    d.crossings_.push_back(x);
  }
  for (int e = 0; e < edges; ++e) {
    if (in_count[e] != 1 || out_count[e] != 1) {
      throw Error(ErrorKind::Disconnected,
                  "edge " + std::to_string(e + 1) + " is not traversed exactly once");
    }
  }

  d.succ_.resize(edges);
  for (int e = 1; e <= edges; ++e) d.succ_[e - 1] = next(e);

  // Arcs run from an outgoing under-edge to the next incoming under-edge.
  std::vector<bool> ends_arc(edges, false);
  std::vector<int> starts;
  for (const auto& x : d.crossings_) {
    ends_arc[x.edges[0] - 1] = true;
    starts.push_back(x.edges[2]);
  }
  std::sort(starts.begin(), starts.end());
  d.edge_arc_.assign(edges, -1);
  for (int s : starts) {
    const int id = static_cast<int>(d.arc_edges_.size());
    d.arc_edges_.emplace_back();
    for (int e = s;; e = next(e)) {
      d.edge_arc_[e - 1] = id;
      d.arc_edges_.back().push_back(e);
      if (ends_arc[e - 1]) break;
    }
  }
  d.num_arcs_ = static_cast<int>(d.arc_edges_.size());

  // Corner (i, p) lies between slots p and p + 1 counterclockwise. Leaving
  // it along the edge in slot p + 1 arrives at (j, q), the next corner of
  // the same face.
  auto other_end = [&](int i, int p) {
    const auto& w = where[quads[i][p] - 1];
    return (w[0].crossing == i && w[0].slot == p) ? w[1] : w[0];
  };
  d.corners_.assign(n, {-1, -1, -1, -1});
  std::vector<std::vector<std::pair<int, bool>>> face_edges;  // (label, travel along)
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < 4; ++p) {
      if (d.corners_[i][p] >= 0) continue;
      const int f = static_cast<int>(face_edges.size());
      face_edges.emplace_back();
      int ci = i, cp = p;
      while (d.corners_[ci][cp] < 0) {
        d.corners_[ci][cp] = f;
        const int slot = (cp + 1) % 4;
        const Position to = other_end(ci, slot);
        const int label = quads[ci][slot];
        const bool leaving = slot == 2 || slot == (d.crossings_[ci].sign > 0 ? 1 : 3);
        face_edges[f].push_back({label, leaving});
        ci = to.crossing;
        cp = to.slot;
      }
    }
  }
  if (static_cast<int>(face_edges.size()) != n + 2) {
    throw Error(ErrorKind::NonPlanar, std::to_string(face_edges.size()) + " faces for " +
                                          std::to_string(n) + " crossings (expected " +
                                          std::to_string(n + 2) + ")");
  }

  d.left_.assign(edges, -1);
  d.right_.assign(edges, -1);
  for (int i = 0; i < n; ++i) {
    const auto& x = d.crossings_[i];
    const int over_exit = x.sign > 0 ? 1 : 3;
    for (int p : {2, over_exit}) {
      const int e = x.edges[p];
      d.left_[e - 1] = d.corners_[i][p];
      d.right_[e - 1] = d.corners_[i][(p + 3) % 4];
    }
  }

  for (const auto& fe : face_edges) {
    Region r;
    for (auto [label, along] : fe) {
      // Corner tracing walks each face clockwise.
      r.boundary.push_back({d.edge_arc_[label - 1], label, along ? Side::Right : Side::Left});
    }
    d.regions_.push_back(std::move(r));
  }
  return d;
}

int Diagram::successor(int label) const { return succ_.at(index(label)); }

std::vector<int> Diagram::edge_labels() const {
  if (crossings_.empty()) return {0};
  std::vector<int> labels(num_edges());
  for (int e = 0; e < num_edges(); ++e) labels[e] = e + 1;
  return labels;
}

int Diagram::writhe() const {
  int w = 0;
  for (const auto& x : crossings_) w += x.sign;
  return w;
}

CrossingFrame Diagram::crossing_frame(int c) const {
  const Crossing& x = crossings_.at(c);
  const int a = arc_of_edge(x.edges[0]);
  const int out = arc_of_edge(x.edges[2]);
  const int over = arc_of_edge(x.edges[1]);
  if (x.sign > 0) return {a, out, over, corners_[c][0], 1};
  return {out, a, over, corners_[c][1], -1};
}

Diagram parse_pd(std::string_view text) {
  std::vector<std::array<int, 4>> quads;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::MalformedTerm, why + " at offset " + std::to_string(i));
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != 'X') throw fail("expected 'X'");
    ++i;
    skip_space();
    if (i >= text.size() || text[i] != '(') throw fail("expected '('");
    ++i;
    std::vector<int> values;
    while (true) {
      skip_space();
      int v = 0;
      const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc()) throw fail("expected an edge label");
      i = static_cast<std::size_t>(ptr - text.data());
      values.push_back(v);
      skip_space();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw fail("expected ',' or ')'");
    }
    if (values.size() != 4) {
      throw fail("term has " + std::to_string(values.size()) + " labels, expected 4");
    }
    quads.push_back({values[0], values[1], values[2], values[3]});
    skip_space();
  }
  return Diagram::from_pd(quads);
}

std::string to_pd(const Diagram& d) {
  std::ostringstream os;
  for (int c = 0; c < d.num_crossings(); ++c) {
    const auto& e = d.crossing(c).edges;
    if (c > 0) os << ' ';
    os << "X(" << e[0] << ',' << e[1] << ',' << e[2] << ',' << e[3] << ')';
  }
  return os.str();
}

Diagram mirror(const Diagram& d) {
  std::vector<std::array<int, 4>> quads;
  for (const auto& x : d.crossings()) {
    quads.push_back({x.edges[0], x.edges[3], x.edges[2], x.edges[1]});
  }
  return Diagram::from_pd(quads);
}

std::vector<WirtingerRelation> wirtinger_relations(const Diagram& d) {
  std::vector<WirtingerRelation> out;
  for (int c = 0; c < d.num_crossings(); ++c) {
    const auto& x = d.crossing(c);
    out.push_back({c, d.arc_of_edge(x.edges[2]), d.arc_of_edge(x.edges[1]),
                   d.arc_of_edge(x.edges[0]), x.sign});
  }
  return out;
}

std::vector<WalkStep> region_walk(const Diagram& d, int from_region, int to_region) {
  const int regions = d.num_regions();
  if (from_region < 0 || from_region >= regions || to_region < 0 || to_region >= regions) {
    throw Error(ErrorKind::InvalidDocument, "region id out of range");
  }
  std::vector<std::vector<WalkStep>> adj(regions);
  for (int e : d.edge_labels()) {
    const int arc = d.arc_of_edge(e);
    const int l = d.left_region(e);
    const int r = d.right_region(e);
    adj[r].push_back({arc, true, r, l});
    adj[l].push_back({arc, false, l, r});
  }
  std::vector<int> parent(regions, -2);
  std::vector<WalkStep> via(regions);
  std::deque<int> queue{from_region};
  parent[from_region] = -1;
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    if (f == to_region) break;
    for (const auto& s : adj[f]) {
      if (parent[s.to_region] != -2) continue;
      parent[s.to_region] = f;
      via[s.to_region] = s;
      queue.push_back(s.to_region);
    }
  }
  std::vector<WalkStep> path;
  for (int f = to_region; f != from_region; f = parent[f]) path.push_back(via[f]);
  std::reverse(path.begin(), path.end());
  return path;
}

nlohmann::json to_json(const Diagram& d) {
  using nlohmann::json;
  json crossings = json::array();
  for (int c = 0; c < d.num_crossings(); ++c) {
    const auto& x = d.crossing(c);
    const auto f = d.crossing_frame(c);
    crossings.push_back({{"id", c},
                         {"edges", x.edges},
                         {"sign", x.sign},
                         {"over_arc", f.over_arc},
                         {"under_in_arc", f.under_in_arc},
                         {"under_out_arc", f.under_out_arc},
                         {"source_region", f.source_region}});
  }
  json edges = json::array();
  for (int e : d.edge_labels()) {
    edges.push_back({{"label", e},
                     {"arc", d.arc_of_edge(e)},
                     {"left_region", d.left_region(e)},
                     {"right_region", d.right_region(e)},
                     {"successor", d.successor(e)}});
  }
  json arcs = json::array();
  for (int a = 0; a < d.num_arcs(); ++a) {
    const auto es = d.arc_edges(a);
    arcs.push_back({{"id", a}, {"edges", std::vector<int>(es.begin(), es.end())}});
  }
  json regions = json::array();
  for (int r = 0; r < d.num_regions(); ++r) {
    json boundary = json::array();
    for (const auto& s : d.regions()[r].boundary) {
      boundary.push_back(
          {{"arc", s.arc}, {"edge", s.edge}, {"side", s.side == Side::Left ? "left" : "right"}});
    }
    regions.push_back({{"id", r}, {"boundary", boundary}});
  }
  return {{"crossings", crossings}, {"edges", edges},     {"arcs", arcs},
          {"regions", regions},     {"writhe", d.writhe()}};
}

}  // namespace hypvol
