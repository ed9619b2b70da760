#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hypvol/hypvol.hpp"

namespace hypvol::cli {

namespace {

using nlohmann::json;

struct Inputs {
  Diagram diagram;
  std::optional<HolonomyRep> holonomy;
  std::optional<HolonomyRep> reversed;
};

std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidDocument, "cannot read " + what + " file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(const std::string& path, const std::string& what) {
  const std::string text = read_file(path, what);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidDocument, what + " file '" + path + "': " + e.what());
  }
}

// --pd accepts a file path, or PD text directly when no such file exists.
Diagram load_diagram(const std::string& pd) {
  if (std::filesystem::exists(pd)) return parse_pd(read_file(pd, "PD"));
  if (pd.find('X') != std::string::npos) return parse_pd(pd);
  throw Error(ErrorKind::InvalidDocument, "cannot read PD file '" + pd + "'");
}

Inputs load_inputs(const RunConfig& cfg, bool need_holonomy) {
  if (!cfg.fixture.empty()) {
    if (cfg.fixture != "fig8" && cfg.fixture != "fig8-reversed") {
      throw Error(ErrorKind::InvalidDocument,
                  "unknown fixture '" + cfg.fixture + "' (expected fig8 or fig8-reversed)");
    }
    // --pd swaps in another diagram of the same knot.
    Diagram d = cfg.pd.empty() ? parse_pd(fixtures::kFigureEightPd) : load_diagram(cfg.pd);
    HolonomyRep rho = load_holonomy(fixtures::figure_eight_holonomy(), d);
    HolonomyRep rho_rev = load_holonomy(fixtures::figure_eight_holonomy_reversed(), d);
    if (cfg.fixture == "fig8-reversed") return {d, rho_rev, std::nullopt};
    return {d, rho, rho_rev};
  }
  if (cfg.pd.empty()) throw Error(ErrorKind::InvalidDocument, "--pd or --fixture is required");
  Inputs in{load_diagram(cfg.pd), std::nullopt, std::nullopt};
  if (!cfg.holonomy.empty()) {
    in.holonomy = load_holonomy(read_json(cfg.holonomy, "holonomy"), in.diagram);
  } else if (need_holonomy) {
    throw Error(ErrorKind::InvalidDocument, "--holonomy is required");
  }
  if (!cfg.holonomy_reversed.empty()) {
    in.reversed = load_holonomy(read_json(cfg.holonomy_reversed, "reversed holonomy"), in.diagram);
  }
  return in;
}

QuandleElement base_meridian(const RunConfig& cfg, const HolonomyRep& h) {
  return cfg.base_meridian.empty() ? h.generator(0) : h.element(cfg.base_meridian);
}

class Printer {
 public:
  Printer(std::ostream& out, int precision) : out_(out), precision_(precision) {}

  std::string fmt(double x) const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision_) << rounded(x);
    return os.str();
  }
  // JSON numbers carry exactly the printed digits.
  double rounded(double x) const {
    const double scale = std::pow(10.0, precision_);
    const double r = std::round(x * scale) / scale;
    return r == 0.0 ? 0.0 : r;
  }
  std::ostream& out() { return out_; }

 private:
  std::ostream& out_;
  int precision_;
};

json phi_json(const Printer& p, const PhiResult& r) {
  return {{"phi", p.rounded(r.phi)}, {"volume", p.rounded(r.volume)}, {"k", r.k},
          {"residual", r.residual}};
}

void print_phi(Printer& p, const PhiResult& r) {
  p.out() << "phi      " << p.fmt(r.phi) << "\n"
          << "volume   " << p.fmt(r.volume) << "\n"
          << "k        " << r.k << "\n"
          << "residual " << std::scientific << std::setprecision(3) << r.residual
          << std::defaultfloat << "\n";
}

int cmd_dilog(const RunConfig& cfg, Printer& p, std::ostream& err) {
  auto parse = [](const std::string& s) -> std::optional<double> {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  };
  const auto re = parse(cfg.re);
  const auto im = parse(cfg.im);
  if (!re || !im) {
    err << "error: cannot parse '" << cfg.re << "' '" << cfg.im << "' as a complex number\n";
    return kExitNumeric;
  }
  const double d = bloch_wigner(Complex(*re, *im));
  if (cfg.json) {
    p.out() << json{{"re", *re}, {"im", *im}, {"D", p.rounded(d)}}.dump(2) << "\n";
  } else {
    p.out() << p.fmt(d) << "\n";
  }
  return kExitOk;
}

int cmd_parse(const RunConfig& cfg, Printer& p) {
  const Inputs in = load_inputs(cfg, false);
  const Diagram& d = in.diagram;
  if (cfg.json) {
    p.out() << to_json(d).dump(2) << "\n";
    return kExitOk;
  }
  p.out() << "crossings " << d.num_crossings() << "\n"
          << "arcs      " << d.num_arcs() << "\n"
          << "regions   " << d.num_regions() << "\n"
          << "writhe    " << d.writhe() << "\n";
  for (int c = 0; c < d.num_crossings(); ++c) {
    const auto f = d.crossing_frame(c);
    p.out() << "crossing " << c << " sign " << std::showpos << f.sign << std::noshowpos
            << " over " << f.over_arc << " under " << f.under_in_arc << " -> " << f.under_out_arc
            << " source region " << f.source_region << "\n";
  }
  if (in.holonomy) {
    p.out() << "labeling";
    for (int a = 0; a < d.num_arcs(); ++a) {
      p.out() << " " << a << ":" << in.holonomy->generators()[in.holonomy->arc_generator(a)];
    }
    p.out() << "\n";
  }
  return kExitOk;
}

int cmd_volume(const RunConfig& cfg, Printer& p) {
  const Inputs in = load_inputs(cfg, true);
  const HolonomyRep& h = *in.holonomy;
  const QuandleElement w = base_meridian(cfg, h);
  const ShadowColoring s = natural_coloring(in.diagram, h, 0, w);
  const PhiResult r = phi(in.diagram, s, w, reference_volume(in.diagram, h, w), cfg.tol);
  if (cfg.json) {
    json j = phi_json(p, r);
    j["base_meridian"] = h.format_word(w.word());
    j["coloring"] = coloring_to_json(s, h, w);
    p.out() << j.dump(2) << "\n";
  } else {
    print_phi(p, r);
  }
  return kExitOk;
}

int cmd_invariant(const RunConfig& cfg, Printer& p, std::ostream& err) {
  const Inputs in = load_inputs(cfg, true);
  const HolonomyRep& h = *in.holonomy;
  if (cfg.coloring.empty()) throw Error(ErrorKind::InvalidDocument, "--coloring is required");
  const ColoringDocument doc = coloring_from_json(read_json(cfg.coloring, "coloring"), in.diagram, h);
  const auto violations = validate_coloring(in.diagram, doc.coloring);
  if (!violations.empty()) {
    err << "error: invalid coloring\n";
    for (const auto& v : violations) {
      err << "  " << (v.kind == ViolationKind::Crossing ? "crossing " : "edge ") << v.location
          << ": residual " << v.residual << "\n";
    }
    return kExitInput;
  }
  const QuandleElement w = cfg.base_meridian.empty() ? doc.base_meridian : h.element(cfg.base_meridian);
  const PhiResult r = phi(in.diagram, doc.coloring, w, reference_volume(in.diagram, h, w), cfg.tol);
  if (cfg.json) {
    json j = phi_json(p, r);
    j["base_meridian"] = h.format_word(w.word());
    p.out() << j.dump(2) << "\n";
  } else {
    print_phi(p, r);
  }
  return kExitOk;
}

json census_json(const Printer& p, const ColoringCensus& c) {
  json phis = json::array();
  for (double x : c.phis) phis.push_back(p.rounded(x));
  return {{"k_counts", {{"-1", c.k_counts.at(-1)}, {"0", c.k_counts.at(0)}, {"1", c.k_counts.at(1)}}},
          {"colorings", c.summary.emitted},
          {"arc_colorings", c.summary.arc_colorings},
          {"truncated", c.summary.truncated},
          {"pool_size", c.pool_size},
          {"volume", p.rounded(c.volume)},
          {"max_residual", c.max_residual},
          {"phis", phis}};
}

void print_census(Printer& p, const ColoringCensus& c) {
  p.out() << "pool size      " << c.pool_size << "\n"
          << "colorings      " << c.summary.emitted << " (" << c.summary.arc_colorings
          << " arc colorings)\n"
          << "truncated      " << (c.summary.truncated ? "yes" : "no") << "\n"
          << "volume         " << p.fmt(c.volume) << "\n"
          << "max residual   " << std::scientific << std::setprecision(3) << c.max_residual
          << std::defaultfloat << "\n"
          << "k   count\n";
  for (int k : {-1, 0, 1}) {
    p.out() << (k < 0 ? "-1" : k > 0 ? "+1" : " 0") << "  " << c.k_counts.at(k) << "\n";
  }
}

void check_bounds(const RunConfig& cfg) {
  if (cfg.depth < 0 || cfg.depth > kMaxDepth) {
    throw Error(ErrorKind::InvalidDocument, "--depth must be in 0.." + std::to_string(kMaxDepth));
  }
  if (cfg.cap > kMaxCap) {
    throw Error(ErrorKind::InvalidDocument, "--cap must be at most " + std::to_string(kMaxCap));
  }
}

int cmd_enumerate(const RunConfig& cfg, Printer& p) {
  check_bounds(cfg);
  const Inputs in = load_inputs(cfg, true);
  const HolonomyRep& h = *in.holonomy;
  const QuandleElement w = base_meridian(cfg, h);
  const double volume = reference_volume(in.diagram, h, w);
  const ColoringCensus c = census_colorings(in.diagram, h, w, volume, cfg.depth, cfg.cap, cfg.tol);
  if (cfg.json) {
    json j = census_json(p, c);
    j["depth"] = cfg.depth;
    j["cap"] = cfg.cap;
    j["base_meridian"] = h.format_word(w.word());
    p.out() << j.dump(2) << "\n";
  } else {
    print_census(p, c);
  }
  return kExitOk;
}

int cmd_symmetry(const RunConfig& cfg, Printer& p) {
  check_bounds(cfg);
  const Inputs in = load_inputs(cfg, true);
  const HolonomyRep& h = *in.holonomy;
  const HolonomyRep* rev = in.reversed ? &*in.reversed : nullptr;
  const SymmetryReport r = symmetry_report(in.diagram, h, rev, cfg.depth, cfg.cap, cfg.tol);

  struct Flag {
    const char* name;
    Detection detection;
    const ColoringCensus* census;
    const HolonomyRep* rep;
    int k;
  };
  const Flag flags[] = {
      {"negatively_amphicheiral", r.negatively_amphicheiral, &r.standard, &h, -1},
      {"invertible", r.invertible, r.reversed ? &*r.reversed : nullptr, rev, 1},
      {"positively_amphicheiral", r.positively_amphicheiral, r.reversed ? &*r.reversed : nullptr, rev, -1},
  };

  if (cfg.json) {
    json j{{"depth", cfg.depth}, {"cap", cfg.cap}, {"volume", p.rounded(r.volume)}};
    j["standard"] = census_json(p, r.standard);
    j["reversed"] = r.reversed ? census_json(p, *r.reversed) : json(nullptr);
    for (const auto& f : flags) {
      json entry{{"status", std::string(to_string(f.detection))}};
      if (f.detection == Detection::Detected) {
        const Witness& wit = f.census->first_witness.at(f.k);
        entry["witness"] = coloring_to_json(wit.coloring, *f.rep, f.rep->generator(0));
        entry["witness"]["phi"] = p.rounded(wit.phi);
      }
      j["flags"][f.name] = entry;
    }
    p.out() << j.dump(2) << "\n";
    return kExitOk;
  }
  p.out() << "volume " << p.fmt(r.volume) << "\n";
  for (const auto& f : flags) {
    p.out() << f.name << ": " << to_string(f.detection) << "\n";
    if (f.detection != Detection::Detected) continue;
    const Witness& wit = f.census->first_witness.at(f.k);
    p.out() << "  phi " << p.fmt(wit.phi) << "\n  arcs   ";
    for (std::size_t a = 0; a < wit.coloring.arc_colors.size(); ++a) {
      p.out() << " [" << a << "] " << f.rep->format_word(wit.coloring.arc_colors[a].word());
    }
    p.out() << "\n  region [0] " << f.rep->format_word(wit.coloring.region_colors[0].word()) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Hyperbolic-volume quandle cocycle invariant of knots", "hypvol"};
  app.require_subcommand(1);

  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--pd", cfg.pd, "PD code file (or literal PD text)");
    sub->add_option("--holonomy", cfg.holonomy, "holonomy JSON document");
    sub->add_option("--holonomy-reversed", cfg.holonomy_reversed, "holonomy of the reversed knot");
    sub->add_option("--fixture", cfg.fixture, "built-in holonomy: fig8 or fig8-reversed (diagram from --pd if given)");
    sub->add_option("--base-meridian", cfg.base_meridian, "base meridian w as a word");
    sub->add_option("--tol", cfg.tol, "lattice classification tolerance")->check(CLI::PositiveNumber);
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_flag("--json", cfg.json, "machine-readable output");
    sub->add_option("--precision", cfg.precision, "printed digits")->check(CLI::Range(0, 17));
  };
  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--depth", cfg.depth, "conjugating word length bound");
    sub->add_option("--cap", cfg.cap, "maximum number of colorings");
  };

  auto* dilog = app.add_subcommand("dilog", "Bloch-Wigner dilogarithm D(re + i im)");
  dilog->add_option("re", cfg.re)->required();
  dilog->add_option("im", cfg.im)->required();
  add_output(dilog);

  auto* parse = app.add_subcommand("parse", "diagram structure");
  add_inputs(parse);
  add_output(parse);

  auto* volume = app.add_subcommand("volume", "state sum of the natural coloring");
  add_inputs(volume);
  add_output(volume);

  auto* invariant = app.add_subcommand("invariant", "state sum of a coloring document");
  add_inputs(invariant);
  add_output(invariant);
  invariant->add_option("--coloring", cfg.coloring, "coloring JSON document");

  auto* enumerate = app.add_subcommand("enumerate", "k counts over enumerated colorings");
  add_inputs(enumerate);
  add_output(enumerate);
  add_bounds(enumerate);

  auto* symmetry = app.add_subcommand("symmetry", "bounded symmetry detection");
  add_inputs(symmetry);
  add_output(symmetry);
  add_bounds(symmetry);

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Printer printer(out, cfg.precision);
  try {
    if (*dilog) return cmd_dilog(cfg, printer, err);
    if (*parse) return cmd_parse(cfg, printer);
    if (*volume) return cmd_volume(cfg, printer);
    if (*invariant) return cmd_invariant(cfg, printer, err);
    if (*enumerate) return cmd_enumerate(cfg, printer);
    if (*symmetry) return cmd_symmetry(cfg, printer);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::OutOfLattice ? kExitNumeric : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace hypvol::cli
