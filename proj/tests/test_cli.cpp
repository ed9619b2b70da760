#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "hypvol/fixtures.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hypvol::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Files : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hypvol_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

std::string line_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) == 0) {
      std::string v = line.substr(key.size());
      v.erase(0, v.find_first_not_of(' '));
      return v;
    }
  }
  return "";
}

}  // namespace

TEST(Dilog, PrintsAtPrecision) {
  EXPECT_EQ(run({"dilog", "0.5", "0.8660254037844386"}).out, "1.014941606410\n");
  EXPECT_EQ(run({"dilog", "0.3", "0"}).out, "0.000000000000\n");
  EXPECT_EQ(run({"dilog", "0.5", "-0.8660254037844386"}).out, "-1.014941606410\n");
  EXPECT_EQ(run({"dilog", "0.5", "0.8660254037844386", "--precision", "4"}).out, "1.0149\n");
  EXPECT_EQ(run({"dilog", "half", "0"}).code, 2);
}

TEST(Volume, Fixture) {
  const Result r = run({"volume", "--fixture", "fig8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_value(r.out, "phi"), "2.029883212819");
  EXPECT_EQ(line_value(r.out, "k"), "1");
  for (const char* m : {"x", "y", "z", "w"}) {
    const Result s = run({"volume", "--fixture", "fig8", "--base-meridian", m, "--json"});
    ASSERT_EQ(s.code, 0) << s.err;
    const auto j = nlohmann::json::parse(s.out);
    EXPECT_LT(j["residual"].get<double>(), 1e-6);
    EXPECT_EQ(j["k"], 1);
  }
}

TEST_F(Files, VolumeFromFiles) {
  const std::string pd = write("fig8.pd", std::string(hypvol::fixtures::kFigureEightPd));
  const std::string hol = write("rho.json", hypvol::fixtures::figure_eight_holonomy().dump());
  const Result r = run({"volume", "--pd", pd, "--holonomy", hol});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_value(r.out, "phi"), "2.029883212819");

  EXPECT_EQ(run({"volume", "--pd", pd, "--holonomy", (dir_ / "missing.json").string()}).code, 1);
  EXPECT_EQ(run({"volume", "--pd", pd}).code, 1);
  const std::string garbled = write("bad.json", "{ not json");
  EXPECT_EQ(run({"volume", "--pd", pd, "--holonomy", garbled}).code, 1);
  const std::string badpd = write("bad.pd", "X(1,2,3)");
  const Result e = run({"volume", "--pd", badpd, "--holonomy", hol});
  EXPECT_EQ(e.code, 1);
  EXPECT_NE(e.err.find("MalformedTerm"), std::string::npos);
}

TEST_F(Files, InvariantDocuments) {
  for (const auto& g : testing_support::golden_colorings()) {
    const std::string doc = write(g.name + ".json", testing_support::golden_document(g).dump());
    const Result r = run({"invariant", "--fixture", g.reversed ? "fig8-reversed" : "fig8",
                          "--coloring", doc, "--json"});
    ASSERT_EQ(r.code, 0) << g.name << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["k"], g.k) << g.name;
  }
  auto broken = testing_support::golden_document(testing_support::golden_colorings()[1]);
  broken["arcs"]["0"] = "x";
  const Result r = run({"invariant", "--fixture", "fig8", "--coloring", write("broken.json", broken.dump())});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("crossing"), std::string::npos);
}

TEST(Enumerate, CountsAndDeterminism) {
  const Result a = run({"enumerate", "--fixture", "fig8", "--depth", "1", "--json"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_GT(j["k_counts"]["1"].get<int>(), 0);
  EXPECT_GT(j["k_counts"]["-1"].get<int>(), 0);
  EXPECT_EQ(run({"enumerate", "--fixture", "fig8", "--depth", "1", "--json"}).out, a.out);
  EXPECT_EQ(run({"enumerate", "--fixture", "fig8", "--depth", "7"}).code, 1);
  EXPECT_EQ(run({"enumerate", "--fixture", "fig8", "--cap", "2000000"}).code, 1);
}

TEST(Enumerate, FixtureHolonomyOnAnotherDiagram) {
  const std::string pd(hypvol::fixtures::kFigureEightPdR2);
  const Result a = run({"enumerate", "--fixture", "fig8", "--depth", "1", "--json"});
  const Result b = run({"enumerate", "--fixture", "fig8", "--pd", pd, "--depth", "1", "--json"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(nlohmann::json::parse(a.out)["k_counts"], nlohmann::json::parse(b.out)["k_counts"]);
  EXPECT_EQ(run({"parse", "--fixture", "fig8", "--pd", pd, "--json"}).code, 0);
  EXPECT_NE(run({"parse", "--fixture", "fig8", "--pd", pd}).out,
            run({"parse", "--fixture", "fig8"}).out);
}

TEST(Enumerate, JsonMatchesText) {
  const Result text = run({"enumerate", "--fixture", "fig8", "--depth", "1", "--precision", "6"});
  const Result json = run({"enumerate", "--fixture", "fig8", "--depth", "1", "--precision", "6", "--json"});
  const auto j = nlohmann::json::parse(json.out);
  std::ostringstream v;
  v << std::fixed << std::setprecision(6) << j["volume"].get<double>();
  EXPECT_EQ(line_value(text.out, "volume"), v.str());
  for (const auto& phi : j["phis"]) {
    std::ostringstream p;
    p << std::fixed << std::setprecision(6) << phi.get<double>();
    const double back = std::stod(p.str());
    EXPECT_EQ(back, phi.get<double>());
  }
}

TEST(Symmetry, Flags) {
  const Result full = run({"symmetry", "--fixture", "fig8", "--depth", "1", "--json"});
  ASSERT_EQ(full.code, 0) << full.err;
  const auto j = nlohmann::json::parse(full.out);
  for (const char* f : {"negatively_amphicheiral", "invertible", "positively_amphicheiral"}) {
    EXPECT_EQ(j["flags"][f]["status"], "detected") << f;
    EXPECT_TRUE(j["flags"][f].contains("witness"));
  }

  const std::string pd(hypvol::fixtures::kFigureEightPd);
  const fs::path hol = fs::temp_directory_path() / "hypvol_cli_rho.json";
  std::ofstream(hol) << hypvol::fixtures::figure_eight_holonomy().dump();
  const Result partial = run({"symmetry", "--pd", pd, "--holonomy", hol.string(), "--depth", "0"});
  fs::remove(hol);
  ASSERT_EQ(partial.code, 0) << partial.err;
  EXPECT_NE(partial.out.find("invertible: not computed"), std::string::npos);
}

TEST(Parse, TextAndJson) {
  const Result r = run({"parse", "--fixture", "fig8"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(line_value(r.out, "regions"), "6");
  const Result j = run({"parse", "--pd", "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)", "--json"});
  ASSERT_EQ(j.code, 0) << j.err;
  EXPECT_EQ(nlohmann::json::parse(j.out)["regions"].size(), 5u);
  EXPECT_EQ(run({"parse", "--pd", "X(4,1,3,2) X(2,3,1,4)"}).code, 1);
}

TEST(Usage, BadArguments) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"volume", "--fixture", "trefoil"}).code, 1);
  EXPECT_EQ(run({"volume", "--fixture", "fig8", "--tol", "-1"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Lattice, TightToleranceFailsWithCodeTwo) {
  const Result r = run({"volume", "--fixture", "fig8", "--tol", "1e-300"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("OutOfLattice"), std::string::npos);
}
