#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumeric = 2;

inline constexpr int kMaxDepth = 6;
inline constexpr std::size_t kMaxCap = 1'000'000;

struct RunConfig {
  std::string subcommand;
  std::string pd;
  std::string holonomy;
  std::string holonomy_reversed;
  std::string coloring;
  std::string fixture;
  std::string base_meridian;
  std::string re;
  std::string im;
  int depth = 2;
  std::size_t cap = 100'000;
  double tol = 1e-6;
  bool json = false;
  int precision = 12;
};

/// Runs the tool on argv-style arguments (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypvol::cli
