#include "hypvol/fixtures.hpp"

#include <cmath>
#include <string>

namespace hypvol::fixtures {

namespace {

using nlohmann::json;

const double kR3 = std::sqrt(3.0);

// (p + q sqrt(-3)) / r as [re, im].
json q3(double p, double q, double r = 1.0) { return json::array({p / r, q * kR3 / r}); }

json matrix(json a, json b, json c, json d) {
  return json::array({json::array({a, b}), json::array({c, d})});
}

json document(const std::vector<std::string>& names, const std::vector<json>& matrices,
              const std::string& orientation) {
  json m = json::object();
  for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = matrices[i];
  return {{"generators", names},
          {"matrices", m},
          {"orientation", orientation},
          {"volume", kFigureEightVolume}};
}

}  // namespace

json figure_eight_holonomy() {
  return document({"x", "y", "z", "w"},
                  {matrix(q3(1, -1, 2), q3(1, 1, 2), q3(-1, -1, 2), q3(3, 1, 2)),
                   matrix(q3(1, 0), q3(1, 1, 2), q3(0, 0), q3(1, 0)),
                   matrix(q3(3, 1, 2), q3(1, -1, 2), q3(1, 0), q3(1, -1, 2)),
                   matrix(q3(1, 0), q3(0, 0), q3(1, 0), q3(1, 0))},
                  "standard");
}

json figure_eight_holonomy_reversed() {
  return document({"x^-1", "y^-1", "z^-1", "w^-1"},
                  {matrix(q3(1, 0), q3(0, 0), q3(1, 0), q3(1, 0)),
                   matrix(q3(1, 1), q3(1, -1, 2), q3(3, 3, 2), q3(1, -1)),
                   matrix(q3(3, 1, 2), q3(1, -1, 2), q3(1, 0), q3(1, -1, 2)),
                   matrix(q3(1, -1, 2), q3(1, 1, 2), q3(-1, -1, 2), q3(3, 1, 2))},
                  "reversed");
}

}  // namespace hypvol::fixtures
