#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "hypvol/dilog.hpp"
#include "hypvol/error.hpp"
#include "hypvol/hypgeom.hpp"
#include "oracle/dilog_oracle.hpp"
#include "support.hpp"

using namespace hypvol;
using namespace testing_support;

namespace {

MoebiusMap m(Complex a, Complex b, Complex c, Complex d) { return MoebiusMap::from_entries(a, b, c, d); }

const Complex kS{0.0, std::sqrt(3.0)};
const MoebiusMap kRhoX = m((1.0 - kS) / 2.0, (1.0 + kS) / 2.0, (-1.0 - kS) / 2.0, (3.0 + kS) / 2.0);
const MoebiusMap kRhoY = m(1.0, (1.0 + kS) / 2.0, 0.0, 1.0);
const MoebiusMap kRhoZ = m((3.0 + kS) / 2.0, (1.0 - kS) / 2.0, 1.0, (1.0 - kS) / 2.0);
const MoebiusMap kRhoW = m(1.0, 0.0, 1.0, 1.0);

MoebiusMap random_map(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  auto c = [&] { return Complex(n(rng), n(rng)); };
  return m(c(), c(), c(), c());
}

BoundaryPoint random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.5);
  return pt({n(rng), n(rng)});
}

}  // namespace

TEST(Moebius, NormalizesDeterminant) {
  const MoebiusMap a = m(2.0, 1.0, 3.0, 4.0);
  EXPECT_LT(std::abs(a.det() - 1.0), 1e-12);
  EXPECT_THROW(m(1.0, 2.0, 2.0, 4.0), Error);
  EXPECT_THROW(m(std::nan(""), 0.0, 0.0, 1.0), Error);
}

TEST(Moebius, ComposeWithIdentityAndInverse) {
  EXPECT_TRUE(compose(MoebiusMap::identity(), kRhoX).approx_equal(kRhoX));
  EXPECT_TRUE(compose(kRhoZ, inverse(kRhoZ)).approx_equal(MoebiusMap::identity()));
  EXPECT_TRUE(inverse(MoebiusMap::identity()).approx_equal(MoebiusMap::identity()));
  EXPECT_TRUE(inverse(kRhoW).approx_equal(m(1.0, 0.0, -1.0, 1.0)));
}

TEST(Moebius, EqualityIsUpToSign) {
  const MoebiusMap neg = m(-kRhoZ.a(), -kRhoZ.b(), -kRhoZ.c(), -kRhoZ.d());
  EXPECT_TRUE(neg.approx_equal(kRhoZ));
  EXPECT_FALSE(kRhoZ.approx_equal(kRhoW));
}

TEST(Moebius, ApplyLimits) {
  EXPECT_TRUE(apply(kRhoW, inf()).approx_equal(pt(1.0)));
  EXPECT_TRUE(apply(kRhoY, inf()).is_infinite());
  EXPECT_TRUE(apply(kRhoW, pt(-1.0)).is_infinite());
  // rho(z)^-1 sends infinity to (y * z)'s fixed point.
  EXPECT_TRUE(apply(inverse(kRhoZ), inf()).approx_equal(pt(kOmegaPrime), 1e-12));
}

TEST(Moebius, Parabolicity) {
  EXPECT_TRUE(is_parabolic(kRhoW));
  EXPECT_TRUE(is_parabolic(kRhoX));
  EXPECT_FALSE(is_parabolic(MoebiusMap::identity()));
  EXPECT_FALSE(is_parabolic(m(-1.0, 0.0, 0.0, -1.0)));
  EXPECT_FALSE(is_parabolic(m(2.0, 0.0, 0.0, 0.5)));
  EXPECT_THROW(parabolic_fixed_point(MoebiusMap::identity()), Error);
}

TEST(Moebius, FixedPointsOfTheFigureEightHolonomy) {
  EXPECT_TRUE(parabolic_fixed_point(kRhoW).approx_equal(pt(0.0), 1e-10));
  EXPECT_TRUE(parabolic_fixed_point(kRhoY).is_infinite());
  EXPECT_TRUE(parabolic_fixed_point(kRhoZ).approx_equal(pt(kOmega), 1e-10));
  EXPECT_TRUE(parabolic_fixed_point(kRhoX).approx_equal(pt(1.0), 1e-10));
  const MoebiusMap yz = inverse(kRhoZ) * kRhoY * kRhoZ;
  EXPECT_TRUE(parabolic_fixed_point(yz).approx_equal(pt(kOmegaPrime), 1e-10));
}

TEST(CrossRatio, Values) {
  const Complex e3 = std::polar(1.0, std::numbers::pi / 3);
  const Complex e23 = std::polar(1.0, 2 * std::numbers::pi / 3);
  EXPECT_TRUE(cross_ratio(pt(0.0), pt(e23), inf(), pt(e3)).approx_equal(pt(e3), 1e-14));
  EXPECT_TRUE(cross_ratio(pt(0.3), pt(2.0), pt(kOmega), pt(kOmega)).approx_equal(pt(1.0)));
  const Complex lambda{0.3, 1.7};
  EXPECT_TRUE(cross_ratio(pt(0.0), pt(1.0), inf(), pt(lambda))
                  .approx_equal(pt(lambda / (lambda - 1.0)), 1e-14));
}

TEST(IdealTetrahedron, SignedVolumes) {
  EXPECT_NEAR(ideal_tet_volume({{pt(0.0), pt(kOmegaPrime), inf(), pt(kOmega)}}), 1.0149416064096536, 1e-12);
  EXPECT_NEAR(ideal_tet_volume({{pt(0.0), inf(), pt(kOmega), pt(1.0)}}), -1.0149416064096536, 1e-12);
  EXPECT_EQ(ideal_tet_volume({{pt(0.0), pt(kOmega), pt(kOmega), inf()}}), 0.0);
  EXPECT_EQ(ideal_tet_volume({{inf(), pt(1.0), pt(kOmega), inf()}}), 0.0);
  // Four concyclic vertices: real cross-ratio.
  EXPECT_EQ(ideal_tet_volume({{pt(0.0), pt(1.0), pt(2.0), inf()}}), 0.0);
}

TEST(IdealTetrahedron, MoebiusInvariance) {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MoebiusMap g = random_map(rng);
    IdealTetrahedron t, gt;
    for (int k = 0; k < 4; ++k) {
      t.v[k] = random_point(rng);
      gt.v[k] = apply(g, t.v[k]);
    }
    worst = std::max(worst, std::abs(ideal_tet_volume(gt) - ideal_tet_volume(t)));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(IdealTetrahedron, PermutationParity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    IdealTetrahedron t;
    for (auto& v : t.v) v = random_point(rng);
    if (trial % 5 == 0) t.v[trial % 4] = inf();
    const double v0 = ideal_tet_volume(t);
    std::array<int, 4> p = {0, 1, 2, 3};
    do {
      int inversions = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
      IdealTetrahedron u{{t.v[p[0]], t.v[p[1]], t.v[p[2]], t.v[p[3]]}};
      const double expect = inversions % 2 == 0 ? v0 : -v0;
      EXPECT_NEAR(ideal_tet_volume(u), expect, 1e-9);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST(Moebius, ComposeActsAsComposition) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const MoebiusMap a = random_map(rng), b = random_map(rng);
    const BoundaryPoint p = i % 10 == 0 ? inf() : random_point(rng);
    const BoundaryPoint lhs = apply(compose(a, b), p);
    const BoundaryPoint rhs = apply(a, apply(b, p));
    if (lhs.is_infinite() || rhs.is_infinite()) {
      EXPECT_EQ(lhs.is_infinite(), rhs.is_infinite());
      continue;
    }
    EXPECT_LT(std::abs(lhs.value() - rhs.value()), 1e-8 * std::max(1.0, std::abs(lhs.value())));
  }
}

TEST(Moebius, FixedPointIsFixed) {
  std::mt19937_64 rng(5);
  for (const auto& g : {kRhoX, kRhoY, kRhoZ, kRhoW}) {
    for (int i = 0; i < 50; ++i) {
      const MoebiusMap h = random_map(rng);
      const MoebiusMap conj = inverse(h) * g * h;
      const BoundaryPoint p = parabolic_fixed_point(conj);
      EXPECT_TRUE(apply(conj, p).approx_equal(p, 1e-9 * std::max(1.0, p.is_infinite() ? 1.0 : std::abs(p.value()))));
      // Equivariance: fix(h^-1 g h) = h^-1 fix(g).
      const BoundaryPoint q = apply(inverse(h), parabolic_fixed_point(g));
      if (!p.is_infinite() && !q.is_infinite()) {
        EXPECT_LT(std::abs(p.value() - q.value()), 1e-8 * std::max(1.0, std::abs(q.value())));
      }
    }
  }
}

TEST(BoundaryPoint, RejectsNonFinite) {
  EXPECT_THROW(BoundaryPoint::finite({std::nan(""), 0.0}), Error);
  EXPECT_THROW(BoundaryPoint::finite({0.0, INFINITY}), Error);
  EXPECT_TRUE(inf().approx_equal(inf()));
  EXPECT_FALSE(inf().approx_equal(pt(1e12)));
}
