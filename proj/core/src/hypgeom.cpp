#include "hypvol/hypgeom.hpp"

#include <algorithm>
#include <cmath>

#include "hypvol/dilog.hpp"
#include "hypvol/error.hpp"

namespace hypvol {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double max_abs(Complex a, Complex b, Complex c, Complex d) {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

}  // namespace

BoundaryPoint BoundaryPoint::finite(Complex z) {
  if (!hypvol::finite(z)) {
    throw Error(ErrorKind::InvalidDocument, "boundary point has a non-finite component");
  }
  return BoundaryPoint(z);
}

bool BoundaryPoint::approx_equal(const BoundaryPoint& other, double tol) const {
  if (is_infinite() || other.is_infinite()) return is_infinite() && other.is_infinite();
  return std::abs(*value_ - *other.value_) < tol;
}

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p) {
  if (p.is_infinite()) return os << "inf";
  return os << "(" << p.value().real() << ", " << p.value().imag() << ")";
}

MoebiusMap MoebiusMap::from_entries(Complex a, Complex b, Complex c, Complex d) {
  if (!hypvol::finite(a) || !hypvol::finite(b) || !hypvol::finite(c) || !hypvol::finite(d)) {
    throw Error(ErrorKind::BadMatrix, "matrix entry is not finite");
  }
  const Entry la(a), lb(b), lc(c), ld(d);
  const Entry det = la * ld - lb * lc;
  if (std::abs(det) < 1e-12L * std::max(1.0, max_abs(a, b, c, d) * max_abs(a, b, c, d))) {
    throw Error(ErrorKind::BadMatrix, "determinant is zero");
  }
  const Entry s = std::sqrt(det);
  return MoebiusMap(la / s, lb / s, lc / s, ld / s);
}

bool MoebiusMap::approx_equal(const MoebiusMap& other, double tol) const {
  const double scale = std::max({1.0, max_abs(a(), b(), c(), d()),
                                 max_abs(other.a(), other.b(), other.c(), other.d())});
  return distance(other) < tol * scale;
}

double MoebiusMap::distance(const MoebiusMap& other) const {
  const double minus = max_abs(Complex(a_ - other.a_), Complex(b_ - other.b_),
                               Complex(c_ - other.c_), Complex(d_ - other.d_));
  const double plus = max_abs(Complex(a_ + other.a_), Complex(b_ + other.b_),
                              Complex(c_ + other.c_), Complex(d_ + other.d_));
  return std::min(minus, plus);
}

MoebiusMap compose(const MoebiusMap& m, const MoebiusMap& n) {
  // No rescaling: ad - bc cancels badly once entries grow, and the product
  // of determinant-one matrices already has determinant one up to rounding.
  return MoebiusMap(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                    m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
}

MoebiusMap inverse(const MoebiusMap& m) {
  return MoebiusMap(m.d_, -m.b_, -m.c_, m.a_);
}

BoundaryPoint apply(const MoebiusMap& m, const BoundaryPoint& p) {
  if (p.is_infinite()) {
    if (std::abs(m.c_) < kMatrixTol) return BoundaryPoint::infinity();
    return BoundaryPoint::finite(Complex(m.a_ / m.c_));
  }
  const MoebiusMap::Entry z(p.value());
  const MoebiusMap::Entry den = m.c_ * z + m.d_;
  if (std::abs(den) < kMatrixTol) return BoundaryPoint::infinity();
  return BoundaryPoint::finite(Complex((m.a_ * z + m.b_) / den));
}

bool is_parabolic(const MoebiusMap& m, double tol) {
  const MoebiusMap::Entry t = m.a_ + m.d_;
  if (std::abs(t * t - 4.0L) >= tol) return false;
  return !m.approx_equal(MoebiusMap::identity(), tol);
}

BoundaryPoint fixed_point_of(const MoebiusMap& m) {
  if (std::abs(m.c_) < kMatrixTol) return BoundaryPoint::infinity();
  return BoundaryPoint::finite(Complex((m.a_ - m.d_) / (2.0L * m.c_)));
}

BoundaryPoint parabolic_fixed_point(const MoebiusMap& m) {
  if (!is_parabolic(m)) {
    throw Error(ErrorKind::NotParabolic, "matrix is not parabolic");
  }
  return fixed_point_of(m);
}

BoundaryPoint cross_ratio(const BoundaryPoint& v0, const BoundaryPoint& v1,
                          const BoundaryPoint& v2, const BoundaryPoint& v3) {
  // Differences involving infinity are dropped; they cancel in pairs.
  auto diff = [](const BoundaryPoint& p, const BoundaryPoint& q) -> std::optional<Complex> {
    if (p.is_infinite() || q.is_infinite()) return std::nullopt;
    return p.value() - q.value();
  };
  Complex num = 1.0;
  Complex den = 1.0;
  for (auto f : {diff(v3, v0), diff(v2, v1)}) {
    if (f) num *= *f;
  }
  for (auto f : {diff(v2, v0), diff(v3, v1)}) {
    if (f) den *= *f;
  }
  if (std::abs(den) < 1e-300) return BoundaryPoint::infinity();
  return BoundaryPoint::finite(num / den);
}

bool IdealTetrahedron::degenerate(double tol) const {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (v[i].approx_equal(v[j], tol)) return true;
    }
  }
  return false;
}

double ideal_tet_volume(const IdealTetrahedron& t) {
  if (t.degenerate()) return 0.0;
  return bloch_wigner(cross_ratio(t.v[0], t.v[1], t.v[2], t.v[3]));
}

}  // namespace hypvol
