#pragma once

#include <array>
#include <complex>
#include <optional>
#include <ostream>

namespace hypvol {

using Complex = std::complex<double>;

/// Tolerance for matrix equality up to sign, parabolicity and "c == 0" tests.
inline constexpr double kMatrixTol = 1e-9;
/// Tolerance under which two finite boundary points are the same vertex.
inline constexpr double kPointTol = 1e-9;

/// A point of the Riemann sphere C u {inf}, the ideal boundary of upper
/// half-space.
class BoundaryPoint {
 public:
  /// Throws Error(InvalidDocument) for NaN or infinite components.
  static BoundaryPoint finite(Complex z);
  static BoundaryPoint infinity() { return BoundaryPoint(); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: !is_infinite().
  Complex value() const { return *value_; }

  /// Infinity equals only infinity; finite points compare with |p - q| < tol.
  bool approx_equal(const BoundaryPoint& other, double tol = kPointTol) const;

  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;

 private:
  BoundaryPoint() = default;
  explicit BoundaryPoint(Complex z) : value_(z) {}

  std::optional<Complex> value_;
};

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p);

/// Element of PSL(2, C): a determinant-one matrix [[a, b], [c, d]] modulo
/// global sign. Entries are held in extended precision; long conjugation
/// chains lose too many digits in double.
class MoebiusMap {
 public:
  using Entry = std::complex<long double>;

  MoebiusMap() = default;  // identity

  /// Scales the entries to determinant 1. Throws Error(BadMatrix) when the
  /// determinant vanishes or an entry is not finite.
  static MoebiusMap from_entries(Complex a, Complex b, Complex c, Complex d);
  static MoebiusMap identity() { return MoebiusMap(); }

  Complex a() const { return Complex(a_); }
  Complex b() const { return Complex(b_); }
  Complex c() const { return Complex(c_); }
  Complex d() const { return Complex(d_); }
  Complex trace() const { return Complex(a_ + d_); }
  Complex det() const { return Complex(a_ * d_ - b_ * c_); }

  /// min(|M - N|_inf, |M + N|_inf) < tol * max(1, |M|_inf, |N|_inf).
  bool approx_equal(const MoebiusMap& other, double tol = kMatrixTol) const;
  /// min(|M - N|_inf, |M + N|_inf).
  double distance(const MoebiusMap& other) const;

 private:
  MoebiusMap(Entry a, Entry b, Entry c, Entry d) : a_(a), b_(b), c_(c), d_(d) {}

  friend MoebiusMap compose(const MoebiusMap& m, const MoebiusMap& n);
  friend MoebiusMap inverse(const MoebiusMap& m);
  friend BoundaryPoint apply(const MoebiusMap& m, const BoundaryPoint& p);
  friend bool is_parabolic(const MoebiusMap& m, double tol);
  friend BoundaryPoint fixed_point_of(const MoebiusMap& m);

  Entry a_{1.0L}, b_{0.0L}, c_{0.0L}, d_{1.0L};
};

/// Matrix product m * n (apply n first).
MoebiusMap compose(const MoebiusMap& m, const MoebiusMap& n);
inline MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
  return compose(m, n);
}
MoebiusMap inverse(const MoebiusMap& m);

/// Fractional-linear action p -> (a p + b) / (c p + d), with the limits
/// inf -> a / c and c p + d = 0 -> inf.
BoundaryPoint apply(const MoebiusMap& m, const BoundaryPoint& p);

/// |tr^2 - 4| < tol and m != +-I.
bool is_parabolic(const MoebiusMap& m, double tol = kMatrixTol);

/// (a - d) / (2c), or infinity when |c| < kMatrixTol. No parabolicity check.
BoundaryPoint fixed_point_of(const MoebiusMap& m);

/// The unique boundary fixed point of a parabolic map: (a - d) / (2c), or
/// infinity when |c| < kMatrixTol. Throws Error(NotParabolic).
BoundaryPoint parabolic_fixed_point(const MoebiusMap& m);

/// ((v3 - v0)(v2 - v1)) / ((v2 - v0)(v3 - v1)); factors containing an
/// infinite vertex cancel pairwise. 0, 1 and infinity mark degenerate input.
BoundaryPoint cross_ratio(const BoundaryPoint& v0, const BoundaryPoint& v1,
                          const BoundaryPoint& v2, const BoundaryPoint& v3);

/// Ordered ideal tetrahedron. Vertex order carries the orientation.
struct IdealTetrahedron {
  std::array<BoundaryPoint, 4> v{
      BoundaryPoint::infinity(), BoundaryPoint::infinity(),
      BoundaryPoint::infinity(), BoundaryPoint::infinity()};

  bool degenerate(double tol = kPointTol) const;
};

/// Signed volume D(cross_ratio(v0, v1, v2, v3)); exactly 0 when two vertices
/// coincide. Even vertex permutations preserve it, odd ones negate it.
double ideal_tet_volume(const IdealTetrahedron& t);

}  // namespace hypvol
