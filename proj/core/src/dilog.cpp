#include "hypvol/dilog.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace hypvol {

namespace {

constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;

// B_2, B_4, ..., B_30.
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

Complex power_series(Complex z) {
  Complex sum = 0.0;
  Complex zn = z;
  for (int n = 1; n < 200; ++n) {
    const Complex term = zn / (static_cast<double>(n) * n);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    zn *= z;
  }
  return sum;
}

// Li2(z) = sum_n B_n u^(n+1) / (n+1)!, u = -log(1 - z); converges for
// |u| < 2 pi, which covers |z| <= 1 with Re z <= 1/2.
Complex bernoulli_series(Complex z) {
  const Complex u = -std::log(1.0 - z);
  const Complex u2 = u * u;
  Complex sum = u - u2 / 4.0;
  Complex upow = u;  // u^(2k+1) / (2k+1)!
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double n = 2.0 * static_cast<double>(k + 1);
    upow *= u2 / (n * (n + 1.0));
    const Complex term = kBernoulli[k] * upow;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

Complex dilog(Complex z) {
  if (z == Complex(0.0)) return 0.0;
  if (z == Complex(1.0)) return kZeta2;
  if (std::abs(z) > 1.0) {
    const Complex l = std::log(-z);
    return -kZeta2 - 0.5 * l * l - dilog(1.0 / z);
  }
  if (z.real() > 0.5) {
    return kZeta2 - std::log(z) * std::log(1.0 - z) - dilog(1.0 - z);
  }
  if (std::abs(z) <= 0.5) return power_series(z);
  return bernoulli_series(z);
}

double bloch_wigner(Complex z) {
  if (z.imag() == 0.0) return 0.0;
  return dilog(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

double bloch_wigner(const BoundaryPoint& z) {
  return z.is_infinite() ? 0.0 : bloch_wigner(z.value());
}

}  // namespace hypvol
