#include "polewave/free_solutions.hpp"
#include "polewave/error.hpp"

namespace polewave {

namespace {
double binom_coeff(int ell, int m) {
  // (l+m)!/(m!(l-m)!)
  double c = 1.0;
  for (int j = ell - m + 1; j <= ell + m; ++j)
    c *= j;
  for (int j = 2; j <= m; ++j)
    c /= j;
  return c;
}
cplx ipow(int n) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((n % 4) + 4) % 4];
}
} // namespace

cplx free_jost(int ell, cplx k, double r) {
  if (ell < 0)
    throw validation_error("negative ell");
  const cplx x = I / (2.0 * k * r);
  cplx sum = 0.0, xp = 1.0;
  for (int m = 0; m <= ell; ++m, xp *= x)
    sum += binom_coeff(ell, m) * xp;
  return ipow(ell) * std::exp(I * k * r) * sum;
}

cplx free_jost_prime(int ell, cplx k, double r) {
  const cplx x = I / (2.0 * k * r);
  cplx sum = 0.0, dsum = 0.0, xp = 1.0;
  for (int m = 0; m <= ell; ++m, xp *= x) {
    const double c = binom_coeff(ell, m);
    sum += c * xp;
    dsum += c * double(-m) / r * xp; // d/dr x^m = -m x^m / r
  }
  return ipow(ell) * std::exp(I * k * r) * (I * k * sum + dsum);
}

cplx free_regular(int ell, cplx k, double r) {
  const cplx z = k * r;
  if (std::abs(z) < 1e-3) {
    // series z^{l+1}/(2l+1)!! (1 - z^2/(2(2l+3)) + z^4/(8(2l+3)(2l+5)))
    const double a = 2.0 * ell + 3.0;
    const cplx s = 1.0 - z * z / (2.0 * a) + z * z * z * z / (8.0 * a * (a + 2.0));
    return std::pow(r, ell + 1) / double_factorial(2 * ell + 1) * s;
  }
  cplx jm = std::sin(z);               // j^_0
  cplx j = std::sin(z) / z - std::cos(z); // j^_1
  if (ell == 0)
    return jm / k;
  for (int l = 1; l < ell; ++l) {
    const cplx next = double(2 * l + 1) / z * j - jm;
    jm = j;
    j = next;
  }
  return j / std::pow(k, ell + 1);
}

cplx jost_calibration(int ell, cplx k) {
  return (ell % 2 ? -1.0 : 1.0) / std::pow(k, ell);
}

double origin_limit_ratio(int ell) { return 1.0 / (2.0 * ell + 1.0); }

} // namespace polewave
