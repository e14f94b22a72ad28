#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace polewave {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

//! Composite Simpson on equally spaced samples; an odd interval count is
//! closed with the 3/8 rule, a single interval with the trapezoid rule.
template <typename T> T simpson(std::span<const T> y, double h) {
  const std::size_t n = y.size() < 2 ? 0 : y.size() - 1;
  if (n == 0)
    return T{};
  if (n == 1)
    return 0.5 * h * (y[0] + y[1]);
  std::size_t even = (n % 2 == 0) ? n : n - 3;
  T s{};
  if (even > 0) {
    T acc = y[0] + y[even];
    for (std::size_t j = 1; j < even; ++j)
      acc += (j % 2 ? 4.0 : 2.0) * y[j];
    s = acc * (h / 3.0);
  }
  if (even != n) {
    const std::size_t j = even;
    s += (3.0 * h / 8.0) * (y[j] + 3.0 * y[j + 1] + 3.0 * y[j + 2] + y[j + 3]);
  }
  return s;
}

//! Simpson over [r_0, r_end] split at the given breakpoint nodes.
//! sample(j, from_right) returns the integrand at node j; at a breakpoint the
//! flag selects the one-sided limit belonging to the segment on the right.
template <typename T, typename Sample>
T integrate_segments(double h, std::size_t j_end,
                     std::span<const std::size_t> breaks, Sample &&sample) {
  T total{};
  std::size_t start = 0;
  std::vector<T> buf;
  auto flush = [&](std::size_t stop) {
    if (stop <= start)
      return;
    buf.clear();
    for (std::size_t j = start; j <= stop; ++j)
      buf.push_back(sample(j, j == start));
    total += simpson<T>(std::span<const T>(buf), h);
    start = stop;
  };
  for (auto m : breaks)
    if (m > start && m < j_end)
      flush(m);
  flush(j_end);
  return total;
}

//! d/dr at node j with a 4th-order five-point stencil that stays on one
//! smooth segment (central if possible, otherwise one-sided).
template <typename T>
T derivative(std::span<const T> u, double h, std::size_t j,
             std::span<const std::size_t> breaks = {}) {
  const std::size_t n = u.size() - 1;
  auto usable = [&](std::ptrdiff_t lo, std::ptrdiff_t hi) {
    if (lo < 0 || hi > std::ptrdiff_t(n))
      return false;
    return std::none_of(breaks.begin(), breaks.end(), [&](std::size_t m) {
      return std::ptrdiff_t(m) > lo && std::ptrdiff_t(m) < hi;
    });
  };
  const auto jj = std::ptrdiff_t(j);
  if (usable(jj - 2, jj + 2))
    return (u[j - 2] - 8.0 * u[j - 1] + 8.0 * u[j + 1] - u[j + 2]) /
           (12.0 * h);
  if (usable(jj, jj + 4))
    return (-25.0 * u[j] + 48.0 * u[j + 1] - 36.0 * u[j + 2] +
            16.0 * u[j + 3] - 3.0 * u[j + 4]) /
           (12.0 * h);
  // backward; callers guarantee at least one stencil fits
  return (25.0 * u[j] - 48.0 * u[j - 1] + 36.0 * u[j - 2] - 16.0 * u[j - 3] +
          3.0 * u[j - 4]) /
         (12.0 * h);
}

//! Richardson extrapolation to step -> 0 of values computed with steps
//! s, s/ratio, s/ratio^2, ...; the error is assumed to be a power series in
//! the step starting at power `p0` with unit increments.
template <typename T>
T richardson(std::vector<T> table, double ratio = 2.0, int p0 = 1) {
  for (std::size_t level = 1; level < table.size(); ++level) {
    const double f = std::pow(ratio, double(p0) + double(level) - 1.0);
    for (std::size_t j = table.size() - 1; j >= level; --j)
      table[j] = (f * table[j] - table[j - 1]) / (f - 1.0);
  }
  return table.back();
}

//! Least-squares polynomial sum c_i t^i.
struct PolyFit {
  std::vector<double> coeffs;
  double condition = 0.0;
  int rank = 0;
  double operator()(double t) const {
    double s = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      s = s * t + *it;
    return s;
  }
};

//! Throws a numerical Error if the design matrix is rank deficient.
PolyFit polyfit(std::span<const double> t, std::span<const double> y,
                int order);

//! Double factorial n!! (with (-1)!! = 1).
double double_factorial(int n);

} // namespace polewave
