#include "numerov.hpp"
#include "polewave/error.hpp"
#include <algorithm>

namespace polewave::detail {

bool Equation::is_break(std::size_t j, std::size_t *which) const {
  for (std::size_t i = 0; i < breaks.size(); ++i)
    if (breaks[i] == j) {
      if (which)
        *which = i;
      return true;
    }
  return false;
}

namespace {
// one-sided five-point first derivative; dir = +1 forward, -1 backward
template <typename F> double one_sided(F &&f, double x, double h, int dir) {
  const double s = dir * h;
  return dir * (-25.0 * f(x) + 48.0 * f(x + s) - 36.0 * f(x + 2 * s) +
                16.0 * f(x + 3 * s) - 3.0 * f(x + 4 * s)) /
         (12.0 * h);
}
} // namespace

Equation build_equation(const Potential &p, double L, cplx k2, const Grid &g,
                        std::size_t last) {
  Equation eq;
  eq.h = g.h();
  eq.L = L;
  eq.E = k2;
  eq.q.resize(last + 1);
  eq.q_left.resize(last + 1);
  for (std::size_t j = 0; j <= last; ++j) {
    const double r = g.r(j);
    const double cent = (j == 0) ? 0.0 : L / (r * r);
    auto [lo, hi] = p.limits(r);
    eq.q[j] = cent + hi - k2;
    eq.q_left[j] = cent + lo - k2;
  }
  for (double b : p.breakpoints()) {
    auto m = g.node_at(b);
    if (!m || *m == 0 || *m > last)
      continue;
    eq.breaks.push_back(*m);
    const double r = g.r(*m);
    const auto [lo, hi] = p.limits(r);
    auto left = [&](double x) { return x < r ? p(x) : lo; };
    auto right = [&](double x) { return x > r ? p(x) : hi; };
    const double dr = one_sided(right, r, g.h(), +1);
    const double dl = one_sided(left, r, g.h(), -1);
    eq.dq_jump.push_back(dr - dl);
  }
  return eq;
}

std::vector<cplx> origin_coefficients(const Potential &p, double L, cplx k2,
                                      int s, double c0, int terms) {
  auto V = p.origin_series(terms);
  std::vector<cplx> c(std::size_t(terms) + 1, 0.0);
  c[0] = c0;
  for (int N = 2; N <= terms; ++N) {
    cplx acc = 0.0;
    for (int m = 0; m <= N - 2; ++m) {
      const cplx vm = (m == 0) ? cplx(V[0]) - k2 : cplx(V[std::size_t(m)]);
      acc += vm * c[std::size_t(N - 2 - m)];
    }
    const double denom = double(N + s) * double(N + s - 1) - L;
    c[std::size_t(N)] = acc / denom;
  }
  return c;
}

namespace {

// Three-point relation centred at c:
//   A+ u[c+1] + A- u[c-1] - B u[c] = D
// with A = 1 - h^2/12 Q (one-sided limits facing c), B = 2 + 10 h^2/12 Q_c.
// At a breakpoint Q_c is the mean of both limits and D carries the jump of
// u''' (h^3/12 ([Q] u' + [Q'] u)).
struct Step {
  cplx ap, am, b, d;
};

Step step_at(const Equation &eq, const std::vector<cplx> &u, std::size_t c,
             bool outward) {
  const double t = eq.h * eq.h / 12.0;
  Step s;
  s.ap = 1.0 - t * eq.q_left[c + 1];
  s.am = 1.0 - t * eq.q[c - 1];
  std::size_t which = 0;
  if (eq.is_break(c, &which)) {
    const cplx jump = eq.q[c] - eq.q_left[c];
    s.b = 2.0 + 5.0 * t * (eq.q[c] + eq.q_left[c]);
    cplx du;
    if (outward)
      du = (25.0 * u[c] - 48.0 * u[c - 1] + 36.0 * u[c - 2] -
            16.0 * u[c - 3] + 3.0 * u[c - 4]) /
           (12.0 * eq.h);
    else
      du = (-25.0 * u[c] + 48.0 * u[c + 1] - 36.0 * u[c + 2] +
            16.0 * u[c + 3] - 3.0 * u[c + 4]) /
           (12.0 * eq.h);
    s.d = eq.h * eq.h * eq.h / 12.0 * (jump * du + eq.dq_jump[which] * u[c]);
  } else {
    s.b = 2.0 + 10.0 * t * eq.q[c];
    s.d = 0.0;
  }
  return s;
}

void guard(cplx v) {
  if (!(std::abs(v) < kOverflow))
    throw numerical_error("radial integration overflow (|Im k| R too large)");
}

} // namespace

void march_outward(const Equation &eq, std::vector<cplx> &u, std::size_t last,
                   std::size_t from) {
  for (std::size_t c = std::max<std::size_t>(from, 2); c + 1 <= last; ++c) {
    const Step s = step_at(eq, u, c, true);
    u[c + 1] = (s.d + s.b * u[c] - s.am * u[c - 1]) / s.ap;
    guard(u[c + 1]);
  }
}

void march_inward(const Equation &eq, std::vector<cplx> &u, std::size_t first,
                  std::size_t stop) {
  for (std::size_t c = first; c >= 1 && c - 1 >= stop; --c) {
    const Step s = step_at(eq, u, c, false);
    u[c - 1] = (s.d + s.b * u[c] - s.ap * u[c + 1]) / s.am;
    guard(u[c - 1]);
    if (c == 1)
      break;
  }
}

std::vector<cplx> regular_values(const Potential &p, double L, cplx k2, int s,
                                 double c0, const Grid &g, std::size_t last) {
  const int terms = 24;
  const auto c = origin_coefficients(p, L, k2, s, c0, terms);
  // series seeds every node with sigma r <= 1/2, sigma the scale set by the
  // Taylor coefficients of U - k^2
  const auto V = p.origin_series(terms);
  double sigma = std::sqrt(std::abs(V[0] - k2));
  for (int m = 1; m <= terms; ++m)
    sigma = std::max(sigma, std::pow(std::abs(V[std::size_t(m)]), 1.0 / (m + 2)));
  double r_seed = sigma > 0.0 ? 0.5 / sigma : g.r_max();
  for (double b : p.breakpoints())
    r_seed = std::min(r_seed, b - 0.5 * g.h());
  std::size_t seeded = std::size_t(std::max(0.0, r_seed) / g.h());
  seeded = std::min(std::max<std::size_t>(seeded, 2), last);

  std::vector<cplx> u(last + 1, 0.0);
  for (std::size_t j = 0; j <= seeded; ++j) {
    const double r = g.r(j);
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
      acc = acc * r + *it;
    u[j] = acc * std::pow(r, s);
  }
  march_outward(build_equation(p, L, k2, g, last), u, last, seeded);
  return u;
}

} // namespace polewave::detail
