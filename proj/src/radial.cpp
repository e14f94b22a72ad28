#include "polewave/radial.hpp"
#include "numerov.hpp"
#include "seeded.hpp"
#include "polewave/error.hpp"
#include "polewave/free_solutions.hpp"
#include <algorithm>
#include <cmath>
#include <sstream>

namespace polewave {

namespace {

double centrifugal(int ell) { return double(ell) * double(ell + 1); }

void check_common(int ell, cplx k, const Grid &grid) {
  if (ell < 0)
    throw validation_error("l must be non-negative");
  if (std::abs(k) == 0.0)
    throw validation_error("k must be non-zero");
  if (std::abs(k) * grid.h() >= kMaxKh) {
    std::ostringstream os;
    os << "step too coarse: |k| h = " << std::abs(k) * grid.h()
       << " (need < " << kMaxKh << ")";
    throw validation_error(os.str());
  }
}

std::vector<std::size_t> break_nodes(const Potential &p, const Grid &g) {
  std::vector<std::size_t> out;
  for (double b : p.breakpoints())
    if (auto j = g.node_at(b))
      out.push_back(*j);
  return out;
}

// First node at or beyond the potential range (n + 1 if none).
std::size_t range_node(const Potential &p, const Grid &g) {
  const double R = *p.range();
  if (auto j = g.node_at(R))
    return *j;
  return std::size_t(std::ceil(R / g.h()));
}

double conditioning_of(const Potential &p, cplx k) {
  if (k.imag() >= 0.0)
    return 1.0;
  return std::exp(2.0 * std::abs(k.imag()) * p.range().value_or(0.0));
}

void check_half_plane(const Potential &p, cplx k, double cond,
                      std::vector<std::string> &warnings) {
  if (k.imag() < 0.0 && !p.range())
    throw validation_error(
        "Im k < 0 needs a potential with a finite cutoff (continuation mode)");
  if (cond > kConditioningWarning) {
    std::ostringstream os;
    os << "lower half-plane continuation: conditioning factor " << cond;
    warnings.push_back(os.str());
  }
}

std::vector<cplx> jost_values(const Potential &p, int ell, cplx k,
                              const Grid &g, std::size_t stop) {
  const std::size_t n = g.n();
  std::vector<cplx> f(n + 1, 0.0);
  std::size_t first = n - 1;
  if (p.range()) {
    const std::size_t j0 = std::max<std::size_t>(range_node(p, g), 1);
    if (j0 + 4 <= n)
      first = j0;
    else if (!p.breakpoints().empty() || k.imag() < 0.0)
      throw validation_error(
          "grid must extend at least 4 steps beyond the potential cutoff");
  }
  for (std::size_t j = first; j <= n; ++j)
    f[j] = free_jost(ell, k, g.r(j));
  if (first > stop) {
    auto eq = detail::build_equation(p, centrifugal(ell), k * k, g, n);
    detail::march_inward(eq, f, first, stop);
  }
  return f;
}

cplx jost_wronskian(const Potential &p, int ell, cplx k, const Grid &g, int s,
                    double c0) {
  if (p.kind() == PotentialKind::free) {
    if (s == ell + 1)
      return c0 * double_factorial(2 * ell + 1) * jost_calibration(ell, k);
    if (ell == 0 && s == 0)
      return -I * k * c0; // W[e^{ikr}, cos kr]
  }
  const std::size_t n = g.n();
  std::size_t js;
  bool exact_f = false;
  if (p.range() && range_node(p, g) + 4 <= n) {
    // beyond the cutoff; kr of order one avoids cancellation for l > 0
    js = std::max<std::size_t>(range_node(p, g), 1) + 2;
    js = std::max(js, std::min(g.nearest(1.0 / std::abs(k)), n - 2));
    exact_f = true;
  } else {
    js = n / 2;
  }
  const auto phi =
      detail::regular_values(p, centrifugal(ell), k * k, s, c0, g, js + 2);
  const auto breaks = break_nodes(p, g);
  const cplx dphi =
      derivative<cplx>(std::span<const cplx>(phi), g.h(), js, breaks);
  cplx f, df;
  if (exact_f) {
    f = free_jost(ell, k, g.r(js));
    df = free_jost_prime(ell, k, g.r(js));
  } else {
    const auto fv = jost_values(p, ell, k, g, js - 2);
    f = fv[js];
    df = derivative<cplx>(std::span<const cplx>(fv), g.h(), js, breaks);
  }
  return f * dphi - df * phi[js];
}

} // namespace

cplx RadialSolution::derivative_at(double r) const {
  return derivative<cplx>(std::span<const cplx>(values), grid.h(),
                          grid.nearest(r), breaks);
}

Grid jost_grid(const Potential &p, cplx k, const GridOptions &opts) {
  double h = opts.h;
  if (std::abs(k) > 0.0)
    h = std::min(h, 0.4 / std::abs(k));
  double r_max;
  if (opts.r_max)
    r_max = *opts.r_max;
  else if (p.range())
    r_max = std::max(*p.range(), std::min(1.0 / std::abs(k),
                                          40.0 * p.length_scale())) +
            8.0 * h;
  else
    r_max = 40.0 * p.length_scale();
  return grid_for(p, h, std::max(r_max, 8.0 * h));
}

RadialSolution solve_regular(const Potential &p, int ell, cplx k,
                             const Grid &grid) {
  check_common(ell, k, grid);
  RadialSolution s;
  s.ell = ell;
  s.k = k;
  s.grid = grid;
  s.kind = SolutionKind::regular;
  s.breaks = break_nodes(p, grid);
  s.values = detail::regular_values(p, centrifugal(ell), k * k, ell + 1,
                                    1.0 / double_factorial(2 * ell + 1), grid,
                                    grid.n());
  return s;
}

RadialSolution solve_jost(const Potential &p, int ell, cplx k,
                          const Grid &grid) {
  check_common(ell, k, grid);
  RadialSolution s;
  s.ell = ell;
  s.k = k;
  s.grid = grid;
  s.kind = SolutionKind::jost;
  s.breaks = break_nodes(p, grid);
  check_half_plane(p, k, conditioning_of(p, k), s.warnings);
  s.values = jost_values(p, ell, k, grid, ell == 0 ? 0 : 1);
  return s;
}

cplx wronskian(const RadialSolution &a, const RadialSolution &b, double r) {
  if (!(a.grid == b.grid))
    throw validation_error("wronskian: grid mismatch");
  if (a.ell != b.ell || std::abs(a.k - b.k) > 1e-12 * std::abs(a.k))
    throw validation_error("wronskian: solutions at different l or k");
  const std::size_t j = a.grid.nearest(r);
  const bool singular = (a.kind == SolutionKind::jost && a.ell > 0) ||
                        (b.kind == SolutionKind::jost && b.ell > 0);
  if (j < (singular ? 3u : 2u) || j + 2 > a.grid.n())
    throw validation_error("wronskian: r must lie in the grid interior");
  const cplx da = a.derivative_at(r), db = b.derivative_at(r);
  return a.values[j] * db - da * b.values[j];
}

JostSample jost_function(const Potential &p, int ell, cplx k,
                         const Grid &grid) {
  check_common(ell, k, grid);
  JostSample s;
  s.k = k;
  s.conditioning = conditioning_of(p, k);
  check_half_plane(p, k, s.conditioning, s.warnings);
  s.F = std::pow(-k, ell) * jost_wronskian(p, ell, k, grid, ell + 1,
                                           1.0 / double_factorial(2 * ell + 1));
  return s;
}

namespace detail {

JostSample seeded_wronskian(const Potential &p, int ell, cplx k,
                            const Grid &grid, int s, double c0) {
  check_common(ell, k, grid);
  JostSample out;
  out.k = k;
  out.conditioning = conditioning_of(p, k);
  check_half_plane(p, k, out.conditioning, out.warnings);
  out.F = jost_wronskian(p, ell, k, grid, s, c0);
  return out;
}

} // namespace detail

JostSample jost_function(const Potential &p, int ell, cplx k,
                         const GridOptions &opts) {
  if (std::abs(k) == 0.0)
    throw validation_error("k must be non-zero");
  return jost_function(p, ell, k, jost_grid(p, k, opts));
}

double phase_shift(const Potential &p, int ell, double k,
                   const GridOptions &opts) {
  if (!(k > 0.0))
    throw validation_error("phase shift needs real k > 0");
  return -std::arg(jost_function(p, ell, k, opts).F);
}

std::vector<double> unwrap_phases(std::vector<double> delta) {
  for (std::size_t j = 1; j < delta.size(); ++j)
    delta[j] += pi * std::round((delta[j - 1] - delta[j]) / pi);
  return delta;
}

PhaseShiftCurve phase_shift_curve(const Potential &p, int ell,
                                  const std::vector<double> &ks,
                                  const GridOptions &opts) {
  PhaseShiftCurve c;
  c.k = ks;
  c.delta.reserve(ks.size());
  for (double k : ks)
    c.delta.push_back(phase_shift(p, ell, k, opts));
  c.delta = unwrap_phases(std::move(c.delta));
  return c;
}

double free_physical(int ell, double k, double delta, double r) {
  const double sign = (ell % 2) ? -1.0 : 1.0;
  return sign * (free_jost(ell, k, r) * std::exp(I * delta)).imag() / k;
}

RadialSolution physical_wave(const Potential &p, int ell, double k,
                             const Grid &grid) {
  if (!(k > 0.0))
    throw validation_error("physical wave needs real k > 0");
  RadialSolution s = solve_regular(p, ell, k, grid);
  const cplx F = jost_function(p, ell, k, grid).F;
  const double scale = std::pow(k, ell) / std::abs(F);
  double vmax = 0.0, imax = 0.0;
  for (auto &v : s.values) {
    v *= scale;
    vmax = std::max(vmax, std::abs(v.real()));
    imax = std::max(imax, std::abs(v.imag()));
    v = v.real();
  }
  if (imax > 1e-10 * vmax)
    throw numerical_error("physical wave is not real (internal inconsistency)");
  s.kind = SolutionKind::physical;

  const double R = grid.r_max();
  const bool outside = p.range() ? R >= *p.range() : std::abs(p(R)) < 1e-14;
  if (outside) {
    const double expect = free_physical(ell, k, -std::arg(F), R);
    const double got = s.values.back().real();
    if (std::abs(got - expect) * k > 1e-4) {
      std::ostringstream os;
      os << "asymptotic amplitude mismatch at R_max: " << got << " vs "
         << expect;
      s.warnings.push_back(os.str());
    }
  } else {
    s.warnings.push_back("R_max lies inside the potential support; "
                         "asymptote not verified");
  }
  return s;
}

} // namespace polewave
