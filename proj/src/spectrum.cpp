#include "polewave/spectrum.hpp"
#include "polewave/error.hpp"
#include "polewave/free_solutions.hpp"
#include "root_scan.hpp"
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <functional>
#include <algorithm>
#include <sstream>

namespace polewave {

double free_decaying(int ell, double alpha, double r) {
  return (std::pow(-I, ell) * free_jost(ell, {0.0, alpha}, r)).real();
}

Grid bound_grid(const Potential &p, double alpha, const GridOptions &opts) {
  double r_max;
  if (opts.r_max)
    r_max = *opts.r_max;
  else
    r_max = std::max(p.range() ? *p.range() + 20.0 * opts.h
                               : 40.0 * p.length_scale(),
                     (p.range() ? *p.range() : 0.0) + 30.0 / alpha);
  return grid_for(p, std::min(opts.h, 0.4 / alpha), r_max);
}

namespace {

double jost_on_axis(const Potential &p, int ell, double alpha,
                    const GridOptions &opts) {
  return jost_function(p, ell, {0.0, alpha}, opts).F.real();
}

double tail_integral(int ell, double alpha, double R) {
  if (ell == 0)
    return std::exp(-2.0 * alpha * R) / (2.0 * alpha);
  boost::math::quadrature::exp_sinh<double> quad;
  return quad.integrate(
      [&](double t) {
        const double v = free_decaying(ell, alpha, R + t);
        return v * v;
      },
      1e-14);
}

} // namespace

std::vector<BoundState> find_bound_states(const Potential &p, int ell,
                                          std::pair<double, double> window,
                                          int n_scan, const GridOptions &opts,
                                          std::vector<std::string> *notes) {
  if (p.kind() == PotentialKind::free) {
    if (!(window.first > 0.0) || !(window.second > window.first))
      throw validation_error("alpha window must satisfy 0 < lo < hi");
    return {};
  }
  const auto roots = detail::find_axis_roots(
      [&](double a) { return jost_on_axis(p, ell, a, opts); }, window, n_scan,
      notes);
  std::vector<BoundState> out;
  for (double a : roots)
    out.push_back(build_bound_state(p, ell, a, bound_grid(p, a, opts)));
  return out;
}

BoundState build_bound_state(const Potential &p, int ell, double alpha,
                             const Grid &grid) {
  if (!(alpha > 0.0))
    throw validation_error("alpha must be positive");
  const cplx k{0.0, alpha};
  const auto f = solve_jost(p, ell, k, grid);
  const auto phi = solve_regular(p, ell, k, grid);

  BoundState b;
  b.ell = ell;
  b.alpha = alpha;
  b.energy = -alpha * alpha;
  b.grid = grid;
  b.breaks = f.breaks;
  const cplx phase = std::pow(-I, ell);
  b.u.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    b.u[j] = (phase * f.values[j]).real();
  if (ell > 0)
    b.u[0] = 0.0;

  // regularity: W[f, phi] must cancel at the scale of its two terms
  const std::size_t jm =
      std::clamp(grid.nearest(1.0 / alpha), std::size_t(3), grid.n() - 3);
  const double rm = grid.r(jm);
  const cplx t1 = f.values[jm] * phi.derivative_at(rm);
  const cplx t2 = f.derivative_at(rm) * phi.values[jm];
  b.regularity = std::abs(t1 - t2) / (std::abs(t1) + std::abs(t2));
  if (!(b.regularity < kRegularityTolerance)) {
    std::ostringstream os;
    os << "alpha = " << alpha << " is not a bound state: irregular component "
       << b.regularity << " at the origin";
    throw numerical_error(os.str());
  }

  const double body = integrate_segments<double>(
      grid.h(), grid.n(), b.breaks,
      [&](std::size_t j, bool) { return b.u[j] * b.u[j]; });
  b.tail_correction = tail_integral(ell, alpha, grid.r_max());
  b.N = 1.0 / std::sqrt(body + b.tail_correction);
  return b;
}

double asymptotic_coefficient(const BoundState &b) {
  const std::size_t n = b.grid.n();
  const std::size_t j0 = n - n / 10;
  double sum = 0.0;
  for (std::size_t j = j0; j <= n; ++j)
    sum += b.N * b.u[j] / free_decaying(b.ell, b.alpha, b.grid.r(j));
  return sum / double(n - j0 + 1);
}

double normalization_check(const BoundState &b) {
  const double body = integrate_segments<double>(
      b.grid.h(), b.grid.n(), b.breaks,
      [&](std::size_t j, bool) { return b.u[j] * b.u[j]; });
  return b.N * b.N * (body + b.tail_correction);
}

namespace detail {
namespace {

std::vector<double> scan_roots(const std::function<double(double)> &F,
                               double lo, double hi, int n_scan,
                               std::vector<std::string> *notes, bool *edge_hit) {
  std::vector<double> xs(std::size_t(n_scan) + 1), fs(xs.size());
  double fmax = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    xs[j] = lo + (hi - lo) * double(j) / double(n_scan);
    fs[j] = F(xs[j]);
    fmax = std::max(fmax, std::abs(fs[j]));
  }
  *edge_hit = std::abs(fs.front()) < 1e-3 * fmax ||
              std::abs(fs.back()) < 1e-3 * fmax;

  std::vector<double> roots;
  for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
    if (fs[j] == 0.0) {
      roots.push_back(xs[j]);
      continue;
    }
    if (fs[j] * fs[j + 1] > 0.0 || fs[j + 1] == 0.0)
      continue;
    boost::uintmax_t iters = 100;
    try {
      auto [a, b] = boost::math::tools::toms748_solve(
          F, xs[j],
          xs[j + 1], fs[j], fs[j + 1],
          [](double a, double b) { return std::abs(b - a) < kRootTolerance; },
          iters);
      const double root = 0.5 * (a + b);
      // a sign change through a pole of F (infinite-range tails) is not a zero
      const double fr = std::abs(F(root));
      if (fr > 1e-6 * std::max({std::abs(fs[j]), std::abs(fs[j + 1]), 1e-300})) {
        if (notes) {
          std::ostringstream os;
          os << "bracket [" << xs[j] << ", " << xs[j + 1]
             << "]: sign change without a zero (|F| = " << fr << ")";
          notes->push_back(os.str());
        }
        continue;
      }
      roots.push_back(root);
    } catch (const std::exception &e) {
      if (notes) {
        std::ostringstream os;
        os << "bracket [" << xs[j] << ", " << xs[j + 1]
           << "] did not converge: " << e.what();
        notes->push_back(os.str());
      }
    }
  }
  return roots;
}


} // namespace

std::vector<double> find_axis_roots(const std::function<double(double)> &F,
                                    std::pair<double, double> window,
                                    int n_scan,
                                    std::vector<std::string> *notes) {
  auto [lo, hi] = window;
  if (!(lo > 0.0) || !(hi > lo))
    throw validation_error("alpha window must satisfy 0 < lo < hi");
  if (n_scan < 2)
    throw validation_error("n_scan must be at least 2");
  bool edge = false;
  auto roots = scan_roots(F, lo, hi, n_scan, notes, &edge);
  if (edge)
    roots = scan_roots(F, lo * 0.99, hi * 1.01, n_scan, notes, &edge);
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

} // namespace detail

} // namespace polewave
