#include "polewave/onedim.hpp"
#include "numerov.hpp"
#include "polewave/error.hpp"
#include "polewave/spectrum.hpp"
#include "root_scan.hpp"
#include "seeded.hpp"
#include <algorithm>
#include <sstream>

namespace polewave {

std::string to_string(Parity parity) {
  return parity == Parity::even ? "even" : "odd";
}

Parity parse_parity(const std::string &name) {
  if (name == "even")
    return Parity::even;
  if (name == "odd")
    return Parity::odd;
  throw validation_error("unknown parity '" + name + "' (even, odd)");
}

namespace {

int seed_power(Parity parity) { return parity == Parity::even ? 0 : 1; }

std::vector<std::size_t> break_nodes(const Potential1D &p, const Grid &g) {
  std::vector<std::size_t> out;
  for (double b : p.breakpoints())
    if (auto j = g.node_at(b))
      out.push_back(*j);
  return out;
}

std::vector<double> parity_regular(const Potential1D &p, Parity parity,
                                   cplx k2, const Grid &g) {
  const auto v =
      detail::regular_values(p, 0.0, k2, seed_power(parity), 1.0, g, g.n());
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    out[j] = v[j].real();
  return out;
}

// W[f, phi_even] = -f'(k, 0) and W[f, phi_odd] = f(k, 0).
JostSample parity_wronskian(const Potential1D &p, Parity parity, cplx k,
                            const Grid &g) {
  return detail::seeded_wronskian(p, 0, k, g, seed_power(parity), 1.0);
}

JostSample to_jost(JostSample w, Parity parity) {
  if (parity == Parity::even)
    w.F = -w.F / (I * w.k);
  return w;
}

cplx branch_sqrt(cplx z) {
  if (std::abs(z.imag()) < 1e-12 * std::abs(z))
    z = cplx(z.real(), 0.0);
  return std::sqrt(z);
}

double branch_sign(const Potential1D &p, Parity parity, double alpha,
                   const GridOptions &opts) {
  const cplx k{0.0, alpha * (1.0 - 1e-4)};
  return parity_jost(p, parity, k, opts).F.real() < 0.0 ? 1.0 : -1.0;
}

void require_candidate(const Potential1D &p, double alpha) {
  if (!(alpha > 0.0))
    throw validation_error("alpha must be positive");
  if (p.kind() == PotentialKind::free)
    throw Error(ErrorKind::no_bound_state,
                "the free potential has no bound state");
}

} // namespace

JostSample parity_jost(const Potential1D &p, Parity parity, cplx k,
                       const GridOptions &opts) {
  if (std::abs(k) == 0.0)
    throw validation_error("k must be non-zero");
  return to_jost(parity_wronskian(p, parity, k, jost_grid(p, k, opts)), parity);
}

ParitySolution solve_parity(const Potential1D &p, Parity parity, double k,
                            const Grid &grid) {
  if (!(k > 0.0))
    throw validation_error("parity solutions need real k > 0");
  if (p.range() && grid.r_max() < *p.range())
    throw validation_error(
        "cannot match phases: R_max lies inside the potential support");
  const auto F = to_jost(parity_wronskian(p, parity, k, grid), parity).F;
  ParitySolution s;
  s.parity = parity;
  s.k = k;
  s.grid = grid;
  s.breaks = break_nodes(p, grid);
  s.delta = -std::arg(F);
  s.values = parity_regular(p, parity, k * k, grid);
  const double scale = parity == Parity::even ? 1.0 / std::abs(F)
                                              : -k / std::abs(F);
  for (double &v : s.values)
    v *= scale;
  return s;
}

BoundState1D build_bound_1d(const Potential1D &p, Parity parity, double alpha,
                            const Grid &grid) {
  if (!(alpha > 0.0))
    throw validation_error("alpha must be positive");
  const cplx k{0.0, alpha};
  const auto f = solve_jost(p, 0, k, grid);
  const auto phi = parity_regular(p, parity, k * k, grid);

  BoundState1D b;
  b.parity = parity;
  b.alpha = alpha;
  b.grid = grid;
  b.breaks = f.breaks;
  b.u.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    b.u[j] = f.values[j].real();

  const std::size_t jm =
      std::clamp(grid.nearest(1.0 / alpha), std::size_t(3), grid.n() - 3);
  const double du = derivative<double>(b.u, grid.h(), jm, b.breaks);
  const double dphi = derivative<double>(phi, grid.h(), jm, b.breaks);
  const double t1 = b.u[jm] * dphi, t2 = du * phi[jm];
  b.regularity = std::abs(t1 - t2) / (std::abs(t1) + std::abs(t2));
  if (!(b.regularity < kRegularityTolerance)) {
    std::ostringstream os;
    os << "alpha = " << alpha << " is not an " << to_string(parity)
       << " bound state: parity mismatch " << b.regularity;
    throw numerical_error(os.str());
  }

  const double body = integrate_segments<double>(
      grid.h(), grid.n(), b.breaks,
      [&](std::size_t j, bool) { return b.u[j] * b.u[j]; });
  b.tail_correction = std::exp(-2.0 * alpha * grid.r_max()) / (2.0 * alpha);
  b.N = 1.0 / std::sqrt(2.0 * (body + b.tail_correction));
  return b;
}

std::vector<BoundState1D> find_bound_1d(const Potential1D &p, Parity parity,
                                        std::pair<double, double> window,
                                        int n_scan, const GridOptions &opts,
                                        std::vector<std::string> *notes) {
  if (!(window.first > 0.0) || !(window.second > window.first))
    throw validation_error("alpha window must satisfy 0 < lo < hi");
  if (p.kind() == PotentialKind::free)
    return {};
  const auto roots = detail::find_axis_roots(
      [&](double a) {
        const cplx k{0.0, a};
        return parity_wronskian(p, parity, k, jost_grid(p, k, opts)).F.real();
      },
      window, n_scan, notes);
  std::vector<BoundState1D> out;
  for (double a : roots)
    out.push_back(build_bound_1d(p, parity, a, bound_grid(p, a, opts)));
  return out;
}

ExtrapolantSamples extrapolant_samples_1d(const Potential1D &p, Parity parity,
                                          double alpha,
                                          const std::vector<double> &x_list,
                                          const std::vector<double> &k2_list,
                                          const GridOptions &opts) {
  require_candidate(p, alpha);
  if (x_list.empty() || k2_list.empty())
    throw validation_error("x_list and k_list must not be empty");
  for (double k2 : k2_list) {
    if (k2 > 0.0 && std::sqrt(k2) < 0.05 * alpha)
      throw validation_error("real sample momenta must satisfy k >= 0.05 alpha");
    if (k2 < 0.0 && !p.range())
      throw validation_error(
          "samples below threshold need a finite-range potential (set a cutoff)");
    if (k2 == 0.0 || k2 == -alpha * alpha)
      throw validation_error("samples must avoid k^2 = 0 and the pole");
  }
  const Grid grid = bound_grid(p, alpha, opts);
  for (double x : x_list)
    if (!(x > 0.0) || x > grid.r_max())
      throw validation_error("position outside (0, R_max]");

  const auto b = build_bound_1d(p, parity, alpha, grid);
  ExtrapolantSamples s;
  s.ell = 0;
  s.alpha = alpha;
  s.N = b.N;
  s.k2 = k2_list;
  s.expected_sign = 1.0;
  s.sigma = branch_sign(p, parity, alpha, opts);

  std::vector<std::size_t> nodes;
  for (double x : x_list) {
    nodes.push_back(grid.nearest(x));
    s.r.push_back(grid.r(nodes.back()));
    s.reference.push_back(b.N * b.u[nodes.back()]);
  }
  for (double u : b.u)
    s.reference_max = std::max(s.reference_max, b.N * std::abs(u));

  for (double k2 : k2_list) {
    const cplx k = std::sqrt(cplx(k2, 0.0));
    const auto phi = parity_regular(p, parity, k2, grid);
    const auto wp = parity_wronskian(p, parity, k, jost_grid(p, k, opts));
    const auto wn = parity_wronskian(p, parity, -k, jost_grid(p, -k, opts));
    for (const auto *w : {&wp, &wn})
      for (const auto &msg : w->warnings)
        if (std::find(s.warnings.begin(), s.warnings.end(), msg) ==
            s.warnings.end())
          s.warnings.push_back(msg);
    const cplx root =
        branch_sqrt(alpha * (alpha * alpha + k2) / (wp.F * wn.F));
    std::vector<cplx> row;
    for (std::size_t j : nodes)
      row.push_back(s.sigma * phi[j] * root);
    s.g.push_back(std::move(row));
  }
  return s;
}

ExtrapolationReport pole_extrapolate_1d(const Potential1D &p, Parity parity,
                                        double alpha,
                                        const std::vector<double> &x_list,
                                        const SampleOptions &rule, int order,
                                        const GridOptions &opts) {
  const auto s = extrapolant_samples_1d(p, parity, alpha, x_list,
                                        sample_k2(alpha, rule), opts);
  return extrapolate_to_pole(s, order);
}

ResidueResult residue_1d(const Potential1D &p, Parity parity, double alpha,
                         const GridOptions &opts) {
  require_candidate(p, alpha);
  if (!p.range())
    throw validation_error(
        "the residue needs F(-k) off the real axis: set a cutoff");
  const auto b = build_bound_1d(p, parity, alpha, bound_grid(p, alpha, opts));
  auto [value, err] = imaginary_axis_residue(
      [&](cplx k) {
        return parity_jost(p, parity, -k, opts).F /
               parity_jost(p, parity, k, opts).F;
      },
      alpha);
  ResidueResult r;
  r.ell = 0;
  r.alpha = alpha;
  r.method = ResidueMethod::imaginary_axis;
  r.residue = value;
  r.error_estimate = err;
  r.N_from_norm = b.N;
  r.N_from_residue = std::sqrt(std::abs(value) / 2.0);
  const double N2 = b.N * b.N;
  // S+ = -2 (N G)^2 / (alpha + ik) near the pole, S- as the S wave
  const cplx expected = (parity == Parity::even ? 2.0 : -2.0) * I * N2;
  r.relative_error = std::abs(value - expected) / (2.0 * N2);
  return r;
}

ZeroEnergyPhase zero_energy_phase(const Potential1D &p,
                                  const GridOptions &opts) {
  const double L = p.range() ? *p.range() : p.length_scale();
  ZeroEnergyPhase z;

  // k = 0 Jost solution: f = 1 beyond the cutoff (or far out), marched inward
  const double R = opts.r_max ? *opts.r_max
                   : p.range() ? *p.range() + 8.0 * opts.h
                               : 40.0 * p.length_scale();
  const Grid g = grid_for(p, opts.h, R);
  const std::size_t n = g.n();
  std::vector<cplx> f(n + 1, 0.0);
  std::size_t first = n - 1;
  if (p.range())
    first = std::min(first, std::size_t(std::ceil(*p.range() / g.h() - 1e-9)));
  for (std::size_t j = first; j <= n; ++j)
    f[j] = 1.0;
  const auto eq = detail::build_equation(p, 0.0, 0.0, g, n);
  if (first > 0)
    detail::march_inward(eq, f, first, 0);
  const auto phi = detail::regular_values(p, 0.0, 0.0, 0, 1.0, g, n);
  const auto breaks = break_nodes(p, g);
  const std::size_t js = std::max<std::size_t>(first, 4) - 2;
  const cplx w = f[js] * derivative<cplx>(phi, g.h(), js, breaks) -
                 derivative<cplx>(f, g.h(), js, breaks) * phi[js];
  z.threshold_slope = std::abs(w) * L;
  z.zero_energy_state = z.threshold_slope < kZeroEnergyTolerance;

  std::vector<double> ks, deltas;
  for (double c : {0.02, 0.04, 0.06}) {
    ks.push_back(c / L);
    deltas.push_back(-std::arg(parity_jost(p, Parity::even, ks.back(), opts).F));
  }
  deltas = unwrap_phases(deltas);
  const double d0 = polyfit(ks, deltas, 2)(0.0);
  z.delta = d0 - pi * std::floor(d0 / pi);
  return z;
}

} // namespace polewave
