#include "polewave/poletheorem.hpp"
#include "polewave/error.hpp"
#include <Eigen/Dense>
#include <algorithm>
#include <sstream>

namespace polewave {

std::string to_string(SampleRule rule) {
  return rule == SampleRule::threshold ? "threshold" : "pole_local";
}

SampleRule parse_sample_rule(const std::string &name) {
  if (name == "threshold")
    return SampleRule::threshold;
  if (name == "pole_local" || name == "pole-local")
    return SampleRule::pole_local;
  throw validation_error("unknown sample rule '" + name +
                         "' (threshold, pole_local)");
}

std::string to_string(ResidueMethod m) {
  return m == ResidueMethod::imaginary_axis ? "imaginary_axis"
                                            : "real_axis_fit";
}

std::vector<double> sample_k2(double alpha, const SampleOptions &opts) {
  if (!(alpha > 0.0))
    throw validation_error("alpha must be positive");
  const double spacing = opts.spacing != 0.0 ? opts.spacing
                         : opts.rule == SampleRule::threshold ? 0.05
                                                              : 0.02;
  if (opts.count < 1 || !(spacing > 0.0))
    throw validation_error("sample count and spacing must be positive");
  const double a2 = alpha * alpha;
  std::vector<double> k2;
  if (opts.rule == SampleRule::threshold) {
    for (int j = 1; j <= opts.count; ++j)
      k2.push_back(double(j) * spacing * a2);
    return k2;
  }
  if (opts.count % 2 != 0)
    throw validation_error("pole_local sampling needs an even sample count");
  const int half = opts.count / 2;
  if (!(double(half) * spacing < 1.0))
    throw validation_error("pole_local samples would cross k = 0");
  for (int j = half; j >= 1; --j)
    k2.push_back(-a2 * (1.0 + double(j) * spacing));
  for (int j = 1; j <= half; ++j)
    k2.push_back(-a2 * (1.0 - double(j) * spacing));
  return k2;
}

int default_order(SampleRule rule) {
  return rule == SampleRule::threshold ? 2 : 4;
}

namespace {

void merge(std::vector<std::string> &into, const std::vector<std::string> &w) {
  for (const auto &s : w)
    if (std::find(into.begin(), into.end(), s) == into.end())
      into.push_back(s);
}

void require_bound_state_candidate(const Potential &p, double alpha) {
  if (!(alpha > 0.0))
    throw validation_error("alpha must be positive");
  if (p.kind() == PotentialKind::free)
    throw Error(ErrorKind::no_bound_state,
                "the free potential has no bound state");
}

// Real values on the imaginary axis carry rounding-level imaginary parts;
// dropping them keeps the square-root branch the same for every sample.
cplx branch_sqrt(cplx z) {
  if (std::abs(z.imag()) < 1e-12 * std::abs(z))
    z = cplx(z.real(), 0.0);
  return std::sqrt(z);
}

} // namespace

ExtrapolantSamples extrapolant_samples_k2(const Potential &p, int ell,
                                          double alpha,
                                          const std::vector<double> &r_list,
                                          const std::vector<double> &k2_list,
                                          const GridOptions &opts) {
  require_bound_state_candidate(p, alpha);
  if (ell < 0)
    throw validation_error("ell must be non-negative");
  if (r_list.empty() || k2_list.empty())
    throw validation_error("r_list and k_list must not be empty");
  const bool continued =
      std::any_of(k2_list.begin(), k2_list.end(), [](double x) { return x < 0.0; });
  if (continued && !p.range())
    throw validation_error(
        "samples below threshold need a finite-range potential (set a cutoff)");
  for (double x : k2_list)
    if (x == 0.0 || x == -alpha * alpha)
      throw validation_error("samples must avoid k^2 = 0 and the pole");

  const Grid grid = bound_grid(p, alpha, opts);
  for (double r : r_list)
    if (!(r > 0.0) || r > grid.r_max())
      throw validation_error("radius outside (0, R_max]");

  const BoundState b = build_bound_state(p, ell, alpha, grid);

  ExtrapolantSamples s;
  s.ell = ell;
  s.alpha = alpha;
  s.N = b.N;
  s.k2 = k2_list;
  const double Fm = jost_function(p, ell, {0.0, alpha * (1.0 - 1e-4)}, opts).F.real();
  s.sigma = Fm < 0.0 ? -1.0 : 1.0;

  std::vector<std::size_t> nodes;
  for (double r : r_list) {
    nodes.push_back(grid.nearest(r));
    s.r.push_back(grid.r(nodes.back()));
    s.reference.push_back(b.N * b.u[nodes.back()]);
  }
  for (double u : b.u)
    s.reference_max = std::max(s.reference_max, b.N * std::abs(u));

  const double a_ell = std::pow(alpha, ell);
  for (double k2 : k2_list) {
    const cplx k = std::sqrt(cplx(k2, 0.0));
    const auto phi = solve_regular(p, ell, k, grid);
    const auto Fp = jost_function(p, ell, k, opts);
    const auto Fn = jost_function(p, ell, -k, opts);
    merge(s.warnings, Fp.warnings);
    merge(s.warnings, Fn.warnings);
    const cplx root =
        branch_sqrt(2.0 * alpha * (alpha * alpha + k2) / (Fp.F * Fn.F));
    std::vector<cplx> row;
    for (std::size_t j : nodes)
      row.push_back(s.sigma * a_ell * phi.values[j] * root);
    s.g.push_back(std::move(row));
  }
  return s;
}

ExtrapolantSamples extrapolant_samples(const Potential &p, int ell, double alpha,
                                       const std::vector<double> &r_list,
                                       const std::vector<double> &k_list,
                                       const GridOptions &opts) {
  std::vector<double> k2;
  for (double k : k_list) {
    if (!(k > 0.0))
      throw validation_error("real sample momenta must be positive");
    k2.push_back(k * k);
  }
  return extrapolant_samples_k2(p, ell, alpha, r_list, k2, opts);
}

ExtrapolationReport extrapolate_to_pole(const ExtrapolantSamples &s,
                                        int order) {
  if (order < 0)
    throw validation_error("order must be non-negative");
  if (s.k2.size() < std::size_t(order) + 1) {
    std::ostringstream os;
    os << "order " << order << " needs at least " << order + 1
       << " samples, got " << s.k2.size();
    throw validation_error(os.str());
  }
  ExtrapolationReport rep;
  rep.ell = s.ell;
  rep.alpha = s.alpha;
  rep.N = s.N;
  rep.order = order;
  rep.k2 = s.k2;
  rep.mode = s.ell == 0 ? CheckMode::signed_value : CheckMode::squared;
  rep.warnings = s.warnings;

  const double a2 = s.alpha * s.alpha;
  std::vector<double> t;
  for (double k2 : s.k2)
    t.push_back((k2 + a2) / a2);

  const double lo = *std::min_element(s.k2.begin(), s.k2.end());
  const double hi = *std::max_element(s.k2.begin(), s.k2.end());
  if (std::abs(-a2 - lo) > 3.0 * (hi - lo)) {
    std::ostringstream os;
    os << "extrapolation distance " << std::abs(-a2 - lo)
       << " exceeds 3x the sampled span " << hi - lo;
    rep.warnings.push_back(os.str());
  }

  cplx num{};
  double den = 0.0;
  const double ref_max = s.reference_max;
  for (std::size_t i = 0; i < s.r.size(); ++i) {
    std::vector<double> re, im;
    for (const auto &row : s.g) {
      re.push_back(row[i].real());
      im.push_back(row[i].imag());
    }
    const auto fr = polyfit(t, re, order);
    const auto fi = polyfit(t, im, order);

    ExtrapolationPoint pt;
    pt.r = s.r[i];
    pt.g_star = {fr(0.0), fi(0.0)};
    pt.reference = s.reference[i];
    pt.condition = fr.condition;
    pt.near_node = std::abs(pt.reference) < 1e-3 * ref_max;
    if (rep.mode == CheckMode::signed_value) {
      pt.abs_residual = std::abs(pt.g_star - s.expected_sign * pt.reference);
      pt.rel_residual =
          pt.abs_residual / (pt.near_node ? ref_max : std::abs(pt.reference));
    } else {
      pt.abs_residual =
          std::abs(std::norm(pt.g_star) - pt.reference * pt.reference);
      pt.rel_residual = pt.abs_residual / (pt.near_node
                                               ? ref_max * ref_max
                                               : pt.reference * pt.reference);
    }
    rep.max_residual = std::max(rep.max_residual, pt.rel_residual);
    num += pt.g_star * (s.expected_sign * pt.reference);
    den += pt.reference * pt.reference;
    rep.points.push_back(pt);
  }
  rep.observed_phase = den > 0.0 ? num / den : cplx{};
  return rep;
}

ExtrapolationReport verify_pole(const Potential &p, int ell, double alpha,
                                const std::vector<double> &r_list,
                                const SampleOptions &rule, int order,
                                const GridOptions &opts) {
  const auto s =
      extrapolant_samples_k2(p, ell, alpha, r_list, sample_k2(alpha, rule), opts);
  return extrapolate_to_pole(s, order);
}

IdentityResidual wronskian_identity_residual(const BoundState &b,
                                             const Potential &p, double k,
                                             double r) {
  if (!(k > 0.0))
    throw validation_error("k must be positive");
  const Grid &g = b.grid;
  const std::size_t j = g.nearest(r);
  if (j < 1)
    throw validation_error("radius too close to the origin");
  const auto v = physical_wave(p, b.ell, k, g);
  std::vector<double> vr(v.values.size());
  for (std::size_t i = 0; i < vr.size(); ++i)
    vr[i] = v.values[i].real();

  const std::span<const double> us(b.u), vs(vr);
  const double du = derivative<double>(us, g.h(), j, b.breaks);
  const double dv = derivative<double>(vs, g.h(), j, b.breaks);
  IdentityResidual out;
  out.lhs = du * vr[j] - b.u[j] * dv;
  out.rhs = (b.alpha * b.alpha + k * k) *
            integrate_segments<double>(
                g.h(), j, b.breaks,
                [&](std::size_t i, bool) { return b.u[i] * vr[i]; });
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

std::pair<cplx, double> imaginary_axis_residue(
    const std::function<cplx(cplx)> &S, double alpha) {
  if (!(alpha > 0.0))
    throw validation_error("alpha must be positive");
  std::vector<cplx> table;
  for (int j = 2; j <= 8; ++j) {
    const cplx k{0.0, alpha * (1.0 - std::ldexp(1.0, -j))};
    table.push_back((k - cplx(0.0, alpha)) * S(k));
  }
  const cplx best = richardson(table);
  table.pop_back();
  const cplx prev = richardson(table);
  return {best, std::abs(best - prev)};
}

namespace {

// Chebyshev T_n(x) and T_n'(x) for n = 0..deg at complex x.
void chebyshev(cplx x, int deg, std::vector<cplx> &T, std::vector<cplx> &dT) {
  T.assign(std::size_t(deg) + 1, cplx{});
  dT.assign(std::size_t(deg) + 1, cplx{});
  T[0] = 1.0;
  if (deg >= 1) {
    T[1] = x;
    dT[1] = 1.0;
  }
  for (int n = 2; n <= deg; ++n) {
    T[n] = 2.0 * x * T[n - 1] - T[n - 2];
    dT[n] = 2.0 * T[n - 1] + 2.0 * x * dT[n - 1] - dT[n - 2];
  }
}

struct ChebFit {
  double kmax = 1.0;
  int deg = 0;
  std::vector<double> c; // c[n] for T_n, even n from Re F, odd n from Im F

  cplx value(cplx k) const {
    std::vector<cplx> T, dT;
    chebyshev(k / kmax, deg, T, dT);
    cplx s{};
    for (int n = 0; n <= deg; ++n)
      s += (n % 2 ? I : cplx(1.0)) * c[n] * T[n];
    return s;
  }
  cplx slope(cplx k) const {
    std::vector<cplx> T, dT;
    chebyshev(k / kmax, deg, T, dT);
    cplx s{};
    for (int n = 0; n <= deg; ++n)
      s += (n % 2 ? I : cplx(1.0)) * c[n] * dT[n];
    return s / kmax;
  }
};

// F(-k) = conj F(k) on the real axis: Re F is even and Im F odd in k, so
// each part is fitted with Chebyshev polynomials of matching parity.
ChebFit fit_jost(const std::vector<double> &ks, const std::vector<cplx> &F,
                 double kmax, int deg) {
  ChebFit fit;
  fit.kmax = kmax;
  fit.deg = deg;
  fit.c.assign(std::size_t(deg) + 1, 0.0);
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> ns;
    for (int n = parity; n <= deg; n += 2)
      ns.push_back(n);
    Eigen::MatrixXd A(ks.size(), ns.size());
    Eigen::VectorXd y(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::vector<cplx> T, dT;
      chebyshev(ks[i] / kmax, deg, T, dT);
      for (std::size_t m = 0; m < ns.size(); ++m)
        A(Eigen::Index(i), Eigen::Index(m)) = T[ns[m]].real();
      y(Eigen::Index(i)) = parity ? F[i].imag() : F[i].real();
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < Eigen::Index(ns.size()))
      throw numerical_error("Chebyshev fit of F is rank deficient");
    const Eigen::VectorXd x = qr.solve(y);
    for (std::size_t m = 0; m < ns.size(); ++m)
      fit.c[ns[m]] = x(Eigen::Index(m));
  }
  return fit;
}

std::pair<cplx, double> residue_by_fit(const Potential &p, int ell,
                                       double alpha, const GridOptions &opts) {
  const double kmax = 6.0 / *p.range();
  if (!(alpha < kmax))
    throw validation_error("alpha lies outside the fitted momentum window");
  constexpr int npts = 40;
  constexpr int deg = 24;
  std::vector<double> ks;
  std::vector<cplx> F;
  for (int j = 0; j < npts; ++j) {
    const double x = std::cos(pi * (double(j) + 0.5) / (2.0 * npts));
    ks.push_back(kmax * x);
    F.push_back(jost_function(p, ell, ks.back(), opts).F);
  }
  auto residue = [&](int d) {
    const auto fit = fit_jost(ks, F, kmax, d);
    return fit.value({0.0, -alpha}) / fit.slope({0.0, alpha});
  };
  const cplx best = residue(deg);
  return {best, std::abs(best - residue(deg - 4))};
}

std::pair<cplx, double> residue_on_axis(const Potential &p, int ell,
                                        double alpha, const GridOptions &opts) {
  return imaginary_axis_residue(
      [&](cplx k) {
        return jost_function(p, ell, -k, opts).F /
               jost_function(p, ell, k, opts).F;
      },
      alpha);
}

} // namespace

ResidueResult smatrix_residue(const Potential &p, int ell, double alpha,
                              ResidueMethod method, const GridOptions &opts) {
  require_bound_state_candidate(p, alpha);
  if (!p.range())
    throw validation_error(
        "the residue needs F(-k) off the real axis: set a cutoff");
  const BoundState b =
      build_bound_state(p, ell, alpha, bound_grid(p, alpha, opts));

  ResidueResult res;
  res.ell = ell;
  res.alpha = alpha;
  res.method = method;
  res.N_from_norm = b.N;

  const bool axis = method == ResidueMethod::imaginary_axis;
  auto [value, err] = axis ? residue_on_axis(p, ell, alpha, opts)
                           : residue_by_fit(p, ell, alpha, opts);
  res.residue = value;
  res.error_estimate = err;
  res.N_from_residue = std::sqrt(std::abs(value));
  const double N2 = b.N * b.N;
  const cplx expected = -I * (ell % 2 ? -1.0 : 1.0) * N2;
  res.relative_error = std::abs(value - expected) / N2;

  try {
    const cplx other = axis ? residue_by_fit(p, ell, alpha, opts).first
                            : residue_on_axis(p, ell, alpha, opts).first;
    res.cross_check = std::abs(value - other) / std::abs(value);
    if (*res.cross_check > 1e-2) {
      res.flagged = true;
      std::ostringstream os;
      os << "methods disagree: relative difference " << *res.cross_check;
      res.warnings.push_back(os.str());
    }
  } catch (const Error &e) {
    res.warnings.push_back(std::string("cross-check skipped: ") + e.what());
  }
  return res;
}

Derivative five_point_derivative(const std::function<cplx(double)> &F,
                                 double k, double step) {
  if (!(step > 0.0))
    throw validation_error("step must be positive");
  auto d = [&](double s) {
    return (F(k - 2.0 * s) - 8.0 * F(k - s) + 8.0 * F(k + s) - F(k + 2.0 * s)) /
           (12.0 * s);
  };
  Derivative out;
  out.value = d(step);
  out.error = std::abs(out.value - d(0.5 * step)) * 16.0 / 15.0;
  return out;
}

Derivative jost_derivative(const Potential &p, int ell, double k, double step,
                           const GridOptions &opts) {
  if (!(step > 0.0) || !(k - 2.0 * step > 0.0))
    throw validation_error("jost_derivative needs step > 0 and k - 2 step > 0");
  const Grid g = jost_grid(p, k + 2.0 * step, opts);
  return five_point_derivative(
      [&](double x) { return jost_function(p, ell, x, g).F; }, k, step);
}

namespace {

struct SingleK {
  BoundState b;
  std::vector<std::size_t> nodes;
  RadialSolution v;
  double ref_max = 0.0;
};

SingleK single_k(const Potential &p, double alpha, double k,
                 const std::vector<double> &r_list, const GridOptions &opts) {
  require_bound_state_candidate(p, alpha);
  if (!(k > 0.0))
    throw validation_error("k must be positive");
  if (r_list.empty())
    throw validation_error("r_list must not be empty");
  const Grid grid = bound_grid(p, alpha, opts);
  SingleK s{build_bound_state(p, 0, alpha, grid), {},
            physical_wave(p, 0, k, grid), 0.0};
  for (double r : r_list) {
    if (!(r > 0.0) || r > grid.r_max())
      throw validation_error("radius outside (0, R_max]");
    s.nodes.push_back(grid.nearest(r));
  }
  for (double u : s.b.u)
    s.ref_max = std::max(s.ref_max, s.b.N * std::abs(u));
  return s;
}

std::vector<cplx> gw_values(const Potential &p, double alpha, double k,
                            const SingleK &s, const GridOptions &opts) {
  const cplx F = jost_function(p, 0, k, opts).F;
  const cplx Fdot = jost_derivative(p, 0, k, 0.01 * k, opts).value;
  const cplx pref = std::sqrt(4.0 * I * alpha * alpha * F / Fdot);
  std::vector<cplx> out;
  for (std::size_t j : s.nodes)
    out.push_back(pref * s.v.values[j].real());
  return out;
}

} // namespace

std::vector<cplx> gw_extrapolant(const Potential &p, double alpha, double k,
                                 const std::vector<double> &r_list,
                                 const GridOptions &opts) {
  const auto s = single_k(p, alpha, k, r_list, opts);
  return gw_values(p, alpha, k, s, opts);
}

FormComparison compare_forms(const Potential &p, double alpha, double k,
                             const std::vector<double> &r_list,
                             const GridOptions &opts) {
  const auto s = single_k(p, alpha, k, r_list, opts);
  const auto gw = gw_values(p, alpha, k, s, opts);
  const double Fm =
      jost_function(p, 0, {0.0, alpha * (1.0 - 1e-4)}, opts).F.real();
  const double sigma = Fm < 0.0 ? -1.0 : 1.0;
  const double pref = sigma * std::sqrt(2.0 * alpha * (alpha * alpha + k * k));

  FormComparison c;
  c.k = k;
  double gw_plus = 0.0, gw_minus = 0.0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const double ref = s.b.N * s.b.u[s.nodes[i]];
    const double scale = std::abs(ref) < 1e-3 * s.ref_max ? s.ref_max : std::abs(ref);
    const double ours = pref * s.v.values[s.nodes[i]].real();
    c.ours = std::max(c.ours, std::abs(ours + ref) / scale);
    gw_plus = std::max(gw_plus, std::abs(gw[i] + ref) / scale);
    gw_minus = std::max(gw_minus, std::abs(-gw[i] + ref) / scale);
  }
  c.gw = std::min(gw_plus, gw_minus);
  return c;
}

} // namespace polewave
