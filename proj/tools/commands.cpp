#include "commands.hpp"
#include "polewave/error.hpp"
#include "polewave/onedim.hpp"
#include "polewave/poletheorem.hpp"
#include "polewave/separable.hpp"
#include "polewave/spectrum.hpp"
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace polewave::cli {

namespace {

std::string file_bytes(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Potential load(const RunConfig &cfg, Metadata &meta) {
  if (cfg.potential_path.empty())
    throw validation_error("--potential is required for '" + cfg.command + "'");
  const auto p = make_potential(load_potential_file(cfg.potential_path));
  meta.potential = p.describe();
  return p;
}

GridOptions grid_options(const RunConfig &cfg) {
  if (!(cfg.h > 0.0))
    throw validation_error("--h must be positive");
  if (cfg.rmax && !(*cfg.rmax > 0.0))
    throw validation_error("--rmax must be positive");
  return {cfg.h, cfg.rmax};
}

std::vector<double> k_grid(const RunConfig &cfg, double lo, double hi,
                           int steps) {
  const double a = cfg.kmin.value_or(lo), b = cfg.kmax.value_or(hi);
  const int n = cfg.ksteps > 0 ? cfg.ksteps : steps;
  if (!(a > 0.0) || !(b >= a))
    throw validation_error("k range must satisfy 0 < kmin <= kmax");
  if (n < 1)
    throw validation_error("--ksteps must be at least 1");
  std::vector<double> ks;
  for (int j = 0; j < n; ++j)
    ks.push_back(n == 1 ? a : a + (b - a) * double(j) / double(n - 1));
  return ks;
}

SampleOptions sample_rule(const RunConfig &cfg, const Potential &p) {
  SampleOptions s;
  if (cfg.rule == "auto")
    s.rule = p.range() ? SampleRule::pole_local : SampleRule::threshold;
  else
    s.rule = parse_sample_rule(cfg.rule);
  s.count = cfg.samples;
  s.spacing = cfg.spacing;
  return s;
}

std::vector<double> radii(const RunConfig &cfg, double alpha, double r_max) {
  if (!cfg.rlist.empty())
    return cfg.rlist;
  const double hi = std::min(6.0 / alpha, r_max);
  std::vector<double> r;
  for (int j = 0; j < 40; ++j)
    r.push_back(0.5 + (hi - 0.5) * double(j) / 39.0);
  return r;
}

// Deepest value of U on a coarse grid bounds alpha^2 from above.
std::pair<double, double> alpha_window(const RunConfig &cfg, const Potential &p) {
  const Grid g = grid_for(p, std::min(cfg.h, 0.01),
                          p.range() ? *p.range() : 40.0 * p.length_scale());
  double umin = 0.0;
  for (std::size_t j = 1; j <= g.n(); ++j) {
    const auto [l, r] = p.limits(g.r(j));
    umin = std::min({umin, l, r});
  }
  if (!(umin < 0.0) && !(cfg.amin && cfg.amax))
    throw Error(ErrorKind::no_bound_state,
                "the potential is nowhere attractive: no bound state");
  const double top = std::sqrt(-umin);
  const double lo = cfg.amin.value_or(1e-3 * top);
  const double hi = cfg.amax.value_or(0.999 * top);
  if (!(lo > 0.0) || !(hi > lo))
    throw validation_error("alpha window must satisfy 0 < amin < amax");
  return {lo, hi};
}

std::vector<double> bound_alphas(const RunConfig &cfg, const Potential &p,
                                 int ell, const GridOptions &opts,
                                 Table &t) {
  if (p.kind() == PotentialKind::free)
    throw Error(ErrorKind::no_bound_state, "the free potential has no bound state");
  if (cfg.alpha)
    return {*cfg.alpha};
  std::vector<std::string> notes;
  const auto states = find_bound_states(p, ell, alpha_window(cfg, p), 200, opts,
                                        &notes);
  for (auto &n : notes)
    t.notes.push_back(n);
  if (states.empty())
    throw Error(ErrorKind::no_bound_state, "no bound state in the alpha window");
  std::vector<double> out;
  for (const auto &b : states)
    out.push_back(b.alpha);
  return out;
}

void add_warnings(Table &t, const std::vector<std::string> &w) {
  for (const auto &s : w)
    if (std::find(t.notes.begin(), t.notes.end(), s) == t.notes.end())
      t.notes.push_back(s);
}

Table cmd_phases(const RunConfig &cfg, Metadata &meta) {
  const auto p = load(cfg, meta);
  const auto opts = grid_options(cfg);
  const double L = p.length_scale();
  const auto ks = k_grid(cfg, 0.1 / L, 3.0 / L, 30);
  std::vector<double> delta(ks.size()), smod(ks.size());
  std::vector<std::vector<std::string>> warn(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) {
    const auto F = jost_function(p, cfg.ell, ks[i], opts);
    const auto Fm = jost_function(p, cfg.ell, -ks[i], opts);
    delta[i] = -std::arg(F.F);
    smod[i] = std::abs(Fm.F / F.F) - 1.0;
    warn[i] = F.warnings;
  });
  const auto unwrapped = unwrap_phases(delta);

  Table t;
  t.command = "phases";
  t.columns = {"ell", "k", "delta", "delta_principal", "abs_S_minus_1"};
  double worst = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    t.add({(long long)cfg.ell, ks[i], unwrapped[i], delta[i], smod[i]});
    worst = std::max(worst, std::abs(smod[i]));
    add_warnings(t, warn[i]);
  }
  t.set("max_abs_S_minus_1", worst);
  t.set("unitary", std::string(worst < 1e-10 ? "pass" : "fail"));
  return t;
}

Table cmd_bound(const RunConfig &cfg, Metadata &meta) {
  const auto p = load(cfg, meta);
  const auto opts = grid_options(cfg);
  Table t;
  t.command = "bound";
  t.columns = {"ell", "alpha", "energy", "N", "anc", "norm_check", "regularity"};
  for (double a : bound_alphas(cfg, p, cfg.ell, opts, t)) {
    const auto b = build_bound_state(p, cfg.ell, a, bound_grid(p, a, opts));
    t.add({(long long)cfg.ell, b.alpha, b.energy, b.N, asymptotic_coefficient(b),
           normalization_check(b), b.regularity});
  }
  t.set("states", (long long)t.rows.size());
  return t;
}

Table cmd_verify_pole(const RunConfig &cfg, Metadata &meta) {
  const auto p = load(cfg, meta);
  const auto opts = grid_options(cfg);
  const auto rule = sample_rule(cfg, p);
  const int order = cfg.order.value_or(default_order(rule.rule));
  Table t;
  t.command = "verify-pole";
  t.columns = {"state", "ell", "alpha", "r", "g_re", "g_im", "N_u",
               "abs_residual", "rel_residual", "near_node"};
  const auto alphas = bound_alphas(cfg, p, cfg.ell, opts, t);
  std::vector<ExtrapolationReport> reps(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    const double R = bound_grid(p, alphas[i], opts).r_max();
    reps[i] = verify_pole(p, cfg.ell, alphas[i], radii(cfg, alphas[i], R), rule,
                          order, opts);
  });
  bool pass = true;
  t.set("rule", to_string(rule.rule));
  t.set("order", (long long)order);
  t.set("check", std::string(cfg.ell == 0 ? "signed" : "squared"));
  const double tol = cfg.ell == 0 ? 1e-3 : 1e-2;
  t.set("tolerance", tol);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto &rep = reps[i];
    for (const auto &pt : rep.points)
      t.add({(long long)i, (long long)cfg.ell, rep.alpha, pt.r, pt.g_star.real(),
             pt.g_star.imag(), pt.reference, pt.abs_residual, pt.rel_residual,
             (long long)pt.near_node});
    add_warnings(t, rep.warnings);
    t.set("max_residual_" + std::to_string(i), rep.max_residual);
    t.set("phase_re_" + std::to_string(i), rep.observed_phase.real());
    t.set("phase_im_" + std::to_string(i), rep.observed_phase.imag());
    pass = pass && rep.max_residual < tol;
  }
  t.set("verdict", std::string(pass ? "pass" : "fail"));
  return t;
}

Table cmd_residue(const RunConfig &cfg, Metadata &meta) {
  const auto p = load(cfg, meta);
  const auto opts = grid_options(cfg);
  ResidueMethod method;
  if (cfg.method == "imaginary_axis")
    method = ResidueMethod::imaginary_axis;
  else if (cfg.method == "real_axis_fit")
    method = ResidueMethod::real_axis_fit;
  else
    throw validation_error("unknown --method '" + cfg.method +
                           "' (imaginary_axis, real_axis_fit)");
  Table t;
  t.command = "residue";
  t.columns = {"ell", "alpha", "method", "residue_re", "residue_im", "N_norm",
               "N_residue", "relative_error", "error_estimate", "cross_check",
               "flagged"};
  const auto alphas = bound_alphas(cfg, p, cfg.ell, opts, t);
  std::vector<ResidueResult> res(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    res[i] = smatrix_residue(p, cfg.ell, alphas[i], method, opts);
  });
  double worst = 0.0;
  for (const auto &r : res) {
    t.add({(long long)r.ell, r.alpha, to_string(r.method), r.residue.real(),
           r.residue.imag(), r.N_from_norm, r.N_from_residue, r.relative_error,
           r.error_estimate, r.cross_check.value_or(std::nan("")),
           (long long)r.flagged});
    add_warnings(t, r.warnings);
    worst = std::max(worst, r.relative_error);
  }
  t.set("max_relative_error", worst);
  t.set("verdict", std::string(worst < 1e-3 ? "pass" : "fail"));
  return t;
}

Table cmd_gw_compare(const RunConfig &cfg, Metadata &meta) {
  const auto p = load(cfg, meta);
  const auto opts = grid_options(cfg);
  if (cfg.ell != 0)
    throw validation_error("gw-compare is defined for the S wave only");
  Table t;
  t.command = "gw-compare";
  t.columns = {"k", "k_over_alpha", "ours_dev", "gw_dev"};
  const double alpha = bound_alphas(cfg, p, 0, opts, t).front();
  const auto ks = k_grid(cfg, 0.1 * alpha, 2.0 * alpha, 20);
  const auto r = cfg.rlist.empty() ? std::vector<double>{0.02, 0.05, 0.1}
                                   : cfg.rlist;
  std::vector<FormComparison> cmp(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) {
    cmp[i] = compare_forms(p, alpha, ks[i], r, opts);
  });
  long long worse = 0;
  for (const auto &c : cmp) {
    t.add({c.k, c.k / alpha, c.ours, c.gw});
    worse += c.gw > c.ours;
  }
  t.set("alpha", alpha);
  t.set("gw_worse_count", worse);
  t.set("points", (long long)cmp.size());
  return t;
}

Table cmd_separable(const RunConfig &cfg, Metadata &) {
  const SeparableModel m{cfg.alpha.value_or(1.0), cfg.beta.value_or(5.0)};
  validate(m);
  const auto ks = k_grid(cfg, 0.1 * m.alpha, 2.0 * m.alpha, 20);
  Table t;
  t.command = "separable";
  t.columns = {"k", "z", "ratio_scaled", "ours_err", "gw_err", "series_3z_2"};
  bool gw_worse = true;
  for (double k : ks) {
    const double z = sep_z(m, k).real();
    const auto e = sep_compare_forms(m, k);
    const double scaled =
        sep_ratio(m, k) * std::sqrt(2.0 * m.alpha * (k * k + m.alpha * m.alpha));
    t.add({k, z, scaled, e.ours, e.gw, 1.5 * z});
    gw_worse = gw_worse && e.gw > e.ours;
  }
  const auto pole = sep_compare_forms(m, cplx(0.0, m.alpha * (1.0 - 1e-9)));
  t.set("alpha", m.alpha);
  t.set("beta", m.beta);
  t.set("ratio_scaled_k0", sep_ratio(m, 0.0) * std::sqrt(2.0 * m.alpha * m.alpha * m.alpha));
  t.set("jost_k0_re", sep_jost(m, 0.0).real());
  t.set("gw_worse_everywhere", std::string(gw_worse ? "true" : "false"));
  t.set("pole_ours_err", pole.ours);
  t.set("pole_gw_err", pole.gw);
  return t;
}

Table cmd_oned(const RunConfig &cfg, Metadata &meta) {
  const auto p = load(cfg, meta);
  const auto opts = grid_options(cfg);
  const Parity parity = parse_parity(cfg.parity);
  if (p.kind() == PotentialKind::free)
    throw Error(ErrorKind::no_bound_state, "the free potential has no bound state");
  Table t;
  t.command = "oned";
  t.columns = {"parity", "alpha", "N", "max_residual", "phase_re",
               "residue_re", "residue_im", "residue_rel_error"};
  std::vector<double> alphas;
  if (cfg.alpha) {
    alphas.push_back(*cfg.alpha);
  } else {
    std::vector<std::string> notes;
    for (const auto &b : find_bound_1d(p, parity, alpha_window(cfg, p), 200,
                                       opts, &notes))
      alphas.push_back(b.alpha);
    add_warnings(t, notes);
  }
  if (alphas.empty())
    throw Error(ErrorKind::no_bound_state,
                "no " + cfg.parity + " bound state in the alpha window");
  const auto rule = sample_rule(cfg, p);
  const int order = cfg.order.value_or(default_order(rule.rule));
  bool pass = true;
  for (double a : alphas) {
    const double R = bound_grid(p, a, opts).r_max();
    const auto rep = pole_extrapolate_1d(p, parity, a, radii(cfg, a, R), rule,
                                         order, opts);
    add_warnings(t, rep.warnings);
    cplx res{std::nan(""), std::nan("")};
    double rel = std::nan("");
    if (p.range()) {
      const auto r = residue_1d(p, parity, a, opts);
      res = r.residue;
      rel = r.relative_error;
    }
    t.add({to_string(parity), a, rep.N, rep.max_residual,
           rep.observed_phase.real(), res.real(), res.imag(), rel});
    pass = pass && rep.max_residual < 1e-3;
  }
  const auto z = zero_energy_phase(p, opts);
  t.set("rule", to_string(rule.rule));
  t.set("order", (long long)order);
  t.set("delta_plus_0", z.delta);
  t.set("zero_energy_state", std::string(z.zero_energy_state ? "true" : "false"));
  t.set("verdict", std::string(pass ? "pass" : "fail"));
  return t;
}

} // namespace

std::string RunConfig::canonical() const {
  std::ostringstream os;
  auto opt = [&](const std::optional<double> &v) {
    return v ? format_number(*v) : std::string("-");
  };
  os << "command=" << command << ";potential=" << potential_path
     << ";ell=" << ell << ";kmin=" << opt(kmin) << ";kmax=" << opt(kmax)
     << ";ksteps=" << ksteps << ";h=" << format_number(h)
     << ";rmax=" << opt(rmax) << ";order=" << (order ? std::to_string(*order) : "-")
     << ";rule=" << rule << ";samples=" << samples
     << ";spacing=" << format_number(spacing) << ";rlist=";
  for (double r : rlist)
    os << format_number(r) << ",";
  os << ";alpha=" << opt(alpha) << ";beta=" << opt(beta)
     << ";amin=" << opt(amin) << ";amax=" << opt(amax) << ";parity=" << parity
     << ";method=" << method << ";format="
     << (format == Format::csv ? "csv" : "json");
  if (!potential_path.empty())
    os << ";potential_bytes=" << file_bytes(potential_path);
  return os.str();
}

std::vector<std::string> command_names() {
  return {"phases", "bound", "verify-pole", "residue", "gw-compare",
          "separable", "oned"};
}

Table run(const RunConfig &cfg, Metadata &meta) {
  if (cfg.ell < 0)
    throw validation_error("--ell must be non-negative");
  if (cfg.command == "phases")
    return cmd_phases(cfg, meta);
  if (cfg.command == "bound")
    return cmd_bound(cfg, meta);
  if (cfg.command == "verify-pole")
    return cmd_verify_pole(cfg, meta);
  if (cfg.command == "residue")
    return cmd_residue(cfg, meta);
  if (cfg.command == "gw-compare")
    return cmd_gw_compare(cfg, meta);
  if (cfg.command == "separable")
    return cmd_separable(cfg, meta);
  if (cfg.command == "oned")
    return cmd_oned(cfg, meta);
  throw validation_error("unknown command '" + cfg.command + "'");
}

} // namespace polewave::cli
