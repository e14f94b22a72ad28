#pragma once
#include "polewave/potential.hpp"
#include "polewave/radial.hpp"
#include "polewave/spectrum.hpp"
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polewave {

//! Where the extrapolant is sampled in k^2.
//!  threshold:  k^2 = j * spacing * alpha^2, j = 1..count (real k only)
//!  pole_local: k^2 = -alpha^2 (1 +- j * spacing), j = 1..count/2, reached by
//!              continuing the radial solutions to k = i kappa (needs a cutoff)
enum class SampleRule { threshold, pole_local };

std::string to_string(SampleRule rule);
SampleRule parse_sample_rule(const std::string &name);

struct SampleOptions {
  SampleRule rule = SampleRule::threshold;
  int count = 6;
  //! 0 selects the rule default (0.05 threshold, 0.02 pole_local).
  double spacing = 0.0;
};

std::vector<double> sample_k2(double alpha, const SampleOptions &opts = {});
//! Default polynomial order per rule (2 on the real axis, 4 pole-local).
int default_order(SampleRule rule);

//! g(k^2, r) = sigma alpha^l phi_l(k, r) sqrt(2 alpha (alpha^2 + k^2) / (F(k) F(-k))).
//! For real k this is sigma sqrt(2 alpha (alpha^2+k^2)) (alpha/k)^l v_l(k, r);
//! the branch sign sigma = sgn F_l(i alpha (1 - 1e-4)) selects the branch
//! continuous from threshold along the imaginary axis.
struct ExtrapolantSamples {
  int ell = 0;
  double alpha = 0.0;
  double N = 0.0;
  double sigma = 1.0;
  std::vector<double> r{};  // snapped to grid nodes
  std::vector<double> k2{};
  std::vector<std::vector<cplx>> g{}; // g[sample][radius]
  std::vector<double> reference{};    // N u(r)
  double reference_max = 0.0;         // max |N u| over the grid
  //! The signed check compares g* with expected_sign * N u.
  double expected_sign = -1.0;
  std::vector<std::string> warnings{};
};

ExtrapolantSamples extrapolant_samples(const Potential &p, int ell, double alpha,
                                       const std::vector<double> &r_list,
                                       const std::vector<double> &k_list,
                                       const GridOptions &opts = {});
ExtrapolantSamples extrapolant_samples_k2(const Potential &p, int ell,
                                          double alpha,
                                          const std::vector<double> &r_list,
                                          const std::vector<double> &k2_list,
                                          const GridOptions &opts = {});

enum class CheckMode { signed_value, squared };

struct ExtrapolationPoint {
  double r = 0.0;
  cplx g_star{};
  double reference = 0.0; // N u(r)
  double abs_residual = 0.0;
  double rel_residual = 0.0; // node-adjusted
  bool near_node = false;
  double condition = 0.0;
};

struct ExtrapolationReport {
  int ell = 0;
  double alpha = 0.0;
  double N = 0.0;
  int order = 0;
  std::vector<double> k2{};
  CheckMode mode = CheckMode::signed_value;
  std::vector<ExtrapolationPoint> points{};
  double max_residual = 0.0;
  //! Least-squares ratio g* / (expected_sign N u): +1 when the signed
  //! statement holds.
  cplx observed_phase{};
  std::vector<std::string> warnings{};
};

//! Least-squares polynomial of the given order in k^2 per radius, evaluated
//! at k^2 = -alpha^2. l = 0 is checked signed (g* = -N u), l >= 1 on squares
//! (|g*|^2 = (N u)^2) with the observed phase recorded.
ExtrapolationReport extrapolate_to_pole(const ExtrapolantSamples &samples,
                                        int order);

//! Convenience: samples from a rule, then the fit.
ExtrapolationReport verify_pole(const Potential &p, int ell, double alpha,
                                const std::vector<double> &r_list,
                                const SampleOptions &rule, int order,
                                const GridOptions &opts = {});

//! |(u'v - u v') - (alpha^2 + k^2) int_0^r u v| with v the physical wave.
struct IdentityResidual {
  double lhs = 0.0, rhs = 0.0, residual = 0.0;
};
IdentityResidual wronskian_identity_residual(const BoundState &b,
                                             const Potential &p, double k,
                                             double r);

enum class ResidueMethod { imaginary_axis, real_axis_fit };
std::string to_string(ResidueMethod m);

struct ResidueResult {
  int ell = 0;
  double alpha = 0.0;
  cplx residue{};
  double N_from_residue = 0.0;
  double N_from_norm = 0.0;
  ResidueMethod method = ResidueMethod::imaginary_axis;
  //! |residue - (-i)(-1)^l N^2| / N^2
  double relative_error = 0.0;
  double error_estimate = 0.0;
  //! Relative difference to the other method, when it could be evaluated.
  std::optional<double> cross_check{};
  bool flagged = false;
  std::vector<std::string> warnings{};
};

//! lim_{kappa -> alpha} (k - i alpha) S(k) at k = i kappa, kappa = alpha (1 - 2^-j),
//! Richardson-extrapolated. Returns the residue and an error estimate.
std::pair<cplx, double> imaginary_axis_residue(
    const std::function<cplx(cplx)> &S, double alpha);

ResidueResult smatrix_residue(const Potential &p, int ell, double alpha,
                              ResidueMethod method,
                              const GridOptions &opts = {});

//! dF/dk by a five-point stencil, with the step-halving error estimate.
struct Derivative {
  cplx value{};
  double error = 0.0;
};
Derivative five_point_derivative(const std::function<cplx(double)> &F,
                                 double k, double step);
Derivative jost_derivative(const Potential &p, int ell, double k, double step,
                           const GridOptions &opts = {});

//! sqrt(4 i alpha^2 F(k) / Fdot(k)) v(k, r) (S wave), principal branch.
std::vector<cplx> gw_extrapolant(const Potential &p, double alpha, double k,
                                 const std::vector<double> &r_list,
                                 const GridOptions &opts = {});

//! Largest node-adjusted relative deviation of both single-k forms from
//! -N u over r_list (meaningful near the origin, where phi(k) -> phi(i alpha)). The GW sign is not fixed by the principal branch, so its
//! deviation is the smaller of the two signs.
struct FormComparison {
  double k = 0.0;
  double ours = 0.0;
  double gw = 0.0;
};
FormComparison compare_forms(const Potential &p, double alpha, double k,
                             const std::vector<double> &r_list,
                             const GridOptions &opts = {});

} // namespace polewave
