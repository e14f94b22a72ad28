#pragma once
#include "polewave/poletheorem.hpp"
#include "polewave/potential.hpp"
#include "polewave/radial.hpp"
#include <string>
#include <utility>
#include <vector>

namespace polewave {

//! Even potential U(x) = U(-x), stored and evaluated for x >= 0 only.
using Potential1D = Potential;

enum class Parity { even, odd };
std::string to_string(Parity parity);
Parity parse_parity(const std::string &name);

//! F+(k) = f'(k, 0) / (ik), F-(k) = f(k, 0), with f(k, x) ~ e^{ikx} the
//! half-line Jost solution. Both are 1 for the free particle.
JostSample parity_jost(const Potential1D &p, Parity parity, cplx k,
                       const GridOptions &opts = {});

//! Real solution with v+(0)' = 0 or v-(0) = 0, normalized to
//! v+ -> cos(kx + delta+) and v- -> -sin(kx + delta-), delta = -arg F.
struct ParitySolution {
  Parity parity = Parity::even;
  double k = 0.0;
  Grid grid{1.0, 8};
  std::vector<double> values{};
  std::vector<std::size_t> breaks{};
  double delta = 0.0;

  double at(double x) const { return values[grid.nearest(x)]; }
};

ParitySolution solve_parity(const Potential1D &p, Parity parity, double k,
                            const Grid &grid);

struct BoundState1D {
  Parity parity = Parity::even;
  double alpha = 0.0;
  Grid grid{1.0, 8};
  std::vector<std::size_t> breaks{};
  //! f(i alpha, x) on x >= 0: unit asymptote e^{-alpha x}.
  std::vector<double> u{};
  //! Full-line normalization 2 N^2 (int_0^X u^2 + tail) = 1.
  double N = 0.0;
  double tail_correction = 0.0;
  double regularity = 0.0;

  double u_at(double x) const { return u[grid.nearest(x)]; }
};

BoundState1D build_bound_1d(const Potential1D &p, Parity parity, double alpha,
                            const Grid &grid);
std::vector<BoundState1D> find_bound_1d(const Potential1D &p, Parity parity,
                                        std::pair<double, double> window,
                                        int n_scan = 200,
                                        const GridOptions &opts = {},
                                        std::vector<std::string> *notes = nullptr);

//! h(k^2, x) = (1/k) sqrt(alpha (alpha^2 + k^2)) v(k, x), continued in k^2 as
//! s phi(k, x) sqrt(alpha (alpha^2 + k^2) / D(k)) with D = f'(k,0) f'(-k,0)
//! (even) or f(k,0) f(-k,0) (odd), s = -sgn F(i alpha (1 - 1e-4)).
//! Expected at the pole: +N u (signed check).
ExtrapolantSamples extrapolant_samples_1d(const Potential1D &p, Parity parity,
                                          double alpha,
                                          const std::vector<double> &x_list,
                                          const std::vector<double> &k2_list,
                                          const GridOptions &opts = {});

//! Samples from a rule, then extrapolate_to_pole. Real-axis samples must
//! satisfy k >= 0.05 alpha.
ExtrapolationReport pole_extrapolate_1d(const Potential1D &p, Parity parity,
                                        double alpha,
                                        const std::vector<double> &x_list,
                                        const SampleOptions &rule, int order,
                                        const GridOptions &opts = {});

//! lim (k - i alpha) S(k), S = F(-k)/F(k) for the given parity; expected
//! +2 i N^2 (even) and -2 i N^2 (odd) with the full-line N.
ResidueResult residue_1d(const Potential1D &p, Parity parity, double alpha,
                         const GridOptions &opts = {});

struct ZeroEnergyPhase {
  //! delta+ extrapolated to k = 0, reduced to [0, pi).
  double delta = 0.0;
  //! f'(0, 0) times the range: vanishes for a zero-energy even state.
  double threshold_slope = 0.0;
  bool zero_energy_state = false;
};

inline constexpr double kZeroEnergyTolerance = 1e-6;

//! Quadratic fit of delta+ at k = {0.02, 0.04, 0.06} / length scale.
ZeroEnergyPhase zero_energy_phase(const Potential1D &p,
                                  const GridOptions &opts = {});

} // namespace polewave
