#pragma once
#include "polewave/grid.hpp"
#include "polewave/numerics.hpp"
#include "polewave/potential.hpp"
#include <optional>
#include <string>
#include <vector>

namespace polewave {

enum class SolutionKind { regular, jost, physical };

//! A solution of the radial equation sampled on every node of `grid`.
struct RadialSolution {
  int ell = 0;
  cplx k{};
  Grid grid{1.0, 8};
  std::vector<cplx> values{};
  SolutionKind kind = SolutionKind::regular;
  //! Nodes where U jumps (stencils never straddle them).
  std::vector<std::size_t> breaks{};
  std::vector<std::string> warnings{};

  cplx at(double r) const { return values[grid.nearest(r)]; }
  //! du/dr at the node nearest r.
  cplx derivative_at(double r) const;
};

struct JostSample {
  cplx k{};
  cplx F{};
  //! e^{2|Im k| cutoff} for Im k < 0, else 1.
  double conditioning = 1.0;
  std::vector<std::string> warnings{};
};

struct PhaseShiftCurve {
  std::vector<double> k{};
  std::vector<double> delta{};
};

//! Step and outer radius used when a routine builds its own grid.
struct GridOptions {
  double h = 0.005;
  //! Defaults to the potential range plus a few steps, or 40 length scales
  //! for potentials without a cutoff.
  std::optional<double> r_max{};
};

inline constexpr double kConditioningWarning = 1.0e6;
inline constexpr double kMaxKh = 0.5;

//! Grid for the Jost function at momentum k (step capped so |k| h < 0.4).
Grid jost_grid(const Potential &p, cplx k, const GridOptions &opts = {});

//! Regular solution, r^{l+1}/(2l+1)!! at the origin.
RadialSolution solve_regular(const Potential &p, int ell, cplx k,
                             const Grid &grid);
//! Jost solution with asymptote e^{i pi l/2} e^{ikr}; inward integration from
//! R_max (Im k >= 0) or from the cutoff (finite-range continuation, Im k < 0).
//! values[0] is left at 0 for l > 0 (the solution is singular there).
RadialSolution solve_jost(const Potential &p, int ell, cplx k,
                          const Grid &grid);

//! a b' - a' b at the node nearest r.
cplx wronskian(const RadialSolution &a, const RadialSolution &b, double r);

//! F_l(k) = (-k)^l W[f_l, phi_l], equal to 1 for the free particle.
JostSample jost_function(const Potential &p, int ell, cplx k,
                         const GridOptions &opts = {});
JostSample jost_function(const Potential &p, int ell, cplx k,
                         const Grid &grid);

//! -arg F_l(k) in (-pi, pi].
double phase_shift(const Potential &p, int ell, double k,
                   const GridOptions &opts = {});

//! Adds multiples of pi so neighbouring values differ by at most pi/2.
std::vector<double> unwrap_phases(std::vector<double> delta);
PhaseShiftCurve phase_shift_curve(const Potential &p, int ell,
                                  const std::vector<double> &ks,
                                  const GridOptions &opts = {});

//! Real solution k^l phi / |F|, with asymptote sin(kr - l pi/2 + delta)/k.
RadialSolution physical_wave(const Potential &p, int ell, double k,
                             const Grid &grid);

//! Free-particle value of v at r for phase shift delta:
//! (-1)^l Im(f_l^free(k,r) e^{i delta}) / k.
double free_physical(int ell, double k, double delta, double r);

} // namespace polewave
