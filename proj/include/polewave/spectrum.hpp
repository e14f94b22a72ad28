#pragma once
#include "polewave/grid.hpp"
#include "polewave/potential.hpp"
#include "polewave/radial.hpp"
#include <string>
#include <utility>
#include <vector>

namespace polewave {

//! One pole of S_l at k = i alpha.
struct BoundState {
  int ell = 0;
  double alpha = 0.0;
  double energy = 0.0; // -alpha^2
  Grid grid{1.0, 8};
  std::vector<std::size_t> breaks{};
  //! (-i)^l f_l(i alpha, r): unnormalized, unit exterior asymptote.
  std::vector<double> u{};
  double N = 0.0;
  //! int_{R_max}^inf u^2 dr from the exact free tail.
  double tail_correction = 0.0;
  //! |W[f, phi]| relative to the size of its two terms (0 for an exact zero).
  double regularity = 0.0;

  double u_at(double r) const { return u[grid.nearest(r)]; }
};

//! Decaying free solution (-i)^l f_l^free(i alpha, r): e^{-alpha r} for l = 0.
double free_decaying(int ell, double alpha, double r);

//! Grid reaching several decay lengths 1/alpha past the potential.
Grid bound_grid(const Potential &p, double alpha, const GridOptions &opts = {});

inline constexpr double kRootTolerance = 1e-10;
inline constexpr double kRegularityTolerance = 1e-6;

//! Zeros of alpha -> F_l(i alpha) in the window, deepest first.
//! Brackets whose refinement fails are described in `notes` (if given).
std::vector<BoundState> find_bound_states(const Potential &p, int ell,
                                          std::pair<double, double> window,
                                          int n_scan = 200,
                                          const GridOptions &opts = {},
                                          std::vector<std::string> *notes = nullptr);

//! u, N and tail for a verified zero alpha. Throws if the Jost solution is
//! not regular at the origin (alpha is not a zero).
BoundState build_bound_state(const Potential &p, int ell, double alpha,
                             const Grid &grid);

//! Mean of N u(r) / free_decaying(r) over the last tenth of the grid.
double asymptotic_coefficient(const BoundState &b);

//! N^2 (int u^2 + tail) (equal to 1 by construction).
double normalization_check(const BoundState &b);

} // namespace polewave
