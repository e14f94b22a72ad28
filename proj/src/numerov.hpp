#pragma once
// Internal fixed-step Numerov engine for u'' = Q(r) u on a Grid.
#include "polewave/grid.hpp"
#include "polewave/numerics.hpp"
#include "polewave/potential.hpp"
#include <vector>

namespace polewave::detail {

struct Equation {
  double h = 0.0;
  double L = 0.0; // centrifugal coefficient l(l+1)
  cplx E{};       // k^2
  std::vector<cplx> q;      // Q_j, right limit at breakpoints
  std::vector<cplx> q_left; // Q_j, left limit (equal to q off breakpoints)
  std::vector<std::size_t> breaks;
  std::vector<cplx> dq_jump; // Q'(a+) - Q'(a-) per breakpoint

  bool is_break(std::size_t j, std::size_t *which = nullptr) const;
};

//! Q = L/r^2 + U(r) - k^2 on nodes [0, last]; Q_0 is left at 0 when L > 0.
Equation build_equation(const Potential &p, double L, cplx k2, const Grid &g,
                        std::size_t last);

//! Taylor coefficients c_N of sum c_N r^{N+s} solving u'' = Q u near r = 0,
//! with c_0 = c0 and c_1 = 0 (requires s(s-1) = L).
std::vector<cplx> origin_coefficients(const Potential &p, double L, cplx k2,
                                      int s, double c0, int terms);

//! Outward march: u[0..from] must be set (from >= 2); fills u[from+1..last].
void march_outward(const Equation &eq, std::vector<cplx> &u, std::size_t last,
                   std::size_t from = 2);
//! Inward march: u[first], u[first+1] must be set; fills u[stop..first-1].
void march_inward(const Equation &eq, std::vector<cplx> &u, std::size_t first,
                  std::size_t stop);

//! Regular solution seeded from the origin series, on nodes [0, last].
std::vector<cplx> regular_values(const Potential &p, double L, cplx k2, int s,
                                 double c0, const Grid &g, std::size_t last);

inline constexpr double kOverflow = 1e290;

} // namespace polewave::detail
