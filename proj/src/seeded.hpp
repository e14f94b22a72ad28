#pragma once
// Jost Wronskians against regular solutions with non-standard origin seeds.
#include "polewave/radial.hpp"

namespace polewave::detail {

//! W[f_l(k), phi] with phi ~ c0 r^s at the origin (s(s-1) = l(l+1)),
//! with the same checks and warnings as jost_function.
JostSample seeded_wronskian(const Potential &p, int ell, cplx k,
                            const Grid &grid, int s, double c0);

} // namespace polewave::detail
