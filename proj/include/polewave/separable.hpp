#pragma once
#include "polewave/numerics.hpp"

namespace polewave {

//! One-term separable model with bound-state pole alpha and shape beta > alpha.
struct SeparableModel {
  double alpha = 1.0;
  double beta = 5.0;
};

void validate(const SeparableModel &m);

//! z = (k^2 + alpha^2) / (4 beta (alpha + beta)).
cplx sep_z(const SeparableModel &m, cplx k);

//! F(k) = (k - i beta)(k + i(2 beta + alpha))(k - i alpha)
//!        / ((k + i beta)(k^2 + (alpha + beta)^2 + beta^2)).
cplx sep_jost(const SeparableModel &m, cplx k);
//! dF/dk, differentiated by hand.
cplx sep_jost_derivative(const SeparableModel &m, cplx k);

//! Origin ratio of scattering to bound wave function:
//! (1 + 2z) / (sqrt(2 alpha (k^2 + alpha^2)) sqrt(1 + z)).
double sep_ratio(const SeparableModel &m, double k);

//! ours = |R sqrt(2 alpha (k^2+alpha^2)) - 1|,
//! gw   = |R sqrt(4 i alpha^2 F / Fdot) - 1| (principal branch).
//! Both prefactors are taken relative to sqrt(2 alpha (k^2 + alpha^2)) so the
//! removable singularity at k = i alpha cancels and complex k near the pole
//! can be evaluated.
struct SepErrors {
  double ours = 0.0;
  double gw = 0.0;
};
SepErrors sep_compare_forms(const SeparableModel &m, cplx k);

//! Number of zeros of F in the rectangle |Re k| <= half_width,
//! 0 <= Im k <= height, from the winding of F along the boundary plus the
//! poles of F inside (the boundary must avoid zeros and poles).
int sep_upper_zero_count(const SeparableModel &m, double half_width,
                         double height, int points_per_side = 4000);

} // namespace polewave
