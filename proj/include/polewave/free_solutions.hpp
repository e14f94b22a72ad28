#pragma once
#include "polewave/numerics.hpp"

namespace polewave {

//! Free outgoing Jost solution normalized to exp(i pi l/2) exp(ikr) at large r:
//!   f_l(k,r) = i^l e^{ikr} sum_m (l+m)!/(m!(l-m)!) (i/(2kr))^m.
cplx free_jost(int ell, cplx k, double r);
//! d/dr of free_jost.
cplx free_jost_prime(int ell, cplx k, double r);

//! Free regular solution j^_l(kr)/k^{l+1} (Riccati-Bessel), behaving as
//! r^{l+1}/(2l+1)!! at the origin. Implemented for l <= 1 (closed form) and
//! by upward recurrence above.
cplx free_regular(int ell, cplx k, double r);

//! W[f_l^free, phi_l^free] = (-1)^l k^{-l}; F_l(k) = (-k)^l W.
cplx jost_calibration(int ell, cplx k);

//! lim_{r->0} (-kr)^l f_l(k,r)/(2l+1)!! divided by F_l(k): 1/(2l+1).
//! The Wronskian normalization used here is 1 for the free particle; the
//! (2l+1)!! origin-limit normalization differs by this ell-only constant.
double origin_limit_ratio(int ell);

} // namespace polewave
