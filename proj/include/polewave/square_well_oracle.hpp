#pragma once
#include "polewave/numerics.hpp"
#include <vector>

namespace polewave {

//! Closed-form square-well quantities (U = -U0 for r < a), l = 0 or 1.
//! Interior solutions are Riccati-Bessel functions of K r, K = sqrt(k^2+U0),
//! matched at r = a to the free outgoing solution.
class SquareWellOracle {
public:
  SquareWellOracle(double U0, double a, int ell);

  double depth() const { return m_U0; }
  double radius() const { return m_a; }
  int ell() const { return m_ell; }

  //! Jost function, normalized to 1 for U0 = 0.
  cplx jost(cplx k) const;
  //! -arg F(k) in (-pi, pi].
  double phase_shift(double k) const;
  //! Bound-state decay constants, descending.
  const std::vector<double> &bound_alphas() const { return m_alphas; }

  //! Bound state with unit exterior asymptote: e^{-ar} (l=0),
  //! e^{-ar}(1 + 1/(ar)) (l=1).
  double bound_u(double alpha, double r) const;
  //! N = (int_0^inf u^2 dr)^{-1/2}.
  double bound_norm(double alpha) const;

  //! Regular solution j^_l(Kr)/K^{l+1} (r < a) continued outside.
  cplx regular(cplx k, double r) const;
  //! Real scattering solution with asymptote sin(kr - l pi/2 + delta)/k.
  double physical_wave(double k, double r) const;

private:
  double matching(double alpha) const;

  double m_U0, m_a;
  int m_ell;
  std::vector<double> m_alphas;
};

} // namespace polewave
