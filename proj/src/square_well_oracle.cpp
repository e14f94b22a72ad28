#include "polewave/square_well_oracle.hpp"
#include "polewave/error.hpp"
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <algorithm>

namespace polewave {

namespace {

// Riccati-Bessel j^_l and its derivative, l = 0, 1
cplx rb(int ell, cplx z) {
  return ell == 0 ? std::sin(z) : std::sin(z) / z - std::cos(z);
}
cplx rb_prime(int ell, cplx z) {
  return ell == 0 ? std::cos(z)
                  : std::cos(z) / z - std::sin(z) / (z * z) + std::sin(z);
}

// outgoing free solution and derivative, l = 0, 1
cplx out(int ell, cplx k, double r) {
  const cplx e = std::exp(I * k * r);
  return ell == 0 ? e : I * e * (1.0 + I / (k * r));
}
cplx out_prime(int ell, cplx k, double r) {
  const cplx e = std::exp(I * k * r);
  if (ell == 0)
    return I * k * e;
  return I * e * (I * k * (1.0 + I / (k * r)) - I / (k * r * r));
}

} // namespace

SquareWellOracle::SquareWellOracle(double U0, double a, int ell)
    : m_U0(U0), m_a(a), m_ell(ell) {
  if (!(U0 > 0.0) || !(a > 0.0))
    throw validation_error("square-well oracle needs U0 > 0 and a > 0");
  if (ell < 0 || ell > 1)
    throw validation_error("square-well oracle supports l = 0 and l = 1 only");

  const double amax = std::sqrt(U0);
  const int n = 4000;
  double prev_x = amax * 1e-6, prev = matching(prev_x);
  for (int i = 1; i <= n; ++i) {
    const double x = amax * (1e-6 + (1.0 - 2e-6) * i / n);
    const double cur = matching(x);
    if (prev == 0.0) {
      m_alphas.push_back(prev_x);
    } else if (prev * cur < 0.0) {
      boost::uintmax_t iters = 200;
      auto [lo, hi] = boost::math::tools::toms748_solve(
          [&](double al) { return matching(al); }, prev_x, x, prev, cur,
          boost::math::tools::eps_tolerance<double>(52), iters);
      m_alphas.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev = cur;
  }
  std::sort(m_alphas.rbegin(), m_alphas.rend());
}

// Wronskian of the interior solution and the decaying exterior one at r = a;
// zero exactly at a bound state.
double SquareWellOracle::matching(double alpha) const {
  const double K = std::sqrt(m_U0 - alpha * alpha);
  const double z = K * m_a;
  const double in = rb(m_ell, z).real(), din = K * rb_prime(m_ell, z).real();
  const double ex = bound_u(alpha, m_a);
  double dex;
  if (m_ell == 0)
    dex = -alpha * ex;
  else
    dex = -alpha * ex - std::exp(-alpha * m_a) / (alpha * m_a * m_a);
  return in * dex - din * ex;
}

cplx SquareWellOracle::jost(cplx k) const {
  const cplx K = std::sqrt(k * k + m_U0);
  const cplx z = K * m_a;
  const cplx phi = rb(m_ell, z) / std::pow(K, m_ell + 1);
  const cplx dphi = rb_prime(m_ell, z) / std::pow(K, m_ell);
  const cplx W = out(m_ell, k, m_a) * dphi - out_prime(m_ell, k, m_a) * phi;
  return std::pow(-k, m_ell) * W;
}

double SquareWellOracle::phase_shift(double k) const {
  return -std::arg(jost(k));
}

double SquareWellOracle::bound_u(double alpha, double r) const {
  auto ext = [&](double x) {
    const double e = std::exp(-alpha * x);
    return m_ell == 0 ? e : e * (1.0 + 1.0 / (alpha * x));
  };
  if (r >= m_a)
    return ext(r);
  const double K = std::sqrt(m_U0 - alpha * alpha);
  const double C = ext(m_a) / rb(m_ell, K * m_a).real();
  return C * rb(m_ell, K * r).real();
}

double SquareWellOracle::bound_norm(double alpha) const {
  const double K = std::sqrt(m_U0 - alpha * alpha);
  if (m_ell == 0) {
    const double C = std::exp(-alpha * m_a) / std::sin(K * m_a);
    const double I = C * C * (m_a / 2.0 - std::sin(2.0 * K * m_a) / (4.0 * K)) +
                     std::exp(-2.0 * alpha * m_a) / (2.0 * alpha);
    return 1.0 / std::sqrt(I);
  }
  using namespace boost::math::quadrature;
  auto sq = [&](double r) {
    const double u = bound_u(alpha, r);
    return u * u;
  };
  const double inner =
      gauss_kronrod<double, 61>::integrate(sq, 0.0, m_a, 15, 1e-15);
  exp_sinh<double> tail;
  const double outer =
      tail.integrate([&](double t) { return sq(m_a + t); }, 1e-15);
  return 1.0 / std::sqrt(inner + outer);
}

cplx SquareWellOracle::regular(cplx k, double r) const {
  if (r < m_a) {
    const cplx K = std::sqrt(k * k + m_U0);
    return rb(m_ell, K * r) / std::pow(K, m_ell + 1);
  }
  // exterior: combination of outgoing and incoming solutions fixed by
  // Wronskians with the interior solution at r = a
  const cplx K = std::sqrt(k * k + m_U0);
  const cplx phi_a = rb(m_ell, K * m_a) / std::pow(K, m_ell + 1);
  const cplx dphi_a = rb_prime(m_ell, K * m_a) / std::pow(K, m_ell);
  const cplx Wk = out(m_ell, k, m_a) * dphi_a - out_prime(m_ell, k, m_a) * phi_a;
  const cplx Wm = out(m_ell, -k, m_a) * dphi_a - out_prime(m_ell, -k, m_a) * phi_a;
  const cplx Wkm = out(m_ell, k, m_a) * out_prime(m_ell, -k, m_a) -
                   out_prime(m_ell, k, m_a) * out(m_ell, -k, m_a);
  return (out(m_ell, -k, r) * Wk - out(m_ell, k, r) * Wm) / Wkm;
}

double SquareWellOracle::physical_wave(double k, double r) const {
  return (std::pow(k, m_ell) * regular(k, r)).real() / std::abs(jost(k));
}

} // namespace polewave
