#include "catch_amalgamated.hpp"
#include "polewave/error.hpp"
#include "polewave/free_solutions.hpp"
#include "polewave/radial.hpp"
#include "polewave/square_well_oracle.hpp"

using namespace polewave;
using Catch::Approx;

TEST_CASE("radial: free solutions", "[radial]") {
  const auto p = free_potential();
  const Grid g(0.005, 2000);

  auto phi = solve_regular(p, 0, 1.0, g);
  double err = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    err = std::max(err, std::abs(phi.values[j] - std::sin(g.r(j))));
  REQUIRE(err < 1e-9);
  REQUIRE(phi.at(pi / 2).real() == Approx(1.0).margin(1e-4));

  auto phi1 = solve_regular(p, 1, 1.0, g);
  err = 0.0;
  for (std::size_t j = 1; j < g.size(); ++j) {
    const double r = g.r(j);
    err = std::max(err, std::abs(phi1.values[j] - (std::sin(r) / r - std::cos(r))));
  }
  REQUIRE(err < 1e-9);
  REQUIRE((phi1.values[1] / (g.r(1) * g.r(1) / 3.0)).real() ==
          Approx(1.0).epsilon(1e-5));

  auto f = solve_jost(p, 0, 1.0, g);
  err = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    err = std::max(err, std::abs(f.values[j] - std::exp(I * g.r(j))));
  REQUIRE(err < 1e-12);

  auto fd = solve_jost(p, 0, {0.0, 0.5}, g);
  for (std::size_t j = 0; j < g.size(); j += 97)
    REQUIRE(std::abs(fd.values[j] - std::exp(-0.5 * g.r(j))) < 1e-12);

  for (double r : {0.5, 3.0, 8.0})
    REQUIRE(std::abs(wronskian(f, phi, r) - 1.0) < 1e-10);
  REQUIRE(std::abs(wronskian(phi, phi, 2.0)) < 1e-14);

  // a zero-depth well goes through the full numerical path
  const auto zero = square_well(0.0, 1.0);
  for (int ell = 0; ell <= 3; ++ell) {
    REQUIRE(std::abs(jost_function(p, ell, 1.0).F - 1.0) < 1e-12);
    REQUIRE(std::abs(jost_function(zero, ell, 1.0).F - 1.0) < 1e-10);
  }
  REQUIRE(phase_shift(p, 0, 2.0) == Approx(0.0).margin(1e-12));

  auto v = physical_wave(p, 0, 1.0, g);
  err = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    err = std::max(err, std::abs(v.values[j].real() - std::sin(g.r(j))));
  REQUIRE(err < 1e-9);
  REQUIRE(v.warnings.empty());
}

TEST_CASE("radial: square well against the oracle", "[radial]") {
  const auto p = square_well(4.0, 1.0);
  SquareWellOracle o0(4.0, 1.0, 0), o1(4.0, 1.0, 1);
  const Grid g = grid_for(p, 0.0025, 30.0);

  auto phi = solve_regular(p, 0, 0.5, g);
  const double Kp = std::sqrt(0.25 + 4.0);
  for (std::size_t j = 0; j < g.size() && g.r(j) < 1.0; j += 7)
    REQUIRE(std::abs(phi.values[j] - std::sin(Kp * g.r(j)) / Kp) < 1e-8);

  const double a0 = o0.bound_alphas()[0];
  auto F = jost_function(p, 0, {0.0, 0.7});
  REQUIRE(std::abs(F.F - o0.jost({0.0, 0.7})) < 1e-8);
  REQUIRE(std::abs(F.F.imag()) < 1e-10 * std::abs(F.F));
  auto fj = solve_jost(p, 0, {0.0, 0.7}, g);
  REQUIRE(std::abs(fj.values[0] - o0.jost({0.0, 0.7})) < 1e-8);
  REQUIRE(std::abs(fj.values[0].imag()) < 1e-12);

  REQUIRE(std::abs(jost_function(p, 0, {0.0, a0}).F) < 1e-6);
  REQUIRE(std::abs(jost_function(p, 0, 1.0).F - o0.jost(1.0)) < 1e-8);

  REQUIRE(phase_shift(p, 0, 0.5) == Approx(o0.phase_shift(0.5)).margin(1e-6));
  REQUIRE(phase_shift(p, 1, 1.0) == Approx(o1.phase_shift(1.0)).margin(1e-6));

  auto f = solve_jost(p, 0, 0.5, g);
  REQUIRE(std::abs(wronskian(f, phi, 0.3) - wronskian(f, phi, 2.5)) < 1e-8);

  auto v = physical_wave(p, 0, 0.5, g);
  const double d = o0.phase_shift(0.5);
  for (double r : {20.0, 25.0, 29.0})
    REQUIRE(v.at(r).real() == Approx(std::sin(0.5 * r + d) / 0.5).margin(1e-4));
  REQUIRE(v.warnings.empty());

  // k -> 0: v stays finite inside the well
  auto v0 = physical_wave(p, 0, 1e-3, g);
  auto v1 = physical_wave(p, 0, 2e-3, g);
  REQUIRE(std::isfinite(v0.at(0.5).real()));
  REQUIRE(std::abs(v0.at(0.5).real() - v1.at(0.5).real()) < 1e-3);
  REQUIRE(v0.at(0.5).real() ==
          Approx(o0.physical_wave(1e-3, 0.5)).epsilon(1e-6));
}

TEST_CASE("radial: structural invariants", "[radial]") {
  const auto p = square_well(4.0, 1.0);
  const auto e = exponential_well(2.0, 1.0, 8.0);
  for (const auto *pot : {&p, &e}) {
    for (int ell : {0, 1, 2}) {
      for (double k : {0.3, 1.1, 2.7}) {
        const cplx Fp = jost_function(*pot, ell, k).F;
        const cplx Fm = jost_function(*pot, ell, -k).F;
        REQUIRE(std::abs(Fm - std::conj(Fp)) < 1e-8);
        REQUIRE(std::abs(std::abs(Fm / Fp) - 1.0) < 1e-10);
      }
    }
  }
  const Grid g = grid_for(p, 0.0025, 20.0);
  for (int ell : {0, 1}) {
    auto phi = solve_regular(p, ell, 1.3, g);
    auto f = solve_jost(p, ell, 1.3, g);
    const cplx w0 = wronskian(f, phi, 0.4);
    for (double r : {0.7, 1.6, 5.0, 12.0, 19.0})
      REQUIRE(std::abs(wronskian(f, phi, r) - w0) < 1e-8 * std::abs(w0));
  }
  // F(i kappa) real on the positive imaginary axis
  const cplx Fi = jost_function(p, 1, {0.0, 1.2}).F;
  REQUIRE(std::abs(Fi.imag()) < 1e-10 * std::abs(Fi));
}

TEST_CASE("radial: fourth-order convergence", "[radial]") {
  const auto p = square_well(4.0, 1.0);
  for (int ell : {0, 1}) {
    SquareWellOracle o(4.0, 1.0, ell);
    for (double k : {0.5, 2.0}) {
      double prev = 0.0;
      for (double h : {0.04, 0.02, 0.01}) {
        const double err = std::abs(jost_function(p, ell, k, {h}).F - o.jost(k));
        if (prev > 0.0)
          REQUIRE(prev / err >= 8.0);
        prev = err;
      }
    }
  }
}

TEST_CASE("radial: preconditions", "[radial]") {
  const auto g = gaussian_well(1.0, 1.0);
  REQUIRE_THROWS_AS(jost_function(g, 0, {0.5, -0.2}), Error);
  const auto p = square_well(4.0, 1.0);
  REQUIRE_THROWS_AS(solve_regular(p, 0, 200.0, Grid(0.01, 100)), Error);

  auto far = jost_function(square_well(4.0, 8.0), 0, {0.5, -1.0});
  REQUIRE(far.conditioning > kConditioningWarning);
  REQUIRE(!far.warnings.empty());

  REQUIRE(unwrap_phases({3.0, -3.1, 3.0}) ==
          std::vector<double>{3.0, -3.1 + 2 * pi, 3.0});
}

TEST_CASE("radial: origin normalization constant", "[radial]") {
  for (int ell = 0; ell <= 3; ++ell)
    REQUIRE(origin_limit_ratio(ell) == Approx(1.0 / (2 * ell + 1)));
  // (-kr)^l f_l/(2l+1)!! at small r for the free particle
  const double r = 1e-4, k = 0.7;
  for (int ell = 1; ell <= 3; ++ell) {
    const cplx lim = std::pow(-k * r, ell) * free_jost(ell, k, r) /
                     double_factorial(2 * ell + 1);
    REQUIRE(std::abs(lim - origin_limit_ratio(ell)) < 1e-3);
  }
}
