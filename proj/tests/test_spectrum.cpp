#include "catch_amalgamated.hpp"
#include "polewave/error.hpp"
#include "polewave/spectrum.hpp"
#include "polewave/square_well_oracle.hpp"

using namespace polewave;
using Catch::Approx;

TEST_CASE("spectrum: free potential has no bound states", "[spectrum]") {
  REQUIRE(find_bound_states(free_potential(), 0, {0.01, 5.0}).empty());
}

TEST_CASE("spectrum: shallow square well", "[spectrum]") {
  const auto p = square_well(4.0, 1.0);
  SquareWellOracle o(4.0, 1.0, 0);
  const auto states = find_bound_states(p, 0, {0.01, 1.9}, 200, {0.0025});
  REQUIRE(states.size() == 1);
  const auto &b = states[0];
  REQUIRE(b.alpha == Approx(o.bound_alphas()[0]).margin(1e-8));
  REQUIRE(b.energy == Approx(-b.alpha * b.alpha));
  REQUIRE(b.N == Approx(o.bound_norm(o.bound_alphas()[0])).margin(1e-6));
  REQUIRE(normalization_check(b) == Approx(1.0).margin(1e-10));
  REQUIRE(asymptotic_coefficient(b) == Approx(b.N).margin(1e-4));
  REQUIRE(b.u[0] == Approx(0.0).margin(1e-7));
  REQUIRE(b.u.back() * std::exp(b.alpha * b.grid.r_max()) ==
          Approx(1.0).margin(1e-4));

  for (double r : {0.2, 0.6, 1.0, 1.7, 4.0})
    REQUIRE(b.u_at(r) == Approx(o.bound_u(b.alpha, b.grid.r(b.grid.nearest(r))))
                             .margin(1e-7));
}

TEST_CASE("spectrum: tail correction", "[spectrum]") {
  const auto p = square_well(4.0, 1.0);
  const double alpha = SquareWellOracle(4.0, 1.0, 0).bound_alphas()[0];
  const auto b = build_bound_state(p, 0, alpha, grid_for(p, 0.005, 25.0));
  REQUIRE(b.tail_correction ==
          Approx(std::exp(-2 * alpha * 25.0) / (2 * alpha)).epsilon(1e-12));
  REQUIRE(b.tail_correction == Approx(1.1e-14).epsilon(0.1));

  // N stable under doubling R_max
  const auto b2 = build_bound_state(p, 0, alpha, grid_for(p, 0.005, 50.0));
  REQUIRE(b2.N == Approx(b.N).margin(1e-6));
}

TEST_CASE("spectrum: non-zero alpha is rejected", "[spectrum]") {
  const auto p = square_well(4.0, 1.0);
  REQUIRE_THROWS_AS(build_bound_state(p, 0, 0.9, grid_for(p, 0.005, 30.0)),
                    Error);
}

TEST_CASE("spectrum: P-wave state", "[spectrum]") {
  const auto p = square_well(15.0, 1.0);
  SquareWellOracle o(15.0, 1.0, 1);
  const auto states = find_bound_states(p, 1, {0.01, 3.8}, 200, {0.0025});
  REQUIRE(states.size() == 1);
  const auto &b = states[0];
  REQUIRE(b.alpha == Approx(o.bound_alphas()[0]).margin(1e-8));
  REQUIRE(b.N == Approx(o.bound_norm(b.alpha)).margin(1e-6));
  REQUIRE(asymptotic_coefficient(b) == Approx(b.N).margin(1e-4));
  REQUIRE(normalization_check(b) == Approx(1.0).margin(1e-10));
}

TEST_CASE("spectrum: deep well, nodes and orthogonality", "[spectrum]") {
  const auto p = square_well(30.0, 1.0);
  SquareWellOracle o(30.0, 1.0, 0);
  const auto states = find_bound_states(p, 0, {0.05, 5.4}, 200, {0.0025});
  REQUIRE(states.size() == 2);
  REQUIRE(states[0].alpha > states[1].alpha);
  for (std::size_t i = 0; i < 2; ++i) {
    REQUIRE(states[i].alpha == Approx(o.bound_alphas()[i]).margin(1e-8));
    REQUIRE(states[i].N == Approx(o.bound_norm(o.bound_alphas()[i])).margin(1e-6));
    int nodes = 0;
    const auto &u = states[i].u;
    for (std::size_t j = 2; j < u.size(); ++j)
      if (u[j - 1] * u[j] < 0.0)
        ++nodes;
    REQUIRE(nodes == int(i));
  }
  // overlap on a common grid
  const Grid g = grid_for(p, 0.0025, 40.0);
  const auto b1 = build_bound_state(p, 0, states[0].alpha, g);
  const auto b2 = build_bound_state(p, 0, states[1].alpha, g);
  const double overlap = integrate_segments<double>(
      g.h(), g.n(), b1.breaks,
      [&](std::size_t j, bool) { return b1.N * b1.u[j] * b2.N * b2.u[j]; });
  REQUIRE(std::abs(overlap) < 1e-6);
}

TEST_CASE("spectrum: smooth wells", "[spectrum]") {
  // exponential well U0 a^2 = 2 binds one S state (J_{2 alpha a}(2 sqrt 2) = 0)
  const auto e = exponential_well(2.0, 1.0);
  const auto states = find_bound_states(e, 0, {0.01, 1.4});
  REQUIRE(states.size() == 1);
  // mpmath root of J_{2 alpha}(2 sqrt 2)
  REQUIRE(states[0].alpha == Approx(0.14121130820906370).margin(1e-8));
  REQUIRE(asymptotic_coefficient(states[0]) == Approx(states[0].N).margin(1e-4));
  REQUIRE(normalization_check(states[0]) == Approx(1.0).margin(1e-10));

  const auto g = gaussian_well(3.0, 1.0, 6.0);
  const auto gs = find_bound_states(g, 0, {0.01, 1.7});
  REQUIRE(gs.size() == 1);
}
