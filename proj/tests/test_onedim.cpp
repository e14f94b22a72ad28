#include "catch_amalgamated.hpp"
#include "polewave/error.hpp"
#include "polewave/onedim.hpp"

using namespace polewave;
using Catch::Approx;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(a + (b - a) * double(i) / double(n - 1));
  return out;
}

double mod_pi(double x) { return x - pi * std::floor(x / pi); }

// interior cos(Kx) / sin(Kx) matched to cos(kx + d) / -sin(kx + d) at x = a
double square_delta(Parity parity, double U0, double a, double k) {
  const double K = std::sqrt(U0 + k * k);
  if (parity == Parity::even)
    return mod_pi(std::atan(K * std::tan(K * a) / k) - k * a);
  return mod_pi(std::atan2(k, K / std::tan(K * a)) - k * a);
}

// mpmath roots of K tan(K a) = alpha and K cot(K a) = -alpha, U0 = 4, a = 1,
// with full-line normalizations
constexpr double kEven = 1.7144605366650247;
constexpr double kEvenN = 2.2727605324798956;
constexpr double kOdd = 0.6380450482852371;
constexpr double kOddN = 1.1195788198611814;

} // namespace

TEST_CASE("onedim: free particle", "[onedim]") {
  const auto p = free_potential();
  const Grid g(0.01, 2000);
  const auto e = solve_parity(p, Parity::even, 1.0, g);
  const auto o = solve_parity(p, Parity::odd, 1.0, g);
  REQUIRE(e.delta == Approx(0.0).margin(1e-12));
  REQUIRE(o.delta == Approx(0.0).margin(1e-12));
  for (double x : {0.5, 3.0, 17.0}) {
    REQUIRE(e.at(x) == Approx(std::cos(g.r(g.nearest(x)))).margin(1e-8));
    REQUIRE(o.at(x) == Approx(-std::sin(g.r(g.nearest(x)))).margin(1e-8));
  }
  REQUIRE(find_bound_1d(p, Parity::even, {0.01, 3.0}).empty());
  REQUIRE(find_bound_1d(p, Parity::odd, {0.01, 3.0}).empty());
}

TEST_CASE("onedim: square well phases", "[onedim]") {
  const auto p = square_well(4.0, 1.0);
  for (auto parity : {Parity::even, Parity::odd})
    for (double k : {0.2, 0.9, 2.5}) {
      const auto s = solve_parity(p, parity, k, grid_for(p, 0.005, 30.0));
      REQUIRE(mod_pi(s.delta) ==
              Approx(square_delta(parity, 4.0, 1.0, k)).margin(1e-6));
      // asymptote on the matched branch
      const double x = s.grid.r(s.grid.nearest(20.0));
      const double expect = parity == Parity::even ? std::cos(k * x + s.delta)
                                                   : -std::sin(k * x + s.delta);
      REQUIRE(s.at(20.0) == Approx(expect).margin(1e-6));
      REQUIRE(std::abs(parity_jost(p, parity, -k).F -
                       std::conj(parity_jost(p, parity, k).F)) < 1e-8);
    }
  REQUIRE_THROWS_AS(solve_parity(p, Parity::even, 1.0, Grid(0.01, 50)), Error);
}

TEST_CASE("onedim: bound states of both parities", "[onedim]") {
  const auto p = square_well(4.0, 1.0);
  const auto even = find_bound_1d(p, Parity::even, {0.01, 1.99}, 200, {0.0025});
  const auto odd = find_bound_1d(p, Parity::odd, {0.01, 1.99}, 200, {0.0025});
  REQUIRE(even.size() == 1);
  REQUIRE(odd.size() == 1);
  REQUIRE(even[0].alpha == Approx(kEven).margin(1e-8));
  REQUIRE(odd[0].alpha == Approx(kOdd).margin(1e-8));
  REQUIRE(even[0].N == Approx(kEvenN).margin(1e-6));
  REQUIRE(odd[0].N == Approx(kOddN).margin(1e-6));
  REQUIRE(even[0].alpha > odd[0].alpha);
  REQUIRE(odd[0].u[0] == Approx(0.0).margin(1e-7));
  REQUIRE(derivative<double>(even[0].u, even[0].grid.h(), 0) ==
          Approx(0.0).margin(1e-6));
  REQUIRE_THROWS_AS(build_bound_1d(p, Parity::even, kOdd, bound_grid(p, kOdd)),
                    Error);
}

TEST_CASE("onedim: pole extrapolation", "[onedim]") {
  const auto p = square_well(4.0, 1.0);
  for (auto [parity, alpha] :
       {std::pair{Parity::even, kEven}, std::pair{Parity::odd, kOdd}}) {
    const auto x = linspace(0.5, 6.0 / alpha, 20);
    const auto rep =
        pole_extrapolate_1d(p, parity, alpha, x, {SampleRule::pole_local}, 4);
    INFO(to_string(parity) << " max=" << rep.max_residual);
    REQUIRE(rep.max_residual < 1e-5);
    REQUIRE(std::abs(rep.observed_phase - 1.0) < 1e-5);
  }
  // near the well the real-axis samples also reach the pole
  const auto near = pole_extrapolate_1d(p, Parity::odd, kOdd,
                                        linspace(0.5, 1.5, 5), {}, 2);
  REQUIRE(near.max_residual < 1e-3);
  REQUIRE_THROWS_AS(extrapolant_samples_1d(p, Parity::odd, kOdd, {1.0},
                                           {0.0001}),
                    Error);
}

TEST_CASE("onedim: odd parity matches the S wave", "[onedim]") {
  const auto p = square_well(4.0, 1.0);
  const std::vector<double> x{0.5, 1.0, 2.0, 4.0, 8.0};
  const SampleOptions rule{SampleRule::pole_local};
  const auto one = pole_extrapolate_1d(p, Parity::odd, kOdd, x, rule, 4);
  const auto three = verify_pole(p, 0, kOdd, x, rule, 4);
  for (std::size_t i = 0; i < x.size(); ++i)
    REQUIRE(std::abs(one.points[i].g_star + three.points[i].g_star / std::sqrt(2.0)) <
            1e-6);
}

TEST_CASE("onedim: residues", "[onedim]") {
  const auto p = square_well(4.0, 1.0);
  for (auto [parity, alpha] :
       {std::pair{Parity::even, kEven}, std::pair{Parity::odd, kOdd}}) {
    const auto r = residue_1d(p, parity, alpha);
    REQUIRE(r.relative_error < 1e-6);
  }
}

TEST_CASE("onedim: zero-energy phase", "[onedim]") {
  for (double U0 : {4.0, 1.0}) {
    const auto z = zero_energy_phase(square_well(U0, 1.0));
    REQUIRE(!z.zero_energy_state);
    REQUIRE(z.delta == Approx(pi / 2).margin(1e-2));
  }
  // f(0, x) = cos(sqrt(U0) (x - a)) inside: f'(0, 0) = 0 at U0 a^2 = pi^2,
  // where the second even state sits at threshold
  const auto z = zero_energy_phase(square_well(pi * pi, 1.0));
  REQUIRE(z.zero_energy_state);
  REQUIRE(zero_energy_phase(square_well(9.0, 1.0)).threshold_slope > 1e-3);
}
