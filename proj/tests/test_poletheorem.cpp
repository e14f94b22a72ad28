#include "catch_amalgamated.hpp"
#include "polewave/error.hpp"
#include "polewave/poletheorem.hpp"
#include "polewave/square_well_oracle.hpp"

using namespace polewave;
using Catch::Approx;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(a + (b - a) * double(i) / double(n - 1));
  return out;
}

// mpmath values for square_well(4, 1), l = 0
constexpr double kAlpha0 = 0.6380450482852377;
constexpr double kN0 = 1.5833235511933437;
// square_well(15, 1), l = 1
constexpr double kAlpha1 = 1.7861902826772181;
constexpr double kN1 = 3.9352543647784379;

} // namespace

TEST_CASE("poletheorem: sample rules", "[poletheorem]") {
  const auto t = sample_k2(2.0);
  REQUIRE(t.size() == 6);
  REQUIRE(t.front() == Approx(0.2));
  REQUIRE(t.back() == Approx(1.2));
  const auto p = sample_k2(2.0, {SampleRule::pole_local, 6, 0.05});
  REQUIRE(p.size() == 6);
  REQUIRE(p.front() == Approx(-4.0 * 1.15));
  REQUIRE(p.back() == Approx(-4.0 * 0.85));
  REQUIRE(sample_k2(2.0, {SampleRule::pole_local}).front() == Approx(-4.0 * 1.06));
  REQUIRE_THROWS_AS(sample_k2(2.0, {SampleRule::pole_local, 5, 0.05}), Error);
  REQUIRE(parse_sample_rule("pole-local") == SampleRule::pole_local);
  REQUIRE_THROWS_AS(parse_sample_rule("nearby"), Error);
}

TEST_CASE("poletheorem: constant data extrapolates to itself", "[poletheorem]") {
  ExtrapolantSamples s;
  s.alpha = 1.0;
  s.N = 1.0;
  s.r = {1.0};
  s.k2 = {0.1, 0.2, 0.3, 0.4};
  s.reference = {-0.75};
  s.reference_max = 1.0;
  s.g.assign(4, {cplx(0.75, 0.0)});
  const auto rep = extrapolate_to_pole(s, 2);
  REQUIRE(rep.points[0].g_star.real() == Approx(0.75).epsilon(1e-12));
  REQUIRE(rep.points[0].abs_residual < 1e-12);
  REQUIRE(rep.observed_phase.real() == Approx(1.0));
  REQUIRE_THROWS_AS(extrapolate_to_pole(s, 4), Error);
}

TEST_CASE("poletheorem: threshold samples near the well", "[poletheorem]") {
  const auto p = square_well(4.0, 1.0);
  const auto rep = verify_pole(p, 0, kAlpha0, linspace(0.5, 1.5, 11), {}, 2);
  REQUIRE(rep.N == Approx(kN0).margin(1e-6));
  REQUIRE(rep.mode == CheckMode::signed_value);
  REQUIRE(rep.max_residual < 1e-3);
  REQUIRE(rep.observed_phase.real() == Approx(1.0).margin(1e-3));
  REQUIRE(!rep.warnings.empty()); // far extrapolation from the real axis
}

TEST_CASE("poletheorem: pole-local samples, S wave", "[poletheorem]") {
  const auto p = square_well(4.0, 1.0);
  const auto r = linspace(0.5, 6.0 / kAlpha0, 25);
  const auto rep =
      verify_pole(p, 0, kAlpha0, r, {SampleRule::pole_local}, 4);
  for (const auto &pt : rep.points)
    UNSCOPED_INFO("r=" << pt.r << " rel=" << pt.rel_residual);
  REQUIRE(rep.max_residual < 1e-5);
  REQUIRE(rep.warnings.empty());
  REQUIRE(std::abs(rep.observed_phase - 1.0) < 1e-6);
}

TEST_CASE("poletheorem: pole-local samples, P wave", "[poletheorem]") {
  const auto p = square_well(15.0, 1.0);
  const auto r = linspace(0.5, 6.0 / kAlpha1, 15);
  const auto rep =
      verify_pole(p, 1, kAlpha1, r, {SampleRule::pole_local}, 4);
  REQUIRE(rep.N == Approx(kN1).margin(1e-6));
  REQUIRE(rep.mode == CheckMode::squared);
  REQUIRE(rep.max_residual < 1e-4);
  // odd l: g* = -i N u on the branch selected by sigma
  REQUIRE(std::abs(rep.observed_phase - cplx(0.0, 1.0)) < 1e-6);
}

TEST_CASE("poletheorem: grid refinement", "[poletheorem]") {
  const auto p = square_well(4.0, 1.0);
  const std::vector<double> r{0.5, 1.0, 2.0, 4.0};
  const std::vector<double> ks{0.1, 0.4, 1.0};
  const auto a = extrapolant_samples(p, 0, kAlpha0, r, ks, {0.01});
  const auto b = extrapolant_samples(p, 0, kAlpha0, r, ks, {0.005});
  for (std::size_t i = 0; i < ks.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      REQUIRE(std::abs(a.g[i][j] - b.g[i][j]) < 1e-6);
}

TEST_CASE("poletheorem: Wronskian identity", "[poletheorem]") {
  const auto p = square_well(4.0, 1.0);
  const auto b = build_bound_state(p, 0, kAlpha0, bound_grid(p, kAlpha0));
  for (double k : {0.3, 1.0, 2.5})
    for (double r : {0.5, 1.0, 3.0, 8.0}) {
      const auto w = wronskian_identity_residual(b, p, k, r);
      REQUIRE(w.residual < 1e-6 * std::max({std::abs(w.lhs), std::abs(w.rhs), 1.0}));
    }
  const auto p1 = square_well(15.0, 1.0);
  const auto b1 = build_bound_state(p1, 1, kAlpha1, bound_grid(p1, kAlpha1));
  for (double r : {0.5, 1.0, 3.0}) {
    const auto w = wronskian_identity_residual(b1, p1, 0.7, r);
    REQUIRE(w.residual < 1e-6 * std::max({std::abs(w.lhs), std::abs(w.rhs), 1.0}));
  }
}

TEST_CASE("poletheorem: residue of a closed-form S", "[poletheorem]") {
  // S = (alpha - ik)/(alpha + ik): N^2 = 2 alpha, residue -2 i alpha
  const double alpha = 0.8;
  auto [res, err] = imaginary_axis_residue(
      [&](cplx k) { return (alpha - I * k) / (alpha + I * k); }, alpha);
  REQUIRE(std::abs(res - cplx(0.0, -2.0 * alpha)) < 1e-10);
  REQUIRE(err < 1e-8);
}

TEST_CASE("poletheorem: S-matrix residue", "[poletheorem]") {
  const auto p = square_well(4.0, 1.0);
  for (auto m : {ResidueMethod::imaginary_axis, ResidueMethod::real_axis_fit}) {
    const auto r = smatrix_residue(p, 0, kAlpha0, m);
    INFO(to_string(m) << " rel=" << r.relative_error);
    REQUIRE(r.relative_error < 1e-4);
    REQUIRE(r.N_from_residue == Approx(kN0).epsilon(1e-4));
    REQUIRE(!r.flagged);
  }
  const auto p1 = square_well(15.0, 1.0);
  const auto r1 = smatrix_residue(p1, 1, kAlpha1, ResidueMethod::imaginary_axis);
  REQUIRE(r1.relative_error < 1e-4);
  REQUIRE(r1.residue.imag() > 0.0); // -i (-1)^l N^2
  REQUIRE(r1.cross_check.has_value());
}

TEST_CASE("poletheorem: preconditions", "[poletheorem]") {
  const std::vector<double> r{1.0};
  try {
    verify_pole(free_potential(), 0, 0.5, r, {}, 2);
    FAIL("expected an error");
  } catch (const Error &e) {
    REQUIRE(e.kind() == ErrorKind::no_bound_state);
  }
  // not a zero of F
  REQUIRE_THROWS_AS(verify_pole(square_well(4.0, 1.0), 0, 0.9, r, {}, 2), Error);
  // continuation needs a cutoff
  REQUIRE_THROWS_AS(verify_pole(exponential_well(2.0, 1.0), 0, 0.1412113082090637,
                                r, {SampleRule::pole_local}, 4),
                    Error);
  REQUIRE_THROWS_AS(jost_derivative(square_well(4.0, 1.0), 0, 0.1, 0.05), Error);
}

TEST_CASE("poletheorem: Jost derivative", "[poletheorem]") {
  const auto free = jost_derivative(free_potential(), 0, 1.0, 1e-3);
  REQUIRE(std::abs(free.value) == 0.0);

  SquareWellOracle o(4.0, 1.0, 0);
  const auto d = jost_derivative(square_well(4.0, 1.0), 0, 1.0, 1e-3);
  const auto exact = five_point_derivative(
      [&](double k) { return o.jost(k); }, 1.0, 1e-4);
  REQUIRE(std::abs(d.value - exact.value) < 1e-7);
  REQUIRE(d.error < 1e-8);
}

TEST_CASE("poletheorem: single-k forms", "[poletheorem]") {
  const auto p = square_well(4.0, 1.0);
  const std::vector<double> r{0.02, 0.05, 0.1};
  const auto near = compare_forms(p, kAlpha0, 0.05 * kAlpha0, r);
  const auto far = compare_forms(p, kAlpha0, kAlpha0, r);
  UNSCOPED_INFO("near ours=" << near.ours << " gw=" << near.gw);
  UNSCOPED_INFO("far ours=" << far.ours << " gw=" << far.gw);
  REQUIRE(near.ours < 0.05);
  REQUIRE(near.gw > near.ours);
  REQUIRE(far.gw > far.ours);
  REQUIRE(gw_extrapolant(p, kAlpha0, 0.5, r).size() == r.size());
}
