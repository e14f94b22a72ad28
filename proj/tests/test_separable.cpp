#include "catch_amalgamated.hpp"
#include "polewave/error.hpp"
#include "polewave/poletheorem.hpp"
#include "polewave/separable.hpp"

using namespace polewave;
using Catch::Approx;

TEST_CASE("separable: Jost function", "[separable]") {
  const SeparableModel m{1.0, 5.0};
  REQUIRE(std::abs(sep_jost(m, {0.0, 1.0})) == 0.0);
  const cplx F0 = sep_jost(m, 0.0);
  REQUIRE(F0.real() == Approx(-11.0 / 61.0).epsilon(1e-14));
  REQUIRE(std::abs(F0.imag()) < 1e-15);
  for (double k : {0.1, 0.7, 2.0, 9.0})
    REQUIRE(std::abs(sep_jost(m, -k) / sep_jost(m, k)) ==
            Approx(1.0).epsilon(1e-12));
  REQUIRE_THROWS_AS(sep_jost(m, {0.0, -5.0}), Error);
  REQUIRE_THROWS_AS(sep_jost(SeparableModel{2.0, 1.0}, 0.5), Error);
}

TEST_CASE("separable: derivative", "[separable]") {
  const SeparableModel m{1.0, 5.0};
  for (double k : {0.3, 1.0, 2.5}) {
    const auto fd = five_point_derivative(
        [&](double x) { return sep_jost(m, x); }, k, 1e-3);
    REQUIRE(std::abs(sep_jost_derivative(m, k) - fd.value) < 1e-9);
  }
  // through the removable point of the logarithmic form
  const cplx kb{0.0, 5.0};
  const cplx h{1e-6, 0.0};
  const cplx fd = (sep_jost(m, kb + h) - sep_jost(m, kb - h)) / (2.0 * h);
  REQUIRE(std::abs(sep_jost_derivative(m, kb) - fd) < 1e-8);
}

TEST_CASE("separable: S has a pole at i alpha and a zero at -i alpha",
          "[separable]") {
  const SeparableModel m{1.0, 5.0};
  auto S = [&](cplx k) { return sep_jost(m, -k) / sep_jost(m, k); };
  for (double eps : {1e-6, -1e-6}) {
    REQUIRE(std::abs(S({0.0, 1.0 + eps})) > 1e5);
    REQUIRE(std::abs(S({0.0, -(1.0 + eps)})) < 1e-5);
  }
}

TEST_CASE("separable: zeros in the upper half plane", "[separable]") {
  const SeparableModel m{1.0, 5.0};
  // the numerator carries k - i alpha and k - i beta
  REQUIRE(sep_upper_zero_count(m, 15.0, 15.0) == 2);
  REQUIRE(sep_upper_zero_count(m, 15.0, 3.0) == 1);
}

TEST_CASE("separable: origin ratio", "[separable]") {
  const SeparableModel m{1.0, 5.0};
  REQUIRE(sep_z(m, 0.0).real() == Approx(1.0 / 120.0));
  // (1 + 1/60) / sqrt(1 + 1/120)
  REQUIRE(sep_ratio(m, 0.0) * std::sqrt(2.0) ==
          Approx(1.0124568487216705).epsilon(1e-14));
  const SeparableModel wide{1.0, 500.0};
  const double z = sep_z(wide, 0.5).real();
  REQUIRE(sep_compare_forms(wide, 0.5).ours == Approx(1.5 * z).epsilon(1e-3));
}

TEST_CASE("separable: ours versus GW", "[separable]") {
  const SeparableModel m{1.0, 5.0};
  const auto e1 = sep_compare_forms(m, 1.0);
  REQUIRE(e1.ours == Approx(1.5 / 60.0).epsilon(0.05));
  REQUIRE(e1.gw > e1.ours);

  double last = -1.0;
  for (int j = 1; j <= 20; ++j) {
    const double k = 2.0 * j / 20.0;
    const auto e = sep_compare_forms(m, k);
    REQUIRE(e.gw > e.ours);
    REQUIRE(e.ours > last);
    last = e.ours;
  }

  const auto pole = sep_compare_forms(m, cplx(0.0, 1.0 - 1e-9));
  REQUIRE(pole.ours < 1e-6);
  REQUIRE(pole.gw < 1e-6);
}
