#include "polewave/separable.hpp"
#include "polewave/error.hpp"

namespace polewave {

void validate(const SeparableModel &m) {
  if (!(m.alpha > 0.0) || !(m.beta > m.alpha))
    throw validation_error("separable model needs beta > alpha > 0");
}

namespace {

double c_of(const SeparableModel &m) {
  return (m.alpha + m.beta) * (m.alpha + m.beta) + m.beta * m.beta;
}

void guard(const SeparableModel &m, cplx k) {
  const double c = c_of(m);
  if (std::abs(k + I * m.beta) < 1e-14 * m.beta ||
      std::abs(k * k + c) < 1e-14 * c)
    throw validation_error("k is at a pole of the separable Jost function");
}

// F = (k - i alpha) A
cplx A_of(const SeparableModel &m, cplx k) {
  const double a = m.alpha, b = m.beta;
  return (k - I * b) * (k + I * (2.0 * b + a)) /
         ((k + I * b) * (k * k + c_of(m)));
}

cplx A_prime(const SeparableModel &m, cplx k) {
  const double a = m.alpha, b = m.beta;
  const cplx A = A_of(m, k);
  return A * (1.0 / (k - I * b) + 1.0 / (k + I * (2.0 * b + a)) -
              1.0 / (k + I * b) - 2.0 * k / (k * k + c_of(m)));
}

} // namespace

cplx sep_z(const SeparableModel &m, cplx k) {
  validate(m);
  return (k * k + m.alpha * m.alpha) / (4.0 * m.beta * (m.alpha + m.beta));
}

cplx sep_jost(const SeparableModel &m, cplx k) {
  validate(m);
  guard(m, k);
  return (k - I * m.alpha) * A_of(m, k);
}

cplx sep_jost_derivative(const SeparableModel &m, cplx k) {
  validate(m);
  guard(m, k);
  const double a = m.alpha, b = m.beta;
  // A' has 1/(k - i beta); expand the product where that factor vanishes
  if (std::abs(k - I * b) < 1e-12 * b)
    return (k - I * a) * (k + I * (2.0 * b + a)) /
           ((k + I * b) * (k * k + c_of(m)));
  return A_of(m, k) + (k - I * a) * A_prime(m, k);
}

double sep_ratio(const SeparableModel &m, double k) {
  const double z = sep_z(m, k).real();
  return (1.0 + 2.0 * z) /
         (std::sqrt(2.0 * m.alpha * (k * k + m.alpha * m.alpha)) *
          std::sqrt(1.0 + z));
}

SepErrors sep_compare_forms(const SeparableModel &m, cplx k) {
  validate(m);
  guard(m, k);
  const double a = m.alpha;
  const cplx z = sep_z(m, k);
  const cplx core = (1.0 + 2.0 * z) / std::sqrt(1.0 + z);
  // 4 i alpha^2 F / (Fdot 2 alpha (k^2 + alpha^2)) with F = (k - i alpha) A
  const cplx lambda =
      4.0 * I * a * a * A_of(m, k) /
      (sep_jost_derivative(m, k) * 2.0 * a * (k + I * a));
  return {std::abs(core - 1.0), std::abs(core * std::sqrt(lambda) - 1.0)};
}

int sep_upper_zero_count(const SeparableModel &m, double half_width,
                         double height, int points_per_side) {
  validate(m);
  if (!(half_width > 0.0) || !(height > 0.0) || points_per_side < 16)
    throw validation_error("bad contour");
  const cplx corners[5] = {{-half_width, 0.0},
                           {half_width, 0.0},
                           {half_width, height},
                           {-half_width, height},
                           {-half_width, 0.0}};
  double winding = 0.0;
  cplx prev = sep_jost(m, corners[0]);
  for (int s = 0; s < 4; ++s)
    for (int j = 1; j <= points_per_side; ++j) {
      const cplx k = corners[s] + (corners[s + 1] - corners[s]) *
                                      (double(j) / points_per_side);
      const cplx F = sep_jost(m, k);
      winding += std::arg(F / prev);
      prev = F;
    }
  int poles = 0;
  const double rc = std::sqrt(c_of(m));
  if (rc < height)
    ++poles; // k = i sqrt(c)
  return int(std::lround(winding / (2.0 * pi))) + poles;
}

} // namespace polewave
