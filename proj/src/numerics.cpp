#include "polewave/numerics.hpp"
#include "polewave/error.hpp"
#include <Eigen/Dense>
#include <string>

namespace polewave {

PolyFit polyfit(std::span<const double> t, std::span<const double> y,
                int order) {
  if (order < 0 || t.size() != y.size())
    throw validation_error("polyfit: bad arguments");
  const auto m = static_cast<Eigen::Index>(t.size());
  const auto p = static_cast<Eigen::Index>(order + 1);
  if (m < p)
    throw validation_error("polyfit: fewer samples than coefficients");
  Eigen::MatrixXd A(m, p);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double x = 1.0;
    for (Eigen::Index c = 0; c < p; ++c) {
      A(i, c) = x;
      x *= t[std::size_t(i)];
    }
    b(i) = y[std::size_t(i)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto &sv = svd.singularValues();
  PolyFit fit;
  fit.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                          : std::numeric_limits<double>::infinity();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-13);
  fit.rank = int(qr.rank());
  if (fit.rank < p)
    throw numerical_error("polyfit: rank-deficient design matrix (rank " +
                          std::to_string(fit.rank) + " < " +
                          std::to_string(p) + ")");
  const Eigen::VectorXd c = qr.solve(b);
  fit.coeffs.assign(c.data(), c.data() + c.size());
  return fit;
}

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2)
    r *= k;
  return r;
}

} // namespace polewave
