#include "polewave/grid.hpp"
#include "polewave/error.hpp"
#include <cmath>

namespace polewave {

Grid::Grid(double h, std::size_t n) : m_h(h), m_n(n) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw validation_error("grid step must be positive");
  if (n < 8)
    throw validation_error("grid needs at least 8 intervals");
}

Grid Grid::aligned(double h_target, double r_max,
                   std::optional<double> breakpoint) {
  if (!(h_target > 0.0) || !(r_max > h_target))
    throw validation_error("grid requires 0 < h < r_max");
  double h = h_target;
  if (breakpoint && *breakpoint > 0.0) {
    auto m = static_cast<std::size_t>(std::ceil(*breakpoint / h_target - 1e-9));
    if (m % 2)
      ++m;
    m = std::max<std::size_t>(m, 8);
    h = *breakpoint / double(m);
  }
  auto n = static_cast<std::size_t>(std::ceil(r_max / h - 1e-9));
  if (n % 2)
    ++n;
  return Grid(h, n);
}

std::size_t Grid::nearest(double r) const {
  if (r <= 0.0)
    return 0;
  const auto j = static_cast<std::size_t>(std::llround(r / m_h));
  return std::min(j, m_n);
}

std::optional<std::size_t> Grid::node_at(double r) const {
  const double x = r / m_h;
  const double j = std::round(x);
  if (j < 0.0 || j > double(m_n) || std::abs(x - j) > 1e-9)
    return std::nullopt;
  return static_cast<std::size_t>(j);
}

std::vector<double> Grid::points() const {
  std::vector<double> out(size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = r(j);
  return out;
}

} // namespace polewave
