#pragma once
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace polewave {

//! Uniform radial grid r_j = j*h, j = 0..n.
class Grid {
public:
  Grid(double h, std::size_t n);

  //! Grid with step close to h_target whose last point is at least r_max.
  //! If a breakpoint is given, h is shrunk so that it falls on an even node
  //! (keeps Numerov and Simpson panels on smooth segments).
  static Grid aligned(double h_target, double r_max,
                      std::optional<double> breakpoint = std::nullopt);

  double h() const { return m_h; }
  std::size_t n() const { return m_n; }
  std::size_t size() const { return m_n + 1; }
  double r(std::size_t j) const { return double(j) * m_h; }
  double r_max() const { return double(m_n) * m_h; }

  //! Index of the node nearest to r (clamped to [0, n]).
  std::size_t nearest(double r) const;
  //! Node index exactly at r (within 1e-9 h), if any.
  std::optional<std::size_t> node_at(double r) const;

  std::vector<double> points() const;

  bool operator==(const Grid &o) const { return m_h == o.m_h && m_n == o.m_n; }

private:
  double m_h;
  std::size_t m_n;
};

} // namespace polewave
