#pragma once
#include "polewave/grid.hpp"
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polewave {

// Units: hbar = 2m = 1 throughout, so E = k^2 and the radial equation is
//   u'' + (k^2 - l(l+1)/r^2 - U(r)) u = 0,
// with all user input given directly as U = 2mV (1/length^2).

enum class PotentialKind { free, square_well, exponential, gaussian, tabulated };

std::string to_string(PotentialKind kind);
PotentialKind parse_kind(const std::string &name);

struct PotentialSpec {
  PotentialKind kind = PotentialKind::free;
  //! "depth" (U0 >= 0) and "radius" (a > 0) for the analytic wells.
  std::map<std::string, double> params{};
  //! U is exactly zero beyond this radius.
  std::optional<double> cutoff{};
  //! Tabulated samples (r ascending, U); filled from `file` by the loader.
  std::vector<double> table_r{};
  std::vector<double> table_u{};
  std::filesystem::path file{};
};

//! Parse the JSON potential description, e.g.
//!   {"kind": "square_well", "params": {"depth": 4.0, "radius": 1.0}}
//!   {"kind": "tabulated", "file": "well.csv"}
//! Relative tabulated paths are resolved against `base_dir`.
PotentialSpec parse_potential_json(const std::string &text,
                                   const std::filesystem::path &base_dir = {});
PotentialSpec load_potential_file(const std::filesystem::path &path);

//! Two-column CSV "r,U" (blank lines, '#' comments and a header row allowed).
std::pair<std::vector<double>, std::vector<double>>
read_table_csv(const std::filesystem::path &path);

//! Immutable evaluator r -> U(r). Safe to share between threads.
class Potential {
public:
  Potential() = default;

  double operator()(double r) const;
  //! One-sided limits (U(r-), U(r+)); they differ only at breakpoints.
  std::pair<double, double> limits(double r) const;

  PotentialKind kind() const { return m_spec.kind; }
  const PotentialSpec &spec() const { return m_spec; }
  std::string describe() const;

  //! Radii where U jumps.
  const std::vector<double> &breakpoints() const { return m_breaks; }
  //! Radius beyond which U == 0 exactly, if the potential has finite range.
  std::optional<double> range() const { return m_range; }
  //! Length scale used for default k windows etc.
  double length_scale() const;

  //! Taylor coefficients of U about r = 0, degree 0..max_degree.
  std::vector<double> origin_series(int max_degree) const;

  friend Potential make_potential(const PotentialSpec &spec);

private:
  double eval(double r) const;
  double param(const char *name) const;

  PotentialSpec m_spec{};
  std::vector<double> m_breaks{};
  std::optional<double> m_range{};
  struct Table;
  std::shared_ptr<const Table> m_table{};
};

Potential make_potential(const PotentialSpec &spec);

//! Convenience constructors for the analytic wells (U = -depth * shape).
Potential free_potential();
Potential square_well(double depth, double radius);
Potential exponential_well(double depth, double radius,
                           std::optional<double> cutoff = std::nullopt);
Potential gaussian_well(double depth, double radius,
                        std::optional<double> cutoff = std::nullopt);

//! int_0^{R_max} r |U(r)| dr by composite Simpson on the grid.
double check_integrability(const Potential &p, const Grid &grid);
//! Default bound above which the integrability moment is reported as suspect.
inline constexpr double kIntegrabilityWarning = 1.0e6;

//! Grid aligned to the first breakpoint of p (if any).
Grid grid_for(const Potential &p, double h, double r_max);

} // namespace polewave
