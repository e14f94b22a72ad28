#pragma once
#include "output.hpp"
#include <optional>
#include <string>
#include <vector>

namespace polewave::cli {

struct RunConfig {
  std::string command;
  std::string potential_path;
  int ell = 0;
  std::optional<double> kmin, kmax;
  int ksteps = 0; // 0: per-command default
  double h = 0.005;
  std::optional<double> rmax;
  std::optional<int> order;
  std::string rule = "auto";
  int samples = 6;
  double spacing = 0.0;
  std::vector<double> rlist;
  std::optional<double> alpha, beta;
  std::optional<double> amin, amax;
  std::string parity = "even";
  std::string method = "imaginary_axis";
  Format format = Format::csv;
  std::string out;
  std::string plot;

  //! Canonical text of every setting (hashed into the metadata header).
  std::string canonical() const;
};

//! Runs cfg.command and returns the table; throws polewave::Error.
Table run(const RunConfig &cfg, Metadata &meta);

std::vector<std::string> command_names();

} // namespace polewave::cli
