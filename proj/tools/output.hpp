#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace polewave::cli {

enum class Format { csv, json };

using Cell = std::variant<double, long long, std::string>;

//! One output table: fixed columns, ordered rows, and a verdict block.
struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> verdict;
  std::vector<std::string> notes;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
  void set(const std::string &key, Cell value) {
    verdict.emplace_back(key, std::move(value));
  }
};

struct Metadata {
  std::string version;
  std::string config_hash;
  std::string potential;
};

//! %.17g, with nan/inf spelled out and -0 written as 0.
std::string format_number(double x);

std::string render(const Table &t, const Metadata &meta, Format format);
//! Whitespace-separated columns with a '#' header (gnuplot-compatible).
std::string render_plot(const Table &t, const Metadata &meta);

//! 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string &bytes);

//! Worker count: POLEWAVE_THREADS if set (>= 1), else the hardware count.
unsigned worker_count();

//! Calls fn(i) for i in [0, n) on up to worker_count() threads. Results are
//! stored by index; the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

} // namespace polewave::cli
