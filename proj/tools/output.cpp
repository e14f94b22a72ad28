#include "output.hpp"
#include <json.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

namespace polewave::cli {

std::string format_number(double x) {
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  if (x == 0.0)
    return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string cell_text(const Cell &c) {
  if (const auto *d = std::get_if<double>(&c))
    return format_number(*d);
  if (const auto *i = std::get_if<long long>(&c))
    return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json cell_json(const Cell &c) {
  if (const auto *d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d))
      return format_number(*d);
    if (*d == 0.0)
      return 0.0;
    return *d;
  }
  if (const auto *i = std::get_if<long long>(&c))
    return *i;
  return std::get<std::string>(c);
}

void header_lines(std::ostream &os, const Table &t, const Metadata &m) {
  os << "# polewave " << m.version << "\n"
     << "# command: " << t.command << "\n"
     << "# config_hash: " << m.config_hash << "\n"
     << "# units: hbar=2m=1\n";
  if (!m.potential.empty())
    os << "# potential: " << m.potential << "\n";
  for (const auto &n : t.notes)
    os << "# note: " << n << "\n";
}

} // namespace

std::string render(const Table &t, const Metadata &meta, Format format) {
  std::ostringstream os;
  if (format == Format::csv) {
    header_lines(os, t, meta);
    for (std::size_t j = 0; j < t.columns.size(); ++j)
      os << (j ? "," : "") << csv_field(t.columns[j]);
    os << "\n";
    for (const auto &row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j)
        os << (j ? "," : "") << csv_field(cell_text(row[j]));
      os << "\n";
    }
    for (const auto &[k, v] : t.verdict)
      os << "# verdict: " << k << "=" << cell_text(v) << "\n";
    return os.str();
  }

  nlohmann::ordered_json doc;
  doc["meta"] = {{"tool", "polewave"},
                 {"version", meta.version},
                 {"command", t.command},
                 {"config_hash", meta.config_hash},
                 {"units", "hbar=2m=1"}};
  if (!meta.potential.empty())
    doc["meta"]["potential"] = meta.potential;
  if (!t.notes.empty())
    doc["meta"]["notes"] = t.notes;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto &row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto &c : row)
      r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  auto verdict = nlohmann::ordered_json::object();
  for (const auto &[k, v] : t.verdict)
    verdict[k] = cell_json(v);
  doc["verdict"] = std::move(verdict);
  return doc.dump(2) + "\n";
}

std::string render_plot(const Table &t, const Metadata &meta) {
  std::ostringstream os;
  header_lines(os, t, meta);
  os << "#";
  for (const auto &c : t.columns)
    os << " " << c;
  os << "\n";
  for (const auto &row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::string s = cell_text(row[j]);
      std::replace(s.begin(), s.end(), ' ', '_');
      os << (j ? " " : "") << s;
    }
    os << "\n";
  }
  return os.str();
}

std::string fnv1a_hex(const std::string &bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

unsigned worker_count() {
  if (const char *env = std::getenv("POLEWAVE_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      return unsigned(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn) {
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(run, w);
    for (auto &th : pool)
      th.join();
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace polewave::cli
