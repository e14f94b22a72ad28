#include "polewave/potential.hpp"
#include "polewave/error.hpp"
#include "polewave/numerics.hpp"
#include <cmath>
using std::isnan; // pchip in Boost 1.74 calls isnan unqualified
#include <boost/math/interpolators/pchip.hpp>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

namespace polewave {

using pchip = boost::math::interpolators::pchip<std::vector<double>>;

struct Potential::Table {
  pchip interp;
  double r_first, r_last;
  std::vector<double> first_cubic; // Taylor coefficients about r = 0
};

std::string to_string(PotentialKind kind) {
  switch (kind) {
  case PotentialKind::free:
    return "free";
  case PotentialKind::square_well:
    return "square_well";
  case PotentialKind::exponential:
    return "exponential";
  case PotentialKind::gaussian:
    return "gaussian";
  case PotentialKind::tabulated:
    return "tabulated";
  }
  return "unknown";
}

PotentialKind parse_kind(const std::string &name) {
  for (auto k : {PotentialKind::free, PotentialKind::square_well,
                 PotentialKind::exponential, PotentialKind::gaussian,
                 PotentialKind::tabulated})
    if (to_string(k) == name)
      return k;
  throw validation_error("unknown potential kind \"" + name + "\"");
}

std::pair<std::vector<double>, std::vector<double>>
read_table_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw validation_error("cannot open tabulated potential " + path.string());
  std::vector<double> rs, us;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos)
      line.erase(h);
    for (auto &c : line)
      if (c == ',' || c == ';' || c == '\t')
        c = ' ';
    std::istringstream ss(line);
    double r, u;
    if (!(ss >> r))
      continue; // blank or header
    if (!(ss >> u))
      throw validation_error("tabulated potential: malformed line \"" + line +
                             "\"");
    rs.push_back(r);
    us.push_back(u);
  }
  return {std::move(rs), std::move(us)};
}

PotentialSpec parse_potential_json(const std::string &text,
                                   const std::filesystem::path &base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw validation_error(std::string("malformed potential JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw validation_error("potential JSON needs a string field \"kind\"");
  PotentialSpec spec;
  spec.kind = parse_kind(j["kind"].get<std::string>());
  if (j.contains("params")) {
    if (!j["params"].is_object())
      throw validation_error("\"params\" must be an object");
    for (auto &[key, val] : j["params"].items()) {
      if (!val.is_number())
        throw validation_error("parameter \"" + key + "\" is not a number");
      spec.params[key] = val.get<double>();
    }
  }
  if (j.contains("cutoff")) {
    if (!j["cutoff"].is_number())
      throw validation_error("\"cutoff\" must be a number");
    spec.cutoff = j["cutoff"].get<double>();
  }
  if (spec.kind == PotentialKind::tabulated) {
    if (!j.contains("file") || !j["file"].is_string())
      throw validation_error("tabulated potential needs a \"file\"");
    spec.file = j["file"].get<std::string>();
    if (spec.file.is_relative() && !base_dir.empty())
      spec.file = base_dir / spec.file;
    auto [rs, us] = read_table_csv(spec.file);
    spec.table_r = std::move(rs);
    spec.table_u = std::move(us);
  }
  return spec;
}

PotentialSpec load_potential_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw validation_error("cannot open potential spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_potential_json(ss.str(), path.parent_path());
}

double Potential::param(const char *name) const {
  return m_spec.params.at(name);
}

Potential make_potential(const PotentialSpec &spec) {
  Potential p;
  p.m_spec = spec;
  auto need = [&](const char *name, bool strictly_positive) {
    auto it = spec.params.find(name);
    if (it == spec.params.end())
      throw validation_error(to_string(spec.kind) + ": missing parameter \"" +
                             name + "\"");
    const double v = it->second;
    if (!std::isfinite(v) || v < 0.0 || (strictly_positive && v == 0.0))
      throw validation_error(to_string(spec.kind) + ": parameter \"" + name +
                             "\" must be " +
                             (strictly_positive ? "positive" : "non-negative"));
  };
  if (spec.cutoff && !(*spec.cutoff > 0.0))
    throw validation_error("cutoff must be positive");

  switch (spec.kind) {
  case PotentialKind::free:
    p.m_range = 0.0;
    break;
  case PotentialKind::square_well: {
    need("depth", false);
    need("radius", true);
    const double a = p.param("radius");
    const double edge = spec.cutoff ? std::min(a, *spec.cutoff) : a;
    p.m_range = edge;
    if (p.param("depth") != 0.0)
      p.m_breaks.push_back(edge);
    break;
  }
  case PotentialKind::exponential:
  case PotentialKind::gaussian:
    need("depth", false);
    need("radius", true);
    if (spec.cutoff) {
      p.m_range = *spec.cutoff;
      p.m_breaks.push_back(*spec.cutoff);
    }
    break;
  case PotentialKind::tabulated: {
    const auto &r = spec.table_r;
    const auto &u = spec.table_u;
    if (r.size() != u.size() || r.size() < 4)
      throw validation_error("tabulated potential needs at least 4 samples");
    if (r.front() < 0.0)
      throw validation_error("tabulated potential: negative radius");
    for (std::size_t i = 1; i < r.size(); ++i)
      if (!(r[i] > r[i - 1]))
        throw validation_error("tabulated potential: non-monotone grid");
    auto table = std::make_shared<Potential::Table>(Potential::Table{
        pchip(std::vector<double>(r), std::vector<double>(u)), r.front(),
        r.back(), {}});
    // Hermite cubic of the first interval, expanded about r = 0 (only used
    // when the table starts at the origin; otherwise U is held constant).
    if (r.front() == 0.0) {
      const double h = r[1] - r[0];
      const double y0 = u[0], y1 = u[1];
      const double s0 = table->interp.prime(r[0]);
      const double s1 = table->interp.prime(r[1]);
      const double c2 = (3.0 * (y1 - y0) / h - 2.0 * s0 - s1) / h;
      const double c3 = (s0 + s1 - 2.0 * (y1 - y0) / h) / (h * h);
      table->first_cubic = {y0, s0, c2, c3};
    } else {
      table->first_cubic = {u.front()};
    }
    p.m_table = std::move(table);
    const double last = spec.cutoff ? std::min(r.back(), *spec.cutoff) : r.back();
    p.m_range = last;
    if (p(std::nextafter(last, 0.0)) != 0.0)
      p.m_breaks.push_back(last);
    break;
  }
  }
  return p;
}

double Potential::eval(double r) const {
  switch (m_spec.kind) {
  case PotentialKind::free:
    return 0.0;
  case PotentialKind::square_well:
    return r < param("radius") ? -param("depth") : 0.0;
  case PotentialKind::exponential:
    return -param("depth") * std::exp(-r / param("radius"));
  case PotentialKind::gaussian: {
    const double x = r / param("radius");
    return -param("depth") * std::exp(-x * x);
  }
  case PotentialKind::tabulated:
    if (r > m_table->r_last)
      return 0.0;
    return m_table->interp(std::max(r, m_table->r_first));
  }
  return 0.0;
}

double Potential::operator()(double r) const {
  if (m_range && r > *m_range)
    return 0.0;
  if (m_range && r == *m_range && !m_breaks.empty() && m_breaks.back() == r)
    return 0.0; // right-continuous at the outer edge
  return eval(r);
}

std::pair<double, double> Potential::limits(double r) const {
  for (double b : m_breaks)
    if (r == b)
      return {eval(std::nextafter(r, 0.0)), (*this)(std::nextafter(
                                                  r, std::numeric_limits<double>::infinity()))};
  const double v = (*this)(r);
  return {v, v};
}

double Potential::length_scale() const {
  if (auto it = m_spec.params.find("radius"); it != m_spec.params.end())
    return it->second;
  if (m_range && *m_range > 0.0)
    return *m_range;
  return 1.0;
}

std::vector<double> Potential::origin_series(int max_degree) const {
  std::vector<double> c(std::size_t(max_degree) + 1, 0.0);
  switch (m_spec.kind) {
  case PotentialKind::free:
    break;
  case PotentialKind::square_well:
    c[0] = -param("depth");
    break;
  case PotentialKind::exponential: {
    const double a = param("radius");
    double term = -param("depth");
    for (int m = 0; m <= max_degree; ++m) {
      c[std::size_t(m)] = term;
      term *= -1.0 / (a * (m + 1));
    }
    break;
  }
  case PotentialKind::gaussian: {
    const double a2 = param("radius") * param("radius");
    double term = -param("depth");
    for (int j = 0; 2 * j <= max_degree; ++j) {
      c[std::size_t(2 * j)] = term;
      term *= -1.0 / (a2 * (j + 1));
    }
    break;
  }
  case PotentialKind::tabulated:
    for (std::size_t m = 0; m < m_table->first_cubic.size() && m < c.size(); ++m)
      c[m] = m_table->first_cubic[m];
    break;
  }
  return c;
}

std::string Potential::describe() const {
  std::ostringstream os;
  os << to_string(m_spec.kind);
  for (auto &[k, v] : m_spec.params)
    os << ' ' << k << '=' << v;
  if (m_spec.cutoff)
    os << " cutoff=" << *m_spec.cutoff;
  if (m_spec.kind == PotentialKind::tabulated)
    os << " file=" << m_spec.file.filename().string();
  return os.str();
}

Potential free_potential() { return make_potential({}); }

Potential square_well(double depth, double radius) {
  PotentialSpec s;
  s.kind = PotentialKind::square_well;
  s.params = {{"depth", depth}, {"radius", radius}};
  return make_potential(s);
}

Potential exponential_well(double depth, double radius,
                           std::optional<double> cutoff) {
  PotentialSpec s;
  s.kind = PotentialKind::exponential;
  s.params = {{"depth", depth}, {"radius", radius}};
  s.cutoff = cutoff;
  return make_potential(s);
}

Potential gaussian_well(double depth, double radius,
                        std::optional<double> cutoff) {
  PotentialSpec s;
  s.kind = PotentialKind::gaussian;
  s.params = {{"depth", depth}, {"radius", radius}};
  s.cutoff = cutoff;
  return make_potential(s);
}

namespace {
std::vector<std::size_t> break_nodes(const Potential &p, const Grid &g) {
  std::vector<std::size_t> out;
  for (double b : p.breakpoints())
    if (auto j = g.node_at(b))
      out.push_back(*j);
  return out;
}
} // namespace

double check_integrability(const Potential &p, const Grid &grid) {
  const auto breaks = break_nodes(p, grid);
  return integrate_segments<double>(
      grid.h(), grid.n(), breaks, [&](std::size_t j, bool from_right) {
        const double r = grid.r(j);
        auto [lo, hi] = p.limits(r);
        return r * std::abs(from_right ? hi : lo);
      });
}

Grid grid_for(const Potential &p, double h, double r_max) {
  std::optional<double> b;
  if (!p.breakpoints().empty())
    b = p.breakpoints().front();
  return Grid::aligned(h, r_max, b);
}

} // namespace polewave
