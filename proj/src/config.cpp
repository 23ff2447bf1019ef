#include "cpipe/config.hpp"

#include "cpipe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cpipe {

const std::vector<std::string> kFieldNames = {"u1_0", "u1_1", "u1_2", "U1", "U2", "p2", "p3"};

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_number(const std::string& v, const std::string& where) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(x)) throw ConfigError(where + ": expected a number, got '" + v + "'");
  return x;
}

std::size_t to_count(const std::string& v, const std::string& where) {
  const double x = to_number(v, where);
  if (x < 0 || x != std::floor(x)) throw ConfigError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(where + ": expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v, const std::string& where) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) out.push_back(to_number(item, where));
  return out;
}

// "v" or "t:v, t:v, ..."
BoundaryValue to_boundary(const std::string& v, const std::string& where) {
  if (v.find(':') == std::string::npos) return BoundaryValue(to_number(v, where));
  std::vector<std::pair<double, double>> pts;
  for (const auto& item : split(v, ',')) {
    const auto c = item.find(':');
    if (c == std::string::npos) throw ConfigError(where + ": expected t:value pairs");
    pts.emplace_back(to_number(trim(item.substr(0, c)), where), to_number(trim(item.substr(c + 1)), where));
  }
  try {
    return BoundaryValue::series(std::move(pts));
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

std::string fmt_boundary(const BoundaryValue& b) {
  if (b.is_constant()) return fmt(b.points().front().second);
  std::string s;
  for (std::size_t i = 0; i < b.points().size(); ++i) {
    s += (i ? ", " : "") + fmt(b.points()[i].first) + ":" + fmt(b.points()[i].second);
  }
  return s;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source_name) {
  RunConfig c;
  c.source = source_name;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"geometry.kind", [&](auto& v, auto&) { c.geometry_kind = v; }},
      {"geometry.length", [&](auto& v, auto& w) { c.length = to_number(v, w); }},
      {"geometry.arc_radius", [&](auto& v, auto& w) { c.arc_radius = to_number(v, w); }},
      {"geometry.helix_a", [&](auto& v, auto& w) { c.helix_a = to_number(v, w); }},
      {"geometry.helix_b", [&](auto& v, auto& w) { c.helix_b = to_number(v, w); }},
      {"geometry.samples", [&](auto& v, auto&) { c.samples = v; }},
      {"epsilon", [&](auto& v, auto& w) { c.epsilon = to_number(v, w); }},
      {"fluid.rho", [&](auto& v, auto& w) { c.fluid.rho = to_number(v, w); }},
      {"fluid.nu", [&](auto& v, auto& w) { c.fluid.nu = to_number(v, w); }},
      {"wall.law", [&](auto& v, auto&) { c.wall_law = v; }},
      {"wall.R0", [&](auto& v, auto& w) { c.R0 = to_number(v, w); }},
      {"wall.profile_slope", [&](auto& v, auto& w) { c.profile_slope = to_number(v, w); }},
      {"wall.profile_exponent", [&](auto& v, auto& w) { c.profile_exponent = to_number(v, w); }},
      {"wall.E", [&](auto& v, auto& w) { c.E = to_number(v, w); }},
      {"wall.h0", [&](auto& v, auto& w) { c.h0 = to_number(v, w); }},
      {"wall.pe", [&](auto& v, auto& w) { c.pe = to_number(v, w); }},
      {"wall.rate", [&](auto& v, auto& w) { c.rate = to_number(v, w); }},
      {"bc.p0.inlet", [&](auto& v, auto& w) { c.bc.p0.inlet = to_boundary(v, w); }},
      {"bc.p0.outlet", [&](auto& v, auto& w) { c.bc.p0.outlet = to_boundary(v, w); }},
      {"bc.p1.inlet", [&](auto& v, auto& w) { c.bc.p1.inlet = to_boundary(v, w); }},
      {"bc.p1.outlet", [&](auto& v, auto& w) { c.bc.p1.outlet = to_boundary(v, w); }},
      {"bc.p02.inlet", [&](auto& v, auto& w) { c.bc.p02.inlet = to_boundary(v, w); }},
      {"bc.p02.outlet", [&](auto& v, auto& w) { c.bc.p02.outlet = to_boundary(v, w); }},
      {"body.b01", [&](auto& v, auto& w) { c.body.b01 = to_number(v, w); }},
      {"body.b02", [&](auto& v, auto& w) { c.body.b02 = to_number(v, w); }},
      {"body.b03", [&](auto& v, auto& w) { c.body.b03 = to_number(v, w); }},
      {"grid.n_s1", [&](auto& v, auto& w) { c.n_s1 = to_count(v, w); }},
      {"grid.n_disc", [&](auto& v, auto& w) { c.n_disc = to_count(v, w); }},
      {"time.steady", [&](auto& v, auto& w) { c.steady = to_bool(v, w); }},
      {"time.t_end", [&](auto& v, auto& w) { c.t_end = to_number(v, w); }},
      {"time.dt", [&](auto& v, auto& w) { c.dt = to_number(v, w); }},
      {"output.order", [&](auto& v, auto& w) { c.order = static_cast<int>(to_count(v, w)); }},
      {"output.stations", [&](auto& v, auto& w) { c.stations = to_list(v, w); }},
      {"output.fields", [&](auto& v, auto&) { c.fields = split(v, ','); }},
      {"output.dir", [&](auto& v, auto&) { c.out_dir = v; }},
      {"sweep.kappa", [&](auto& v, auto& w) { c.sweep_kappa = to_list(v, w); }},
      {"sweep.tau", [&](auto& v, auto& w) { c.sweep_tau = to_list(v, w); }},
      {"sweep.epsilon", [&](auto& v, auto& w) { c.sweep_epsilon = to_list(v, w); }},
      {"coupling.max_iterations", [&](auto& v, auto& w) { c.coupling.max_iterations = static_cast<int>(to_count(v, w)); }},
      {"coupling.relaxation", [&](auto& v, auto& w) { c.coupling.relaxation = to_number(v, w); }},
      {"coupling.tolerance", [&](auto& v, auto& w) { c.coupling.tolerance = to_number(v, w); }},
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source_name + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    it->second(value, where + " (" + key + ")");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  RunConfig c = parse_config(in, path.string());
  if (!c.samples.empty() && c.samples.is_relative()) c.samples = path.parent_path() / c.samples;
  return c;
}

void RunConfig::validate() const {
  auto fail = [&](const std::string& m) { throw ConfigError(source + ": " + m); };
  static const std::vector<std::string> kinds = {"straight", "arc", "helix", "sampled"};
  if (std::find(kinds.begin(), kinds.end(), geometry_kind) == kinds.end()) fail("unknown geometry.kind " + geometry_kind);
  if (geometry_kind == "sampled" && samples.empty()) fail("geometry.samples is required for sampled curves");
  if (!(length > 0.0)) fail("geometry.length must be positive");
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (!(fluid.rho > 0.0) || !(fluid.nu > 0.0)) fail("fluid.rho and fluid.nu must be positive");
  static const std::vector<std::string> laws = {"rigid", "elastic", "prescribed"};
  if (std::find(laws.begin(), laws.end(), wall_law) == laws.end()) fail("unknown wall.law " + wall_law);
  if (!(R0 > 0.0)) fail("wall.R0 must be positive");
  if (wall_law == "elastic" && (!(E > 0.0) || !(h0 > 0.0))) fail("wall.E and wall.h0 must be positive");
  if (n_s1 < 8) fail("grid.n_s1 must be at least 8");
  if (n_disc < 8) fail("grid.n_disc must be at least 8");
  if (!steady && (!(dt > 0.0) || t_end < 0.0)) fail("time.dt must be positive and time.t_end non-negative");
  if (order < 0 || order > 2) fail("output.order must be 0, 1 or 2");
  for (const auto& f : fields) {
    if (std::find(kFieldNames.begin(), kFieldNames.end(), f) == kFieldNames.end()) fail("unknown output field " + f);
  }
  for (double s : stations) {
    if (s < 0.0 || s > length) fail("output.stations must lie in [0, geometry.length]");
  }
  if (!(coupling.relaxation > 0.0 && coupling.relaxation <= 1.0)) fail("coupling.relaxation must be in (0, 1]");
  if (coupling.max_iterations < 1) fail("coupling.max_iterations must be positive");
}

std::vector<double> RunConfig::rest_profile(const std::vector<double>& s) const {
  std::vector<double> r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double base = 1.0 + profile_slope * s[i];
    if (!(base > 0.0)) throw ConfigError(source + ": wall profile base 1 + slope*s is not positive");
    r[i] = R0 * std::pow(base, profile_exponent);
  }
  return r;
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  os << "geometry.kind = " << c.geometry_kind << "\n"
     << "geometry.length = " << fmt(c.length) << "\n";
  if (c.geometry_kind == "arc") os << "geometry.arc_radius = " << fmt(c.arc_radius) << "\n";
  if (c.geometry_kind == "helix") {
    os << "geometry.helix_a = " << fmt(c.helix_a) << "\n"
       << "geometry.helix_b = " << fmt(c.helix_b) << "\n";
  }
  if (c.geometry_kind == "sampled") os << "geometry.samples = " << c.samples.string() << "\n";
  os << "epsilon = " << fmt(c.epsilon) << "\n"
     << "fluid.rho = " << fmt(c.fluid.rho) << "\n"
     << "fluid.nu = " << fmt(c.fluid.nu) << "\n"
     << "wall.law = " << c.wall_law << "\n"
     << "wall.R0 = " << fmt(c.R0) << "\n"
     << "wall.profile_slope = " << fmt(c.profile_slope) << "\n"
     << "wall.profile_exponent = " << fmt(c.profile_exponent) << "\n";
  if (c.wall_law == "elastic") {
    os << "wall.E = " << fmt(c.E) << "\n"
       << "wall.h0 = " << fmt(c.h0) << "\n"
       << "wall.pe = " << fmt(c.pe) << "\n";
  }
  if (c.wall_law == "prescribed") os << "wall.rate = " << fmt(c.rate) << "\n";
  os << "bc.p0.inlet = " << fmt_boundary(c.bc.p0.inlet) << "\n"
     << "bc.p0.outlet = " << fmt_boundary(c.bc.p0.outlet) << "\n"
     << "bc.p1.inlet = " << fmt_boundary(c.bc.p1.inlet) << "\n"
     << "bc.p1.outlet = " << fmt_boundary(c.bc.p1.outlet) << "\n"
     << "bc.p02.inlet = " << fmt_boundary(c.bc.p02.inlet) << "\n"
     << "bc.p02.outlet = " << fmt_boundary(c.bc.p02.outlet) << "\n"
     << "body.b01 = " << fmt(c.body.b01) << "\n"
     << "body.b02 = " << fmt(c.body.b02) << "\n"
     << "body.b03 = " << fmt(c.body.b03) << "\n"
     << "grid.n_s1 = " << c.n_s1 << "\n"
     << "grid.n_disc = " << c.n_disc << "\n"
     << "time.steady = " << (c.steady ? "true" : "false") << "\n";
  if (!c.steady) {
    os << "time.t_end = " << fmt(c.t_end) << "\n"
       << "time.dt = " << fmt(c.dt) << "\n";
  }
  os << "output.order = " << c.order << "\n";
  if (!c.stations.empty()) os << "output.stations = " << fmt_list(c.stations) << "\n";
  std::string f;
  for (std::size_t i = 0; i < c.fields.size(); ++i) f += (i ? ", " : "") + c.fields[i];
  os << "output.fields = " << f << "\n";
  if (!c.sweep_kappa.empty()) os << "sweep.kappa = " << fmt_list(c.sweep_kappa) << "\n";
  if (!c.sweep_tau.empty()) os << "sweep.tau = " << fmt_list(c.sweep_tau) << "\n";
  if (!c.sweep_epsilon.empty()) os << "sweep.epsilon = " << fmt_list(c.sweep_epsilon) << "\n";
  return os.str();
}

}  // namespace cpipe
