#include "cpipe/export.hpp"

#include "cpipe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace cpipe {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string(), "cli");
  return out;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// Blue-white-red, t in [-1, 1].
std::string color(double t) {
  t = std::clamp(t, -1.0, 1.0);
  int r = 255, g = 255, b = 255;
  if (t >= 0) {
    g = b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  } else {
    r = g = static_cast<int>(std::lround(255.0 * (1.0 + t)));
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

constexpr double kSize = 420.0;
constexpr double kCenter = 210.0;
constexpr double kScale = 180.0;

double px(double z2) { return kCenter + kScale * z2; }
double py(double z3) { return kCenter - kScale * z3; }

void svg_header(std::ostream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize + 40
     << "\" viewBox=\"0 0 " << kSize << " " << kSize + 40 << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kCenter << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << title << "</text>\n";
}

void svg_footer(std::ostream& os, const std::string& caption) {
  os << "<circle cx=\"" << kCenter << "\" cy=\"" << kCenter << "\" r=\"" << kScale
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
     << "<text x=\"" << kCenter << "\" y=\"" << kSize + 25
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << caption << "</text>\n"
     << "</svg>\n";
}

}  // namespace

double DiscGrid::s3(std::size_t j) const { return (static_cast<double>(j) + 0.5) / static_cast<double>(n_disc); }
double DiscGrid::s2(std::size_t k) const { return 2.0 * kPi * static_cast<double>(k) / static_cast<double>(angular()); }

std::vector<ScalarRow> sample_field(const DiscPoly<double>& f, const DiscGrid& grid) {
  if (grid.n_disc < 8) throw ConfigError("disc grid needs at least 8 radial nodes", "cli");
  std::vector<ScalarRow> rows;
  rows.reserve(grid.radial() * grid.angular());
  for (std::size_t j = 0; j < grid.radial(); ++j) {
    for (std::size_t k = 0; k < grid.angular(); ++k) {
      const double z2 = grid.s3(j) * std::cos(grid.s2(k));
      const double z3 = grid.s3(j) * std::sin(grid.s2(k));
      rows.push_back({z2, z3, f.evaluate(z2, z3)});
    }
  }
  return rows;
}

std::vector<VectorRow> sample_field(const VecPoly<double>& f, const DiscGrid& grid) {
  if (grid.n_disc < 8) throw ConfigError("disc grid needs at least 8 radial nodes", "cli");
  std::vector<VectorRow> rows;
  rows.reserve(grid.radial() * grid.angular());
  for (std::size_t j = 0; j < grid.radial(); ++j) {
    for (std::size_t k = 0; k < grid.angular(); ++k) {
      const double z2 = grid.s3(j) * std::cos(grid.s2(k));
      const double z3 = grid.s3(j) * std::sin(grid.s2(k));
      rows.push_back({z2, z3, f.x.evaluate(z2, z3), f.y.evaluate(z2, z3)});
    }
  }
  return rows;
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_samples_csv(const fs::path& path, const std::vector<ScalarRow>& rows) {
  auto out = open_out(path);
  out << "z2,z3,value\n";
  for (const auto& r : rows) out << format_number(r[0]) << ',' << format_number(r[1]) << ',' << format_number(r[2]) << '\n';
}

void write_samples_csv(const fs::path& path, const std::vector<VectorRow>& rows) {
  auto out = open_out(path);
  out << "z2,z3,v2,v3\n";
  for (const auto& r : rows) {
    out << format_number(r[0]) << ',' << format_number(r[1]) << ',' << format_number(r[2]) << ','
        << format_number(r[3]) << '\n';
  }
}

namespace {

void write_terms(std::ostream& os, const char* comp, const DiscPoly<double>& f) {
  for (const auto& [mn, c] : f.terms()) {
    os << comp << ',' << mn.first << ',' << mn.second << ',' << format_number(c) << '\n';
  }
}

std::map<std::string, DiscPoly<double>> read_terms(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string(), "cli");
  std::string line;
  std::getline(in, line);
  if (line != "component,m,n,coefficient") throw ConfigError(path.string() + ": unexpected header", "cli");
  std::map<std::string, DiscPoly<double>> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string comp, m, n, c;
    if (!std::getline(ss, comp, ',') || !std::getline(ss, m, ',') || !std::getline(ss, n, ',') ||
        !std::getline(ss, c)) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": malformed row", "cli");
    }
    out[comp].add_term(std::stoi(m), std::stoi(n), std::stod(c));
  }
  return out;
}

}  // namespace

void write_poly_csv(const fs::path& path, const DiscPoly<double>& f) {
  auto out = open_out(path);
  out << "component,m,n,coefficient\n";
  write_terms(out, "s", f);
}

void write_poly_csv(const fs::path& path, const VecPoly<double>& f) {
  auto out = open_out(path);
  out << "component,m,n,coefficient\n";
  write_terms(out, "x", f.x);
  write_terms(out, "y", f.y);
}

DiscPoly<double> read_scalar_poly_csv(const fs::path& path) {
  auto t = read_terms(path);
  return t["s"];
}

VecPoly<double> read_vector_poly_csv(const fs::path& path) {
  auto t = read_terms(path);
  return {t["x"], t["y"]};
}

void write_heatmap_svg(const fs::path& path, const std::vector<ScalarRow>& rows, const DiscGrid& grid,
                       const std::string& title) {
  double vmax = 0.0, vmin = 0.0;
  for (const auto& r : rows) {
    vmax = std::max(vmax, r[2]);
    vmin = std::min(vmin, r[2]);
  }
  const double scale = std::max(std::abs(vmax), std::abs(vmin));
  auto out = open_out(path);
  svg_header(out, title);
  const double dr = 1.0 / static_cast<double>(grid.radial());
  const double da = 2.0 * kPi / static_cast<double>(grid.angular());
  for (std::size_t j = 0; j < grid.radial(); ++j) {
    const double r0 = static_cast<double>(j) * dr, r1 = r0 + dr;
    for (std::size_t k = 0; k < grid.angular(); ++k) {
      const double a0 = grid.s2(k) - 0.5 * da, a1 = a0 + da;
      const double v = rows[j * grid.angular() + k][2];
      const std::string fill = scale > 0.0 ? color(v / scale) : color(0.0);
      out << "<polygon points=\"" << fixed(px(r0 * std::cos(a0))) << ',' << fixed(py(r0 * std::sin(a0))) << ' '
          << fixed(px(r1 * std::cos(a0))) << ',' << fixed(py(r1 * std::sin(a0))) << ' '
          << fixed(px(r1 * std::cos(a1))) << ',' << fixed(py(r1 * std::sin(a1))) << ' '
          << fixed(px(r0 * std::cos(a1))) << ',' << fixed(py(r0 * std::sin(a1))) << "\" fill=\"" << fill
          << "\" stroke=\"" << fill << "\" stroke-width=\"0.5\"/>\n";
    }
  }
  char cap[128];
  std::snprintf(cap, sizeof cap, "min %.6g  max %.6g  (blue < 0 < red)", vmin, vmax);
  svg_footer(out, cap);
}

void write_quiver_svg(const fs::path& path, const std::vector<VectorRow>& rows, const DiscGrid& grid,
                      const std::string& title) {
  double vmax = 0.0;
  for (const auto& r : rows) vmax = std::max(vmax, std::hypot(r[2], r[3]));
  auto out = open_out(path);
  svg_header(out, title);
  const double arrow = 0.9 / static_cast<double>(grid.radial());  // longest arrow, disc units
  // every other ring and every other angle keeps the plot readable
  for (std::size_t j = 0; j < grid.radial(); j += 2) {
    for (std::size_t k = 0; k < grid.angular(); k += 2) {
      const auto& r = rows[j * grid.angular() + k];
      const double mag = std::hypot(r[2], r[3]);
      if (vmax == 0.0 || mag < 1e-3 * vmax) {
        out << "<circle cx=\"" << fixed(px(r[0])) << "\" cy=\"" << fixed(py(r[1]))
            << "\" r=\"1\" fill=\"gray\"/>\n";
        continue;
      }
      const double L = arrow * mag / vmax;
      const double ux = r[2] / mag, uy = r[3] / mag;
      const double x1 = r[0] + L * ux, y1 = r[1] + L * uy;
      const double hx = 0.35 * L, hw = 0.2 * L;
      out << "<line x1=\"" << fixed(px(r[0])) << "\" y1=\"" << fixed(py(r[1])) << "\" x2=\"" << fixed(px(x1))
          << "\" y2=\"" << fixed(py(y1)) << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
          << "<polygon points=\"" << fixed(px(x1)) << ',' << fixed(py(y1)) << ' '
          << fixed(px(x1 - hx * ux - hw * uy)) << ',' << fixed(py(y1 - hx * uy + hw * ux)) << ' '
          << fixed(px(x1 - hx * ux + hw * uy)) << ',' << fixed(py(y1 - hx * uy - hw * ux))
          << "\" fill=\"black\"/>\n";
    }
  }
  char cap[96];
  std::snprintf(cap, sizeof cap, "max |v| %.6g", vmax);
  svg_footer(out, cap);
}

int field_min_order(const std::string& name) {
  if (name == "u1_0") return 0;
  if (name == "u1_1" || name == "U1" || name == "p2") return 1;
  if (name == "u1_2" || name == "U2" || name == "p3") return 2;
  return -1;
}

bool field_is_vector(const std::string& name) { return name == "U1" || name == "U2"; }

DiscPoly<double> scalar_field(const ExpansionFields<double>& f, const std::string& name) {
  if (name == "u1_0") return f.u1_0;
  if (name == "u1_1") return f.u1_1;
  if (name == "u1_2") return f.u1_2;
  if (name == "p2") return f.p2;
  if (name == "p3") return f.p3;
  throw ConfigError("unknown scalar field " + name, "cli");
}

VecPoly<double> vector_field(const ExpansionFields<double>& f, const std::string& name) {
  if (name == "U1") return f.U1;
  if (name == "U2") return f.U2;
  throw ConfigError("unknown vector field " + name, "cli");
}

namespace {

double max_sample_diff(const DiscPoly<double>& a, const DiscPoly<double>& b, const DiscGrid& g) {
  double m = 0.0;
  const auto ra = sample_field(a, g), rb = sample_field(b, g);
  for (std::size_t i = 0; i < ra.size(); ++i) m = std::max(m, std::abs(ra[i][2] - rb[i][2]));
  return m;
}

}  // namespace

ExportSummary export_fields(const RunResult& run, const fs::path& dir) {
  ExportSummary sum;
  const DiscGrid grid{run.config.n_disc};
  for (std::size_t idx = 0; idx < run.output_nodes.size(); ++idx) {
    const std::size_t node = run.output_nodes[idx];
    const auto& fields = run.fields[node];
    const fs::path sdir = dir / ("station_" + std::to_string(idx));
    const std::string where = "s1 = " + format_number(run.wall.grid.node(node));
    for (const auto& name : run.config.fields) {
      if (field_min_order(name) > run.config.order) continue;
      const fs::path base = sdir / name;
      if (field_is_vector(name)) {
        const auto f = vector_field(fields, name);
        const auto rows = sample_field(f, grid);
        write_samples_csv(base.string() + ".csv", rows);
        write_poly_csv(base.string() + "_poly.csv", f);
        write_quiver_svg(base.string() + ".svg", rows, grid, name + " at " + where);
        const auto back = read_vector_poly_csv(base.string() + "_poly.csv");
        sum.roundtrip_max_diff =
            std::max({sum.roundtrip_max_diff, max_sample_diff(f.x, back.x, grid), max_sample_diff(f.y, back.y, grid)});
      } else {
        const auto f = scalar_field(fields, name);
        const auto rows = sample_field(f, grid);
        write_samples_csv(base.string() + ".csv", rows);
        write_poly_csv(base.string() + "_poly.csv", f);
        write_heatmap_svg(base.string() + ".svg", rows, grid, name + " at " + where);
        const auto back = read_scalar_poly_csv(base.string() + "_poly.csv");
        sum.roundtrip_max_diff = std::max(sum.roundtrip_max_diff, max_sample_diff(f, back, grid));
      }
      sum.files.push_back(base.string() + ".csv");
      sum.files.push_back(base.string() + "_poly.csv");
      sum.files.push_back(base.string() + ".svg");
    }
    auto out = open_out(sdir / "station.txt");
    const auto& st = run.stations[node];
    out << "node = " << node << "\n"
        << "s1 = " << format_number(run.wall.grid.node(node)) << "\n"
        << "R = " << format_number(st.R) << "\n"
        << "Rt = " << format_number(st.Rt) << "\n"
        << "kappa = " << format_number(st.kappa) << "\n"
        << "tau = " << format_number(st.tau) << "\n"
        << "dp0 = " << format_number(st.dp0) << "\n"
        << "dp1 = " << format_number(st.dp1) << "\n";
    sum.files.push_back(sdir / "station.txt");
  }
  return sum;
}

void export_line_data(const RunResult& run, const fs::path& dir, ExportSummary& summary) {
  {
    auto out = open_out(dir / "line.csv");
    out << "s1,R,dR,d2R,Rt,kappa,tau,p0,dp0,d2p0,d3p0,dtdp0,p1,dp1,p02,dp02,G,Q0,Q1,Q2,A0\n";
    const auto& pe = run.pressures;
    for (std::size_t i = 0; i < run.stations.size(); ++i) {
      const auto& st = run.stations[i];
      const double vals[] = {run.wall.grid.node(i), st.R,       st.dR,          st.d2R,          st.Rt,
                             st.kappa,              st.tau,     pe.p0.p0[i],    st.dp0,          st.d2p0,
                             st.d3p0,               st.dtdp0,   pe.p1.p1[i],    st.dp1,          pe.p02.p02[i],
                             st.dp02,               pe.p02.bracket[i], run.flow.Q0[i], run.flow.Q1[i], run.flow.Q2[i],
                             run.flow.A0[i]};
      for (std::size_t k = 0; k < std::size(vals); ++k) out << (k ? "," : "") << format_number(vals[k]);
      out << '\n';
    }
    summary.files.push_back(dir / "line.csv");
  }
  {
    auto out = open_out(dir / "history.csv");
    out << "t,iterations,coupling_residual,law_residual,bvp_residual,min_R,max_R\n";
    for (const auto& l : run.history) {
      out << format_number(l.t) << ',' << l.iterations << ',' << format_number(l.coupling_residual) << ','
          << format_number(l.law_residual) << ',' << format_number(l.bvp_residual) << ',' << format_number(l.min_R)
          << ',' << format_number(l.max_R) << '\n';
    }
    summary.files.push_back(dir / "history.csv");
  }
  {
    auto out = open_out(dir / "meta.txt");
    out << "program = cpipe\n"
        << "config_source = " << run.config.source << "\n"
        << "curve = " << run.curve.kind_name() << "\n"
        << "wall_law = " << run.config.wall_law << "\n"
        << "time_levels = " << run.history.size() << "\n"
        << "invertibility_bound = " << format_number(run.invertibility_bound) << "\n"
        << "map_warning = " << (run.map_warning ? "true" : "false") << "\n"
        << "\n# effective configuration\n"
        << dump_config(run.config);
    summary.files.push_back(dir / "meta.txt");
  }
}

void write_report(const fs::path& path, const RunResult& run, const VerificationSummary* v,
                  const ExportSummary& exported) {
  auto out = open_out(path);
  out << "order = " << run.config.order << "\n"
      << "epsilon = " << format_number(run.config.epsilon) << "\n"
      << "final_time = " << format_number(run.wall.t) << "\n"
      << "invertibility_bound = " << format_number(run.invertibility_bound) << "\n"
      << "p1_flux = " << format_number(run.pressures.p1.flux) << "\n"
      << "Q0_inlet = " << format_number(run.flow.Q0.front()) << "\n"
      << "Q0_outlet = " << format_number(run.flow.Q0.back()) << "\n"
      << "roundtrip_max_diff = " << format_number(exported.roundtrip_max_diff) << "\n";
  if (v == nullptr) return;
  out << "conservation_Q0_max = " << format_number(v->conservation.max_r0) << "\n"
      << "conservation_Q1_max = " << format_number(v->conservation.max_r1) << "\n"
      << "conservation_Q2_max = " << format_number(v->conservation.max_r2) << "\n"
      << "compatibility_U1_max = " << format_number(v->compatibility.max_u1) << "\n"
      << "compatibility_U2_max = " << format_number(v->compatibility.max_u2) << "\n"
      << "law_residual_max = " << format_number(v->max_law_residual) << "\n"
      << "bvp_residual_max = " << format_number(v->max_bvp_residual) << "\n";
  for (const auto& [node, items] : v->residuals) {
    for (const auto& it : items) {
      std::string key = "residual.node" + std::to_string(node) + "." + it.problem + "." + it.part;
      std::replace(key.begin(), key.end(), ' ', '_');
      out << key << " = " << format_number(it.max_abs) << "\n";
    }
  }
  out << "failures = " << v->failures.size() << "\n";
  for (std::size_t i = 0; i < v->failures.size(); ++i) out << "failure." << i << " = " << v->failures[i] << "\n";
  out << "status = " << (v->passed() ? "PASS" : "FAIL") << "\n";
}

}  // namespace cpipe
