// Command-line driver: solve, fields, verify, tables, sweep.

#include "cpipe/appendix.hpp"
#include "cpipe/config.hpp"
#include "cpipe/errors.hpp"
#include "cpipe/export.hpp"
#include "cpipe/pipeline.hpp"
#include "cpipe/polar.hpp"
#include "cpipe/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace cpipe;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kVerifyFailed = 2;

struct Common {
  std::string config;
  std::string out;
  std::optional<int> order;
  bool steady = false;
};

void add_common(CLI::App* sub, Common& c, bool need_config = true) {
  auto* opt = sub->add_option("--config", c.config, "configuration file");
  if (need_config) opt->required();
  sub->add_option("--out", c.out, "output directory (overrides output.dir)");
  sub->add_option("--order", c.order, "expansion order")->check(CLI::IsMember({0, 1, 2}));
  sub->add_flag("--steady", c.steady, "drop time derivatives and skip time stepping");
}

RunConfig load(const Common& c) {
  RunConfig cfg = load_config(c.config);
  if (!c.out.empty()) cfg.out_dir = c.out;
  if (c.order) cfg.order = *c.order;
  if (c.steady) cfg.steady = true;
  cfg.validate();
  return cfg;
}

std::ofstream open(const fs::path& p) {
  fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string(), "cli");
  return out;
}

void print_failures(const VerificationSummary& v) {
  for (const auto& f : v.failures) std::cerr << "verification failed: " << f << "\n";
}

int cmd_solve(const Common& c) {
  const RunConfig cfg = load(c);
  const RunResult run = run_pipeline(cfg);
  if (run.map_warning) {
    std::cerr << "warning: tube map invertibility bound " << run.invertibility_bound << " exceeds 0.5\n";
  }
  const VerificationSummary v = verify_run(run);
  ExportSummary ex = export_fields(run, cfg.out_dir);
  export_line_data(run, cfg.out_dir, ex);
  write_report(cfg.out_dir / "report.txt", run, &v, ex);
  std::cout << "wrote " << ex.files.size() + 1 << " files to " << cfg.out_dir.string() << "\n";
  print_failures(v);
  if (ex.roundtrip_max_diff > 1e-12) {
    std::cerr << "verification failed: field file round trip " << ex.roundtrip_max_diff << "\n";
    return kVerifyFailed;
  }
  return v.passed() ? kOk : kVerifyFailed;
}

int cmd_fields(const Common& c) {
  const RunConfig cfg = load(c);
  const RunResult run = run_pipeline(cfg);
  ExportSummary ex = export_fields(run, cfg.out_dir);
  export_line_data(run, cfg.out_dir, ex);
  std::cout << "wrote " << ex.files.size() << " files to " << cfg.out_dir.string() << "\n";
  return kOk;
}

Station<Rational> exact_station(const Station<double>& s) {
  Station<Rational> r;
  r.R = rationalize(s.R);
  r.dR = rationalize(s.dR);
  r.d2R = rationalize(s.d2R);
  r.Rt = rationalize(s.Rt);
  r.kappa = rationalize(s.kappa);
  r.dkappa = rationalize(s.dkappa);
  r.tau = rationalize(s.tau);
  r.rho = rationalize(s.rho);
  r.nu = rationalize(s.nu);
  r.dp0 = rationalize(s.dp0);
  r.d2p0 = rationalize(s.d2p0);
  r.d3p0 = rationalize(s.d3p0);
  r.dtdp0 = rationalize(s.dtdp0);
  r.dp1 = rationalize(s.dp1);
  r.d2p1 = rationalize(s.d2p1);
  r.p02 = rationalize(s.p02);
  r.dp02 = rationalize(s.dp02);
  r.b01 = rationalize(s.b01);
  r.b02 = rationalize(s.b02);
  r.b03 = rationalize(s.b03);
  return r;
}

int cmd_verify(const Common& c) {
  const RunConfig cfg = load(c);
  const RunResult run = run_pipeline(cfg);
  VerificationSummary v = verify_run(run);
  auto out = open(cfg.out_dir / "verify.txt");
  out << "conservation_Q0_max = " << format_number(v.conservation.max_r0) << "\n"
      << "conservation_Q1_max = " << format_number(v.conservation.max_r1) << "\n"
      << "conservation_Q2_max = " << format_number(v.conservation.max_r2) << "\n"
      << "compatibility_U1_max = " << format_number(v.compatibility.max_u1) << "\n"
      << "compatibility_U2_max = " << format_number(v.compatibility.max_u2) << "\n"
      << "law_residual_max = " << format_number(v.max_law_residual) << "\n"
      << "bvp_residual_max = " << format_number(v.max_bvp_residual) << "\n";

  // Station data rounded to nearby rationals and made consistent must give zero residuals.
  for (std::size_t node : run.output_nodes) {
    const auto items = grouped_order_residuals(make_consistent(exact_station(run.stations[node])));
    std::size_t nonzero = 0;
    for (const auto& it : items) {
      if (!it.exact_zero) {
        ++nonzero;
        v.failures.push_back("exact residual " + it.problem + " " + it.part + " at node " + std::to_string(node));
      }
    }
    out << "exact_residual.node" << node << ".nonzero = " << nonzero << "\n";
  }

  auto conv = open(cfg.out_dir / "convergence.csv");
  conv << "case,n,h,error,order,at_floor\n";
  for (const auto& cs : {nonuniform_p0_case(), nonuniform_p1_case(), nonuniform_p02_case()}) {
    const auto study = run_convergence_study(cs, {50, 100, 200, 400});
    for (const auto& r : study.rows) {
      conv << study.name << ',' << r.n << ',' << format_number(r.h) << ',' << format_number(r.error) << ','
           << format_number(r.order) << ',' << (r.at_floor ? 1 : 0) << '\n';
    }
    out << "convergence." << study.name << ".order = " << format_number(study.observed_order) << "\n";
    if (!study.floor_detected && std::abs(study.observed_order - 2.0) > 0.2) {
      v.failures.push_back("convergence order of " + study.name);
    }
  }
  out << "failures = " << v.failures.size() << "\n";
  for (std::size_t i = 0; i < v.failures.size(); ++i) out << "failure." << i << " = " << v.failures[i] << "\n";
  out << "status = " << (v.passed() ? "PASS" : "FAIL") << "\n";
  print_failures(v);
  std::cout << (v.passed() ? "verification passed" : "verification FAILED") << " (" << (cfg.out_dir / "verify.txt").string()
            << ")\n";
  return v.passed() ? kOk : kVerifyFailed;
}

int cmd_tables(const Common& c) {
  const AppendixReport rep = verify_appendix_tables();
  std::cout << "ansatz system: " << rep.equations << " equations, " << rep.unknowns << " unknowns, rank " << rep.rank
            << (rep.unique ? ", unique solution\n" : ", NOT unique\n");
  for (const auto& row : rep.rows) {
    if (!row.matches_printed) {
      std::cout << row.name << ": printed " << row.printed << "\n" << std::string(row.name.size(), ' ')
                << "  solved  " << row.solved << (row.matches_corrected ? "  (known erratum)" : "  (MISMATCH)") << "\n";
    }
  }
  for (const auto& e : rep.errata) std::cout << "erratum " << e.coefficient << ": printed " << e.printed << ", corrected " << e.corrected << "\n";
  std::cout << rep.rows.size() - rep.mismatches_printed << "/" << rep.rows.size() << " entries match as printed, "
            << rep.rows.size() - rep.mismatches_corrected << "/" << rep.rows.size() << " after errata\n";
  if (!c.out.empty()) {
    auto out = open(fs::path(c.out) / "tables.csv");
    out << "entry,printed,solved,matches_printed,matches_corrected\n";
    for (const auto& row : rep.rows) {
      out << row.name << ",\"" << row.printed << "\",\"" << row.solved << "\"," << row.matches_printed << ','
          << row.matches_corrected << '\n';
    }
  }
  return rep.unique && rep.mismatches_corrected == 0 ? kOk : kVerifyFailed;
}

// Largest cos s2 coefficient of r * (angular component); zero for fields
// mirror-symmetric about the normal axis.
double angular_asymmetry(const VecPoly<double>& U) {
  const auto z2 = DiscPoly<double>::z2(), z3 = DiscPoly<double>::z3();
  const auto polar = to_polar(z2 * U.y - z3 * U.x);
  double m = 0.0;
  for (const auto& [key, c] : polar.terms()) {
    if (std::get<2>(key) == Trig::cos) m = std::max(m, std::abs(c));
  }
  return m;
}

int cmd_sweep(const Common& c) {
  const RunConfig base = load(c);
  auto or_default = [](const std::vector<double>& v, double d) { return v.empty() ? std::vector<double>{d} : v; };
  const auto kappas = or_default(base.sweep_kappa, 0.0);
  const auto taus = or_default(base.sweep_tau, 0.0);
  const auto epsilons = or_default(base.sweep_epsilon, base.epsilon);
  auto out = open(base.out_dir / "sweep.csv");
  out << "kappa,tau,epsilon,status,invertibility_bound,max_u1_1,max_U1,max_U2,U2_angular_asymmetry,verification\n";
  bool all_ok = true;
  for (double kappa : kappas) {
    for (double tau : taus) {
      if (kappa == 0.0 && tau != taus.front()) continue;  // torsion is undefined on a straight line
      for (double eps : epsilons) {
        RunConfig cfg = base;
        cfg.epsilon = eps;
        if (kappa == 0.0) {
          cfg.geometry_kind = "straight";
        } else {
          const double d = kappa * kappa + tau * tau;
          cfg.geometry_kind = "helix";
          cfg.helix_a = kappa / d;
          cfg.helix_b = tau / d;
        }
        out << format_number(kappa) << ',' << format_number(kappa == 0.0 ? 0.0 : tau) << ',' << format_number(eps);
        try {
          const RunResult run = run_pipeline(cfg);
          const VerificationSummary v = verify_run(run);
          const auto& f = run.fields[run.output_nodes.front()];
          out << ",ok," << format_number(run.invertibility_bound) << ',' << format_number(f.u1_1.max_abs_coeff())
              << ',' << format_number(std::max(f.U1.x.max_abs_coeff(), f.U1.y.max_abs_coeff())) << ','
              << format_number(std::max(f.U2.x.max_abs_coeff(), f.U2.y.max_abs_coeff())) << ','
              << format_number(angular_asymmetry(f.U2)) << ',' << (v.passed() ? "PASS" : "FAIL") << '\n';
          all_ok = all_ok && v.passed();
        } catch (const MapError& e) {
          out << ",not_invertible,,,,,,\n";
        }
      }
    }
  }
  std::cout << "wrote " << (base.out_dir / "sweep.csv").string() << "\n";
  return all_ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic flow fields in curved elastic pipes"};
  app.require_subcommand(1);
  Common common;
  auto* solve = app.add_subcommand("solve", "run the full pipeline and write all outputs");
  auto* fields = app.add_subcommand("fields", "sample and export fields only");
  auto* verify = app.add_subcommand("verify", "conservation, compatibility and residual suites");
  auto* tables = app.add_subcommand("tables", "check the Stokes coefficient tables");
  auto* sweep = app.add_subcommand("sweep", "parameter grid over kappa, tau and epsilon");
  for (auto* s : {solve, fields, verify, sweep}) add_common(s, common);
  add_common(tables, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (solve->parsed()) return cmd_solve(common);
    if (fields->parsed()) return cmd_fields(common);
    if (verify->parsed()) return cmd_verify(common);
    if (tables->parsed()) return cmd_tables(common);
    if (sweep->parsed()) return cmd_sweep(common);
  } catch (const Error& e) {
    std::cerr << "cpipe: error [" << e.module() << "]";
    if (!common.config.empty()) std::cerr << " (config " << common.config << ")";
    std::cerr << ": " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "cpipe: error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
