#ifndef CPIPE_CONFIG_HPP
#define CPIPE_CONFIG_HPP

#include "cpipe/coupling.hpp"
#include "cpipe/pressure.hpp"
#include "cpipe/station.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace cpipe {

/// Flat dotted key = value configuration; '#' starts a comment.
struct RunConfig {
  // geometry
  std::string geometry_kind = "straight";  // straight | arc | helix | sampled
  double length = 1.0;
  double arc_radius = 2.0;
  double helix_a = 3.0;
  double helix_b = 4.0;
  std::filesystem::path samples;

  double epsilon = 0.1;
  FluidParams fluid;

  // wall: R0(s) = R0 * (1 + profile_slope * s)^profile_exponent
  std::string wall_law = "rigid";  // rigid | elastic | prescribed
  double R0 = 1.0;
  double profile_slope = 0.0;
  double profile_exponent = 1.0;
  double E = 1.0e6;
  double h0 = 0.1;
  double pe = 0.0;
  double rate = 0.0;

  PressureBC bc;
  BodyForce body;

  std::size_t n_s1 = 101;
  std::size_t n_disc = 16;

  bool steady = true;
  double t_end = 0.0;
  double dt = 0.1;

  int order = 2;
  std::vector<double> stations;  // s1 values; empty means the midpoint
  std::vector<std::string> fields = {"u1_0", "u1_1", "u1_2", "U1", "U2", "p2", "p3"};
  std::filesystem::path out_dir = "out";

  std::vector<double> sweep_kappa;
  std::vector<double> sweep_tau;
  std::vector<double> sweep_epsilon;

  CouplingOptions coupling;

  std::string source = "<inline>";

  void validate() const;
  std::vector<double> rest_profile(const std::vector<double>& s) const;
};

RunConfig parse_config(std::istream& in, const std::string& source_name);
RunConfig load_config(const std::filesystem::path& path);
/// key = value lines, fixed order, for reports.
std::string dump_config(const RunConfig& cfg);

extern const std::vector<std::string> kFieldNames;

}  // namespace cpipe

#endif
