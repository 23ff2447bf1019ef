#ifndef CPIPE_WALL_HPP
#define CPIPE_WALL_HPP

#include "cpipe/grid.hpp"

#include <vector>

namespace cpipe {

/// Scaled wall radius R(t, s1) on the s1 grid with its derivatives. The
/// physical radius is epsilon * R.
struct WallState {
  UniformGrid grid;
  std::vector<double> R;
  std::vector<double> dR;   // dR/ds1
  std::vector<double> d2R;  // d2R/ds1^2
  std::vector<double> Rt;   // dR/dt
  double t = 0.0;

  /// Builds the state from nodal radii; s1-derivatives by centered differences
  /// (one-sided at the ends). Throws GeometryError unless R > 0 everywhere.
  static WallState from_radius(const UniformGrid& grid, std::vector<double> R, std::vector<double> Rt,
                               double t);
  /// Static wall, dR/dt = 0.
  static WallState rigid(const UniformGrid& grid, std::vector<double> R, double t = 0.0);

  double max_radius() const;
};

}  // namespace cpipe

#endif
