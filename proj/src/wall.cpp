#include "cpipe/wall.hpp"

#include "cpipe/errors.hpp"

#include <algorithm>
#include <string>

namespace cpipe {

WallState WallState::from_radius(const UniformGrid& grid, std::vector<double> R, std::vector<double> Rt,
                                 double t) {
  if (R.size() != grid.size() || Rt.size() != grid.size()) {
    throw GeometryError("wall arrays do not match the s1 grid");
  }
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (!(R[i] > 0.0)) {
      throw GeometryError("wall radius must be positive (R = " + std::to_string(R[i]) +
                          " at s1 = " + std::to_string(grid.node(i)) + ")");
    }
  }
  WallState w;
  w.grid = grid;
  w.dR = fd_first(R, grid.h());
  w.d2R = fd_second(R, grid.h());
  w.R = std::move(R);
  w.Rt = std::move(Rt);
  w.t = t;
  return w;
}

WallState WallState::rigid(const UniformGrid& grid, std::vector<double> R, double t) {
  std::vector<double> zero(R.size(), 0.0);
  return from_radius(grid, std::move(R), std::move(zero), t);
}

double WallState::max_radius() const { return *std::max_element(R.begin(), R.end()); }

}  // namespace cpipe
