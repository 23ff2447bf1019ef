#include "cpipe/grid.hpp"

#include "cpipe/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cpipe {

UniformGrid::UniformGrid(double length, std::size_t nodes) : length_(length), nodes_(nodes) {
  if (!(length > 0.0)) throw ConfigError("grid length must be positive");
  if (nodes < 3) throw ConfigError("grid needs at least 3 nodes");
}

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> s(nodes_);
  for (std::size_t i = 0; i < nodes_; ++i) s[i] = node(i);
  s.back() = length_;
  return s;
}

std::size_t UniformGrid::nearest(double s) const {
  const double x = std::clamp(s / h(), 0.0, static_cast<double>(nodes_ - 1));
  return static_cast<std::size_t>(std::lround(x));
}

std::vector<double> fd_first(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

std::vector<double> fd_second(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  const double h2 = h * h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
  if (n >= 4) {
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  } else {
    d[0] = d[1];
    d[n - 1] = d[n - 2];
  }
  return d;
}

double interpolate(const UniformGrid& grid, std::span<const double> f, double s) {
  const double x = std::clamp(s / grid.h(), 0.0, static_cast<double>(grid.size() - 1));
  const auto i = std::min(static_cast<std::size_t>(x), grid.size() - 2);
  const double w = x - static_cast<double>(i);
  return (1.0 - w) * f[i] + w * f[i + 1];
}

}  // namespace cpipe
