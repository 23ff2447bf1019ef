#ifndef CPIPE_GRID_HPP
#define CPIPE_GRID_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace cpipe {

/// Uniform grid on [0, length] with n nodes (n - 1 cells).
class UniformGrid {
 public:
  UniformGrid() = default;
  UniformGrid(double length, std::size_t nodes);

  double length() const { return length_; }
  std::size_t size() const { return nodes_; }
  double h() const { return length_ / static_cast<double>(nodes_ - 1); }
  double node(std::size_t i) const { return h() * static_cast<double>(i); }
  std::vector<double> nodes() const;
  /// Index of the node closest to s (clamped to the grid).
  std::size_t nearest(double s) const;

 private:
  double length_ = 1.0;
  std::size_t nodes_ = 2;
};

/// Second-order first derivative: centered inside, one-sided three-point at the ends.
std::vector<double> fd_first(std::span<const double> f, double h);
/// Second-order second derivative: centered inside, one-sided four-point at the ends.
std::vector<double> fd_second(std::span<const double> f, double h);

/// Linear interpolation of nodal values at s.
double interpolate(const UniformGrid& grid, std::span<const double> f, double s);

}  // namespace cpipe

#endif
