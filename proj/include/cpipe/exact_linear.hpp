#ifndef CPIPE_EXACT_LINEAR_HPP
#define CPIPE_EXACT_LINEAR_HPP

#include "cpipe/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace cpipe {

/// Outcome of an exact Gauss-Jordan solve of a (possibly overdetermined) system.
struct ExactSolveResult {
  enum class Status { unique, singular, inconsistent };
  Status status = Status::singular;
  std::size_t rank = 0;
  std::vector<Rational> x;  // filled only when status == unique
};

/// Solves A x = b exactly. A is row-major with `cols` unknowns; extra rows
/// must be consistent.
inline ExactSolveResult solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                                    std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }

  ExactSolveResult out;
  out.rank = r;
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) {
      out.status = ExactSolveResult::Status::inconsistent;
      return out;
    }
  }
  if (r < cols) {
    out.status = ExactSolveResult::Status::singular;
    return out;
  }
  out.status = ExactSolveResult::Status::unique;
  out.x.assign(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) out.x[pivot_col[i]] = b[i];
  return out;
}

}  // namespace cpipe

#endif
