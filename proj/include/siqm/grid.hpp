#ifndef SIQM_GRID_HPP
#define SIQM_GRID_HPP

// Uniform grids, grid-sampled functions, and the numerical primitives used
// on them: composite Simpson quadrature, finite-difference derivatives,
// node counting, normalization, and overlaps.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "siqm/common.hpp"

namespace siqm {

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

struct Grid {
  double xmin = 0.0;
  double xmax = 1.0;
  int n = 3;  // total point count including both endpoints

  double h() const { return (xmax - xmin) / static_cast<double>(n - 1); }
  double x(int i) const { return xmin + h() * static_cast<double>(i); }

  bool operator==(const Grid& o) const {
    return xmin == o.xmin && xmax == o.xmax && n == o.n;
  }
};

// Builds a uniform grid, bumping the point count to odd so composite Simpson
// quadrature applies exactly (an even request is not an error, just widened
// by one point).
inline Grid make_grid(double xmin, double xmax, int n) {
  if (!(xmin < xmax)) throw DomainError("grid requires xmin < xmax");
  if (n < 3) throw DomainError("grid requires at least 3 points");
  if (n % 2 == 0) ++n;
  return Grid{xmin, xmax, n};
}

// ---------------------------------------------------------------------------
// GridFunction
// ---------------------------------------------------------------------------

struct GridFunction {
  Grid grid;
  std::vector<double> values;

  bool finite() const {
    for (double v : values)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

inline void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid == g.grid)) throw GridMismatch("grid functions on different grids");
}

// Samples a callable on a grid.
inline GridFunction sample(const Grid& grid, const std::function<double(double)>& f) {
  GridFunction out{grid, std::vector<double>(static_cast<size_t>(grid.n))};
  for (int i = 0; i < grid.n; ++i) out.values[static_cast<size_t>(i)] = f(grid.x(i));
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature: composite Simpson.  Grids are kept odd by make_grid; an even
// grid reaching here is a caller bug.
// ---------------------------------------------------------------------------

inline double simpson(const GridFunction& f) {
  const int n = f.grid.n;
  if (n < 3 || n % 2 == 0) throw GridMismatch("Simpson needs an odd point count >= 3");
  const double h = f.grid.h();
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n - 1; i += 2) odd += f.values[static_cast<size_t>(i)];
  for (int i = 2; i < n - 1; i += 2) even += f.values[static_cast<size_t>(i)];
  return (h / 3.0) * (f.values.front() + f.values.back() + 4.0 * odd + 2.0 * even);
}

inline double overlap(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  GridFunction prod{f.grid, std::vector<double>(f.values.size())};
  for (size_t i = 0; i < f.values.size(); ++i) prod.values[i] = f.values[i] * g.values[i];
  return simpson(prod);
}

inline double l2_norm(const GridFunction& f) {
  return std::sqrt(std::max(0.0, overlap(f, f)));
}

// ---------------------------------------------------------------------------
// Derivatives.
//
// First derivative: 4th-order central 5-point stencil in the interior,
// 2nd-order stencils on the two points at each edge.  Edge values are
// low-confidence by construction; comparison norms must exclude them.
// ---------------------------------------------------------------------------

inline GridFunction derivative(const GridFunction& f) {
  const int n = f.grid.n;
  if (n < 5) throw GridMismatch("derivative stencil needs at least 5 points");
  const double h = f.grid.h();
  const auto& v = f.values;
  GridFunction out{f.grid, std::vector<double>(static_cast<size_t>(n))};
  auto& d = out.values;
  for (int i = 2; i <= n - 3; ++i) {
    d[static_cast<size_t>(i)] =
        (v[static_cast<size_t>(i - 2)] - 8.0 * v[static_cast<size_t>(i - 1)] +
         8.0 * v[static_cast<size_t>(i + 1)] - v[static_cast<size_t>(i + 2)]) /
        (12.0 * h);
  }
  // one-sided / short central stencils at the edges (2nd order)
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d[1] = (v[2] - v[0]) / (2.0 * h);
  d[static_cast<size_t>(n - 2)] =
      (v[static_cast<size_t>(n - 1)] - v[static_cast<size_t>(n - 3)]) / (2.0 * h);
  d[static_cast<size_t>(n - 1)] =
      (3.0 * v[static_cast<size_t>(n - 1)] - 4.0 * v[static_cast<size_t>(n - 2)] +
       v[static_cast<size_t>(n - 3)]) /
      (2.0 * h);
  return out;
}

// Interior 3-point second difference; the two boundary entries are zero and
// excluded from every norm computed on the result.
inline GridFunction second_difference(const GridFunction& f) {
  const int n = f.grid.n;
  if (n < 3) throw GridMismatch("second difference needs at least 3 points");
  const double h2 = sq(f.grid.h());
  const auto& v = f.values;
  GridFunction out{f.grid, std::vector<double>(static_cast<size_t>(n), 0.0)};
  for (int i = 1; i < n - 1; ++i) {
    out.values[static_cast<size_t>(i)] =
        (v[static_cast<size_t>(i - 1)] - 2.0 * v[static_cast<size_t>(i)] +
         v[static_cast<size_t>(i + 1)]) /
        h2;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Node counting: strict sign changes over interior samples whose magnitude
// exceeds 1e-9 of the peak (noise guard for values that should be zero).
// ---------------------------------------------------------------------------

inline int count_nodes(const GridFunction& psi) {
  double peak = 0.0;
  for (double v : psi.values) peak = std::max(peak, std::fabs(v));
  if (peak == 0.0) return 0;
  const double guard = 1e-9 * peak;
  int nodes = 0;
  int last_sign = 0;
  const int n = psi.grid.n;
  for (int i = 1; i < n - 1; ++i) {
    const double v = psi.values[static_cast<size_t>(i)];
    if (std::fabs(v) <= guard) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++nodes;
    last_sign = s;
  }
  return nodes;
}

// ---------------------------------------------------------------------------
// Normalization: unit L2 norm with a deterministic sign convention — the
// value at the leftmost interior maximum of |psi| is made positive.
// ---------------------------------------------------------------------------

inline int leftmost_interior_peak(const GridFunction& psi) {
  const int n = psi.grid.n;
  double peak = 0.0;
  for (double v : psi.values) peak = std::max(peak, std::fabs(v));
  const double floor = 1e-12 * peak;
  for (int i = 1; i < n - 1; ++i) {
    const double a = std::fabs(psi.values[static_cast<size_t>(i)]);
    if (a <= floor) continue;
    if (a >= std::fabs(psi.values[static_cast<size_t>(i - 1)]) &&
        a >= std::fabs(psi.values[static_cast<size_t>(i + 1)]))
      return i;
  }
  // monotone profile: fall back to the global extremum
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (std::fabs(psi.values[static_cast<size_t>(i)]) >
        std::fabs(psi.values[static_cast<size_t>(imax)]))
      imax = i;
  return imax;
}

inline GridFunction normalize(const GridFunction& psi) {
  if (!psi.finite()) throw NonFinite("normalize: non-finite samples");
  const double nrm = l2_norm(psi);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw ZeroNorm("normalize: zero or invalid norm");
  GridFunction out{psi.grid, std::vector<double>(psi.values.size())};
  const int ipk = leftmost_interior_peak(psi);
  const double sign = psi.values[static_cast<size_t>(ipk)] < 0.0 ? -1.0 : 1.0;
  const double s = sign / nrm;
  for (size_t i = 0; i < psi.values.size(); ++i) out.values[i] = s * psi.values[i];
  return out;
}

}  // namespace siqm

#endif  // SIQM_GRID_HPP
