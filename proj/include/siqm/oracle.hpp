#ifndef SIQM_ORACLE_HPP
#define SIQM_ORACLE_HPP

// Independent numerical ground truth: a finite-difference eigensolver for
// H = -d^2/dx^2 + V(x) on a bounded grid with Dirichlet boundaries.
//
// Discretization: standard 3-point Laplacian on the interior points, so H is
// a symmetric tridiagonal matrix.  Eigenvalues come from bisection on Sturm
// sequences (deterministic, index-addressable); eigenvectors from shifted
// inverse iteration with partial-pivoting tridiagonal solves.  Near-degenerate
// pairs over even potentials are disentangled by parity projection.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "siqm/common.hpp"
#include "siqm/grid.hpp"

namespace siqm {

// ---------------------------------------------------------------------------
// Discretized Hamiltonian: interior points only, Dirichlet boundaries.
// ---------------------------------------------------------------------------

struct DiscretizedHamiltonian {
  Grid grid;                 // the full grid including boundary points
  std::vector<double> diag;  // 2/h^2 + V(x_i), i = 1..n-2
  double off = 0.0;          // constant off-diagonal -1/h^2
  int dim = 0;               // interior point count = n - 2
};

inline DiscretizedHamiltonian build_hamiltonian(const GridFunction& V) {
  if (V.grid.n < 16) throw DomainError("build_hamiltonian: need at least 16 grid points");
  if (!V.finite()) throw NonFinitePotential("build_hamiltonian: potential has non-finite samples");
  DiscretizedHamiltonian H;
  H.grid = V.grid;
  H.dim = V.grid.n - 2;
  const double h2 = sq(V.grid.h());
  H.off = -1.0 / h2;
  H.diag.resize(static_cast<size_t>(H.dim));
  for (int i = 0; i < H.dim; ++i)
    H.diag[static_cast<size_t>(i)] = 2.0 / h2 + V.values[static_cast<size_t>(i + 1)];
  return H;
}

// ---------------------------------------------------------------------------
// Sturm sequence: number of eigenvalues of H strictly below lambda.
// ---------------------------------------------------------------------------

inline int sturm_count_below(const DiscretizedHamiltonian& H, double lambda) {
  const double off2 = sq(H.off);
  // pivot floor keeps the recurrence finite when a pivot lands on zero
  const double pivmin = std::max(off2, 1.0) * 1e-292;
  int count = 0;
  double q = H.diag[0] - lambda;
  if (std::fabs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (int i = 1; i < H.dim; ++i) {
    q = (H.diag[static_cast<size_t>(i)] - lambda) - off2 / q;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// Bisection for the k-th (0-based) eigenvalue.  Deterministic; resolves to
// ~1e-14 relative, which is what separates tunneling doublets from true
// degeneracies downstream.
inline double eigenvalue_bisect(const DiscretizedHamiltonian& H, int k) {
  if (k < 0 || k >= H.dim) throw DomainError("eigenvalue index out of range");
  double lo = H.diag[0], hi = H.diag[0];
  for (double d : H.diag) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  lo -= 2.0 * std::fabs(H.off) + 1.0;
  hi += 2.0 * std::fabs(H.off) + 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count_below(H, mid) >= k + 1)
      hi = mid;
    else
      lo = mid;
    const double width_tol = 1e-14 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
    if (hi - lo <= width_tol) break;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Tridiagonal solve with partial pivoting (LU with one fill-in diagonal).
// The matrix is (H - sigma I); indefinite shifts are exactly the use case.
// ---------------------------------------------------------------------------

namespace detail {

struct TridiagLU {
  std::vector<double> dl, d, du, du2;
  std::vector<int> pivoted;  // 1 if rows i, i+1 were swapped
  int n = 0;
};

inline TridiagLU factorize_shifted(const DiscretizedHamiltonian& H, double sigma) {
  TridiagLU lu;
  lu.n = H.dim;
  lu.d.resize(static_cast<size_t>(lu.n));
  lu.dl.assign(static_cast<size_t>(lu.n), H.off);
  lu.du.assign(static_cast<size_t>(lu.n), H.off);
  lu.du2.assign(static_cast<size_t>(lu.n), 0.0);
  lu.pivoted.assign(static_cast<size_t>(lu.n), 0);
  for (int i = 0; i < lu.n; ++i) lu.d[static_cast<size_t>(i)] = H.diag[static_cast<size_t>(i)] - sigma;
  lu.du[static_cast<size_t>(lu.n - 1)] = 0.0;

  // tiny floor so an exactly singular shift still factorizes (the huge
  // solution it produces is precisely what inverse iteration wants)
  double scale = std::fabs(H.off);
  for (double v : lu.d) scale = std::max(scale, std::fabs(v));
  const double floor_piv = std::max(scale, 1.0) * 1e-290;

  for (int i = 0; i < lu.n - 1; ++i) {
    const size_t si = static_cast<size_t>(i);
    if (std::fabs(lu.d[si]) >= std::fabs(lu.dl[si])) {
      // no swap
      if (std::fabs(lu.d[si]) < floor_piv) lu.d[si] = floor_piv;
      const double m = lu.dl[si] / lu.d[si];
      lu.dl[si] = m;  // store multiplier
      lu.d[si + 1] -= m * lu.du[si];
      lu.du2[si] = 0.0;
    } else {
      // swap rows i and i+1
      lu.pivoted[si] = 1;
      std::swap(lu.d[si], lu.dl[si]);
      const double m = lu.dl[si] / lu.d[si];
      lu.dl[si] = m;
      const double old_du = lu.du[si];
      lu.du[si] = lu.d[si + 1];
      lu.du2[si] = lu.du[si + 1];
      lu.d[si + 1] = old_du - m * lu.du[si];
      lu.du[si + 1] = -m * lu.du2[si];
    }
  }
  const size_t last = static_cast<size_t>(lu.n - 1);
  if (std::fabs(lu.d[last]) < floor_piv) lu.d[last] = floor_piv;
  return lu;
}

inline void solve_in_place(const TridiagLU& lu, std::vector<double>& b) {
  const int n = lu.n;
  // forward substitution with recorded pivots
  for (int i = 0; i < n - 1; ++i) {
    const size_t si = static_cast<size_t>(i);
    if (lu.pivoted[si]) std::swap(b[si], b[si + 1]);
    b[si + 1] -= lu.dl[si] * b[si];
  }
  // back substitution
  const size_t nl = static_cast<size_t>(n - 1);
  b[nl] /= lu.d[nl];
  if (n >= 2) {
    const size_t i = nl - 1;
    b[i] = (b[i] - lu.du[i] * b[i + 1]) / lu.d[i];
  }
  for (int i = n - 3; i >= 0; --i) {
    const size_t si = static_cast<size_t>(i);
    b[si] = (b[si] - lu.du[si] * b[si + 1] - lu.du2[si] * b[si + 2]) / lu.d[si];
  }
}

inline double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void vec_scale(std::vector<double>& v, double s) {
  for (double& x : v) x *= s;
}

// y = H v on interior coordinates
inline std::vector<double> apply_H(const DiscretizedHamiltonian& H, const std::vector<double>& v) {
  std::vector<double> y(v.size());
  const int n = H.dim;
  for (int i = 0; i < n; ++i) {
    const size_t si = static_cast<size_t>(i);
    double acc = H.diag[si] * v[si];
    if (i > 0) acc += H.off * v[si - 1];
    if (i < n - 1) acc += H.off * v[si + 1];
    y[si] = acc;
  }
  return y;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Eigenpairs.
// ---------------------------------------------------------------------------

struct EigenResult {
  std::vector<double> eigenvalues;          // ascending
  std::vector<GridFunction> eigenvectors;   // on the full grid, unit L2 norm
  std::vector<double> residual_norms;       // ||H v - lambda v||_2, v unit
  std::vector<int> node_counts;
  std::vector<double> richardson;           // filled by refine_until_converged
};

namespace detail {

inline bool potential_is_even(const GridFunction& V) {
  const Grid& g = V.grid;
  if (std::fabs(g.xmin + g.xmax) > 1e-12 * (g.xmax - g.xmin)) return false;
  double scale = 1.0, dev = 0.0;
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    scale = std::max(scale, std::fabs(V.values[static_cast<size_t>(i)]));
    dev = std::max(dev, std::fabs(V.values[static_cast<size_t>(i)] -
                                  V.values[static_cast<size_t>(n - 1 - i)]));
  }
  return dev <= 1e-10 * scale;
}

// Splits v (interior coordinates on a symmetric grid) into parity parts and
// keeps the dominant one.  Near-degenerate doublets of an even potential are
// parity-pure in exact arithmetic; inverse iteration may return mixtures, and
// this projection undoes that deterministically.
inline void purify_parity(std::vector<double>& v) {
  const size_t m = v.size();
  std::vector<double> even(m), odd(m);
  for (size_t i = 0; i < m; ++i) {
    const double mirror = v[m - 1 - i];
    even[i] = 0.5 * (v[i] + mirror);
    odd[i] = 0.5 * (v[i] - mirror);
  }
  if (vec_norm(even) >= vec_norm(odd))
    v = even;
  else
    v = odd;
}

}  // namespace detail

// Computes the k lowest eigenpairs.  Eigenvectors are returned on the full
// grid (zeros at the Dirichlet boundary points), unit-normalized via Simpson
// weights through normalize().
inline EigenResult lowest_eigenpairs(const DiscretizedHamiltonian& H,
                                     const GridFunction& V, int k) {
  if (k < 1) throw DomainError("lowest_eigenpairs: k must be >= 1");
  if (k > H.dim / 4) throw DomainError("lowest_eigenpairs: k too large for grid");

  EigenResult out;
  out.eigenvalues.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) out.eigenvalues.push_back(eigenvalue_bisect(H, i));

  double hscale = std::fabs(H.off);
  for (double d : H.diag) hscale = std::max(hscale, std::fabs(d));

  const bool even_potential = detail::potential_is_even(V);
  std::vector<std::vector<double>> vecs;
  vecs.reserve(static_cast<size_t>(k));

  for (int i = 0; i < k; ++i) {
    const double lambda = out.eigenvalues[static_cast<size_t>(i)];
    auto lu = detail::factorize_shifted(H, lambda);

    // deterministic start: the i-th free-box mode is never orthogonal to the
    // target for generic confining potentials
    std::vector<double> v(static_cast<size_t>(H.dim));
    const double freq = static_cast<double>(i + 1) * 3.14159265358979323846 /
                        static_cast<double>(H.dim + 1);
    for (int j = 0; j < H.dim; ++j)
      v[static_cast<size_t>(j)] = std::sin(freq * static_cast<double>(j + 1));
    detail::vec_scale(v, 1.0 / detail::vec_norm(v));

    auto orthogonalize_close = [&](std::vector<double>& w) {
      for (int j = 0; j < i; ++j) {
        if (std::fabs(out.eigenvalues[static_cast<size_t>(j)] - lambda) <
            1e-6 * std::max(1.0, hscale) * 1e-2) {
          const double c = detail::vec_dot(w, vecs[static_cast<size_t>(j)]);
          for (size_t t = 0; t < w.size(); ++t)
            w[t] -= c * vecs[static_cast<size_t>(j)][t];
        }
      }
    };

    double best_res = std::numeric_limits<double>::infinity();
    std::vector<double> best = v;
    for (int iter = 0; iter < 12; ++iter) {
      orthogonalize_close(v);
      double nrm = detail::vec_norm(v);
      if (!(nrm > 0.0)) break;
      detail::vec_scale(v, 1.0 / nrm);
      detail::solve_in_place(lu, v);
      nrm = detail::vec_norm(v);
      if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
      detail::vec_scale(v, 1.0 / nrm);
      orthogonalize_close(v);
      nrm = detail::vec_norm(v);
      if (!(nrm > 0.0)) break;
      detail::vec_scale(v, 1.0 / nrm);
      if (even_potential) {
        detail::purify_parity(v);
        const double pn = detail::vec_norm(v);
        if (pn > 0.0) detail::vec_scale(v, 1.0 / pn);
      }
      auto Hv = detail::apply_H(H, v);
      for (size_t t = 0; t < Hv.size(); ++t) Hv[t] -= lambda * v[t];
      const double res = detail::vec_norm(Hv);
      if (res < best_res) {
        best_res = res;
        best = v;
      }
      if (res <= 1e-12 * hscale) break;
    }
    if (!(best_res <= 1e-7 * hscale))
      throw ConvergenceFailure("inverse iteration stalled at level " + std::to_string(i) +
                               " (residual " + std::to_string(best_res) + ")");
    vecs.push_back(best);

    // embed into the full grid and normalize with the engine's convention
    GridFunction psi{H.grid, std::vector<double>(static_cast<size_t>(H.grid.n), 0.0)};
    for (int j = 0; j < H.dim; ++j)
      psi.values[static_cast<size_t>(j + 1)] = best[static_cast<size_t>(j)];
    psi = normalize(psi);
    out.eigenvectors.push_back(psi);
    out.node_counts.push_back(count_nodes(psi));
    out.residual_norms.push_back(best_res);
  }
  return out;
}

// Relative Schrodinger residual ||-psi'' + V psi - E psi||_2 / ||E psi||_2
// with the interior 3-point second difference; boundary rows excluded.
inline double residual_norm(const GridFunction& V, const GridFunction& psi, double E) {
  require_same_grid(V, psi);
  const GridFunction d2 = second_difference(psi);
  double num = 0.0, den = 0.0;
  for (int i = 1; i < psi.grid.n - 1; ++i) {
    const size_t si = static_cast<size_t>(i);
    const double r = -d2.values[si] + (V.values[si] - E) * psi.values[si];
    num += r * r;
    den += sq(E * psi.values[si]);
  }
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(num) / std::sqrt(den);
}

// ---------------------------------------------------------------------------
// Grid-refinement driver: expands the box until the boundary is irrelevant,
// then doubles the density until successive eigenvalues settle, attaching
// Richardson-extrapolated values (the 3-point Laplacian is O(h^2), so the
// extrapolation weight is (4 E_fine - E_coarse) / 3).
// ---------------------------------------------------------------------------

struct RefineOptions {
  int k = 4;                       // number of eigenvalues to converge
  double target_tol = 1e-8;        // relative settle tolerance
  double initial_halfwidth = 0.0;  // 0 = bootstrap from turning points
  int initial_points = 2001;
  int max_points = 1 << 20;
  double halfline_delta = 1e-4;    // left inset for half-line domains
  // Settle on successive Richardson extrapolants instead of raw eigenvalues.
  // The extrapolants converge at fourth order, so steep or wide wells reach a
  // given tolerance with far coarser grids; requires one extra doubling to
  // form the first pair of extrapolants.
  bool settle_on_richardson = false;
};

struct ConvergedEigen {
  EigenResult result;            // pairs on the final (finest) grid
  std::vector<double> coarse;    // eigenvalues at half density
  Grid grid;
  int density_doublings = 0;
  double boundary_shift = 0.0;   // eigenvalue change in the last box growth
};

namespace detail {

inline std::vector<double> eigenvalues_on(const std::function<double(double)>& V,
                                          double a, double b, int n, int k) {
  Grid g = make_grid(a, b, n);
  GridFunction Vs = sample(g, V);
  DiscretizedHamiltonian H = build_hamiltonian(Vs);
  std::vector<double> ev;
  ev.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) ev.push_back(eigenvalue_bisect(H, i));
  return ev;
}

inline double max_rel_delta(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]) / std::max(1.0, std::fabs(b[i])));
  return m;
}

}  // namespace detail

inline ConvergedEigen refine_until_converged(const std::function<double(double)>& V,
                                             const Domain& dom, RefineOptions opt) {
  if (opt.target_tol < 1e-10) throw DomainError("refine target_tol below 1e-10");
  if (opt.k < 1) throw DomainError("refine: k must be >= 1");

  double a, b;
  bool expandable = false;
  if (dom.kind == DomainKind::Interval) {
    // bounded domain: inset endpoints if the potential is singular there
    const double span = dom.right - dom.left;
    a = dom.left + 1e-9 * span;
    b = dom.right - 1e-9 * span;
  } else if (dom.kind == DomainKind::HalfLine) {
    a = opt.halfline_delta;
    b = opt.initial_halfwidth > 0.0 ? opt.initial_halfwidth : 10.0;
    expandable = true;
  } else {
    double L = opt.initial_halfwidth;
    if (L <= 0.0) {
      // bootstrap: coarse solve on a default box, then 1.5 x the outermost
      // classical turning point of the highest requested level
      const std::vector<double> ev =
          detail::eigenvalues_on(V, -10.0, 10.0, 1001, opt.k);
      const double Etop = ev.back();
      double xt = 1.0;
      for (double x = 0.0; x <= 10.0; x += 0.01)
        if (V(x) <= Etop || V(-x) <= Etop) xt = std::max(xt, x);
      L = std::max(2.0, 1.5 * xt);
    }
    a = -L;
    b = L;
    expandable = true;
  }

  int n = opt.initial_points;
  if (n % 2 == 0) ++n;

  // box expansion: grow 25% until the eigenvalues stop caring
  double boundary_shift = 0.0;
  if (expandable) {
    std::vector<double> prev = detail::eigenvalues_on(V, a, b, n, opt.k);
    for (int grow = 0; grow < 12; ++grow) {
      const double width = b - a;
      double na = a, nb = b + 0.25 * width;
      if (dom.kind == DomainKind::FullLine) {
        na = a - 0.125 * width;
        nb = b + 0.125 * width;
      }
      // keep h roughly constant while the box grows
      int nn = static_cast<int>(std::lround(static_cast<double>(n) * (nb - na) / width));
      if (nn % 2 == 0) ++nn;
      const std::vector<double> cur = detail::eigenvalues_on(V, na, nb, nn, opt.k);
      boundary_shift = detail::max_rel_delta(prev, cur);
      a = na;
      b = nb;
      n = nn;
      prev = cur;
      if (boundary_shift < opt.target_tol) break;
    }
  }

  // density doubling until successive eigenvalues settle
  std::vector<double> coarse = detail::eigenvalues_on(V, a, b, n, opt.k);
  std::vector<double> prev_extrap;  // previous Richardson pass, when settling on it
  int doublings = 0;
  for (;;) {
    int n2 = 2 * (n - 1) + 1;
    if (n2 > opt.max_points)
      throw ResourceLimit("refine_until_converged: grid exceeded max point count");
    const std::vector<double> fine = detail::eigenvalues_on(V, a, b, n2, opt.k);
    ++doublings;
    double delta;
    if (opt.settle_on_richardson) {
      std::vector<double> extrap(fine.size());
      for (size_t i = 0; i < fine.size(); ++i)
        extrap[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
      delta = prev_extrap.empty() ? std::numeric_limits<double>::infinity()
                                  : detail::max_rel_delta(prev_extrap, extrap);
      prev_extrap = std::move(extrap);
    } else {
      delta = detail::max_rel_delta(coarse, fine);
    }
    if (delta < opt.target_tol || n2 >= opt.max_points) {
      n = n2;
      ConvergedEigen out;
      out.grid = make_grid(a, b, n);
      const GridFunction Vs = sample(out.grid, V);
      const DiscretizedHamiltonian H = build_hamiltonian(Vs);
      out.result = lowest_eigenpairs(H, Vs, opt.k);
      out.coarse = coarse;
      out.density_doublings = doublings;
      out.boundary_shift = boundary_shift;
      out.result.richardson.resize(static_cast<size_t>(opt.k));
      for (int i = 0; i < opt.k; ++i)
        out.result.richardson[static_cast<size_t>(i)] =
            (4.0 * out.result.eigenvalues[static_cast<size_t>(i)] -
             coarse[static_cast<size_t>(i)]) /
            3.0;
      return out;
    }
    coarse = fine;
    n = n2;
  }
}

}  // namespace siqm

#endif  // SIQM_ORACLE_HPP
