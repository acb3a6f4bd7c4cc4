#ifndef SIQM_LADDER_HPP
#define SIQM_LADDER_HPP

// Ladder operators on grid-sampled wavefunctions, zero modes e^{-int W}, and
// the chained excited-state construction
//   Psi_n(a_0) ~ Adag(a_0) Adag(a_1) ... Adag(a_{n-1}) Psi_0(a_n),
// i.e. the chain's last operator factor uses a_{n-1} and the seed ground
// state lives at a_n (so n = 1 reduces to Adag(a_0) applied to the partner
// ground state at a_1).

#include <cmath>
#include <string>
#include <vector>

#include "siqm/common.hpp"
#include "siqm/families.hpp"
#include "siqm/grid.hpp"
#include "siqm/shape_invariance.hpp"

namespace siqm {

namespace detail {

// Cumulative antiderivative of samples f on a uniform grid, anchored to zero
// at the center point: composite Simpson panels reach the even offsets, and
// a quadratic Newton-Cotes half panel covers each odd terminal step.
inline std::vector<double> cumulative_from_midpoint(const GridFunction& f) {
  const int n = f.grid.n;
  const double h = f.grid.h();
  const auto& v = f.values;
  std::vector<double> F(static_cast<std::size_t>(n), 0.0);
  const int m = n / 2;  // n is odd, so this is the exact center

  auto at = [&](int i) { return v[static_cast<std::size_t>(i)]; };

  for (int i = m + 2; i < n; i += 2)
    F[static_cast<std::size_t>(i)] =
        F[static_cast<std::size_t>(i - 2)] + h / 3.0 * (at(i - 2) + 4.0 * at(i - 1) + at(i));
  for (int i = m + 1; i < n; i += 2)
    F[static_cast<std::size_t>(i)] =
        F[static_cast<std::size_t>(i - 1)] +
        h / 12.0 * (5.0 * at(i) + 8.0 * at(i - 1) - at(i - 2));
  for (int i = m - 2; i >= 0; i -= 2)
    F[static_cast<std::size_t>(i)] =
        F[static_cast<std::size_t>(i + 2)] - h / 3.0 * (at(i + 2) + 4.0 * at(i + 1) + at(i));
  for (int i = m - 1; i >= 0; i -= 2)
    F[static_cast<std::size_t>(i)] =
        F[static_cast<std::size_t>(i + 1)] -
        h / 12.0 * (5.0 * at(i) + 8.0 * at(i + 1) - at(i + 2));
  return F;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Zero modes.
// ---------------------------------------------------------------------------

// e^{-int W} with the antiderivative accumulated by quadrature from the grid
// midpoint.  Requires W finite across the whole grid (a pole inside the grid
// surfaces as DomainError from the evaluator).  A positive exponent beyond
// the cap means the candidate grows beyond double range — a legitimate
// outcome for divergent zero modes, reported as OverflowError rather than
// returned as inf.
inline GridFunction ground_state_from_W(const FamilySpec& fam, const Params4& a,
                                        const Grid& grid, double exponent_cap = kExponentCap) {
  GridFunction W = sample(grid, [&](double x) { return eval_W(fam, a, x); });
  const std::vector<double> F = detail::cumulative_from_midpoint(W);
  GridFunction out{grid, std::vector<double>(static_cast<std::size_t>(grid.n), 0.0)};
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double e = -F[i];
    if (e > exponent_cap)
      throw OverflowError("ground_state_from_W: e^{-int W} exceeds double range (divergent "
                          "zero-mode candidate)");
    out.values[i] = std::exp(e);
  }
  return out;
}

// Same zero mode through the family's closed-form antiderivative of W.  This
// variant can cross superpotential poles where the zero mode itself has a
// finite (vanishing) limit: the rational term Dx/(1+Gx^2) integrates to
// (D/2G) log|1+Gx^2|, so e^{-int W} carries a factor |1+Gx^2|^q with
// q = D/(2G).  For q > 0 the mode tends to zero at the pole and the crossing
// is well defined — and when q is an odd integer the real continuation flips
// sign there, exactly as the closed-form excited states do.  For q <= 0 the
// mode diverges at the pole and the construction is refused.
inline GridFunction ground_state_analytic(const FamilySpec& fam, const Params4& a,
                                          const Grid& grid,
                                          double exponent_cap = kExponentCap) {
  const Domain d = domain_of(fam, a);
  bool pole_inside = false;
  for (double xp : d.poles)
    if (xp > grid.xmin && xp < grid.xmax) pole_inside = true;
  const bool rational = fam.id == FamilyId::Sextic && a.G != 0.0;
  const double q = rational ? a.D / (2.0 * a.G) : 0.0;
  if (pole_inside && !(q > 0.0))
    throw PoleInChain("ground_state_analytic: zero mode diverges at a superpotential pole");
  const bool odd_integer_q =
      std::fabs(q - std::round(q)) < 1e-9 && std::llround(q) % 2 != 0;

  GridFunction out{grid, std::vector<double>(static_cast<std::size_t>(grid.n), 0.0)};
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    bool near_pole = false;
    for (double xp : d.poles)
      if (std::fabs(x - xp) < kPoleExclusionRadius) near_pole = true;
    if (near_pole) {
      out.values[static_cast<std::size_t>(i)] = 0.0;  // limiting value across the pole
      continue;
    }
    const double e = -eval_W_antiderivative(fam, a, x);
    if (e > exponent_cap)
      throw OverflowError("ground_state_analytic: e^{-int W} exceeds double range (divergent "
                          "zero-mode candidate)");
    double v = std::exp(e);
    // sign-definite real continuation across an odd-integer-power zero
    if (odd_integer_q && rational && 1.0 + a.G * x * x < 0.0) v = -v;
    out.values[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ladder operators.
// ---------------------------------------------------------------------------

// Adag psi = -psi' + W psi.  Fourth-order interior stencils; the edge points
// use one-sided second-order differences and should be excluded from
// comparison norms.
inline GridFunction apply_raising(const FamilySpec& fam, const Params4& a,
                                  const GridFunction& psi) {
  if (!psi.finite()) throw NonFinite("apply_raising: non-finite input samples");
  GridFunction dpsi = derivative(psi);
  GridFunction out{psi.grid, std::vector<double>(psi.values.size())};
  for (int i = 0; i < psi.grid.n; ++i) {
    const double w = eval_W(fam, a, psi.grid.x(i));
    out.values[static_cast<std::size_t>(i)] =
        -dpsi.values[static_cast<std::size_t>(i)] + w * psi.values[static_cast<std::size_t>(i)];
  }
  return out;
}

// A psi = psi' + W psi.
inline GridFunction apply_lowering(const FamilySpec& fam, const Params4& a,
                                   const GridFunction& psi) {
  if (!psi.finite()) throw NonFinite("apply_lowering: non-finite input samples");
  GridFunction dpsi = derivative(psi);
  GridFunction out{psi.grid, std::vector<double>(psi.values.size())};
  for (int i = 0; i < psi.grid.n; ++i) {
    const double w = eval_W(fam, a, psi.grid.x(i));
    out.values[static_cast<std::size_t>(i)] =
        dpsi.values[static_cast<std::size_t>(i)] + w * psi.values[static_cast<std::size_t>(i)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chained excited states.
// ---------------------------------------------------------------------------

namespace detail {
inline bool has_pole_inside(const Domain& d, const Grid& g) {
  for (double xp : d.poles)
    if (xp > g.xmin && xp < g.xmax) return true;
  return false;
}
}  // namespace detail

// Psi_n(a_0) via the operator chain, normalized.  Every operator level
// a_0..a_{n-1} must be pole-free on the grid (the first-order operators
// cannot be applied across a pole of W); the seed level a_n only needs a
// crossable zero mode, handled by ground_state_analytic.
inline GridFunction excited_state(const FamilySpec& fam, const Params4& a0, int n,
                                  const Grid& grid) {
  if (n < 0) throw ConstraintViolation("excited_state: n must be >= 0");
  const ParamSequence seq = param_sequence(fam, a0, n);
  for (int k = 0; k < n; ++k) {
    const Domain d = domain_of(fam, seq.entries[static_cast<std::size_t>(k)]);
    if (detail::has_pole_inside(d, grid))
      throw PoleInChain("excited_state: superpotential pole inside the grid at chain level " +
                        std::to_string(k));
  }
  GridFunction psi = ground_state_analytic(fam, seq.entries[static_cast<std::size_t>(n)], grid);
  for (int k = n - 1; k >= 0; --k)
    psi = apply_raising(fam, seq.entries[static_cast<std::size_t>(k)], psi);
  return normalize(psi);
}

}  // namespace siqm

#endif  // SIQM_LADDER_HPP
