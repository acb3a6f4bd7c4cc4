#ifndef SIQM_SHAPE_INVARIANCE_HPP
#define SIQM_SHAPE_INVARIANCE_HPP

// Parameter-change maps, numerical verification of the shape-invariance
// condition V_+(x, a_k) = V_-(x, a_{k+1}) + C_k, and level energies by
// telescoping the constant shifts.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "siqm/common.hpp"
#include "siqm/families.hpp"
#include "siqm/grid.hpp"
#include "siqm/printed.hpp"

namespace siqm {

struct ParamSequence {
  FamilyId family = FamilyId::Harmonic;
  Params4 a0;
  std::vector<Params4> entries;  // entries[k] = f^k(a0), k = 0..n
};

struct ShapeInvarianceReport {
  int level = 0;
  double C = 0.0;         // grid mean of V_+(a_k) - V_-(a_{k+1})
  double residual = 0.0;  // max deviation of the pointwise difference from C
  Grid grid{};
  int used_points = 0;    // points retained after pole-neighborhood exclusion
};

// ---------------------------------------------------------------------------
// Parameter-change maps.
// ---------------------------------------------------------------------------

// Sextic step.  The derivation's matrix form prints (-A, -B, D - 4B, 2B - G),
// but that pair fails the invariance condition outright; the sign-variant
// search below identifies (-A, -B, D + 4B, 2B - G) as the unique variant with
// vanishing residual (the partner difference is then exactly 4(G - B)).
// The printed step remains available as printed::sextic_step.
inline Params4 sextic_next_params(const Params4& a) {
  return {-a.A, -a.B, a.D + 4.0 * a.B, 2.0 * a.B - a.G};
}

inline Params4 next_params(const FamilySpec& fam, const Params4& a) {
  if (!a.finite()) throw ConstraintViolation("next_params: parameters must be finite");
  const double p = fam.p;
  Params4 r = a;
  switch (fam.id) {
    case FamilyId::Harmonic: return r;
    case FamilyId::Coulomb:
      // telescoped form consistent with the energy column: (AB/(B+1), B+1)
      r.A = a.A * a.B / (a.B + 1.0);
      r.B = a.B + 1.0;
      return r;
    case FamilyId::Oscillator3D:
      r.B = a.B + 1.0;
      return r;
    case FamilyId::Morse:
    case FamilyId::ScarfII:
    case FamilyId::PoschlTellerI:
      r.A = a.A - p;
      return r;
    case FamilyId::ScarfI:
      r.A = a.A + p;
      return r;
    case FamilyId::RosenMorseI:
    case FamilyId::RosenMorseII:
      // B1 = AB/(A-p): keeps the product AB invariant along the sequence
      r.A = a.A - p;
      r.B = a.A * a.B / (a.A - p);
      return r;
    case FamilyId::Eckart:
      r.A = a.A + p;
      r.B = a.A * a.B / (a.A + p);
      return r;
    case FamilyId::PoschlTellerII:
      r.A = a.A - p;
      r.B = a.B + p;
      return r;
    case FamilyId::DoubleAngle:
    case FamilyId::QuadrupleAngle:
      throw UnsupportedFamily(
          std::string(name_of(fam.id)) +
          ": no valid invariance step exists (the catalog's printed map does not "
          "satisfy the partner condition; see printed::map_as_printed)");
    case FamilyId::Sextic: return sextic_next_params(a);
  }
  throw UnsupportedFamily("next_params: unknown family");
}

// ---------------------------------------------------------------------------
// Parameter sequences.
// ---------------------------------------------------------------------------

inline ParamSequence param_sequence(const FamilySpec& fam, const Params4& a0, int n) {
  if (n < 0) throw ConstraintViolation("param_sequence: n must be >= 0");
  ParamSequence seq;
  seq.family = fam.id;
  seq.a0 = a0;
  seq.entries.reserve(static_cast<std::size_t>(n) + 1);
  seq.entries.push_back(a0);
  for (int k = 0; k < n; ++k) seq.entries.push_back(next_params(fam, seq.entries.back()));

  if (fam.id == FamilyId::Sextic) {
    // Cross-check the stepwise orbit against the rank-one closed form
    // a_k = (-1)^k M0 a0 + 2 (-1)^k k B0 btilde, with the D entry of the
    // printed b0 sign-flipped (btilde = (0,0,-2,-1)).  A, B, G agree for all
    // k; the D slot of any rank-one form can only match the alternating
    // stepwise orbit through k = 1, so the assert is scoped accordingly.
    for (int k = 0; k <= n; ++k) {
      const double s = (k % 2 == 0) ? 1.0 : -1.0;
      const Params4& ak = seq.entries[static_cast<std::size_t>(k)];
      const double tol = 1e-12 * std::max(1.0, std::fabs(a0.G) + std::fabs(a0.B));
      const double A_cf = s * a0.A;
      const double B_cf = s * a0.B;
      const double G_cf = s * a0.G - 2.0 * s * k * a0.B;
      if (std::fabs(ak.A - A_cf) > tol || std::fabs(ak.B - B_cf) > tol ||
          std::fabs(ak.G - G_cf) > tol)
        throw ConstraintViolation("param_sequence: sextic orbit disagrees with closed form");
      // the closed form is scoped to k >= 1 (its D diagonal entry is -1, so
      // it cannot reduce to a0 at k = 0), and the D slot matches only at k = 1
      if (k == 1) {
        const double D_cf = -s * a0.D - 4.0 * s * k * a0.B;
        if (std::fabs(ak.D - D_cf) > tol)
          throw ConstraintViolation("param_sequence: sextic D-slot disagrees with closed form");
      }
    }
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Default verification grids.
// ---------------------------------------------------------------------------

namespace detail {

// Largest |V| the partner difference can tolerate before double-precision
// cancellation eats into a 1e-8-relative residual budget (with margin).
inline double conditioning_cap(double c_estimate) {
  return 1e-2 * (1e-8 * std::max(1.0, std::fabs(c_estimate))) / 2.2e-16;
}

// Coarse estimate of the level shift from a few interior probes.
inline double probe_shift(const FamilySpec& fam, const Params4& ak, const Params4& ak1,
                          double lo, double hi) {
  double sum = 0.0;
  int cnt = 0;
  for (int i = 1; i <= 5; ++i) {
    const double x = lo + (hi - lo) * i / 6.0;
    try {
      sum += eval_partner(fam, ak, x, PartnerSign::Plus) -
             eval_partner(fam, ak1, x, PartnerSign::Minus);
      ++cnt;
    } catch (const DomainError&) {
    }
  }
  return cnt > 0 ? sum / cnt : 0.0;
}

}  // namespace detail

// Grid policy for shift verification: 2001 points across the domain's
// interesting region.  Full line: [-L, L] with L = 10, shrunk (never below 2)
// until |V| at the ends stays within the cancellation budget of the expected
// shift magnitude — relevant for steep sextic wells where x^6 growth would
// otherwise drown a small constant in rounding noise.  Half line: [0.05,
// 10.05].  Interval: 2% inset from each endpoint.
inline Grid default_shift_grid(const FamilySpec& fam, const Params4& ak, const Params4& ak1,
                               int n = 2001) {
  const Domain dk = domain_of(fam, ak);
  switch (dk.kind) {
    case DomainKind::HalfLine: return make_grid(0.05, 10.05, n);
    case DomainKind::Interval: {
      const double span = dk.right - dk.left;
      return make_grid(dk.left + 0.02 * span, dk.right - 0.02 * span, n);
    }
    case DomainKind::FullLine: {
      double L = 10.0;
      const double c_est = detail::probe_shift(fam, ak, ak1, -1.0, 1.0);
      const double cap = detail::conditioning_cap(c_est);
      auto ends_magnitude = [&](double l) {
        double m = 0.0;
        for (double x : {-l, l}) {
          try {
            m = std::max(m, std::fabs(eval_partner(fam, ak, x, PartnerSign::Plus)));
            m = std::max(m, std::fabs(eval_partner(fam, ak1, x, PartnerSign::Minus)));
          } catch (const DomainError&) {
          }
        }
        return m;
      };
      while (L > 2.0 && ends_magnitude(L) > cap) L *= 0.9;
      return make_grid(-L, L, n);
    }
  }
  throw DomainError("default_shift_grid: unknown domain kind");
}

// ---------------------------------------------------------------------------
// Level shift measurement.
// ---------------------------------------------------------------------------

// Distance from real poles of either parameter set inside which grid points
// are excluded from the shift statistics (the invariance identity still holds
// arbitrarily close to a pole, but both sides blow up and the difference
// drowns in cancellation).
inline constexpr double kShiftPoleNeighborhood = 1e-2;

inline ShapeInvarianceReport level_shift(const FamilySpec& fam, const Params4& ak,
                                         const Grid& grid, int level = 0) {
  const Params4 ak1 = next_params(fam, ak);
  const Domain d0 = domain_of(fam, ak);
  const Domain d1 = domain_of(fam, ak1);

  std::vector<double> diffs;
  diffs.reserve(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    if (!d0.contains(x) || !d1.contains(x)) continue;
    bool near_pole = false;
    for (const Domain* d : {&d0, &d1})
      for (double xp : d->poles)
        if (std::fabs(x - xp) < kShiftPoleNeighborhood) near_pole = true;
    if (near_pole) continue;
    diffs.push_back(eval_partner(fam, ak, x, PartnerSign::Plus) -
                    eval_partner(fam, ak1, x, PartnerSign::Minus));
  }
  if (diffs.empty())
    throw DomainError("level_shift: no usable grid points in the domain intersection");

  double mean = 0.0;
  for (double v : diffs) mean += v;
  mean /= static_cast<double>(diffs.size());
  double dev = 0.0;
  for (double v : diffs) dev = std::max(dev, std::fabs(v - mean));

  ShapeInvarianceReport rep;
  rep.level = level;
  rep.C = mean;
  rep.residual = dev;
  rep.grid = grid;
  rep.used_points = static_cast<int>(diffs.size());
  return rep;
}

// ---------------------------------------------------------------------------
// Verification and energies.
// ---------------------------------------------------------------------------

inline std::vector<ShapeInvarianceReport> verify_shape_invariance(
    const FamilySpec& fam, const Params4& a0, int levels,
    const std::optional<Grid>& grid = std::nullopt, double tol = 1e-8) {
  if (levels < 1) throw ConstraintViolation("verify_shape_invariance: levels must be >= 1");
  (void)tol;  // the pass criterion residual <= tol*max(1,|C|) is the caller's to apply
  std::vector<ShapeInvarianceReport> reports;
  Params4 ak = a0;
  for (int k = 0; k < levels; ++k) {
    const Grid g = grid ? *grid : default_shift_grid(fam, ak, next_params(fam, ak));
    reports.push_back(level_shift(fam, ak, g, k));
    ak = next_params(fam, ak);
  }
  return reports;
}

inline bool shape_invariance_holds(const std::vector<ShapeInvarianceReport>& reports,
                                   double tol = 1e-8) {
  for (const auto& r : reports)
    if (!(r.residual <= tol * std::max(1.0, std::fabs(r.C)))) return false;
  return true;
}

// Telescoped level energies: E_0 = 0, E_n = sum_{k<n} C_k.  Each level's
// shift must verify as constant before it is admitted into the sum.
inline Spectrum energies_recursive(const FamilySpec& fam, const Params4& a0, int n_max,
                                   const std::optional<Grid>& grid = std::nullopt,
                                   double tol = 1e-8) {
  if (n_max < 0) throw ConstraintViolation("energies_recursive: n_max must be >= 0");
  Spectrum s;
  s.provenance = Provenance::Recursion;
  s.levels.emplace_back(0, 0.0);
  Params4 ak = a0;
  double acc = 0.0;
  for (int k = 0; k < n_max; ++k) {
    const Grid g = grid ? *grid : default_shift_grid(fam, ak, next_params(fam, ak));
    const ShapeInvarianceReport rep = level_shift(fam, ak, g, k);
    if (!(rep.residual <= tol * std::max(1.0, std::fabs(rep.C))))
      throw ShapeInvarianceViolation(
          k, rep.residual,
          "energies_recursive: partner difference is not constant at level " +
              std::to_string(k));
    acc += rep.C;
    s.levels.emplace_back(k + 1, acc);
    ak = next_params(fam, ak);
  }
  // monotonicity within the validated bound range is a warning, not an error
  for (std::size_t i = 1; i < s.levels.size(); ++i)
    if (s.levels[i].second <= s.levels[i - 1].second) {
      s.metadata.push_back("warning: energies non-increasing at level " +
                           std::to_string(s.levels[i].first));
      break;
    }
  return s;
}

// As-printed closed-form energy (reconciliation layer; no correctness promise
// beyond the validated rows).  Catalog families use the appendix energy
// column; the sextic uses the derivation section's general level expression
// (its appendix row differs and stays available as printed::energy_as_printed).
inline double energy_closed_form(const FamilySpec& fam, const Params4& a0, int n) {
  if (n < 0) throw ConstraintViolation("energy_closed_form: n must be >= 0");
  if (fam.id == FamilyId::Sextic) return printed::sextic_level_energy(a0.B, a0.G, n);
  return printed::energy_as_printed(fam.id, a0, fam.p, n);
}

// ---------------------------------------------------------------------------
// Sextic map resolution: the decisive experiment.
// ---------------------------------------------------------------------------

struct MapCandidateResult {
  std::string label;   // explicit map image, e.g. "(-A, -B, D+4B, 2B-G)"
  Params4 a1;
  double C = 0.0;
  double residual = 0.0;
};

struct SexticStepResolution {
  std::vector<MapCandidateResult> candidates;  // printed first, then variants
  int chosen = 0;                              // index of minimum residual
  bool printed_form_passes = false;
};

// Evaluate the printed sextic step and, if its residual fails the tolerance,
// the 16 sign variants of the matrix form (both signs on the D and G diagonal
// entries and on the two live components of the rank-one term) plus the
// appendix-row variant.  The residual-minimizing candidate is selected; the
// caller records the outcome.
inline SexticStepResolution resolve_sextic_step(const Params4& a0,
                                                const std::optional<Grid>& grid = std::nullopt,
                                                double tol = 1e-8) {
  const FamilySpec fam = family_spec(FamilyId::Sextic);
  SexticStepResolution out;

  auto evaluate = [&](const std::string& label, const Params4& a1) {
    MapCandidateResult r;
    r.label = label;
    r.a1 = a1;
    // measure V_+(a0) - V_-(a1) directly (level_shift would re-derive a1)
    const Grid g = grid ? *grid : default_shift_grid(fam, a0, a1);
    const Domain d0 = domain_of(fam, a0);
    const Domain d1 = domain_of(fam, a1);
    std::vector<double> diffs;
    for (int i = 0; i < g.n; ++i) {
      const double x = g.x(i);
      if (!d0.contains(x) || !d1.contains(x)) continue;
      bool near_pole = false;
      for (const Domain* d : {&d0, &d1})
        for (double xp : d->poles)
          if (std::fabs(x - xp) < kShiftPoleNeighborhood) near_pole = true;
      if (near_pole) continue;
      diffs.push_back(eval_partner(fam, a0, x, PartnerSign::Plus) -
                      eval_partner(fam, a1, x, PartnerSign::Minus));
    }
    if (diffs.empty()) {
      r.C = 0.0;
      r.residual = std::numeric_limits<double>::infinity();
    } else {
      double mean = 0.0;
      for (double v : diffs) mean += v;
      mean /= static_cast<double>(diffs.size());
      double dev = 0.0;
      for (double v : diffs) dev = std::max(dev, std::fabs(v - mean));
      r.C = mean;
      r.residual = dev;
    }
    out.candidates.push_back(r);
  };

  evaluate("(-A, -B, D-4B, 2B-G)", printed::sextic_step(a0));
  out.printed_form_passes =
      out.candidates[0].residual <=
      tol * std::max(1.0, std::fabs(out.candidates[0].C));

  if (!out.printed_form_passes) {
    // 16 sign variants: a1 = (-A, -B, -sD*D - 4*tD*B, -sG*G + 2*tG*B)
    for (int sD : {+1, -1})
      for (int tD : {+1, -1})
        for (int sG : {+1, -1})
          for (int tG : {+1, -1}) {
            const Params4 a1{-a0.A, -a0.B, -sD * a0.D - 4.0 * tD * a0.B,
                             -sG * a0.G + 2.0 * tG * a0.B};
            std::string label = "(-A, -B, ";
            label += (sD > 0 ? "-D" : "+D");
            label += (tD > 0 ? "-4B, " : "+4B, ");
            label += (sG > 0 ? "-G" : "+G");
            label += (tG > 0 ? "+2B)" : "-2B)");
            evaluate(label, a1);
          }
    evaluate("(A, -B, 4B-D, G(2B-G)/2)", printed::map_as_printed(FamilyId::Sextic, a0));
  }

  int best = 0;
  for (std::size_t i = 1; i < out.candidates.size(); ++i)
    if (out.candidates[i].residual < out.candidates[static_cast<std::size_t>(best)].residual)
      best = static_cast<int>(i);
  out.chosen = best;
  return out;
}

}  // namespace siqm

#endif  // SIQM_SHAPE_INVARIANCE_HPP
