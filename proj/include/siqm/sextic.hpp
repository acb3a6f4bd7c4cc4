#ifndef SIQM_SEXTIC_HPP
#define SIQM_SEXTIC_HPP

// Sextic triple-well specialization: the two-parameter (B0, G0) slice with
// slaved A0 and D0, its well geometry (outer minimum x0, depth epsilon), the
// shifted nonnegative well, low-lying bound energies, the gap ratio rho and
// band scans, and the closed-form wavefunction profiles with their
// normalizability classes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "siqm/common.hpp"
#include "siqm/families.hpp"
#include "siqm/grid.hpp"
#include "siqm/oracle.hpp"
#include "siqm/printed.hpp"
#include "siqm/shape_invariance.hpp"

namespace siqm {

// ---------------------------------------------------------------------------
// Configuration and band membership.
// ---------------------------------------------------------------------------

struct SexticConfig {
  double B0 = 0.0;
  double G0 = 0.0;
};

// The triple-well band is the open ratio interval 2 < G0/B0 < (7+3*sqrt(7))/7;
// at the upper edge the quadratic term of the well changes sign and the
// central well flattens away.
inline double band_upper_edge_ratio() { return (7.0 + 3.0 * std::sqrt(7.0)) / 7.0; }

inline bool admissible(const SexticConfig& cfg) {
  return cfg.B0 > 0.0 && cfg.G0 > 2.0 * cfg.B0;
}

inline bool in_triple_well_band(const SexticConfig& cfg) {
  if (cfg.B0 <= 0.0) return false;
  const double r = cfg.G0 / cfg.B0;
  return r > 2.0 && r < band_upper_edge_ratio();
}

// Steep benchmark configuration: B0 = 100 with G0 chosen so the outer minima
// sit exactly at x0^2 = 1 (closed-form solution of the critical-point
// condition; computed at runtime, never a frozen decimal).
inline SexticConfig figure_config() {
  return SexticConfig{100.0, 100.0 + std::sqrt((30407.0 + std::sqrt(45649.0)) / 3.0)};
}

namespace detail {
// Slaved four-parameter point without the admissibility gate (classification
// is defined for any B0 > 0, including outside the band).
inline Params4 slaved_params(double B0, double G0) {
  return Params4{0.5 * (2.0 * B0 - G0) * G0, B0, -2.0 * G0, G0};
}
}  // namespace detail

inline Params4 derive_dependent_params(const SexticConfig& cfg) {
  if (!(cfg.B0 > 0.0))
    throw ConstraintViolation("derive_dependent_params: requires B0 > 0, got B0 = " +
                              std::to_string(cfg.B0));
  if (!(cfg.G0 > 2.0 * cfg.B0))
    throw ConstraintViolation("derive_dependent_params: requires G0 > 2*B0, got G0 = " +
                              std::to_string(cfg.G0) + ", 2*B0 = " +
                              std::to_string(2.0 * cfg.B0));
  return detail::slaved_params(cfg.B0, cfg.G0);
}

// First step of the parameter recursion from the slaved level-0 point.
inline Params4 level1_params(const SexticConfig& cfg) {
  return sextic_next_params(derive_dependent_params(cfg));
}

// Constant level shift of the slaved pair.
inline double level_shift_constant(const SexticConfig& cfg) {
  if (!admissible(cfg))
    throw ConstraintViolation("level_shift_constant: config not admissible");
  return 4.0 * (cfg.G0 - cfg.B0);
}

// ---------------------------------------------------------------------------
// Well geometry.
// ---------------------------------------------------------------------------

enum class WellClass { SingleWell, DoubleWell, TripleWell, Degenerate };

inline const char* to_string(WellClass c) {
  switch (c) {
    case WellClass::SingleWell: return "SingleWell";
    case WellClass::DoubleWell: return "DoubleWell";
    case WellClass::TripleWell: return "TripleWell";
    case WellClass::Degenerate: return "Degenerate";
  }
  return "?";
}

struct CriticalPoint {
  double x = 0.0;
  double value = 0.0;  // unshifted well value at x
};

struct WellGeometry {
  WellClass classification = WellClass::SingleWell;
  std::vector<CriticalPoint> critical_points;  // ascending in x
  std::optional<double> x0_sq;                 // square of the global-minimum location
  std::optional<double> epsilon;               // depth: -min of the unshifted well
};

namespace detail {

// Even-polynomial coefficients of the unshifted well in u = x^2:
//   c6 u^3 + c4 u^2 + c2 u + c0,
// re-derived symbolically from W^2 - W' at the slaved parameter point (the
// rational pieces cancel exactly, leaving a plain sextic polynomial).
struct WellCoeffs {
  double c0, c2, c4, c6;
};

inline WellCoeffs well_coeffs(double B0, double G0) {
  WellCoeffs c{};
  c.c6 = 0.25 * G0 * G0 * (2.0 * B0 - G0) * (2.0 * B0 - G0);
  c.c4 = B0 * G0 * (2.0 * B0 - G0);
  c.c2 = 0.5 * (2.0 * B0 * B0 + 14.0 * B0 * G0 - 7.0 * G0 * G0);
  c.c0 = 5.0 * B0 - 2.0 * G0;
  return c;
}

inline double well_poly(const WellCoeffs& c, double x) {
  const double u = x * x;
  return ((c.c6 * u + c.c4) * u + c.c2) * u + c.c0;
}

// d/dx of the well: 2x * (3 c6 u^2 + 2 c4 u + c2).
inline double well_poly_prime(const WellCoeffs& c, double x) {
  const double u = x * x;
  return 2.0 * x * ((3.0 * c.c6 * u + 2.0 * c.c4) * u + c.c2);
}

// Bisection polish of a positive critical point near x_guess to ~1e-12.
inline double polish_critical_point(const WellCoeffs& c, double x_guess) {
  double lo = x_guess, hi = x_guess;
  double step = std::max(1e-6, 1e-3 * x_guess);
  auto g = [&](double x) { return well_poly_prime(c, x); };
  for (int tries = 0; tries < 200; ++tries) {
    lo = std::max(1e-300, x_guess - step);
    hi = x_guess + step;
    if (g(lo) * g(hi) < 0.0) break;
    step *= 1.5;
    if (step > 10.0 * (x_guess + 1.0)) return x_guess;  // no bracket: keep analytic root
  }
  if (g(lo) * g(hi) >= 0.0) return x_guess;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo < 1e-12 * std::max(1.0, mid)) return mid;
    if (g(lo) * g(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Unshifted well profile, evaluated through the plus-partner of the slaved
// level-0 point minus the constant level shift.  This route is pole-free for
// G0 > 0 and is the authoritative evaluator; the polynomial coefficients
// above reproduce it identically and drive the critical-point algebra.
inline double well_profile(const SexticConfig& cfg, double x) {
  const Params4 a0 = detail::slaved_params(cfg.B0, cfg.G0);
  const double C = 4.0 * (cfg.G0 - cfg.B0);
  return eval_partner(family_spec(FamilyId::Sextic), a0, x, PartnerSign::Plus) - C;
}

inline WellGeometry classify_wells(const SexticConfig& cfg) {
  if (!(cfg.B0 > 0.0))
    throw ConstraintViolation("classify_wells: requires B0 > 0");
  const detail::WellCoeffs c = detail::well_coeffs(cfg.B0, cfg.G0);
  WellGeometry geo;

  const double scale2 = std::fabs(c.c2) + cfg.B0 * cfg.B0 + std::fabs(cfg.B0 * cfg.G0) +
                        cfg.G0 * cfg.G0;

  // Critical points solve 3 c6 u^2 + 2 c4 u + c2 = 0 in u = x^2 (plus x = 0).
  std::vector<double> uroots;
  bool borderline = false;
  if (c.c6 <= 1e-14 * scale2 * scale2) {
    // the sextic coefficient vanishes only on the measure-zero boundary
    // G0 in {0, 2 B0}, where the well is effectively quadratic
    borderline = std::fabs(c.c2) < 1e-12 * scale2;
  } else {
    const double disc = c.c4 * c.c4 - 3.0 * c.c6 * c.c2;
    const double disc_scale = c.c4 * c.c4 + std::fabs(3.0 * c.c6 * c.c2);
    if (std::fabs(disc) < 1e-10 * std::max(1.0, disc_scale)) {
      borderline = true;  // double root of the derivative: wells merging
    } else if (disc > 0.0) {
      const double s = std::sqrt(disc);
      const double u_a = (-c.c4 - s) / (3.0 * c.c6);
      const double u_b = (-c.c4 + s) / (3.0 * c.c6);
      const double u_scale = std::max({1.0, std::fabs(u_a), std::fabs(u_b)});
      for (double u : {std::min(u_a, u_b), std::max(u_a, u_b)}) {
        if (u > 1e-10 * u_scale)
          uroots.push_back(u);
        else if (std::fabs(u) <= 1e-10 * u_scale)
          borderline = true;  // off-origin critical point merging into x = 0
      }
    }
    if (std::fabs(c.c2) < 1e-12 * scale2) borderline = true;  // flat origin
  }

  // Assemble the symmetric critical-point list: x = 0 always, +-sqrt(u) for
  // each positive root, polished by bisection on the derivative.
  std::vector<double> xs{0.0};
  for (double u : uroots) {
    const double xr = detail::polish_critical_point(c, std::sqrt(u));
    xs.push_back(xr);
    xs.push_back(-xr);
  }
  std::sort(xs.begin(), xs.end());
  for (double x : xs) geo.critical_points.push_back({x, detail::well_poly(c, x)});

  if (borderline)
    geo.classification = WellClass::Degenerate;
  else if (uroots.size() == 2)
    geo.classification = WellClass::TripleWell;
  else if (uroots.size() == 1)
    geo.classification = WellClass::DoubleWell;
  else
    geo.classification = WellClass::SingleWell;

  // Global-minimum bookkeeping: the deepest critical value and its location.
  const CriticalPoint* best = nullptr;
  for (const auto& cp : geo.critical_points)
    if (best == nullptr || cp.value < best->value) best = &cp;
  if (best != nullptr) {
    geo.epsilon = -best->value;
    if (std::fabs(best->x) > 0.0) geo.x0_sq = best->x * best->x;
  }
  return geo;
}

inline double outer_minimum_x0sq(const SexticConfig& cfg) {
  if (!in_triple_well_band(cfg))
    throw ConstraintViolation("outer_minimum_x0sq: config outside the triple-well band");
  const WellGeometry geo = classify_wells(cfg);
  if (!geo.x0_sq)
    throw ConstraintViolation("outer_minimum_x0sq: no off-origin minimum found");
  return *geo.x0_sq;
}

inline double epsilon_depth(const SexticConfig& cfg) {
  if (!in_triple_well_band(cfg))
    throw ConstraintViolation("epsilon_depth: config outside the triple-well band");
  const WellGeometry geo = classify_wells(cfg);
  if (!geo.epsilon)
    throw ConstraintViolation("epsilon_depth: no minimum found");
  return *geo.epsilon;
}

// ---------------------------------------------------------------------------
// Shifted nonnegative well and bound energies.
// ---------------------------------------------------------------------------

// Precomputed shifted well: V(x) = well_profile(x) + epsilon, with minimum 0
// at +-x0.  Build once and reuse for oracle solves and figure sampling.
struct ShiftedWell {
  SexticConfig cfg;
  Params4 a0;
  double C = 0.0;
  double epsilon = 0.0;
  double x0_sq = 0.0;

  double operator()(double x) const {
    return eval_partner(family_spec(FamilyId::Sextic), a0, x, PartnerSign::Plus) - C + epsilon;
  }
};

inline ShiftedWell make_shifted_well(const SexticConfig& cfg) {
  if (!in_triple_well_band(cfg)) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "make_shifted_well: requires 2 < G0/B0 < %.12f (triple-well band), got "
                  "G0/B0 = %.6f",
                  band_upper_edge_ratio(), cfg.B0 > 0.0 ? cfg.G0 / cfg.B0 : 0.0);
    throw ConstraintViolation(msg);
  }
  ShiftedWell w;
  w.cfg = cfg;
  w.a0 = detail::slaved_params(cfg.B0, cfg.G0);
  w.C = 4.0 * (cfg.G0 - cfg.B0);
  const WellGeometry geo = classify_wells(cfg);
  w.epsilon = *geo.epsilon;
  w.x0_sq = *geo.x0_sq;
  return w;
}

inline double potential_V(const SexticConfig& cfg, double x) {
  return make_shifted_well(cfg)(x);
}

namespace detail {

// Refinement options tuned for the shifted well.  The box is seeded from the
// known location of the off-origin minima: near the lower band edge they sit
// at x0 ~ 30+ length units, far outside any default bootstrap window, and a
// box that misses them converges cleanly onto the spectrum of the origin well
// alone -- plausible numbers, wrong physics.  Settling on the Richardson
// extrapolants keeps the grids coarse enough that steep or wide wells stay
// inside the point budget.
inline RefineOptions shifted_well_options(const ShiftedWell& well, int k, double tol) {
  RefineOptions opt;
  opt.k = k;
  opt.target_tol = tol;
  opt.settle_on_richardson = true;
  opt.initial_halfwidth = 1.4 * std::sqrt(well.x0_sq) + 4.0;
  return opt;
}

struct DoubletGap {
  double delta = 0.0;       // extrapolated gap between levels 3 and 2
  double resolution = 0.0;  // scale below which the gap is indistinguishable from zero
};

// Gap between the two eigenvalues straddling the anchor level, measured on a
// converged grid.  Deep in the band this gap is a tunneling splitting that
// shrinks exponentially and falls below anything a grid method can resolve;
// the caller must treat delta <= resolution as "degenerate at this tolerance"
// rather than divide by it.
inline DoubletGap measured_doublet_gap(const ShiftedWell& well, double tol) {
  Domain dom;
  dom.kind = DomainKind::FullLine;
  const ConvergedEigen ce = refine_until_converged(
      [&](double x) { return well(x); }, dom, shifted_well_options(well, 4, tol));
  DoubletGap g;
  g.delta = ce.result.richardson[3] - ce.result.richardson[2];
  g.resolution = 10.0 * tol * std::max(1.0, std::fabs(ce.result.richardson[3]));
  return g;
}

}  // namespace detail

// Low-lying energies of the shifted well's level structure.  E0 = epsilon is
// the recursion's anchor; E1 = epsilon + C follows from the verified level-0
// step.  The recursion cannot reach level 2 (the level-1 partner difference
// is measurably x-dependent), so E2 falls back to the discretized oracle:
// the gap above the anchor eigenstate in the converged spectrum.
inline Spectrum bound_energies(const SexticConfig& cfg, int n_max,
                               double oracle_tol = 1e-8) {
  if (n_max < 0 || n_max > 2)
    throw ConstraintViolation("bound_energies: n_max must be in {0, 1, 2}");
  const ShiftedWell well = make_shifted_well(cfg);
  const FamilySpec fam = family_spec(FamilyId::Sextic);

  Spectrum s;
  s.provenance = Provenance::Recursion;
  s.levels.push_back({0, well.epsilon});
  s.metadata.push_back("E0 anchors the ladder at the well depth; the converged grid spectrum "
                       "need not contain it (see the fictitious-level report)");
  if (n_max >= 1) {
    // one verified recursion step: E1 = epsilon + C
    Spectrum rec = energies_recursive(fam, well.a0, 1);
    s.levels.push_back({1, well.epsilon + rec.levels[1].second});
  }
  if (n_max >= 2) {
    try {
      Spectrum rec = energies_recursive(fam, well.a0, 2);
      s.levels.push_back({2, well.epsilon + rec.levels[2].second});
    } catch (const ShapeInvarianceViolation& e) {
      const detail::DoubletGap gap = detail::measured_doublet_gap(well, oracle_tol);
      if (gap.delta > gap.resolution) {
        s.levels.push_back({2, s.levels[1].second + gap.delta});
      } else {
        // tunneling-suppressed splitting below what the oracle can resolve:
        // report the levels as degenerate rather than adding noise digits
        s.levels.push_back({2, s.levels[1].second});
        s.metadata.push_back("the measured E2-E1 doublet gap is below the oracle's "
                             "resolution; levels 1 and 2 are reported as degenerate");
      }
      s.provenance = Provenance::Oracle;
      s.metadata.push_back(
          "E2 from the grid oracle: the parameter recursion stops after one step (level " +
          std::to_string(e.level) + " residual " + std::to_string(e.residual) +
          "), so the E2-E1 gap is the converged doublet gap above the anchor state");
    }
  }
  return s;
}

// The anchor level E0 = epsilon is a bookkeeping device of the recursion; the
// converged grid spectrum has its own lowest eigenvalue (guaranteed nodeless
// for a confining well).  This report measures, without asserting, where that
// state sits relative to the anchor.
struct FictitiousStateReport {
  double oracle_lowest = 0.0;
  int node_count = 0;
  double offset_from_anchor = 0.0;  // oracle_lowest - epsilon
  int grid_points = 0;
  double richardson = 0.0;  // extrapolated lowest eigenvalue
};

inline FictitiousStateReport fictitious_state_report(const SexticConfig& cfg,
                                                     double oracle_tol = 1e-8) {
  const ShiftedWell well = make_shifted_well(cfg);
  Domain dom;
  dom.kind = DomainKind::FullLine;
  ConvergedEigen ce = refine_until_converged([&](double x) { return well(x); }, dom,
                                             detail::shifted_well_options(well, 2, oracle_tol));
  FictitiousStateReport rep;
  rep.oracle_lowest = ce.result.eigenvalues[0];
  rep.node_count = ce.result.node_counts[0];
  rep.offset_from_anchor = ce.result.eigenvalues[0] - well.epsilon;
  rep.grid_points = ce.grid.n;
  rep.richardson = ce.result.richardson.empty() ? ce.result.eigenvalues[0]
                                                : ce.result.richardson[0];
  return rep;
}

// ---------------------------------------------------------------------------
// Gap ratio and band scan.
// ---------------------------------------------------------------------------

// Harmonic comparison value: the analogous ratio for the pure quadratic well
// is exactly 1/2.
inline constexpr double kHarmonicGapRatio = 0.5;

inline double gap_ratio(const SexticConfig& cfg, double oracle_tol = 1e-8) {
  const ShiftedWell well = make_shifted_well(cfg);
  const Spectrum rec = energies_recursive(family_spec(FamilyId::Sextic), well.a0, 1);
  const double eps = well.epsilon;
  const double E1 = eps + rec.levels[1].second;
  const detail::DoubletGap gap = detail::measured_doublet_gap(well, oracle_tol);
  const double E2 = E1 + gap.delta;
  if (std::fabs(E2 - E1) < 1e-12 * std::max(1.0, std::fabs(E2)))
    throw DegenerateGap("gap_ratio: |E2 - E1| below tolerance, ratio undefined");
  // Deep in the band the doublet splitting shrinks exponentially; once the
  // measured gap is within an order of magnitude of the oracle's settle
  // tolerance, the ratio would be built from discretization noise.
  if (!(gap.delta > gap.resolution))
    throw DegenerateGap("gap_ratio: measured gap is below the oracle's resolution");
  return eps / (E2 - E1);
}

struct ScanSample {
  double ratio = 0.0;  // G0/B0 at B0 = 1
  double rho = 0.0;    // +inf marks a degenerate gap, excluded from the minimum
  bool degenerate = false;
};

struct GapRatioScan {
  std::vector<ScanSample> samples;
  double min_rho = 0.0;
  double argmin_ratio = 0.0;
  std::vector<std::string> notes;
};

// Sweep of rho across the band at B0 = 1 (the ratio G0/B0 is the only shape
// parameter: rho is invariant under common rescaling of B0 and G0, verified
// numerically in the test suite).  Samples are uniform in the ratio;
// reduction is by index so any evaluation order gives identical output.
inline GapRatioScan scan_rho(int n_samples, double lo_ratio = 2.0 + 1e-3,
                             double hi_ratio = 0.0, double oracle_tol = 1e-8) {
  if (hi_ratio == 0.0) hi_ratio = band_upper_edge_ratio() - 1e-3;
  if (n_samples < 2)
    throw ConstraintViolation("scan_rho: need at least 2 samples");
  if (!(lo_ratio > 2.0) || !(hi_ratio < band_upper_edge_ratio()) || !(lo_ratio < hi_ratio)) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "scan_rho: requires 2 < lo < hi < %.12f (triple-well band), got lo = %.6f, "
                  "hi = %.6f",
                  band_upper_edge_ratio(), lo_ratio, hi_ratio);
    throw ConstraintViolation(msg);
  }

  GapRatioScan out;
  out.samples.resize(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double r = lo_ratio + (hi_ratio - lo_ratio) * static_cast<double>(i) /
                                    static_cast<double>(n_samples - 1);
    ScanSample smp;
    smp.ratio = r;
    try {
      smp.rho = gap_ratio(SexticConfig{1.0, r}, oracle_tol);
    } catch (const DegenerateGap&) {
      smp.rho = std::numeric_limits<double>::infinity();
      smp.degenerate = true;
    }
    out.samples[static_cast<std::size_t>(i)] = smp;
  }

  bool first = true;
  for (const auto& smp : out.samples) {
    if (smp.degenerate) continue;
    if (first || smp.rho < out.min_rho) {
      out.min_rho = smp.rho;
      out.argmin_ratio = smp.ratio;
      first = false;
    }
  }
  if (first) throw DegenerateGap("scan_rho: every sample had a degenerate gap");

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "band upper edge ratio %.12g; last sample ratio %.12g has rho %.12g",
                band_upper_edge_ratio(), out.samples.back().ratio, out.samples.back().rho);
  out.notes.push_back(buf);
  const int deg = static_cast<int>(std::count_if(out.samples.begin(), out.samples.end(),
                                                 [](const ScanSample& s) { return s.degenerate; }));
  if (deg > 0)
    out.notes.push_back(std::to_string(deg) +
                        " degenerate-gap samples recorded as +inf and excluded from the minimum");
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form wavefunction profiles and normalizability.
// ---------------------------------------------------------------------------

// Unnormalized closed-form profiles for n in {0, 1, 2}, exactly as the
// source derivation displays them.
inline double wavefunction_analytic(const SexticConfig& cfg, int n, double x) {
  if (!in_triple_well_band(cfg))
    throw ConstraintViolation("wavefunction_analytic: config outside the triple-well band");
  switch (n) {
    case 0: return printed::ground_state(cfg.B0, cfg.G0, x);
    case 1: return printed::first_excited(cfg.B0, cfg.G0, x);
    case 2: return printed::second_excited(cfg.B0, cfg.G0, x);
    default:
      throw ConstraintViolation("wavefunction_analytic: n must be in {0, 1, 2}");
  }
}

enum class NormClass { Normalizable, Divergent, ComplementNormalizable };

inline const char* to_string(NormClass c) {
  switch (c) {
    case NormClass::Normalizable: return "Normalizable";
    case NormClass::Divergent: return "Divergent";
    case NormClass::ComplementNormalizable: return "ComplementNormalizable";
  }
  return "?";
}

struct NormalizabilityReport {
  NormClass classification = NormClass::Normalizable;
  double quartic_exponent_coefficient = 0.0;  // sign decides the class
  // n = 0 only: the reduction-of-order complement psi * int 1/psi^2 and its
  // measured decay on the integration side
  std::optional<double> complement_alpha;
  std::optional<double> complement_tail_ratio;
  std::optional<NormClass> complement_classification;
};

inline NormalizabilityReport normalizability_class(const SexticConfig& cfg, int n) {
  if (!in_triple_well_band(cfg))
    throw ConstraintViolation("normalizability_class: config outside the triple-well band");
  if (n < 0 || n > 2)
    throw ConstraintViolation("normalizability_class: n must be in {0, 1, 2}");

  NormalizabilityReport rep;
  // quartic exponent: +G0(G0-2B0)/8 for n = 0, the opposite sign for n >= 1
  const double lead = cfg.G0 * (cfg.G0 - 2.0 * cfg.B0) / 8.0;
  rep.quartic_exponent_coefficient = (n == 0) ? lead : -lead;
  rep.classification =
      rep.quartic_exponent_coefficient > 0.0 ? NormClass::Divergent : NormClass::Normalizable;

  if (n == 0) {
    rep.complement_alpha = printed::complement_domain_edge(cfg.B0, cfg.G0);

    // numeric complement psi0 * int_x^L 1/psi0^2 on [0, L], with L chosen so
    // 1/psi0^2 stays inside double range
    const double B0 = cfg.B0, G0 = cfg.G0;
    auto log_psi0 = [&](double x) {
      return -B0 * x * x / 2.0 + G0 * (G0 - 2.0 * B0) * std::pow(x, 4) / 8.0 -
             std::log1p(G0 * x * x);
    };
    double L = 1.0;
    while (2.0 * std::fabs(log_psi0(L)) < 580.0 && L < 64.0) L *= 1.25;
    L /= 1.25;

    const int npts = 4001;
    Grid g = make_grid(0.0, L, npts);
    std::vector<double> inv2(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i)
      inv2[static_cast<std::size_t>(i)] = std::exp(-2.0 * log_psi0(g.x(i)));
    // right-anchored cumulative integral: Fi = int_{x_i}^{L} 1/psi0^2
    std::vector<double> F(static_cast<std::size_t>(g.n), 0.0);
    const double h = g.h();
    for (int i = g.n - 3; i >= 0; i -= 2)
      F[static_cast<std::size_t>(i)] =
          F[static_cast<std::size_t>(i + 2)] +
          h / 3.0 * (inv2[static_cast<std::size_t>(i)] + 4.0 * inv2[static_cast<std::size_t>(i + 1)] +
                     inv2[static_cast<std::size_t>(i + 2)]);
    for (int i = g.n - 2; i >= 0; i -= 2)
      F[static_cast<std::size_t>(i)] =
          F[static_cast<std::size_t>(i + 1)] +
          h / 12.0 * (5.0 * inv2[static_cast<std::size_t>(i)] +
                      8.0 * inv2[static_cast<std::size_t>(i + 1)] -
                      inv2[static_cast<std::size_t>(i + 2)]);

    double peak = 0.0, tail = 0.0;
    const int i_tail = static_cast<int>(0.9 * (g.n - 1));
    for (int i = 0; i < g.n; ++i) {
      const double comp = std::exp(log_psi0(g.x(i))) * F[static_cast<std::size_t>(i)];
      peak = std::max(peak, std::fabs(comp));
      if (i == i_tail) tail = std::fabs(comp);
    }
    rep.complement_tail_ratio = (peak > 0.0) ? tail / peak : 0.0;
    if (*rep.complement_tail_ratio < 1e-2)
      rep.complement_classification = NormClass::ComplementNormalizable;
  }
  return rep;
}

}  // namespace siqm

#endif  // SIQM_SEXTIC_HPP
