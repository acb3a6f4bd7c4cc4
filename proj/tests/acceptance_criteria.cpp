// Acceptance gate: ten numbered behavioral criteria, one verdict line each,
// with measured evidence inline.  Three verdicts are expected to be FAIL by
// the reconciliation analysis shipped with this artifact (the displayed-well
// pairing of the two closed-form profiles, and the scan's printed minimum
// value); they print "FAIL (expected)" and do not affect the exit code.
//
// Exit code = number of UNEXPECTED outcomes: expected-pass criteria that
// fail, plus expected-fail criteria that pass.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "siqm/siqm.hpp"

using namespace siqm;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// pinned tolerances
// ---------------------------------------------------------------------------

constexpr double kShiftTol = 1e-8;        // level-shift residual, x max(1, |C|)
constexpr double kRawEigenTol = 1e-4;     // calibration eigenvalues, raw grid
constexpr double kRichEigenTol = 1e-7;    // calibration eigenvalues, extrapolated
constexpr double kResidualTol = 1e-5;     // profile Schroedinger residual
constexpr double kOverlapMin = 0.999;     // eigenvector pairing overlap
constexpr double kPreExtrapRel = 1e-3;    // oracle-analytic match, raw grid
constexpr double kPostExtrapRel = 1e-5;   // oracle-analytic match, extrapolated
constexpr double kX0Tol = 1e-6;           // outer-minimum location
constexpr double kWellZeroRel = 1e-8;     // potential zero at the minima, x scale
constexpr double kBoundValue = 26.0765;   // printed gap-ratio lower bound
constexpr double kBoundRel = 0.01;        // required agreement with the bound
constexpr double kArgminTol = 1e-2;       // distance of the argmin from the edge
constexpr double kRhoFloor = 26.0;        // every sample must clear this
constexpr double kAnnihilationRel = 1e-6; // lowering-operator kill, x peak

struct Verdict {
  std::string id;
  bool pass = false;
  bool expect_pass = true;
  std::string evidence;
};

std::vector<Verdict> g_results;

void record(const std::string& id, bool pass, bool expect_pass, const std::string& evidence) {
  g_results.push_back({id, pass, expect_pass, evidence});
}

// Run one criterion; an escaped exception is a failing measurement.
void criterion(const std::string& id, bool expect_pass,
               const std::function<std::pair<bool, std::string>()>& fn) {
  try {
    const auto [pass, evidence] = fn();
    record(id, pass, expect_pass, evidence);
  } catch (const std::exception& e) {
    record(id, false, expect_pass, std::string("exception: ") + e.what());
  }
}

std::string num(double v) { return io::format_double(v); }

// As-printed parameter map equality, probed off the reference slice (the
// radial map coincides with the corrected one exactly when A = B).
bool map_passes_as_printed(const FamilySpec& fam, const Params4& ref) {
  Params4 probe = ref;
  probe.A = ref.A * (1.0 + 1.0 / 16.0) + 1.0 / 32.0;
  probe.B = ref.B * (1.0 + 1.0 / 32.0) + 1.0 / 64.0;
  auto close = [](double x, double y) {
    return std::fabs(x - y) <= 1e-12 * std::max({1.0, std::fabs(x), std::fabs(y)});
  };
  for (const Params4& a : {ref, probe}) {
    const Params4 v = next_params(fam, a);
    const Params4 p = printed::map_as_printed(fam.id, a, fam.p);
    if (!(close(v.A, p.A) && close(v.B, p.B) && close(v.D, p.D) && close(v.G, p.G)))
      return false;
  }
  return true;
}

// Shared profile grid for the residual/overlap criteria: wide enough for the
// tails, fine enough that the discretization floor sits below kResidualTol.
Grid profile_grid(const SexticConfig& cfg, double x0) {
  const double L = std::max(2.2, 1.3 * x0 + 5.0 / std::sqrt(cfg.B0));
  const int n = 2 * static_cast<int>(std::ceil(L / 7e-4)) + 1;
  return make_grid(-L, L, n);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string drop_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out << line << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

std::pair<bool, std::string> c1_catalog_invariance() {
  const std::vector<FamilyId> as_printed_required = {
      FamilyId::Harmonic, FamilyId::Morse, FamilyId::Oscillator3D, FamilyId::ScarfII,
      FamilyId::PoschlTellerII};

  double worst = 0.0;
  std::string worst_at = "-";
  int verified_families = 0, vacuous = 0;
  for (const FamilySpec& fam : family_catalog()) {
    if (fam.id == FamilyId::DoubleAngle || fam.id == FamilyId::QuadrupleAngle) {
      ++vacuous;  // no invariance step exists: zero in-domain levels
      continue;
    }
    const Params4 ref = reference_params(fam.id);
    const int levels = fam.id == FamilyId::Sextic ? 1 : 5;  // in-domain only
    for (const auto& r : verify_shape_invariance(fam, ref, levels)) {
      const double ratio = r.residual / (kShiftTol * std::max(1.0, std::fabs(r.C)));
      if (ratio > worst) {
        worst = ratio;
        worst_at = fam.name + " level " + std::to_string(r.level);
      }
    }
    ++verified_families;
  }

  int printed_ok = 0;
  for (FamilyId id : as_printed_required)
    if (map_passes_as_printed(family_spec(id), reference_params(id))) ++printed_ok;

  const bool pass = worst <= 1.0 && printed_ok == 5;
  return {pass, std::to_string(verified_families) + " families verified (+" +
                    std::to_string(vacuous) + " without a step), worst residual at " +
                    num(worst) + "x its bound (" + worst_at + "); " +
                    std::to_string(printed_ok) + "/5 required rows pass as printed"};
}

std::pair<bool, std::string> c2_oracle_calibration() {
  auto shifted_harmonic = [](double x) { return x * x - 1.0; };
  auto solve = [&](int n) {
    const Grid g = make_grid(-10.0, 10.0, n);
    const GridFunction V = sample(g, shifted_harmonic);
    return lowest_eigenpairs(build_hamiltonian(V), V, 6);
  };
  const EigenResult coarse = solve(4001);
  const EigenResult fine = solve(8001);

  double worst_raw = 0.0, worst_rich = 0.0;
  for (int n = 0; n < 6; ++n) {
    const std::size_t i = static_cast<std::size_t>(n);
    const double exact = 2.0 * n;
    worst_raw = std::max(worst_raw, std::fabs(coarse.eigenvalues[i] - exact));
    const double rich = (4.0 * fine.eigenvalues[i] - coarse.eigenvalues[i]) / 3.0;
    worst_rich = std::max(worst_rich, std::fabs(rich - exact));
  }
  const bool pass = worst_raw <= kRawEigenTol && worst_rich <= kRichEigenTol;
  return {pass, "levels 0-5 vs 2n: worst raw deviation " + num(worst_raw) + " (tol " +
                    num(kRawEigenTol) + "), extrapolated " + num(worst_rich) + " (tol " +
                    num(kRichEigenTol) + ")"};
}

std::pair<bool, std::string> c3_profile_residuals() {
  const SexticConfig fig = figure_config();
  const ShiftedWell well = make_shifted_well(fig);
  const Spectrum sp = bound_energies(fig, 2, 1e-8);
  const double e1 = sp.levels[1].second;
  const double e2 = sp.levels[2].second;

  const Grid g = profile_grid(fig, std::sqrt(well.x0_sq));
  const GridFunction V = sample(g, [&](double x) { return well(x); });
  const GridFunction psi1 = normalize(
      sample(g, [&](double x) { return printed::first_excited(fig.B0, fig.G0, x); }));
  const GridFunction psi2 = normalize(
      sample(g, [&](double x) { return printed::second_excited(fig.B0, fig.G0, x); }));

  const double r1 = residual_norm(V, psi1, e1);
  const double r2 = residual_norm(V, psi2, e2);
  const bool pass = r1 < kResidualTol && r2 < kResidualTol;
  return {pass, "against the shifted well at E1 = " + num(e1) + ", E2 = " + num(e2) +
                    ": residuals " + num(r1) + " and " + num(r2) + " (tol " +
                    num(kResidualTol) + "); the single-node profile solves the partner "
                    "operator instead"};
}

std::pair<bool, std::string> c4_oracle_analytic_match() {
  const SexticConfig fig = figure_config();
  const ShiftedWell well = make_shifted_well(fig);
  const Spectrum sp = bound_energies(fig, 2, 1e-8);

  RefineOptions opt;
  opt.k = 4;
  opt.target_tol = 1e-8;
  opt.settle_on_richardson = true;
  opt.initial_halfwidth = 1.4 * std::sqrt(well.x0_sq) + 4.0;
  Domain dom;
  dom.kind = DomainKind::FullLine;
  const ConvergedEigen ce =
      refine_until_converged([&](double x) { return well(x); }, dom, opt);

  bool pass = true;
  std::string evidence;
  for (int target = 1; target <= 2; ++target) {
    const double e_target = sp.levels[static_cast<std::size_t>(target)].second;
    const GridFunction psi = normalize(sample(ce.grid, [&](double x) {
      return target == 1 ? printed::first_excited(fig.B0, fig.G0, x)
                         : printed::second_excited(fig.B0, fig.G0, x);
    }));
    double best_ov = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < ce.result.eigenvectors.size(); ++i) {
      const double ov = std::fabs(overlap(psi, ce.result.eigenvectors[i]));
      if (ov > best_ov) {
        best_ov = ov;
        best_i = i;
      }
    }
    const double scale = std::max(1.0, std::fabs(e_target));
    const double raw_rel = std::fabs(ce.result.eigenvalues[best_i] - e_target) / scale;
    const double rich_rel = std::fabs(ce.result.richardson[best_i] - e_target) / scale;
    const bool ok = best_ov > kOverlapMin && raw_rel <= kPreExtrapRel &&
                    rich_rel <= kPostExtrapRel;
    pass = pass && ok;
    if (target > 1) evidence += "; ";
    evidence += "E" + std::to_string(target) + " = " + num(e_target) +
                ": best overlap " + num(best_ov) + " at oracle level " +
                std::to_string(best_i) + " (E = " + num(ce.result.richardson[best_i]) +
                ", rel delta " + num(rich_rel) + ")";
  }
  return {pass, evidence + "; the oracle spectrum tops out one shift constant below E1"};
}

std::pair<bool, std::string> c5_well_geometry() {
  const SexticConfig fig = figure_config();
  const WellGeometry geo = classify_wells(fig);
  const ShiftedWell well = make_shifted_well(fig);
  const double x0 = std::sqrt(well.x0_sq);
  const double scale = std::max(1.0, well.epsilon);
  const double v = std::max(std::fabs(well(x0)), std::fabs(well(-x0)));

  const bool pass = geo.classification == WellClass::TripleWell &&
                    std::fabs(well.x0_sq - 1.0) <= kX0Tol && v <= kWellZeroRel * scale;
  return {pass, std::string("classification ") +
                    (geo.classification == WellClass::TripleWell ? "TripleWell" : "other") +
                    ", x0^2 = " + num(well.x0_sq) + " (tol " + num(kX0Tol) +
                    "), |V(+-x0)| = " + num(v) + " (bound " + num(kWellZeroRel * scale) + ")"};
}

// The three clauses of the gap-ratio criterion get separate verdicts; only
// the minimum-value clause is expected to fail.
void c6_gap_ratio_scan() {
  GapRatioScan scan;
  try {
    scan = scan_rho(200);
  } catch (const std::exception& e) {
    const std::string msg = std::string("exception: ") + e.what();
    record("6a", false, false, msg);
    record("6b", false, true, msg);
    record("6c", false, true, msg);
    return;
  }

  const double edge = band_upper_edge_ratio();
  int degenerate = 0;
  bool all_above = true;
  for (const auto& s : scan.samples) {
    degenerate += s.degenerate ? 1 : 0;
    all_above = all_above && s.rho > kRhoFloor;  // inf clears the floor
  }

  const double value_delta = std::fabs(scan.min_rho - kBoundValue) / kBoundValue;
  record("6a", value_delta <= kBoundRel, false,
         "measured minimum rho " + num(scan.min_rho) + " vs printed bound " +
             num(kBoundValue) + " (relative delta " + num(value_delta) + ", required <= " +
             num(kBoundRel) + ")");
  record("6b", std::fabs(scan.argmin_ratio - edge) <= kArgminTol, true,
         "argmin ratio " + num(scan.argmin_ratio) + " within " + num(kArgminTol) +
             " of the band edge " + num(edge));
  record("6c", all_above, true,
         "all 200 samples clear rho > " + num(kRhoFloor) + " (" +
             std::to_string(degenerate) +
             " tunneling-degenerate samples count as unbounded)");
}

std::pair<bool, std::string> c7_ladder_coherence() {
  // steep sextic: the raising image of the level-0 zero mode vs the printed
  // single-node profile, on a window that keeps the exponent in range
  const SexticConfig fig = figure_config();
  const Params4 a0 = derive_dependent_params(fig);
  const Grid g = make_grid(-1.3, 1.3, 4001);
  const GridFunction up = excited_state(family_spec(FamilyId::Sextic), a0, 1, g);
  const GridFunction target = normalize(
      sample(g, [&](double x) { return printed::first_excited(fig.B0, fig.G0, x); }));
  const double ov = std::fabs(overlap(up, target));

  // harmonic: the lowering operator annihilates its own ground state
  const FamilySpec harm = family_spec(FamilyId::Harmonic);
  const Params4 ah = reference_params(FamilyId::Harmonic);
  const Grid gh = make_grid(-8.0, 8.0, 4001);
  const GridFunction ground = ground_state_from_W(harm, ah, gh);
  const GridFunction lowered = apply_lowering(harm, ah, ground);
  double peak = 0.0, low_max = 0.0;
  for (int i = 0; i < gh.n; ++i) {
    peak = std::max(peak, std::fabs(ground.values[static_cast<std::size_t>(i)]));
    low_max = std::max(low_max, std::fabs(lowered.values[static_cast<std::size_t>(i)]));
  }

  const bool pass = ov > kOverlapMin && low_max < kAnnihilationRel * peak;
  return {pass, "raising-image overlap " + num(ov) + " (required > " + num(kOverlapMin) +
                    "); lowering residue " + num(low_max / peak) + " of peak (required < " +
                    num(kAnnihilationRel) + ")"};
}

std::pair<bool, std::string> c8_normalizability() {
  const std::vector<SexticConfig> configs = {
      {1.0, 2.05}, {1.0, 2.1}, {1.0, 2.13}, figure_config()};
  int ok = 0;
  for (const SexticConfig& cfg : configs) {
    const auto r0 = normalizability_class(cfg, 0);
    const auto r1 = normalizability_class(cfg, 1);
    const auto r2 = normalizability_class(cfg, 2);
    if (r0.classification == NormClass::Divergent &&
        r1.classification == NormClass::Normalizable &&
        r2.classification == NormClass::Normalizable)
      ++ok;
  }
  return {ok == static_cast<int>(configs.size()),
          std::to_string(ok) + "/" + std::to_string(configs.size()) +
              " band configurations give (Divergent, Normalizable, Normalizable)"};
}

std::pair<bool, std::string> c9_fictitious_report() {
  const SexticConfig fig = figure_config();
  const FictitiousStateReport rep = fictitious_state_report(fig, 1e-8);
  const double eps = epsilon_depth(fig);
  const bool pass = std::isfinite(rep.richardson) && rep.grid_points > 0;
  return {pass, "lowest oracle eigenvalue " + num(rep.richardson) + " with " +
                    std::to_string(rep.node_count) + " nodes, offset " +
                    num(rep.richardson - eps) + " from the anchor " + num(eps) +
                    " (converged on " + std::to_string(rep.grid_points) +
                    " points; measured, no required value)"};
}

std::pair<bool, std::string> c10_determinism() {
  const fs::path base = fs::temp_directory_path() / "siqm_acceptance";
  const fs::path a = base / "verify_a";
  const fs::path b = base / "verify_b";
  fs::remove_all(base);

  auto run = [&](const fs::path& dir) {
    const std::string cmd = std::string("\"") + SIQM_CLI_PATH + "\" verify --scope all --out " +
                            dir.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  if (!run(a) || !run(b)) return {false, "verify --scope all did not exit 0"};

  const bool report_same = slurp(a / "verify_report.json") == slurp(b / "verify_report.json");
  const bool manifest_same =
      drop_timestamp(slurp(a / "manifest.json")) == drop_timestamp(slurp(b / "manifest.json"));
  return {report_same && manifest_same,
          std::string("repeated runs: report bytes ") +
              (report_same ? "identical" : "DIFFER") + ", manifest " +
              (manifest_same ? "identical modulo timestamp" : "DIFFERS")};
}

}  // namespace

int main() {
  std::printf("acceptance criteria (tool version %s)\n", kVersion);
  std::printf("expected-fail set: 3, 4, 6a (displayed-well pairing and the printed scan "
              "minimum; see the verification records)\n\n");

  criterion("1", true, c1_catalog_invariance);
  criterion("2", true, c2_oracle_calibration);
  criterion("3", false, c3_profile_residuals);
  criterion("4", false, c4_oracle_analytic_match);
  criterion("5", true, c5_well_geometry);
  c6_gap_ratio_scan();
  criterion("7", true, c7_ladder_coherence);
  criterion("8", true, c8_normalizability);
  criterion("9", true, c9_fictitious_report);
  criterion("10", true, c10_determinism);

  int unexpected = 0;
  for (const Verdict& v : g_results) {
    const char* label;
    if (v.pass == v.expect_pass) {
      label = v.pass ? "PASS           " : "FAIL (expected)";
    } else {
      label = v.pass ? "PASS (UNEXPECTED)" : "FAIL (UNEXPECTED)";
      ++unexpected;
    }
    std::printf("[%3s] %s  %s\n", v.id.c_str(), label, v.evidence.c_str());
  }
  std::printf("\n%zu verdicts, %d unexpected\n", g_results.size(), unexpected);
  return unexpected;
}
