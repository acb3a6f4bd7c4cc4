// siqm command-line tool: catalog queries, spectra, grid sampling,
// verification suites, the triple-well figure data, and the gap-ratio scan.
//
// Every successful run writes its data files plus exactly one manifest.json
// into --out.  Outputs are byte-identical for identical inputs and tool
// version, except the manifest timestamp.
//
// Exit codes: 0 success, 1 hard-assertion or measurement failure,
// 2 invalid input or violated constraint (the message names the inequality).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "siqm/siqm.hpp"

namespace {

using siqm::ConvergedEigen;
using siqm::Domain;
using siqm::DomainKind;
using siqm::FamilyId;
using siqm::FamilySpec;
using siqm::Grid;
using siqm::GridFunction;
using siqm::Params4;
using siqm::PartnerSign;
using siqm::RefineOptions;
using siqm::SexticConfig;
using siqm::ShiftedWell;
using siqm::Spectrum;
using ordered_json = siqm::io::ordered_json;

// ---------------------------------------------------------------------------
// Shared options and small helpers.
// ---------------------------------------------------------------------------

struct CommonOpts {
  std::string out = ".";
  double tol = 1e-8;
  int grid_points = 2001;
  double halfwidth = 0.0;  // 0 = command/family default
  std::string format = "json";
};

void add_output_flags(CLI::App* cmd, CommonOpts& o, bool with_format = false) {
  cmd->add_option("--out", o.out, "output directory (created if missing)");
  cmd->add_option("--tol", o.tol, "oracle / verification tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--grid-points", o.grid_points, "sampling grid point count")
      ->check(CLI::Range(16, 1 << 20));
  cmd->add_option("--domain-halfwidth", o.halfwidth,
                  "box half-width for unbounded domains (0 = automatic)");
  if (with_format)
    cmd->add_option("--format", o.format, "primary document format")
        ->check(CLI::IsMember({"json", "csv"}));
}

const char* domain_kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::FullLine: return "full-line";
    case DomainKind::HalfLine: return "half-line";
    case DomainKind::Interval: return "interval";
  }
  return "?";
}

bool params_close(const Params4& a, const Params4& b) {
  auto close = [](double x, double y) {
    return std::fabs(x - y) <= 1e-12 * std::max({1.0, std::fabs(x), std::fabs(y)});
  };
  return close(a.A, b.A) && close(a.B, b.B) && close(a.D, b.D) && close(a.G, b.G);
}

ordered_json params_json(const Params4& a) {
  ordered_json j;
  j["A"] = a.A;
  j["B"] = a.B;
  j["D"] = a.D;
  j["G"] = a.G;
  return j;
}

// The printed and validated parameter maps can coincide on special slices
// (for the radial ladder they agree exactly when A = B), so the comparison
// probes a perturbed point alongside the reference one.
bool printed_map_matches(const FamilySpec& fam, const Params4& ref) {
  Params4 probe = ref;
  probe.A = ref.A * (1.0 + 1.0 / 16.0) + 1.0 / 32.0;
  probe.B = ref.B * (1.0 + 1.0 / 32.0) + 1.0 / 64.0;
  for (const Params4& a : {ref, probe}) {
    if (!params_close(siqm::next_params(fam, a),
                      siqm::printed::map_as_printed(fam.id, a, fam.p)))
      return false;
  }
  return true;
}

FamilyId parse_family(const std::string& name) {
  const std::optional<FamilyId> id = siqm::family_from_name(name);
  if (!id)
    throw siqm::UnsupportedFamily("unknown family '" + name +
                                  "'; run the catalog command for the list");
  return *id;
}

// Sampling grid over a family's natural domain.  halfwidth 0 picks the
// command default; intervals use their native endpoints with a tiny inset.
Grid domain_grid(const Domain& dom, double halfwidth, int points, double fallback_halfwidth) {
  const double L = halfwidth > 0.0 ? halfwidth : fallback_halfwidth;
  switch (dom.kind) {
    case DomainKind::FullLine: return siqm::make_grid(-L, L, points);
    case DomainKind::HalfLine: return siqm::make_grid(1e-4, L, points);
    case DomainKind::Interval: {
      const double span = dom.right - dom.left;
      return siqm::make_grid(dom.left + 1e-9 * span, dom.right - 1e-9 * span, points);
    }
  }
  throw siqm::DomainError("domain_grid: unknown domain kind");
}

// Geometry-aware refinement options for the sextic shifted well (the outer
// minima must sit inside the initial box; see the library's scan machinery).
RefineOptions shifted_well_refine(const ShiftedWell& w, int k, double tol, double halfwidth) {
  RefineOptions opt;
  opt.k = k;
  opt.target_tol = tol;
  opt.settle_on_richardson = true;
  opt.initial_halfwidth =
      halfwidth > 0.0 ? halfwidth : 1.4 * std::sqrt(w.x0_sq) + 4.0;
  return opt;
}

// Oracle refinement for a catalog family's base potential V_-(a0).
ConvergedEigen family_oracle(const FamilySpec& fam, const Params4& a0, int k,
                             const CommonOpts& o, double halfline_delta = 1e-4) {
  const Domain dom = siqm::domain_of(fam, a0);
  RefineOptions opt;
  opt.k = k;
  opt.target_tol = o.tol;
  opt.settle_on_richardson = true;
  opt.initial_halfwidth = o.halfwidth;
  opt.halfline_delta = halfline_delta;
  auto V = [&](double x) { return siqm::eval_partner(fam, a0, x, PartnerSign::Minus); };
  return siqm::refine_until_converged(V, dom, opt);
}

// One verification line: a named measurement against a hard bound.
struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
};

ordered_json checks_json(const std::vector<Check>& checks) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["measured"] = siqm::io::json_number(c.measured);
    j["bound"] = siqm::io::json_number(c.bound);
    arr.push_back(j);
  }
  return arr;
}

int count_failures(const std::vector<Check>& checks) {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

std::string fmt(double v) { return siqm::io::format_double(v); }

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

int cmd_catalog(const CommonOpts& o) {
  ordered_json rows = ordered_json::array();
  siqm::io::CsvTable csv;
  csv.header = {"family", "arity", "domain", "map_status", "energy_status"};

  for (const FamilySpec& fam : siqm::family_catalog()) {
    const Params4 ref = siqm::reference_params(fam.id);

    std::string map_status = "printed";
    try {
      if (!printed_map_matches(fam, ref)) map_status = "corrected";
      if (fam.id == FamilyId::Sextic) map_status += " (single exact step)";
    } catch (const siqm::UnsupportedFamily&) {
      map_status = "unsupported";
    }

    std::string energy_status = "none";
    const std::optional<double> e1 = siqm::exact_energy(fam.id, ref, fam.p, 1);
    if (e1) {
      energy_status = "printed";
      try {
        const double p1 = siqm::printed::energy_as_printed(fam.id, ref, fam.p, 1);
        if (std::fabs(p1 - *e1) > 1e-12 * std::max(1.0, std::fabs(*e1)))
          energy_status = "corrected";
      } catch (const siqm::UnsupportedFamily&) {
        energy_status = "corrected";
      }
    } else if (fam.id == FamilyId::Sextic) {
      energy_status = "printed-only";
    }

    const Domain dom = siqm::domain_of(fam, ref);
    ordered_json j;
    j["family"] = fam.name;
    j["arity"] = fam.arity;
    j["domain"] = domain_kind_name(dom.kind);
    if (dom.kind == DomainKind::Interval) {
      j["domain_left"] = dom.left;
      j["domain_right"] = dom.right;
    }
    j["map_status"] = map_status;
    j["energy_status"] = energy_status;
    j["reference_params"] = params_json(ref);
    j["printed_superpotential"] = fam.printed_W;
    j["printed_map"] = fam.printed_map;
    j["printed_energy"] = fam.printed_energy;
    rows.push_back(j);

    csv.rows.push_back({fam.name, std::to_string(fam.arity), domain_kind_name(dom.kind),
                        map_status, energy_status});
  }

  siqm::io::ensure_dir(o.out);
  if (o.format == "csv") {
    siqm::io::write_csv(siqm::io::path_join(o.out, "catalog.csv"), csv);
  } else {
    ordered_json doc;
    doc["count"] = static_cast<int>(siqm::family_catalog().size());
    doc["families"] = rows;
    siqm::io::write_text_file(siqm::io::path_join(o.out, "catalog.json"),
                              doc.dump(2) + "\n");
  }

  siqm::io::RunManifest m;
  m.command = "catalog";
  m.parameters["format"] = o.format;
  m.outcome = std::to_string(siqm::family_catalog().size()) + " families listed";
  m.ledger.push_back(
      "map/energy status columns are computed live: a row reads 'corrected' when the "
      "as-printed form fails its own invariance or recursion condition");
  siqm::io::write_manifest(o.out, m);
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string family = "harmonic";
  double A = 0.0, B = 0.0, D = 0.0, G = 0.0;
  double B0 = 0.0, G0 = 0.0;
  double p = 1.0;
  int n = -1;  // -1 = family default
  std::string method = "recursion";
};

// Resolved parameter point plus the sextic two-parameter view when it applies.
struct ResolvedPoint {
  FamilySpec fam;
  Params4 a0;
  std::optional<SexticConfig> cfg;
};

ResolvedPoint resolve_point(const CLI::App* cmd, const SpectrumArgs& a, bool allow_raw_sextic) {
  ResolvedPoint r;
  const FamilyId id = parse_family(a.family);
  r.fam = siqm::family_spec(id, a.p);

  const bool have_pair = cmd->count("--B0") > 0 || cmd->count("--G0") > 0;
  const bool have_raw = cmd->count("--A") > 0 || cmd->count("--B") > 0 ||
                        cmd->count("--D") > 0 || cmd->count("--G") > 0;

  if (id == FamilyId::Sextic) {
    if (have_pair) {
      if (cmd->count("--B0") == 0 || cmd->count("--G0") == 0)
        throw siqm::ConstraintViolation("sextic configuration needs both --B0 and --G0");
      r.cfg = SexticConfig{a.B0, a.G0};
      r.a0 = siqm::derive_dependent_params(*r.cfg);  // enforces B0 > 0 and G0 > 2*B0
    } else if (have_raw) {
      if (!allow_raw_sextic)
        throw siqm::ConstraintViolation(
            "sextic levels are parameterized by --B0 and --G0; raw (A,B,D,G) points are "
            "accepted by the sample command only");
      r.a0 = {a.A, a.B, a.D, a.G};
    } else {
      r.cfg = SexticConfig{1.0, 2.1};
      r.a0 = siqm::derive_dependent_params(*r.cfg);
    }
  } else {
    if (have_pair)
      throw siqm::ConstraintViolation("--B0/--G0 apply to the sextic family only");
    r.a0 = have_raw ? Params4{a.A, a.B, a.D, a.G} : siqm::reference_params(id);
  }
  return r;
}

int cmd_spectrum(const CLI::App* cmd, const SpectrumArgs& args, const CommonOpts& o) {
  const ResolvedPoint pt = resolve_point(cmd, args, /*allow_raw_sextic=*/false);
  const bool sextic = pt.fam.id == FamilyId::Sextic;
  const int n_max = args.n >= 0 ? args.n : (sextic ? 2 : 3);
  if (args.method == "oracle" || args.method == "all") {
    if (n_max > 7)
      throw siqm::ConstraintViolation("oracle methods support n <= 7 (requested " +
                                      std::to_string(n_max) + ")");
  }

  std::vector<std::string> ledger;

  // --- recursion column ---
  std::optional<Spectrum> rec;
  if (args.method == "recursion" || args.method == "all") {
    if (sextic) {
      rec = siqm::bound_energies(*pt.cfg, n_max, o.tol);
      for (const std::string& note : rec->metadata) ledger.push_back(note);
    } else {
      rec = siqm::energies_recursive(pt.fam, pt.a0, n_max);
    }
  }

  // --- closed-form column ---
  std::optional<std::vector<std::optional<double>>> closed;
  if (args.method == "closed-form" || args.method == "all") {
    std::vector<std::optional<double>> col;
    if (sextic) {
      const double eps = siqm::epsilon_depth(*pt.cfg);
      const double C = siqm::level_shift_constant(*pt.cfg);
      for (int n = 0; n <= n_max; ++n) {
        if (n == 0) col.push_back(eps);
        else if (n == 1) col.push_back(eps + C);
        else col.push_back(std::nullopt);  // no validated closed form beyond level 1
      }
      if (n_max >= 2) {
        if (args.method == "closed-form")
          throw siqm::ConstraintViolation(
              "sextic has no validated closed form beyond level 1; use --method recursion "
              "or oracle for n >= 2");
        ledger.push_back("closed-form column stops at level 1: the printed general level "
                         "expression belongs to a different operator (value at n=2: " +
                         fmt(siqm::printed::triple_well_energy(pt.cfg->B0, pt.cfg->G0, eps, 2)) +
                         ")");
      }
    } else {
      for (int n = 0; n <= n_max; ++n) {
        const std::optional<double> e = siqm::exact_energy(pt.fam.id, pt.a0, pt.fam.p, n);
        if (!e)
          throw siqm::UnsupportedFamily("no validated closed-form energies for family '" +
                                        pt.fam.name + "'");
        col.push_back(*e);
      }
    }
    closed = std::move(col);
  }

  // --- oracle column ---
  std::optional<ConvergedEigen> oracle;
  if (args.method == "oracle" || args.method == "all") {
    if (sextic) {
      const ShiftedWell w = siqm::make_shifted_well(*pt.cfg);
      Domain dom;
      dom.kind = DomainKind::FullLine;
      oracle = siqm::refine_until_converged(
          [&](double x) { return w(x); }, dom,
          shifted_well_refine(w, n_max + 1, o.tol, o.halfwidth));
      ledger.push_back(
          "oracle column lists the converged grid spectrum of the shifted well; it is offset "
          "from the recursion ladder by one level-shift constant (lowest grid eigenvalue " +
          fmt(oracle->result.richardson[0]) + " vs anchor " + fmt(w.epsilon) + ")");
    } else {
      const bool halfline = siqm::domain_of(pt.fam, pt.a0).kind == DomainKind::HalfLine;
      double inset = 1e-4;
      try {
        oracle = family_oracle(pt.fam, pt.a0, n_max + 1, o, inset);
      } catch (const siqm::ResourceLimit&) {
        if (!halfline) throw;
        // a potential that dives at the origin (attractive 1/x tail) needs an
        // unaffordable uniform grid at the default inset; widen the wall
        inset = 1e-3;
        oracle = family_oracle(pt.fam, pt.a0, n_max + 1, o, inset);
        ledger.push_back("half-line oracle: wall inset widened to 0.001 (the default "
                         "0.0001 exceeds the grid point budget at this potential's "
                         "origin singularity)");
      }
      // half-line problems carry a Dirichlet wall at a small inset from the
      // singular endpoint; measure the wall sensitivity and disclose it
      if (halfline) {
        const ConvergedEigen wide =
            family_oracle(pt.fam, pt.a0, n_max + 1, o, 2.0 * inset);
        double worst = 0.0;
        for (int n = 0; n <= n_max; ++n) {
          const std::size_t i = static_cast<std::size_t>(n);
          worst = std::max(worst,
                           std::fabs(wide.result.richardson[i] - oracle->result.richardson[i]));
        }
        ledger.push_back("half-line oracle: the column is the converged spectrum with a "
                         "Dirichlet wall inset " + fmt(inset) + " from the singular "
                         "endpoint; doubling the inset shifts the levels by up to " +
                         fmt(worst) + " (the wall systematic is of this size)");
      }
    }
  }

  // --- printed-form reconciliation notes ---
  if (!sextic) {
    try {
      const Params4 nxt = siqm::next_params(pt.fam, pt.a0);
      const Params4 prn = siqm::printed::map_as_printed(pt.fam.id, pt.a0, pt.fam.p);
      if (!params_close(nxt, prn))
        ledger.push_back("printed parameter map fails the invariance condition at this "
                         "point; the corrected map drives the recursion");
    } catch (const siqm::UnsupportedFamily&) {
      // unsupported rows surface through the recursion itself
    }
    const std::optional<double> e1 = siqm::exact_energy(pt.fam.id, pt.a0, pt.fam.p, 1);
    if (e1) {
      try {
        const double p1 = siqm::printed::energy_as_printed(pt.fam.id, pt.a0, pt.fam.p, 1);
        if (std::fabs(p1 - *e1) > 1e-12 * std::max(1.0, std::fabs(*e1)))
          ledger.push_back("printed energy column disagrees with the telescoped recursion "
                           "(printed E1 = " + fmt(p1) + ", validated E1 = " + fmt(*e1) + ")");
      } catch (const siqm::UnsupportedFamily&) {
      }
    }
  }

  // --- assemble the document ---
  ordered_json doc;
  doc["family"] = pt.fam.name;
  doc["params"] = params_json(pt.a0);
  if (pt.cfg) {
    doc["B0"] = pt.cfg->B0;
    doc["G0"] = pt.cfg->G0;
  }
  doc["method"] = args.method;
  doc["n_max"] = n_max;

  ordered_json levels = ordered_json::array();
  siqm::io::CsvTable csv;
  if (args.method == "all") {
    csv.header = {"n", "recursion", "closed_form", "oracle"};
    for (int n = 0; n <= n_max; ++n) {
      const std::size_t i = static_cast<std::size_t>(n);
      ordered_json row;
      row["n"] = n;
      const bool have_rec = rec && i < rec->levels.size();
      const double erec = have_rec ? rec->levels[i].second : 0.0;
      row["recursion"] = have_rec ? ordered_json(erec) : ordered_json(nullptr);
      const bool have_cf = closed && (*closed)[i].has_value();
      row["closed_form"] = have_cf ? ordered_json(*(*closed)[i]) : ordered_json(nullptr);
      const double eor = oracle->result.richardson[i];
      row["oracle"] = eor;
      row["delta_recursion_oracle"] =
          have_rec ? ordered_json(erec - eor) : ordered_json(nullptr);
      row["delta_closed_oracle"] =
          have_cf ? ordered_json(*(*closed)[i] - eor) : ordered_json(nullptr);
      levels.push_back(row);
      csv.rows.push_back({std::to_string(n), have_rec ? fmt(erec) : "",
                          have_cf ? fmt(*(*closed)[i]) : "", fmt(eor)});
    }
  } else {
    csv.header = {"n", "E"};
    for (int n = 0; n <= n_max; ++n) {
      const std::size_t i = static_cast<std::size_t>(n);
      double e = 0.0;
      if (args.method == "recursion") e = rec->levels[i].second;
      else if (args.method == "closed-form") e = *(*closed)[i];
      else e = oracle->result.richardson[i];
      ordered_json row;
      row["n"] = n;
      row["E"] = e;
      levels.push_back(row);
      csv.rows.push_back({std::to_string(n), fmt(e)});
    }
  }
  doc["levels"] = levels;

  if (oracle) {
    ordered_json res = ordered_json::array();
    for (int n = 0; n <= n_max; ++n)
      res.push_back(oracle->result.residual_norms[static_cast<std::size_t>(n)]);
    doc["residuals"] = res;
    doc["oracle_grid_points"] = oracle->grid.n;
  } else {
    doc["residuals"] = nullptr;
  }

  siqm::io::ensure_dir(o.out);
  if (o.format == "csv")
    siqm::io::write_csv(siqm::io::path_join(o.out, "spectrum.csv"), csv);
  else
    siqm::io::write_text_file(siqm::io::path_join(o.out, "spectrum.json"),
                              doc.dump(2) + "\n");

  siqm::io::RunManifest m;
  m.command = "spectrum";
  m.parameters["family"] = pt.fam.name;
  m.parameters["params"] = params_json(pt.a0);
  m.parameters["method"] = args.method;
  m.parameters["n_max"] = n_max;
  m.parameters["format"] = o.format;
  m.tolerances["tol"] = o.tol;
  m.outcome = std::to_string(n_max + 1) + " levels via " + args.method;
  m.ledger = ledger;
  siqm::io::write_manifest(o.out, m);
  return 0;
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

struct SampleArgs {
  SpectrumArgs point;  // reuses family/parameter flags
  std::string quantity = "potential";
  int level = 0;
};

int cmd_sample(const CLI::App* cmd, const SampleArgs& args, const CommonOpts& o) {
  const ResolvedPoint pt = resolve_point(cmd, args.point, /*allow_raw_sextic=*/true);
  const Domain dom = siqm::domain_of(pt.fam, pt.a0);
  const double fallback = dom.kind == DomainKind::HalfLine ? 14.0 : 8.0;
  const Grid grid = domain_grid(dom, o.halfwidth, o.grid_points, fallback);

  GridFunction f;
  std::string column;
  if (args.quantity == "potential") {
    f = siqm::sample(grid, [&](double x) {
      return siqm::eval_partner(pt.fam, pt.a0, x, PartnerSign::Minus);
    });
    column = "V_minus";
  } else if (args.quantity == "partner-plus") {
    f = siqm::sample(grid, [&](double x) {
      return siqm::eval_partner(pt.fam, pt.a0, x, PartnerSign::Plus);
    });
    column = "V_plus";
  } else if (args.quantity == "superpotential") {
    f = siqm::sample(grid, [&](double x) { return siqm::eval_W(pt.fam, pt.a0, x); });
    column = "W";
  } else {  // wavefunction
    f = siqm::excited_state(pt.fam, pt.a0, args.level, grid);
    column = "psi_" + std::to_string(args.level);
  }

  siqm::io::ensure_dir(o.out);
  siqm::io::write_csv(siqm::io::path_join(o.out, "sample.csv"),
                      siqm::io::grid_csv(f, column));

  siqm::io::RunManifest m;
  m.command = "sample";
  m.parameters["family"] = pt.fam.name;
  m.parameters["params"] = params_json(pt.a0);
  m.parameters["quantity"] = args.quantity;
  if (args.quantity == "wavefunction") m.parameters["level"] = args.level;
  m.parameters["grid_points"] = grid.n;
  m.parameters["xmin"] = grid.xmin;
  m.parameters["xmax"] = grid.xmax;
  m.outcome = column + " sampled on " + std::to_string(grid.n) + " points";
  if (args.quantity == "wavefunction")
    m.ledger.push_back("wavefunction built by the operator chain from the level-" +
                       std::to_string(args.level) + " zero mode; grid-normalized");
  siqm::io::write_manifest(o.out, m);
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

// Catalog suite: level-shift constancy for every family with an invariance
// step, recursion-vs-closed-form energy agreement, and reconciliation records
// for every as-printed discrepancy.
ordered_json verify_catalog(double tol, std::vector<Check>& checks,
                            std::vector<std::string>& ledger) {
  ordered_json families = ordered_json::array();

  for (const FamilySpec& fam : siqm::family_catalog()) {
    const Params4 ref = siqm::reference_params(fam.id);
    ordered_json row;
    row["family"] = fam.name;

    // families without a working invariance step are records, not failures
    if (fam.id == FamilyId::DoubleAngle || fam.id == FamilyId::QuadrupleAngle) {
      row["map"] = "unsupported";
      ledger.push_back(fam.name + ": printed parameter map fails the partner condition; "
                       "no invariance step exists");
      families.push_back(row);
      continue;
    }

    const bool corrected = !printed_map_matches(fam, ref);
    row["map"] = corrected ? "corrected" : "printed";
    if (corrected)
      ledger.push_back(fam.name + ": printed parameter map fails the invariance "
                       "condition; corrected map drives the recursion");

    const int levels = fam.id == FamilyId::Sextic ? 1 : 5;
    const auto reports = siqm::verify_shape_invariance(fam, ref, levels);
    ordered_json lv = ordered_json::array();
    for (const auto& r : reports) {
      const double bound = tol * std::max(1.0, std::fabs(r.C));
      checks.push_back({fam.name + " level-shift constancy at level " +
                            std::to_string(r.level),
                        r.residual <= bound, r.residual, bound});
      ordered_json e;
      e["level"] = r.level;
      e["C"] = r.C;
      e["residual"] = r.residual;
      lv.push_back(e);
    }
    row["level_shifts"] = lv;

    if (fam.id == FamilyId::Sextic) {
      // the recursion is exact for one step and provably stops there
      try {
        siqm::energies_recursive(fam, ref, 2);
        ledger.push_back("sextic: UNEXPECTED second recursion step verified");
      } catch (const siqm::ShapeInvarianceViolation& e) {
        ledger.push_back(
            "sextic: recursion terminates after one exact step (level " +
            std::to_string(e.level) + " residual " + fmt(e.residual) +
            "); deeper levels fall back to the grid oracle");
        row["recursion_depth"] = 1;
      }
      families.push_back(row);
      continue;
    }

    const Spectrum rec = siqm::energies_recursive(fam, ref, 4);
    double max_delta = 0.0;
    bool printed_energy_ok = true;
    for (int n = 0; n <= 4; ++n) {
      const std::optional<double> e = siqm::exact_energy(fam.id, ref, fam.p, n);
      const double er = rec.levels[static_cast<std::size_t>(n)].second;
      max_delta = std::max(max_delta, std::fabs(*e - er) / std::max(1.0, std::fabs(er)));
      const double pn = siqm::printed::energy_as_printed(fam.id, ref, fam.p, n);
      if (std::fabs(pn - er) > 1e-10 * std::max(1.0, std::fabs(er)))
        printed_energy_ok = false;
    }
    checks.push_back({fam.name + " recursion matches closed-form energies (levels 0-4)",
                      max_delta <= tol, max_delta, tol});
    row["energy_column"] = printed_energy_ok ? "printed" : "corrected";
    if (!printed_energy_ok)
      ledger.push_back(fam.name + ": printed energy column disagrees with the "
                       "telescoped recursion; corrected closed form recorded");
    families.push_back(row);
  }
  return families;
}

// Sextic suite: closed-form identities and profile measurements for one
// configuration.  Hard assertions are owned by the validated layer; every
// printed-form discrepancy is a ledger record.
ordered_json verify_sextic(const SexticConfig& cfg, double tol, std::vector<Check>& checks,
                           std::vector<std::string>& ledger) {
  const FamilySpec fam = siqm::family_spec(FamilyId::Sextic);
  const Params4 a0 = siqm::derive_dependent_params(cfg);  // may exit 2 upstream
  const ShiftedWell well = siqm::make_shifted_well(cfg);   // band gate
  const double eps = well.epsilon;
  const double C = well.C;
  const double x0 = std::sqrt(well.x0_sq);

  ordered_json doc;
  doc["B0"] = cfg.B0;
  doc["G0"] = cfg.G0;
  doc["x0_sq"] = well.x0_sq;
  doc["epsilon"] = eps;
  doc["level_shift_C"] = C;

  // 1. antiderivative identity behind the ground-state profile
  {
    double worst = 0.0;
    for (int i = 0; i <= 480; ++i) {
      const double x = -3.0 + 6.0 * static_cast<double>(i) / 480.0;
      const double lhs = -siqm::eval_W_antiderivative(fam, a0, x);
      const double rhs = -cfg.B0 * x * x / 2.0 +
                         cfg.G0 * (cfg.G0 - 2.0 * cfg.B0) * x * x * x * x / 8.0 -
                         std::log1p(cfg.G0 * x * x);
      worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
    }
    checks.push_back({"antiderivative identity of the level-0 superpotential",
                      worst <= 1e-10, worst, 1e-10});
  }

  // 2. well geometry
  const siqm::WellGeometry geo = siqm::classify_wells(cfg);
  checks.push_back({"well classification is triple",
                    geo.classification == siqm::WellClass::TripleWell,
                    static_cast<double>(geo.critical_points.size()), 5.0});
  {
    const double scale = std::max(1.0, eps);
    const double v = std::max(std::fabs(well(x0)), std::fabs(well(-x0)));
    checks.push_back({"potential vanishes at the outer minima", v <= 1e-8 * scale, v,
                      1e-8 * scale});
  }

  // 3. anchor step
  {
    const Spectrum two = siqm::bound_energies(cfg, 1, tol);
    const double delta = std::fabs(two.levels[1].second - two.levels[0].second - C);
    const double bound = 1e-10 * std::max(1.0, std::fabs(C));
    checks.push_back({"first level sits one shift constant above the anchor",
                      delta <= bound, delta, bound});
  }

  // 4. profile grid shared by the residual and overlap measurements
  const double Lr = std::max(2.2, 1.3 * x0 + 5.0 / std::sqrt(cfg.B0));
  const int nr = 2 * static_cast<int>(std::ceil(Lr / 7e-4)) + 1;
  const Grid rg = siqm::make_grid(-Lr, Lr, nr);
  const GridFunction psi1 = siqm::normalize(siqm::sample(
      rg, [&](double x) { return siqm::printed::first_excited(cfg.B0, cfg.G0, x); }));
  const GridFunction psi2 = siqm::normalize(siqm::sample(
      rg, [&](double x) { return siqm::printed::second_excited(cfg.B0, cfg.G0, x); }));
  const GridFunction v_minus_shifted = siqm::sample(rg, [&](double x) {
    return siqm::eval_partner(fam, a0, x, PartnerSign::Minus) + eps;
  });
  const GridFunction v_shifted = siqm::sample(rg, [&](double x) { return well(x); });
  const double E1 = eps + C;

  {
    const double r_auth = siqm::residual_norm(v_minus_shifted, psi1, E1);
    checks.push_back({"first profile solves its own operator's equation at E1",
                      r_auth <= 1e-5, r_auth, 1e-5});
    const double r_shift = siqm::residual_norm(v_shifted, psi1, E1);
    ledger.push_back("printed pairing: first profile against the displayed well has "
                     "residual " + fmt(r_shift) + " (vs " + fmt(r_auth) +
                     " against its own operator); the display conflates the two partners");
    const double e2_printed = siqm::printed::triple_well_energy(cfg.B0, cfg.G0, eps, 2);
    const double r2_shift = siqm::residual_norm(v_shifted, psi2, e2_printed);
    const double r2_auth = siqm::residual_norm(v_minus_shifted, psi2, e2_printed);
    ledger.push_back("printed pairing: second profile is an eigenfunction of neither "
                     "operator at its printed energy (residuals " + fmt(r2_shift) + " / " +
                     fmt(r2_auth) + ")");
    doc["psi1_residual_authoritative"] = r_auth;
    doc["psi1_residual_displayed_well"] = r_shift;
    doc["psi2_residual_displayed_well"] = r2_shift;
  }

  // 5. orthogonality and parity
  {
    const double ov = std::fabs(siqm::overlap(psi1, psi2));
    checks.push_back({"first and second profiles are orthogonal", ov <= 1e-10, ov, 1e-10});
    double asym = 0.0;
    for (int n = 0; n <= 2; ++n) {
      double worst = 0.0, peak = 0.0;
      for (int i = 0; i < rg.n; ++i) {
        const double x = rg.x(i);
        const double p = siqm::wavefunction_analytic(cfg, n, x);
        const double q = siqm::wavefunction_analytic(cfg, n, -x);
        // profile 0 diverges at large |x|; skip values whose square overflows
        if (!(std::fabs(p) < 1e150) || !(std::fabs(q) < 1e150)) continue;
        worst = std::max(worst, std::fabs(p * p - q * q));
        peak = std::max(peak, p * p);
      }
      if (peak > 0.0) asym = std::max(asym, worst / peak);
    }
    checks.push_back({"profile densities are even", asym <= 1e-12, asym, 1e-12});
  }

  // 6. near-origin gaussian asymptote of the ground profile
  {
    auto dev = [&](double x) {
      return std::fabs(siqm::wavefunction_analytic(cfg, 0, x) /
                           std::exp(-(cfg.B0 + 2.0 * cfg.G0) * x * x / 2.0) -
                       1.0);
    };
    const double d2 = dev(1e-2), d3 = dev(1e-3), d4 = dev(1e-4);
    checks.push_back({"near-origin asymptote deviation shrinks with x",
                      d2 > d3 && d3 > d4, d4, d3});
    checks.push_back({"near-origin asymptote holds at x = 1e-4", d4 <= 1e-9, d4, 1e-9});
  }

  // 7. normalizability classes
  {
    const auto r0 = siqm::normalizability_class(cfg, 0);
    const auto r1 = siqm::normalizability_class(cfg, 1);
    const auto r2 = siqm::normalizability_class(cfg, 2);
    const bool ok = r0.classification == siqm::NormClass::Divergent &&
                    r1.classification == siqm::NormClass::Normalizable &&
                    r2.classification == siqm::NormClass::Normalizable;
    checks.push_back({"profile tails: (divergent, normalizable, normalizable)", ok,
                      static_cast<double>(r0.classification == siqm::NormClass::Divergent),
                      1.0});
    doc["psi0_quartic_exponent_coefficient"] = r0.quartic_exponent_coefficient;
    if (r0.complement_alpha)
      ledger.push_back("normalizable complement of the divergent profile: printed domain "
                       "edge alpha = " + fmt(*r0.complement_alpha) + ", measured tail ratio " +
                       fmt(r0.complement_tail_ratio.value_or(0.0)));
  }

  // 8. oracle-side records (measured, never asserted here)
  {
    const siqm::FictitiousStateReport rep = siqm::fictitious_state_report(cfg, tol);
    ledger.push_back("anchor level: the converged grid spectrum's lowest eigenvalue is " +
                     fmt(rep.richardson) + " (" + std::to_string(rep.node_count) +
                     " nodes), offset " + fmt(rep.richardson - eps) +
                     " from the anchor; the displayed ladder starts one shift constant "
                     "higher");
    doc["oracle_lowest"] = rep.richardson;
    doc["oracle_lowest_offset_from_anchor"] = rep.richardson - eps;

    double rho = 0.0;
    bool degenerate = false;
    try {
      rho = siqm::gap_ratio(cfg, tol);
    } catch (const siqm::DegenerateGap&) {
      degenerate = true;
    }
    doc["gap_ratio"] = degenerate ? ordered_json(nullptr) : ordered_json(rho);
    ledger.push_back(degenerate
                         ? std::string("gap ratio: doublet splitting below oracle "
                                       "resolution at this configuration")
                         : "gap ratio measured " + fmt(rho) + "; printed bound " +
                               fmt(siqm::printed::gap_ratio_claimed_bound()) +
                               (rho > 26.0 ? " (above 26 as claimed)" : " (BELOW 26)"));
  }

  // 9. printed display reconciliations
  {
    const double plus = siqm::printed::minimum_location_sq(cfg.B0, cfg.G0, true);
    const double delta = std::fabs(plus - well.x0_sq) / std::max(1.0, well.x0_sq);
    ledger.push_back("printed stationary-point expression matches the outer minima on its "
                     "plus branch (relative delta " + fmt(delta) +
                     "); the minus branch is the barrier top");
    const double depth_printed = siqm::printed::well_depth(cfg.B0, cfg.G0, well.x0_sq);
    ledger.push_back("printed depth expression gives " + fmt(depth_printed) +
                     " vs measured depth " + fmt(eps) + " (relative delta " +
                     fmt(std::fabs(depth_printed - eps) / std::max(1.0, eps)) + ")");
    double worst_compact = 0.0, scale = 1.0 + eps;
    for (double x : {0.0, 0.4, 0.9, 1.5, 2.2, 3.0}) {
      const double v = siqm::well_profile(cfg, x) + eps;
      scale = std::max(scale, std::fabs(v));
      worst_compact = std::max(
          worst_compact,
          std::fabs(siqm::printed::triple_well_compact(cfg.B0, cfg.G0, well.x0_sq, x) - v));
    }
    ledger.push_back("printed factored well display deviates from the authoritative "
                     "profile by up to " + fmt(worst_compact) + " (scale " + fmt(scale) +
                     "); the term-by-term expansion agrees");
  }

  return doc;
}

struct VerifyArgs {
  std::string scope = "all";
  double B0 = 100.0;
  double G0 = 0.0;  // 0 = figure-caption default, computed at run time
};

int cmd_verify(const CLI::App* cmd, const VerifyArgs& args, const CommonOpts& o) {
  SexticConfig cfg = siqm::figure_config();
  if (cmd->count("--B0") > 0) cfg.B0 = args.B0;
  if (cmd->count("--G0") > 0) cfg.G0 = args.G0;

  std::vector<Check> checks;
  std::vector<std::string> ledger;
  ordered_json doc;
  doc["scope"] = args.scope;
  doc["tool_version"] = siqm::kVersion;
  doc["tol"] = o.tol;

  // Validate constraints up front so bad input exits 2 before any file IO
  // (admissibility inequality first, then the triple-well band).
  if (args.scope == "sextic" || args.scope == "all") {
    (void)siqm::derive_dependent_params(cfg);
    (void)siqm::make_shifted_well(cfg);
  }

  if (args.scope == "catalog" || args.scope == "all")
    doc["catalog"] = verify_catalog(o.tol, checks, ledger);
  if (args.scope == "sextic" || args.scope == "all")
    doc["sextic"] = verify_sextic(cfg, o.tol, checks, ledger);

  const int failures = count_failures(checks);
  doc["checks"] = checks_json(checks);
  doc["hard_checks"] = static_cast<int>(checks.size());
  doc["hard_failures"] = failures;
  doc["records"] = ledger;

  siqm::io::ensure_dir(o.out);
  siqm::io::write_text_file(siqm::io::path_join(o.out, "verify_report.json"),
                            doc.dump(2) + "\n");

  siqm::io::RunManifest m;
  m.command = "verify";
  m.parameters["scope"] = args.scope;
  if (args.scope != "catalog") {
    m.parameters["B0"] = cfg.B0;
    m.parameters["G0"] = cfg.G0;
  }
  m.tolerances["tol"] = o.tol;
  m.outcome = std::to_string(failures) + " hard failures of " +
              std::to_string(checks.size()) + " checks; " +
              std::to_string(ledger.size()) + " reconciliation records";
  m.ledger = ledger;
  siqm::io::write_manifest(o.out, m);

  std::printf("verify: %d hard failures of %zu checks (%zu reconciliation records)\n",
              failures, checks.size(), ledger.size());
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// figure
// ---------------------------------------------------------------------------

struct FigureArgs {
  double B0 = 100.0;
  double G0 = 0.0;  // 0 = caption default
};

int cmd_figure(const CLI::App* cmd, const FigureArgs& args, const CommonOpts& o) {
  SexticConfig cfg = siqm::figure_config();  // G0 from the caption expression, at run time
  if (cmd->count("--B0") > 0) cfg.B0 = args.B0;
  if (cmd->count("--G0") > 0) cfg.G0 = args.G0;

  const ShiftedWell well = siqm::make_shifted_well(cfg);
  const double L = o.halfwidth > 0.0 ? o.halfwidth : 2.0;
  const Grid grid = siqm::make_grid(-L, L, o.grid_points);

  const GridFunction V = siqm::sample(grid, [&](double x) { return well(x); });
  const GridFunction psi1 = siqm::normalize(siqm::sample(
      grid, [&](double x) { return siqm::printed::first_excited(cfg.B0, cfg.G0, x); }));
  const GridFunction psi2 = siqm::normalize(siqm::sample(
      grid, [&](double x) { return siqm::printed::second_excited(cfg.B0, cfg.G0, x); }));
  const GridFunction psi0 = siqm::sample(grid, [&](double x) {
    return siqm::printed::ground_state(cfg.B0, cfg.G0, x);
  });

  const Spectrum energies = siqm::bound_energies(cfg, 2, o.tol);

  siqm::io::ensure_dir(o.out);
  siqm::io::write_csv(siqm::io::path_join(o.out, "potential.csv"),
                      siqm::io::grid_csv(V, "V"));
  siqm::io::write_csv(siqm::io::path_join(o.out, "psi_1.csv"),
                      siqm::io::grid_csv(psi1, "value"));
  siqm::io::write_csv(siqm::io::path_join(o.out, "psi_2.csv"),
                      siqm::io::grid_csv(psi2, "value"));
  siqm::io::write_csv(siqm::io::path_join(o.out, "psi_0_unnormalized.csv"),
                      siqm::io::grid_csv(psi0, "value"));

  siqm::io::CsvTable et;
  et.header = {"n", "E"};
  for (const auto& [n, E] : energies.levels) et.rows.push_back({std::to_string(n), fmt(E)});
  siqm::io::write_csv(siqm::io::path_join(o.out, "energies.csv"), et);

  siqm::io::RunManifest m;
  m.command = "figure";
  m.parameters["B0"] = cfg.B0;
  m.parameters["G0"] = cfg.G0;
  m.parameters["grid_points"] = grid.n;
  m.parameters["halfwidth"] = L;
  m.tolerances["tol"] = o.tol;
  m.outcome = "5 data files for the triple-well figure (x0^2 = " + fmt(well.x0_sq) +
              ", epsilon = " + fmt(well.epsilon) + ")";
  m.ledger.push_back("psi_0 is the displayed closed form, divergent at large |x| and kept "
                     "unnormalized; psi_1 and psi_2 are grid-normalized");
  m.ledger.push_back("the displayed ladder anchors at the well depth; the grid spectrum's "
                     "lowest eigenvalue sits one shift constant lower (see verify)");
  for (const std::string& note : energies.metadata) m.ledger.push_back(note);
  siqm::io::write_manifest(o.out, m);
  return 0;
}

// ---------------------------------------------------------------------------
// scan-rho
// ---------------------------------------------------------------------------

struct ScanArgs {
  int samples = 200;
  double lo = 2.0 + 1e-3;
  double hi = 0.0;  // 0 = band upper edge minus inset
};

int cmd_scan_rho(const ScanArgs& args, const CommonOpts& o) {
  if (args.samples < 1)
    throw siqm::ConstraintViolation("scan-rho: --samples must be >= 1");

  siqm::GapRatioScan scan;
  if (args.samples == 1) {
    // the library sweep needs two endpoints; a single sample reads the range
    // midpoint, and is trivially the minimum
    const double hi = args.hi == 0.0 ? siqm::band_upper_edge_ratio() - 1e-3 : args.hi;
    if (!(args.lo > 2.0) || !(hi < siqm::band_upper_edge_ratio()) || !(args.lo <= hi))
      throw siqm::ConstraintViolation(
          "scan-rho: requested ratio range is not inside the band (requires 2 < lo <= hi "
          "< " + fmt(siqm::band_upper_edge_ratio()) + ")");
    const double mid = 0.5 * (args.lo + hi);
    siqm::ScanSample smp;
    smp.ratio = mid;
    try {
      smp.rho = siqm::gap_ratio(SexticConfig{1.0, mid}, o.tol);
    } catch (const siqm::DegenerateGap&) {
      smp.rho = std::numeric_limits<double>::infinity();
      smp.degenerate = true;
    }
    scan.samples.push_back(smp);
    if (smp.degenerate)
      throw siqm::DegenerateGap("scan-rho: the single requested sample has a gap below "
                                "oracle resolution");
    scan.min_rho = smp.rho;
    scan.argmin_ratio = smp.ratio;
    scan.notes.push_back("single-sample scan at the range midpoint");
  } else {
    scan = siqm::scan_rho(args.samples, args.lo, args.hi, o.tol);
  }

  siqm::io::CsvTable t;
  t.header = {"ratio", "rho"};
  for (const auto& s : scan.samples) t.rows.push_back({fmt(s.ratio), fmt(s.rho)});

  int degenerate = 0;
  for (const auto& s : scan.samples) degenerate += s.degenerate ? 1 : 0;

  ordered_json summary;
  summary["samples"] = static_cast<int>(scan.samples.size());
  summary["lo_ratio"] = scan.samples.front().ratio;
  summary["hi_ratio"] = scan.samples.back().ratio;
  summary["band_upper_edge"] = siqm::band_upper_edge_ratio();
  summary["min_rho"] = scan.min_rho;
  summary["argmin_ratio"] = scan.argmin_ratio;
  summary["degenerate_samples"] = degenerate;
  summary["claimed_bound"] = siqm::printed::gap_ratio_claimed_bound();
  summary["all_resolved_samples_above_26"] = [&] {
    for (const auto& s : scan.samples)
      if (!s.degenerate && !(s.rho > 26.0)) return false;
    return true;
  }();
  summary["notes"] = scan.notes;

  siqm::io::ensure_dir(o.out);
  siqm::io::write_csv(siqm::io::path_join(o.out, "scan.csv"), t);
  siqm::io::write_text_file(siqm::io::path_join(o.out, "scan_summary.json"),
                            summary.dump(2) + "\n");

  siqm::io::RunManifest m;
  m.command = "scan-rho";
  m.parameters["samples"] = static_cast<int>(scan.samples.size());
  m.parameters["lo_ratio"] = scan.samples.front().ratio;
  m.parameters["hi_ratio"] = scan.samples.back().ratio;
  m.tolerances["tol"] = o.tol;
  m.outcome = "min rho " + fmt(scan.min_rho) + " at ratio " + fmt(scan.argmin_ratio);
  for (const std::string& note : scan.notes) m.ledger.push_back(note);
  if (degenerate > 0)
    m.ledger.push_back(std::to_string(degenerate) +
                       " samples have doublet splittings below oracle resolution "
                       "(tunneling-suppressed deep in the band); recorded as inf");
  siqm::io::write_manifest(o.out, m);
  return 0;
}

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

void add_point_flags(CLI::App* cmd, SpectrumArgs& a) {
  cmd->add_option("--family", a.family, "family name (see catalog)")->required();
  cmd->add_option("--A", a.A, "superpotential parameter A");
  cmd->add_option("--B", a.B, "superpotential parameter B");
  cmd->add_option("--D", a.D, "superpotential parameter D (sextic)");
  cmd->add_option("--G", a.G, "superpotential parameter G (sextic)");
  cmd->add_option("--B0", a.B0, "sextic configuration B0");
  cmd->add_option("--G0", a.G0, "sextic configuration G0");
  cmd->add_option("--p", a.p, "catalog scale parameter p")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shape-invariance spectral tool"};
  app.set_version_flag("--version", std::string(siqm::kVersion));
  app.require_subcommand(1);

  CommonOpts cat_o;
  cat_o.format = "json";
  CLI::App* cat = app.add_subcommand("catalog", "list the family catalog");
  add_output_flags(cat, cat_o, /*with_format=*/true);

  SpectrumArgs sp_a;
  CommonOpts sp_o;
  CLI::App* sp = app.add_subcommand("spectrum", "bound-state energies of one family");
  add_point_flags(sp, sp_a);
  sp->add_option("--n", sp_a.n, "highest level index (default 3; sextic 2)")
      ->check(CLI::NonNegativeNumber);
  sp->add_option("--method", sp_a.method, "energy source")
      ->check(CLI::IsMember({"recursion", "closed-form", "oracle", "all"}));
  add_output_flags(sp, sp_o, /*with_format=*/true);

  SampleArgs sm_a;
  CommonOpts sm_o;
  CLI::App* sm = app.add_subcommand("sample", "sample a potential or wavefunction to CSV");
  add_point_flags(sm, sm_a.point);
  sm->add_option("--quantity", sm_a.quantity, "what to sample")
      ->check(CLI::IsMember({"potential", "partner-plus", "superpotential", "wavefunction"}));
  sm->add_option("--level", sm_a.level, "wavefunction level index")
      ->check(CLI::NonNegativeNumber);
  add_output_flags(sm, sm_o);

  VerifyArgs vf_a;
  CommonOpts vf_o;
  CLI::App* vf = app.add_subcommand("verify", "run the verification suites");
  vf->add_option("--scope", vf_a.scope, "suite selection")
      ->check(CLI::IsMember({"catalog", "sextic", "all"}));
  vf->add_option("--B0", vf_a.B0, "sextic configuration B0 (default: figure caption)");
  vf->add_option("--G0", vf_a.G0, "sextic configuration G0 (default: figure caption)");
  add_output_flags(vf, vf_o);

  FigureArgs fg_a;
  CommonOpts fg_o;
  CLI::App* fg = app.add_subcommand("figure", "emit the triple-well figure data files");
  fg->add_option("--B0", fg_a.B0, "override the caption B0");
  fg->add_option("--G0", fg_a.G0, "override the caption G0");
  add_output_flags(fg, fg_o);

  ScanArgs sc_a;
  CommonOpts sc_o;
  CLI::App* sc = app.add_subcommand("scan-rho", "sweep the gap ratio across the band");
  sc->add_option("--samples", sc_a.samples, "sample count (default 200)");
  sc->add_option("--lo", sc_a.lo, "lower ratio G0/B0");
  sc->add_option("--hi", sc_a.hi, "upper ratio G0/B0 (default: band edge inset)");
  add_output_flags(sc, sc_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 2;
  }

  try {
    if (cat->parsed()) return cmd_catalog(cat_o);
    if (sp->parsed()) return cmd_spectrum(sp, sp_a, sp_o);
    if (sm->parsed()) return cmd_sample(sm, sm_a, sm_o);
    if (vf->parsed()) return cmd_verify(vf, vf_a, vf_o);
    if (fg->parsed()) return cmd_figure(fg, fg_a, fg_o);
    if (sc->parsed()) return cmd_scan_rho(sc_a, sc_o);
  } catch (const siqm::ConstraintViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const siqm::UnsupportedFamily& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const siqm::PoleInChain& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const siqm::OverflowError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const siqm::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const siqm::SiqmError& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 1;
  }
  return 0;
}
