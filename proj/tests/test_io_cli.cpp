// Serialization layer and end-to-end runs of the command-line tool.
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "siqm/io.hpp"
#include "siqm/sextic.hpp"

using namespace siqm;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

std::string cli_path() { return SIQM_CLI_PATH; }

// Fresh output directory for one end-to-end run.
fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "siqm_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Run the tool, discarding console output; returns the process exit code.
int run_cli(const std::string& args) {
  const std::string cmd = "\"" + cli_path() + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Minimal CSV reader for the tool's unquoted output.
std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

// Manifest text with the (intentionally nondeterministic) timestamp removed.
std::string drop_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out << line << '\n';
  return out.str();
}

double parsed(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

// ---------------------------------------------------------------------------
// serialization units
// ---------------------------------------------------------------------------

TEST_CASE("doubles round-trip through their shortest decimal form") {
  for (double v : {0.1, 1.0 / 3.0, 614.3049810729254, -2.0, 1e-300, 12345.0,
                   2.133893419027682}) {
    const std::string s = io::format_double(v);
    CHECK(parsed(s) == v);  // bit-exact round trip
    CHECK(s.find('\n') == std::string::npos);
  }
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(io::format_double(std::nan("")) == "nan");
}

TEST_CASE("non-finite values map to JSON null, finite ones stay numeric") {
  CHECK(io::json_number(2.5).is_number());
  CHECK(io::json_number(std::numeric_limits<double>::infinity()).is_null());
  CHECK(io::json_number(std::nan("")).is_null());
}

TEST_CASE("CSV assembly: layout, line endings, and malformed tables") {
  io::CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "2"}, {"3", "4"}};
  CHECK(io::to_csv(t) == "a,b\n1,2\n3,4\n");

  io::CsvTable ragged;
  ragged.header = {"a", "b"};
  ragged.rows = {{"1"}};
  CHECK_THROWS_AS((void)io::to_csv(ragged), DomainError);

  io::CsvTable dirty;
  dirty.header = {"a,b"};
  CHECK_THROWS_AS((void)io::to_csv(dirty), DomainError);
}

TEST_CASE("sampled grid functions serialize as two labeled columns") {
  GridFunction f = sample(make_grid(-1.0, 1.0, 3), [](double x) { return x * x; });
  const io::CsvTable t = io::grid_csv(f, "V");
  CHECK(t.header == std::vector<std::string>{"x", "V"});
  REQUIRE(t.rows.size() == 3);
  CHECK(parsed(t.rows[0][0]) == -1.0);
  CHECK(parsed(t.rows[1][1]) == 0.0);
  CHECK(parsed(t.rows[2][1]) == 1.0);
}

TEST_CASE("manifest document: key order is fixed and content is deterministic") {
  io::RunManifest m;
  m.command = "spectrum";
  m.parameters["family"] = "harmonic";
  m.tolerances["tol"] = 1e-8;
  m.timestamp = "2026-01-01T00:00:00Z";
  m.outcome = "ok";
  m.ledger.push_back("note");

  const io::ordered_json j = io::manifest_json(m);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "parameters", "tool_version",
                                         "tolerances", "timestamp", "outcome", "ledger"});
  CHECK(j["tool_version"] == kVersion);
  CHECK(io::manifest_json(m).dump(2) == j.dump(2));
}

TEST_CASE("timestamps are UTC in a fixed layout") {
  const std::string ts = io::now_utc();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts[19] == 'Z');
}

// ---------------------------------------------------------------------------
// end-to-end runs
// ---------------------------------------------------------------------------

TEST_CASE("cli: catalog lists all fourteen families with live statuses") {
  const fs::path dir = fresh_dir("catalog");
  REQUIRE(run_cli("catalog --out " + dir.string()) == 0);

  const nlohmann::json d = read_json(dir / "catalog.json");
  CHECK(d["count"] == 14);
  REQUIRE(d["families"].size() == 14);
  CHECK(d["families"][0]["family"] == "harmonic");
  CHECK(d["families"][0]["map_status"] == "printed");
  CHECK(d["families"][1]["family"] == "coulomb");
  CHECK(d["families"][1]["map_status"] == "corrected");

  const nlohmann::json m = read_json(dir / "manifest.json");
  CHECK(m["command"] == "catalog");
  CHECK(m["tool_version"] == kVersion);
}

TEST_CASE("cli: harmonic spectrum is the even ladder") {
  const fs::path dir = fresh_dir("spectrum_harmonic");
  REQUIRE(run_cli("spectrum --family harmonic --A 1 --B 0 --n 3 --out " + dir.string()) == 0);
  const nlohmann::json d = read_json(dir / "spectrum.json");
  REQUIRE(d["levels"].size() == 4);
  for (int n = 0; n <= 3; ++n) {
    CHECK(d["levels"][n]["n"] == n);
    CHECK(d["levels"][n]["E"].get<double>() == doctest::Approx(2.0 * n).epsilon(1e-12));
  }
}

TEST_CASE("cli: constraint violations exit 2 and write nothing") {
  const fs::path dir = fresh_dir("bad_inputs");
  fs::remove_all(dir);  // the tool must not recreate it on failed validation

  CHECK(run_cli("spectrum --family sextic --B0 1 --G0 1.5 --out " + dir.string()) == 2);
  CHECK(run_cli("spectrum --family no-such-family --out " + dir.string()) == 2);
  CHECK(run_cli("verify --scope sextic --B0 1 --G0 1.5 --out " + dir.string()) == 2);
  CHECK(run_cli("verify --scope sextic --B0 1 --G0 3 --out " + dir.string()) == 2);
  CHECK(run_cli("scan-rho --samples 4 --lo 1.5 --hi 2.05 --out " + dir.string()) == 2);
  CHECK(run_cli("spectrum --family harmonic --method nonsense --out " + dir.string()) == 2);
  CHECK(run_cli("spectrum --family sextic --method closed-form --n 2 --out " +
                dir.string()) == 2);

  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("cli: catalog-scope verification passes its hard checks") {
  const fs::path dir = fresh_dir("verify_catalog");
  REQUIRE(run_cli("verify --scope catalog --out " + dir.string()) == 0);
  const nlohmann::json d = read_json(dir / "verify_report.json");
  CHECK(d["hard_failures"] == 0);
  CHECK(d["hard_checks"].get<int>() > 50);
  CHECK(d["records"].size() >= 6);  // every printed-form discrepancy is recorded
}

TEST_CASE("cli: figure emits the five data files with the documented geometry") {
  const fs::path dir = fresh_dir("figure");
  REQUIRE(run_cli("figure --out " + dir.string()) == 0);
  for (const char* name : {"potential.csv", "psi_1.csv", "psi_2.csv",
                           "psi_0_unnormalized.csv", "energies.csv", "manifest.json"})
    CHECK(fs::exists(dir / name));

  const SexticConfig fig = figure_config();
  const double eps = epsilon_depth(fig);

  // the potential vanishes at the outer minima x = +-1 (on-grid by default)
  auto pot = read_csv(dir / "potential.csv");
  REQUIRE(pot.size() == 2002);  // header + 2001 points
  CHECK(pot[0] == std::vector<std::string>{"x", "V"});
  double v_at_1 = 1e300, v_at_m1 = 1e300;
  for (std::size_t i = 1; i < pot.size(); ++i) {
    const double x = parsed(pot[i][0]);
    if (std::fabs(x - 1.0) < 1e-12) v_at_1 = parsed(pot[i][1]);
    if (std::fabs(x + 1.0) < 1e-12) v_at_m1 = parsed(pot[i][1]);
  }
  CHECK(std::fabs(v_at_1) <= 1e-8 * eps);
  CHECK(std::fabs(v_at_m1) <= 1e-8 * eps);

  // the single-node profile is antisymmetric (pair rows by index)
  auto p1 = read_csv(dir / "psi_1.csv");
  REQUIRE(p1.size() == 2002);
  double peak = 0.0, asym = 0.0;
  for (std::size_t i = 1; i < p1.size(); ++i)
    peak = std::max(peak, std::fabs(parsed(p1[i][1])));
  for (std::size_t i = 1; i < p1.size(); ++i) {
    const double v = parsed(p1[i][1]);
    const double w = parsed(p1[p1.size() - i][1]);
    asym = std::max(asym, std::fabs(v + w));
  }
  CHECK(peak > 0.0);
  CHECK(asym <= 1e-9 * peak);

  // the energy table anchors at the well depth
  auto en = read_csv(dir / "energies.csv");
  REQUIRE(en.size() == 4);  // header + levels 0..2
  CHECK(en[1][0] == "0");
  CHECK(parsed(en[1][1]) == doctest::Approx(eps).epsilon(1e-9));
  CHECK(parsed(en[2][1]) == doctest::Approx(eps + level_shift_constant(fig)).epsilon(1e-9));
}

TEST_CASE("cli: gap-ratio scan output and the single-sample form") {
  const fs::path dir = fresh_dir("scan");
  REQUIRE(run_cli("scan-rho --samples 5 --lo 2.09 --hi 2.13 --out " + dir.string()) == 0);
  auto rows = read_csv(dir / "scan.csv");
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"ratio", "rho"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(parsed(rows[i][1]) > 26.0);

  const nlohmann::json s = read_json(dir / "scan_summary.json");
  CHECK(s["samples"] == 5);
  CHECK(s["claimed_bound"].get<double>() == doctest::Approx(26.0765));
  CHECK(s["min_rho"].get<double>() == doctest::Approx(parsed(rows[5][1])));
  CHECK(s["argmin_ratio"].get<double>() == doctest::Approx(2.13));
  CHECK(s["all_resolved_samples_above_26"] == true);

  const fs::path dir1 = fresh_dir("scan_single");
  REQUIRE(run_cli("scan-rho --samples 1 --lo 2.09 --hi 2.11 --out " + dir1.string()) == 0);
  auto one = read_csv(dir1 / "scan.csv");
  REQUIRE(one.size() == 2);
  CHECK(parsed(one[1][0]) == doctest::Approx(2.10));
  const nlohmann::json s1 = read_json(dir1 / "scan_summary.json");
  CHECK(s1["min_rho"].get<double>() == doctest::Approx(parsed(one[1][1])));
}

TEST_CASE("cli: sample emits a labeled wavefunction column") {
  const fs::path dir = fresh_dir("sample");
  REQUIRE(run_cli("sample --family morse --quantity wavefunction --level 1 --out " +
                  dir.string()) == 0);
  auto rows = read_csv(dir / "sample.csv");
  REQUIRE(rows.size() == 2002);
  CHECK(rows[0] == std::vector<std::string>{"x", "psi_1"});
  // one interior sign change for the single-node state (ignore tail dust)
  std::vector<double> vals;
  double peak = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    vals.push_back(parsed(rows[i][1]));
    peak = std::max(peak, std::fabs(vals.back()));
  }
  int sign_changes = 0;
  double prev = 0.0;
  for (double v : vals) {
    if (std::fabs(v) <= 1e-6 * peak) continue;
    if (prev != 0.0 && ((prev < 0.0) != (v < 0.0))) ++sign_changes;
    prev = v;
  }
  CHECK(sign_changes == 1);
}

TEST_CASE("cli: repeated full verification is byte-identical modulo timestamp") {
  const fs::path a = fresh_dir("verify_all_a");
  const fs::path b = fresh_dir("verify_all_b");
  REQUIRE(run_cli("verify --scope all --out " + a.string()) == 0);
  REQUIRE(run_cli("verify --scope all --out " + b.string()) == 0);
  CHECK(slurp(a / "verify_report.json") == slurp(b / "verify_report.json"));
  CHECK(drop_timestamp(slurp(a / "manifest.json")) ==
        drop_timestamp(slurp(b / "manifest.json")));
  CHECK(drop_timestamp(slurp(a / "manifest.json"))
            .find("\"timestamp\"") == std::string::npos);
}
