#ifndef SIQM_COMMON_HPP
#define SIQM_COMMON_HPP

// Core value types and error taxonomy shared by every module of the
// shape-invariant quantum mechanics (siqm) engine.
//
// Conventions: hbar = 2m = 1, so H = -d^2/dx^2 + V(x).  All arithmetic is
// IEEE double precision; tolerances throughout the engine are calibrated
// for that.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace siqm {

inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Error taxonomy.  Every failure mode is a typed exception so callers (and
// the CLI) can translate them into exit codes deterministically.
// ---------------------------------------------------------------------------

struct SiqmError : std::runtime_error {
  explicit SiqmError(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation outside a family's natural domain or inside a pole guard.
struct DomainError : SiqmError {
  using SiqmError::SiqmError;
};

// Parameter point violates a documented inequality (e.g. requires G0 > 2*B0).
struct ConstraintViolation : SiqmError {
  using SiqmError::SiqmError;
};

// Requested operation has no definition for the family.
struct UnsupportedFamily : SiqmError {
  using SiqmError::SiqmError;
};

// The invariance residual exceeded its threshold at some hierarchy level.
struct ShapeInvarianceViolation : SiqmError {
  int level;
  double residual;
  ShapeInvarianceViolation(int lvl, double res, const std::string& msg)
      : SiqmError(msg), level(lvl), residual(res) {}
};

// The operator chain would cross a real pole of an intermediate
// superpotential; the construction is refused, not approximated.
struct PoleInChain : SiqmError {
  using SiqmError::SiqmError;
};

// Exponent magnitude exceeded the overflow cap: the candidate function is
// divergent.  This is information, not a numerical accident.
struct OverflowError : SiqmError {
  using SiqmError::SiqmError;
};

struct ZeroNorm : SiqmError {
  using SiqmError::SiqmError;
};

struct NonFinite : SiqmError {
  using SiqmError::SiqmError;
};

struct GridMismatch : SiqmError {
  using SiqmError::SiqmError;
};

struct NonFinitePotential : SiqmError {
  using SiqmError::SiqmError;
};

struct ConvergenceFailure : SiqmError {
  using SiqmError::SiqmError;
};

struct ResourceLimit : SiqmError {
  using SiqmError::SiqmError;
};

// |E2 - E1| fell below tolerance; a gap ratio would be meaningless.
struct DegenerateGap : SiqmError {
  using SiqmError::SiqmError;
};

// ---------------------------------------------------------------------------
// Parameter points.
// ---------------------------------------------------------------------------

// Four-parameter point (A, B, D, G) of the sextic superpotential
//   W(x) = A x^3 + B x - D x / (1 + G x^2).
// Two-parameter catalog families use the A, B slots and leave D = G = 0.
struct Params4 {
  double A = 0.0;
  double B = 0.0;
  double D = 0.0;
  double G = 0.0;

  bool finite() const {
    return std::isfinite(A) && std::isfinite(B) && std::isfinite(D) &&
           std::isfinite(G);
  }
};

inline bool operator==(const Params4& a, const Params4& b) {
  return a.A == b.A && a.B == b.B && a.D == b.D && a.G == b.G;
}

// ---------------------------------------------------------------------------
// Natural domains.
// ---------------------------------------------------------------------------

enum class DomainKind { FullLine, HalfLine, Interval };

struct Domain {
  DomainKind kind = DomainKind::FullLine;
  // Endpoints; +-infinity for unbounded sides.
  double left = -std::numeric_limits<double>::infinity();
  double right = std::numeric_limits<double>::infinity();
  // Interior poles of W (populated e.g. for sextic points with G < 0).
  std::vector<double> poles;

  bool contains(double x) const { return x > left && x < right; }
};

// ---------------------------------------------------------------------------
// Family identifiers, in catalog order.
// ---------------------------------------------------------------------------

enum class FamilyId {
  Harmonic,
  Coulomb,
  Oscillator3D,
  Morse,
  RosenMorseI,
  RosenMorseII,
  Eckart,
  ScarfI,
  ScarfII,
  PoschlTellerI,
  PoschlTellerII,
  DoubleAngle,
  QuadrupleAngle,
  Sextic,
};

inline constexpr int kFamilyCount = 14;

// Spectrum provenance: how a level list was produced.
enum class Provenance { Recursion, ClosedForm, Oracle };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Recursion: return "recursion";
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::Oracle: return "oracle";
  }
  return "?";
}

// Ordered list of (level index, energy) with provenance and free-form
// grid/tolerance metadata.
struct Spectrum {
  std::vector<std::pair<int, double>> levels;
  Provenance provenance = Provenance::Recursion;
  std::vector<std::string> metadata;
};

// ---------------------------------------------------------------------------
// Small numeric helpers.
// ---------------------------------------------------------------------------

inline double sq(double v) { return v * v; }

// Default guard radius around poles of W: evaluation closer than this is an
// error, never a silent value.
inline constexpr double kPoleExclusionRadius = 1e-6;

// Exponent cap before exp(): beyond this the candidate diverges.
inline constexpr double kExponentCap = 700.0;

}  // namespace siqm

#endif  // SIQM_COMMON_HPP
