#ifndef SIQM_FAMILIES_HPP
#define SIQM_FAMILIES_HPP

// The catalog of solvable-potential families: superpotentials W, analytic
// derivatives W', closed-form antiderivatives of W, natural domains, and
// documented reference parameters.
//
// Partner potentials are always derived from W as W^2 -+ W'; the catalog's
// quoted partner-potential strings are retained as documentation only (the
// authoritative evaluator never uses them).  Several quoted columns are
// typographically corrupted in the source table; the strings are preserved
// verbatim and the as-printed evaluators live in printed.hpp.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "siqm/common.hpp"

namespace siqm {

// ---------------------------------------------------------------------------
// FamilySpec: one catalog row.
// ---------------------------------------------------------------------------

struct FamilySpec {
  FamilyId id = FamilyId::Harmonic;
  std::string name;
  int arity = 2;      // live parameter count (A,B) or (A,B,D,G)
  double p = 1.0;     // the table's scale parameter; 1 in all tests
  // verbatim column strings from the source catalog (documentation only)
  std::string printed_map;
  std::string printed_W;
  std::string printed_partner;
  std::string printed_energy;
};

enum class PartnerSign { Minus, Plus };

// ---------------------------------------------------------------------------
// small trig/hyperbolic helpers
// ---------------------------------------------------------------------------

namespace detail {
inline double sech(double v) { return 1.0 / std::cosh(v); }
inline double csch(double v) { return 1.0 / std::sinh(v); }
inline double csc(double v) { return 1.0 / std::sin(v); }
inline double cot(double v) { return std::cos(v) / std::sin(v); }
inline double sec(double v) { return 1.0 / std::cos(v); }
}  // namespace detail

// ---------------------------------------------------------------------------
// Natural domains.
// ---------------------------------------------------------------------------

inline Domain domain_of(const FamilySpec& fam, const Params4& a) {
  const double pi = 3.14159265358979323846;
  Domain d;
  switch (fam.id) {
    case FamilyId::Harmonic:
    case FamilyId::Morse:
    case FamilyId::RosenMorseII:
    case FamilyId::ScarfII:
    case FamilyId::DoubleAngle:
    case FamilyId::QuadrupleAngle:
      d.kind = DomainKind::FullLine;
      break;
    case FamilyId::Coulomb:
    case FamilyId::Oscillator3D:
    case FamilyId::PoschlTellerI:
    case FamilyId::PoschlTellerII:
    case FamilyId::Eckart:
      d.kind = DomainKind::HalfLine;
      d.left = 0.0;
      break;
    case FamilyId::RosenMorseI:
      d.kind = DomainKind::Interval;
      d.left = 0.0;
      d.right = pi / fam.p;
      break;
    case FamilyId::ScarfI:
      // the tan/sec superpotential has a non-removable pole at pi/(2p); the
      // natural single-well cell is the symmetric interval around 0
      d.kind = DomainKind::Interval;
      d.left = -0.5 * pi / fam.p;
      d.right = 0.5 * pi / fam.p;
      break;
    case FamilyId::Sextic:
      d.kind = DomainKind::FullLine;
      if (a.G < 0.0) {
        const double xp = std::sqrt(-1.0 / a.G);
        d.poles = {-xp, xp};
      }
      break;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Pole / domain guard shared by the evaluators.
// ---------------------------------------------------------------------------

namespace detail {
inline void check_domain(const FamilySpec& fam, const Params4& a, double x,
                         double exclusion = kPoleExclusionRadius) {
  const Domain d = domain_of(fam, a);
  if (!d.contains(x))
    throw DomainError("x = " + std::to_string(x) + " outside natural domain of " + fam.name);
  for (double xp : d.poles)
    if (std::fabs(x - xp) < exclusion)
      throw DomainError("x = " + std::to_string(x) + " within pole exclusion radius of " +
                        fam.name);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Superpotential W, derivative W', and antiderivative of W.
// All three are exact closed forms; quadrature never enters here.
// ---------------------------------------------------------------------------

inline double eval_W(const FamilySpec& fam, const Params4& a, double x) {
  detail::check_domain(fam, a, x);
  const double p = fam.p;
  using namespace detail;
  switch (fam.id) {
    case FamilyId::Harmonic: return a.A * x - a.B;
    case FamilyId::Coulomb: return a.A - a.B / x;
    case FamilyId::Oscillator3D: return a.A * x - a.B / x;
    case FamilyId::Morse: return a.A - a.B * std::exp(-p * x);
    case FamilyId::RosenMorseI: return a.A * cot(p * x) + a.B;
    case FamilyId::RosenMorseII: return a.A * std::tanh(p * x) + a.B;
    case FamilyId::Eckart: return -a.A / std::tanh(p * x) + a.B;
    case FamilyId::ScarfI: return a.A * std::tan(p * x) - a.B * sec(p * x);
    case FamilyId::ScarfII: return a.A * std::tanh(p * x) + a.B * sech(p * x);
    case FamilyId::PoschlTellerI: return a.A / std::tanh(p * x) - a.B * csch(p * x);
    case FamilyId::PoschlTellerII: return a.A * std::tanh(p * x) - a.B / std::tanh(p * x);
    case FamilyId::DoubleAngle: return a.A * std::tanh(p * x) + a.B * std::tanh(2.0 * p * x);
    case FamilyId::QuadrupleAngle: return a.A * std::tanh(p * x) + a.B * std::tanh(4.0 * p * x);
    case FamilyId::Sextic:
      return a.A * x * x * x + a.B * x - a.D * x / (1.0 + a.G * x * x);
  }
  throw UnsupportedFamily("eval_W: unknown family");
}

inline double eval_W_prime(const FamilySpec& fam, const Params4& a, double x) {
  detail::check_domain(fam, a, x);
  const double p = fam.p;
  using namespace detail;
  switch (fam.id) {
    case FamilyId::Harmonic: return a.A;
    case FamilyId::Coulomb: return a.B / (x * x);
    case FamilyId::Oscillator3D: return a.A + a.B / (x * x);
    case FamilyId::Morse: return p * a.B * std::exp(-p * x);
    case FamilyId::RosenMorseI: return -p * a.A * sq(csc(p * x));
    case FamilyId::RosenMorseII: return p * a.A * sq(sech(p * x));
    case FamilyId::Eckart: return p * a.A * sq(csch(p * x));
    case FamilyId::ScarfI:
      return p * a.A * sq(sec(p * x)) - p * a.B * sec(p * x) * std::tan(p * x);
    case FamilyId::ScarfII:
      return p * a.A * sq(sech(p * x)) - p * a.B * sech(p * x) * std::tanh(p * x);
    case FamilyId::PoschlTellerI:
      return -p * a.A * sq(csch(p * x)) + p * a.B * csch(p * x) / std::tanh(p * x);
    case FamilyId::PoschlTellerII:
      return p * a.A * sq(sech(p * x)) + p * a.B * sq(csch(p * x));
    case FamilyId::DoubleAngle:
      return p * a.A * sq(sech(p * x)) + 2.0 * p * a.B * sq(sech(2.0 * p * x));
    case FamilyId::QuadrupleAngle:
      return p * a.A * sq(sech(p * x)) + 4.0 * p * a.B * sq(sech(4.0 * p * x));
    case FamilyId::Sextic: {
      const double q = 1.0 + a.G * x * x;
      return 3.0 * a.A * x * x + a.B - a.D * (1.0 - a.G * x * x) / (q * q);
    }
  }
  throw UnsupportedFamily("eval_W_prime: unknown family");
}

// Closed-form antiderivative of W (defined up to a constant, which every
// caller absorbs into a normalization).  Used by the ladder module to build
// exact zero modes without quadrature error.
inline double eval_W_antiderivative(const FamilySpec& fam, const Params4& a, double x) {
  detail::check_domain(fam, a, x);
  const double p = fam.p;
  switch (fam.id) {
    case FamilyId::Harmonic: return 0.5 * a.A * x * x - a.B * x;
    case FamilyId::Coulomb: return a.A * x - a.B * std::log(x);
    case FamilyId::Oscillator3D: return 0.5 * a.A * x * x - a.B * std::log(x);
    case FamilyId::Morse: return a.A * x + (a.B / p) * std::exp(-p * x);
    case FamilyId::RosenMorseI:
      return (a.A / p) * std::log(std::sin(p * x)) + a.B * x;
    case FamilyId::RosenMorseII:
      return (a.A / p) * std::log(std::cosh(p * x)) + a.B * x;
    case FamilyId::Eckart:
      return -(a.A / p) * std::log(std::sinh(p * x)) + a.B * x;
    case FamilyId::ScarfI:
      return -(a.A / p) * std::log(std::cos(p * x)) -
             (a.B / p) * std::log(std::fabs(1.0 / std::cos(p * x) + std::tan(p * x)));
    case FamilyId::ScarfII:
      return (a.A / p) * std::log(std::cosh(p * x)) + (a.B / p) * std::atan(std::sinh(p * x));
    case FamilyId::PoschlTellerI:
      return (a.A / p) * std::log(std::sinh(p * x)) -
             (a.B / p) * std::log(std::tanh(0.5 * p * x));
    case FamilyId::PoschlTellerII:
      return (a.A / p) * std::log(std::cosh(p * x)) - (a.B / p) * std::log(std::sinh(p * x));
    case FamilyId::DoubleAngle:
      return (a.A / p) * std::log(std::cosh(p * x)) +
             (a.B / (2.0 * p)) * std::log(std::cosh(2.0 * p * x));
    case FamilyId::QuadrupleAngle:
      return (a.A / p) * std::log(std::cosh(p * x)) +
             (a.B / (4.0 * p)) * std::log(std::cosh(4.0 * p * x));
    case FamilyId::Sextic: {
      const double quart = 0.25 * a.A * x * x * x * x + 0.5 * a.B * x * x;
      if (a.G == 0.0) return quart - 0.5 * a.D * x * x;
      return quart - (a.D / (2.0 * a.G)) * std::log(std::fabs(1.0 + a.G * x * x));
    }
  }
  throw UnsupportedFamily("eval_W_antiderivative: unknown family");
}

// Partner potentials, always from W: V_- = W^2 - W', V_+ = W^2 + W'.
inline double eval_partner(const FamilySpec& fam, const Params4& a, double x, PartnerSign s) {
  const double w = eval_W(fam, a, x);
  const double wp = eval_W_prime(fam, a, x);
  return s == PartnerSign::Minus ? w * w - wp : w * w + wp;
}

// ---------------------------------------------------------------------------
// Catalog.
// ---------------------------------------------------------------------------

inline const char* name_of(FamilyId id) {
  switch (id) {
    case FamilyId::Harmonic: return "harmonic";
    case FamilyId::Coulomb: return "coulomb";
    case FamilyId::Oscillator3D: return "oscillator3d";
    case FamilyId::Morse: return "morse";
    case FamilyId::RosenMorseI: return "rosen-morse-1";
    case FamilyId::RosenMorseII: return "rosen-morse-2";
    case FamilyId::Eckart: return "eckart";
    case FamilyId::ScarfI: return "scarf-1";
    case FamilyId::ScarfII: return "scarf-2";
    case FamilyId::PoschlTellerI: return "poschl-teller-1";
    case FamilyId::PoschlTellerII: return "poschl-teller-2";
    case FamilyId::DoubleAngle: return "double-angle";
    case FamilyId::QuadrupleAngle: return "quadruple-angle";
    case FamilyId::Sextic: return "sextic";
  }
  return "?";
}

inline FamilySpec family_spec(FamilyId id, double p = 1.0) {
  FamilySpec f;
  f.id = id;
  f.name = name_of(id);
  f.p = p;
  f.arity = id == FamilyId::Sextic ? 4 : 2;
  switch (id) {
    case FamilyId::Harmonic:
      f.printed_map = "(A, B)";
      f.printed_W = "Ax - B";
      f.printed_partner = "(Ax - B)^2 - A";
      f.printed_energy = "2An";
      break;
    case FamilyId::Coulomb:
      f.printed_map = "(A^2/(1 +- B), 1 + B)";
      f.printed_W = "A - B/x";
      f.printed_partner = "A^2 + B(B-1)/x^2 - 2AB/x";
      f.printed_energy = "A^2 - ((A-B)/(B+n))^2";
      break;
    case FamilyId::Oscillator3D:
      f.printed_map = "(A, 1 + B)";
      f.printed_W = "Ax - B/x";
      f.printed_partner = "A^2x^2 + B(B-1)/x^2 - A(2B+1)";
      f.printed_energy = "4An";
      break;
    case FamilyId::Morse:
      f.printed_map = "(A - p, B)";
      f.printed_W = "A - B e^{-px}";
      f.printed_partner = "A^2 + B^2 e^{-2px} - 2B(A + B/2) e^{-px}";
      f.printed_energy = "A^2 - (A - pn)^2";
      break;
    case FamilyId::RosenMorseI:
      f.printed_map = "(A - p, (A+B)/(A-p))";
      f.printed_W = "A cot(px) + B";
      f.printed_partner = "-A^2 + B^2 + A(A+p) csc^2(px) + 2B cot(px)";
      f.printed_energy = "B^2 - A^2 - [A^2B^2/((A-p)n)]^2 - (A-pn)^2";
      break;
    case FamilyId::RosenMorseII:
      f.printed_map = "(A - p, (A+B)/(A-p))";
      f.printed_W = "A tanh(px) + B";
      f.printed_partner = "A^2 + B^2 - A(A+p) sech^2(px) + 2AB tanh(px)";
      f.printed_energy = "A^2 + B^2 - [(A+pn)^2 + A^2B^2/((A+p)n^2)]";
      break;
    case FamilyId::Eckart:
      f.printed_map = "(A + p, (A+B)/(A+p))";
      f.printed_W = "-A coth(px) + B";
      f.printed_partner = "A^2 + B^2 + A(A-p) csch^2(px) - 2AB coth(px)";
      f.printed_energy = "A^2 + B^2 - [(A+pn)^2 + A^2B^2/((A+p)n^2)]";
      break;
    case FamilyId::ScarfI:
      f.printed_map = "(A + p, B)";
      f.printed_W = "A tan(px) - B sec(px)";
      f.printed_partner = "-A^2 + (A^2 + B^2 - pA) sech^2(px) - B(2A - p) sec(px) tan(px)";
      f.printed_energy = "-A^2 + (A + pn)^2";
      break;
    case FamilyId::ScarfII:
      f.printed_map = "(A - p, B)";
      f.printed_W = "A tanh(px) + B sech(px)";
      f.printed_partner = "A^2 + (-A^2 + B^2 - pA) sech^2(px) - B(2A + p) sech(px) tanh(px)";
      f.printed_energy = "A^2 - (A - pn)^2";
      break;
    case FamilyId::PoschlTellerI:
      f.printed_map = "(A - p, B)";
      f.printed_W = "A coth(px) - B csch(px)";
      f.printed_partner = "A^2 + (A^2 + B^2 + pA) csch^2(px) - B(2A + p) coth(px) csch(px)";
      f.printed_energy = "A^2 - (A - pn)^2";
      break;
    case FamilyId::PoschlTellerII:
      f.printed_map = "(A - p, B + p)";
      f.printed_W = "A tanh(px) - B coth(px)";
      f.printed_partner = "(A - B)^2 + B(B - p) csch^2(px) - A(A + p) sech^2(px)";
      f.printed_energy = "(A - B)^2 - (A - 2pn)^2";
      break;
    case FamilyId::DoubleAngle:
      f.printed_map = "(A - p, B - 2p)";
      f.printed_W = "A tanh(px) + B tanh(2px)";
      f.printed_partner =
          "-3p(A + B - 2p/3) + (p/3)(A + B - 2p)(tanh(px) - 2 tanh(2px))^2";
      f.printed_energy = "(A + B)^2 - (A + B - 3n)^2";
      break;
    case FamilyId::QuadrupleAngle:
      f.printed_map = "(A - p, B - 4p)";
      f.printed_W = "A tanh(px) + B tanh(4px)";
      f.printed_partner =
          "-(4p/12)(A + B - 24p/4) + (p/12)(A + B - 4p)(tanh(px) - 4 tanh(4px))^2";
      f.printed_energy = "(A + B)^2 - (A + B - (3n + 2)p)^2";
      break;
    case FamilyId::Sextic:
      f.printed_map = "(A, -B, 4B - D, G(2B - G)/2)";
      f.printed_W = "Ax^2 + Bx - Dx/(1+x^2)";
      f.printed_partner =
          "-B + 2G + (2B^2 - 14BC - 7G^2)x^2/2 - BG(2B + G)x^4 + G^2(2B + G)^2x^6/2";
      f.printed_energy = "4(-1)^n B + 4(B - G + 2n)G/(-G + 2B - n)";
      break;
  }
  return f;
}

inline const std::vector<FamilySpec>& family_catalog() {
  static const std::vector<FamilySpec> rows = [] {
    std::vector<FamilySpec> v;
    v.reserve(kFamilyCount);
    for (int i = 0; i < kFamilyCount; ++i) v.push_back(family_spec(static_cast<FamilyId>(i)));
    return v;
  }();
  return rows;
}

inline std::optional<FamilyId> family_from_name(const std::string& name) {
  for (const auto& f : family_catalog())
    if (f.name == name) return f.id;
  return std::nullopt;
}

// Documented reference parameter points used by the verification suites
// (p = 1 throughout).  Chosen so parameter sequences through level 5 stay
// inside each family's natural domain.
inline Params4 reference_params(FamilyId id) {
  switch (id) {
    case FamilyId::Harmonic: return {1.0, 0.5, 0.0, 0.0};
    case FamilyId::Coulomb: return {1.0, 1.0, 0.0, 0.0};
    case FamilyId::Oscillator3D: return {1.0, 1.0, 0.0, 0.0};
    case FamilyId::Morse: return {6.0, 1.0, 0.0, 0.0};
    case FamilyId::RosenMorseI: return {6.0, 1.0, 0.0, 0.0};
    case FamilyId::RosenMorseII: return {6.0, 1.0, 0.0, 0.0};
    case FamilyId::Eckart: return {1.0, 8.0, 0.0, 0.0};
    case FamilyId::ScarfI: return {1.0, 0.5, 0.0, 0.0};
    case FamilyId::ScarfII: return {6.0, 1.0, 0.0, 0.0};
    case FamilyId::PoschlTellerI: return {6.0, 2.0, 0.0, 0.0};
    case FamilyId::PoschlTellerII: return {6.0, 1.0, 0.0, 0.0};
    case FamilyId::DoubleAngle: return {2.0, 1.0, 0.0, 0.0};
    case FamilyId::QuadrupleAngle: return {2.0, 1.0, 0.0, 0.0};
    case FamilyId::Sextic:
      // in-band sextic configuration (B0, G0) = (1, 2.1)
      return {-0.105, 1.0, -4.2, 2.1};
  }
  throw UnsupportedFamily("reference_params: unknown family");
}

// Re-derived closed-form level energies (telescoped invariance sums).
// These are validated against the recursion; rows whose quoted energy column
// is corrupted get their corrected telescoped form here.  Families without a
// working invariance step (the two multi-angle rows, and the sextic beyond
// its single exact step) return nullopt.
inline std::optional<double> exact_energy(FamilyId id, const Params4& a, double p, int n) {
  const double A = a.A, B = a.B;
  const double dn = static_cast<double>(n);
  switch (id) {
    case FamilyId::Harmonic: return 2.0 * A * dn;
    case FamilyId::Coulomb: return sq(A) - sq(A * B / (B + dn));
    case FamilyId::Oscillator3D: return 4.0 * A * dn;
    case FamilyId::Morse: return sq(A) - sq(A - p * dn);
    case FamilyId::RosenMorseI:
      return sq(A - dn * p) - sq(A) + sq(B) - sq(A * B) / sq(A - dn * p);
    case FamilyId::RosenMorseII:
      return sq(A) + sq(B) - sq(A - dn * p) - sq(A * B) / sq(A - dn * p);
    case FamilyId::Eckart:
      return sq(A) + sq(B) - sq(A + dn * p) - sq(A * B) / sq(A + dn * p);
    case FamilyId::ScarfI: return sq(A + dn * p) - sq(A);
    case FamilyId::ScarfII: return sq(A) - sq(A - dn * p);
    case FamilyId::PoschlTellerI: return sq(A) - sq(A - dn * p);
    case FamilyId::PoschlTellerII: return sq(A - B) - sq(A - B - 2.0 * dn * p);
    case FamilyId::DoubleAngle:
    case FamilyId::QuadrupleAngle:
    case FamilyId::Sextic:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace siqm

#endif  // SIQM_FAMILIES_HPP
