#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odf/rational_function.hpp"
#include "odf/series.hpp"
#include "odf/theta.hpp"

namespace odf {

/// The unknown a and its derivatives are the variables z^θ = Var("z", θ).
Var z_var(const Theta& theta);

/// A condition (P, U, (f_β)) on one unknown with p commuting derivations.
/// U is the conjunction `u > 0` over the polynomials in `inequalities`.
struct Condition {
  std::size_t p = 1;
  std::vector<Theta> P;
  std::vector<MultiPoly> inequalities;
  std::map<Theta, RationalFunction, ThetaLess> f;
  std::map<Theta, Rational, ThetaLess> witness;
  /// Initial values for the series solver; not part of the condition proper.
  std::map<Theta, Rational, ThetaLess> init;
};

struct ConditionViolation {
  enum class Kind {
    NotAntichain,
    IdentityInP,
    MissingFunction,
    ForeignVariable,
    DependenceViolation,
    VariableInB,
    WitnessFails,
  };
  Kind kind;
  std::optional<Theta> beta;
  std::optional<Theta> theta;
  /// Index into Condition::inequalities for WitnessFails, if an inequality failed.
  std::optional<std::size_t> inequality;
  std::string message;
};

std::string_view to_string(ConditionViolation::Kind kind);

/// Empty when the condition is well formed. Missing witness coordinates
/// count as 0.
std::optional<ConditionViolation> validate_condition(const Condition& c);

/// One candidate g_{θ,φ}; `via` is φ (or θ itself in the I and P cases).
struct OmegaMember {
  Theta via;
  RationalFunction value;
};

struct OmegaEntry {
  std::vector<OmegaMember> members;
  /// The distinguished g_θ: the member obtained from the <-least φ.
  RationalFunction g;
  bool singleton() const;
};

struct DerivedSystem {
  std::size_t p = 1;
  std::uint32_t ord_bound = 0;
  std::map<Theta, OmegaEntry, ThetaLess> omega;
  /// Denominators that must not vanish (the domain U_θ, implicitly).
  std::vector<MultiPoly> nonzero;

  const RationalFunction& g(const Theta& theta) const;
  /// h^δ_i(z^I, g_{δ_i I}(z^I)): differentiate freely, then replace every
  /// z^χ with χ ∈ B by g_χ.
  RationalFunction lift(const RationalFunction& h, std::size_t i) const;
};

/// Ω_θ for every θ with ord θ ≤ ord_bound. Throws InvalidCondition when
/// validation fails.
DerivedSystem derive_system(const Condition& c, std::uint32_t ord_bound);

struct Conflict {
  Theta theta;
  Theta phi1;
  Theta phi2;
  /// g_{θ,φ1} - g_{θ,φ2}, never zero.
  RationalFunction difference;
};

struct CoherenceReport {
  bool coherent = true;
  std::optional<Conflict> conflict;
};

/// Checks that Ω_θ is a singleton for every θ ≤ ⋁P in the total order.
CoherenceReport is_coherent(const Condition& c);

/// The same singleton test for every θ with ord θ ≤ ord_bound.
CoherenceReport strong_coherence_probe(const Condition& c, std::uint32_t ord_bound);

/// Truncated Taylor series a(t) = Σ (θa)(0) t^e / e! of total degree ≤ N with
/// θa(0) = init(θ) on I (default 0) and βa = f_β(a^I) for β ∈ P.
/// Throws NotCoherent, or SingularInitialData when a denominator vanishes.
TruncatedSeries solve_condition_series(const Condition& c, const std::map<Theta, Rational, ThetaLess>& init,
                                       int N);

struct VerifyResult {
  bool ok = true;
  std::optional<Theta> failing_beta;
  std::optional<std::size_t> failing_inequality;
  std::string message;
};

/// Checks ∂^β a = f_β(∂^ψ a) modulo truncation for every β ∈ P and the
/// inequalities of U at t = 0.
VerifyResult verify_solution(const Condition& c, const TruncatedSeries& a);

/// Parses the line-oriented condition format:
///   p = 2
///   beta [1,0] := z
///   ineq z > 0
///   witness z[0,0] = 1
///   init z[0,0] = 1
/// Blank lines and lines starting with `#` are ignored.
Condition parse_condition(std::string_view text);
std::string render(const Condition& c);

}  // namespace odf
