#pragma once

#include <map>
#include <string>
#include <vector>

#include "odf/rational_function.hpp"
#include "odf/term.hpp"
#include "odf/theta.hpp"

namespace odf {

/// A δ-free term: a rational function in jet variables x^θ.
struct JetTerm {
  RationalFunction value;
  /// The jet variables that occur, highest rank first.
  std::vector<Var> support;
  /// Highest jet order per base variable.
  std::map<std::string, std::uint32_t> depth;
  std::uint32_t max_depth = 0;
};

/// Eliminates δ by linearity, the Leibniz, quotient and power rules, and
/// δ_i x^θ = x^{δ_i θ}. Throws ZeroDenominator when a divisor normalizes to 0.
JetTerm rewrite_term(const TermPtr& t);

/// Polynomial atom `poly ⋈ 0`, or a boolean combination of such atoms.
struct JetFormula;
using JetFormulaPtr = std::shared_ptr<const JetFormula>;

struct JetFormula {
  enum class Kind { Atom, And, Or, Not };

  Kind kind = Kind::Atom;
  Comparator cmp = Comparator::Eq;
  MultiPoly poly;
  JetFormulaPtr a;
  JetFormulaPtr b;
};

struct RewrittenFormula {
  JetFormulaPtr formula;
  std::map<std::string, std::uint32_t> depth;
  std::uint32_t max_depth = 0;
};

/// Rewrites every atom and clears denominators. With t = N/D the atom
/// t ⋈ 0 becomes (D > 0 & N ⋈ 0) | (D < 0 & N ⋈' 0) for order comparisons
/// and N ⋈ 0 & D ≠ 0 for = and ≠, so atoms are false where D vanishes.
RewrittenFormula rewrite_formula(const FormulaPtr& f);

/// Renders atoms with the constant moved across, e.g. `x' = 1`.
std::string render(const JetFormulaPtr& f, std::size_t derivations = 1);

/// Evaluates a jet formula given the sign of each atom polynomial.
template <class SignOf>
bool evaluate(const JetFormulaPtr& f, SignOf&& sign_of) {
  switch (f->kind) {
    case JetFormula::Kind::Atom:
      return holds(f->cmp, sign_of(f->poly));
    case JetFormula::Kind::And:
      return evaluate(f->a, sign_of) && evaluate(f->b, sign_of);
    case JetFormula::Kind::Or:
      return evaluate(f->a, sign_of) || evaluate(f->b, sign_of);
    case JetFormula::Kind::Not:
      return !evaluate(f->a, sign_of);
  }
  return false;
}

/// (x, x', ..., x^(n)) for one derivation.
std::vector<Var> jet_expand(const std::string& base, std::uint32_t n);
/// x^θ for all θ with ord θ ≤ max_ord, in increasing < order.
std::vector<Var> jet_expand(const std::string& base, std::size_t p, std::uint32_t max_ord);

}  // namespace odf
