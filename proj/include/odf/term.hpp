#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "odf/rational.hpp"
#include "odf/var.hpp"

namespace odf {

struct DiffTerm;
using TermPtr = std::shared_ptr<const DiffTerm>;

/// Syntax tree of a differential term. Constants are non-negative; a leading
/// minus is a Neg node. Apply(i, t) is δ_i t.
struct DiffTerm {
  enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Apply };

  Kind kind = Kind::Const;
  Rational value;       // Const
  Var var;              // Var; may already carry a jet, e.g. x'
  std::uint32_t n = 0;  // Pow exponent or Apply index
  TermPtr lhs;          // unary operand or left operand
  TermPtr rhs;
};

TermPtr term_const(const Rational& c);
TermPtr term_var(const Var& v);
TermPtr term_neg(TermPtr a);
TermPtr term_add(TermPtr a, TermPtr b);
TermPtr term_sub(TermPtr a, TermPtr b);
TermPtr term_mul(TermPtr a, TermPtr b);
TermPtr term_div(TermPtr a, TermPtr b);
TermPtr term_pow(TermPtr a, std::uint32_t n);
TermPtr term_apply(std::size_t i, TermPtr a);

/// Deep structural equality.
bool term_equal(const TermPtr& a, const TermPtr& b);
std::size_t term_depth(const TermPtr& t);
/// Largest derivation index used by an Apply node or a variable jet (0 if none).
std::size_t term_derivations(const TermPtr& t);

/// Renders with the fewest parentheses that still parse back to the same tree.
std::string render(const TermPtr& t);

/// Parses the term grammar. Throws ParseError with a 1-based line/column.
TermPtr parse_term(std::string_view text);

enum class Comparator { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(Comparator c);
/// t ⋈ 0 becomes -t ⋈' 0 under the returned comparator.
Comparator flipped(Comparator c);
/// Whether `sign` (-1, 0, 1) satisfies `sign ⋈ 0`.
bool holds(Comparator c, int sign);

struct DiffFormula;
using FormulaPtr = std::shared_ptr<const DiffFormula>;

/// Quantifier-free formula over differential terms. Atoms are `lhs ⋈ rhs`.
struct DiffFormula {
  enum class Kind { Atom, And, Or, Not };

  Kind kind = Kind::Atom;
  Comparator cmp = Comparator::Eq;
  TermPtr lhs;
  TermPtr rhs;
  FormulaPtr a;
  FormulaPtr b;
};

FormulaPtr formula_atom(TermPtr lhs, Comparator cmp, TermPtr rhs);
FormulaPtr formula_and(FormulaPtr a, FormulaPtr b);
FormulaPtr formula_or(FormulaPtr a, FormulaPtr b);
FormulaPtr formula_not(FormulaPtr a);

std::string render(const FormulaPtr& f);

/// Parses `|`, `&`, `!`, parentheses and comparison atoms. Throws
/// QuantifierUnsupported on `exists`/`forall`, ParseError otherwise.
FormulaPtr parse_formula(std::string_view text);

/// True if the text parses as a formula rather than a bare term.
bool looks_like_formula(std::string_view text);

}  // namespace odf
