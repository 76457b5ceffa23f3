#include "odf/term.hpp"

#include <algorithm>
#include <cctype>

#include "odf/error.hpp"

namespace odf {

namespace {

TermPtr make(DiffTerm t) { return std::make_shared<const DiffTerm>(std::move(t)); }

TermPtr binary(DiffTerm::Kind kind, TermPtr a, TermPtr b) {
  DiffTerm t;
  t.kind = kind;
  t.lhs = std::move(a);
  t.rhs = std::move(b);
  return make(std::move(t));
}

int precedence(const DiffTerm& t) {
  switch (t.kind) {
    case DiffTerm::Kind::Add:
    case DiffTerm::Kind::Sub:
      return 1;
    case DiffTerm::Kind::Mul:
    case DiffTerm::Kind::Div:
      return 2;
    case DiffTerm::Kind::Neg:
      return 3;
    case DiffTerm::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string render_at(const TermPtr& t, int min_prec) {
  std::string s = render(t);
  return precedence(*t) < min_prec ? "(" + s + ")" : s;
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

TermPtr term_const(const Rational& c) {
  if (c < 0) return term_neg(term_const(-c));
  DiffTerm t;
  t.kind = DiffTerm::Kind::Const;
  t.value = c;
  return make(std::move(t));
}

TermPtr term_var(const Var& v) {
  DiffTerm t;
  t.kind = DiffTerm::Kind::Var;
  t.var = v;
  return make(std::move(t));
}

TermPtr term_neg(TermPtr a) {
  DiffTerm t;
  t.kind = DiffTerm::Kind::Neg;
  t.lhs = std::move(a);
  return make(std::move(t));
}

TermPtr term_add(TermPtr a, TermPtr b) { return binary(DiffTerm::Kind::Add, std::move(a), std::move(b)); }
TermPtr term_sub(TermPtr a, TermPtr b) { return binary(DiffTerm::Kind::Sub, std::move(a), std::move(b)); }
TermPtr term_mul(TermPtr a, TermPtr b) { return binary(DiffTerm::Kind::Mul, std::move(a), std::move(b)); }
TermPtr term_div(TermPtr a, TermPtr b) { return binary(DiffTerm::Kind::Div, std::move(a), std::move(b)); }

TermPtr term_pow(TermPtr a, std::uint32_t n) {
  DiffTerm t;
  t.kind = DiffTerm::Kind::Pow;
  t.lhs = std::move(a);
  t.n = n;
  return make(std::move(t));
}

TermPtr term_apply(std::size_t i, TermPtr a) {
  if (i == 0) throw Error(ErrorCode::InvalidArgument, "derivation indices start at 1");
  DiffTerm t;
  t.kind = DiffTerm::Kind::Apply;
  t.lhs = std::move(a);
  t.n = static_cast<std::uint32_t>(i);
  return make(std::move(t));
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->n != b->n) return false;
  switch (a->kind) {
    case DiffTerm::Kind::Const:
      return a->value == b->value;
    case DiffTerm::Kind::Var:
      return a->var == b->var;
    default:
      return term_equal(a->lhs, b->lhs) && term_equal(a->rhs, b->rhs);
  }
}

std::size_t term_depth(const TermPtr& t) {
  if (!t) return 0;
  return 1 + std::max(term_depth(t->lhs), term_depth(t->rhs));
}

std::size_t term_derivations(const TermPtr& t) {
  if (!t) return 0;
  std::size_t own = 0;
  if (t->kind == DiffTerm::Kind::Apply) own = t->n;
  if (t->kind == DiffTerm::Kind::Var) own = t->var.jet().size();
  return std::max({own, term_derivations(t->lhs), term_derivations(t->rhs)});
}

std::string render(const TermPtr& t) {
  switch (t->kind) {
    case DiffTerm::Kind::Const:
      return to_string(t->value);
    case DiffTerm::Kind::Var:
      return render(t->var, std::max<std::size_t>(1, t->var.jet().size()));
    case DiffTerm::Kind::Neg:
      return "-" + render_at(t->lhs, 3);
    case DiffTerm::Kind::Add:
      return render_at(t->lhs, 1) + " + " + render_at(t->rhs, 2);
    case DiffTerm::Kind::Sub:
      return render_at(t->lhs, 1) + " - " + render_at(t->rhs, 2);
    case DiffTerm::Kind::Mul:
      return render_at(t->lhs, 2) + "*" + render_at(t->rhs, 3);
    case DiffTerm::Kind::Div: {
      std::string l = render_at(t->lhs, 2);
      std::string r = render_at(t->rhs, 3);
      // `1/2` would lex as a single rational literal.
      bool glue = is_digit(l.back()) && is_digit(r.front());
      return l + (glue ? " / " : "/") + r;
    }
    case DiffTerm::Kind::Pow:
      return render_at(t->lhs, 5) + "^" + std::to_string(t->n);
    case DiffTerm::Kind::Apply:
      return (t->n == 1 ? std::string("d") : "d" + std::to_string(t->n)) + "(" + render(t->lhs) + ")";
  }
  return {};
}

std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::Eq:
      return "=";
    case Comparator::Ne:
      return "!=";
    case Comparator::Lt:
      return "<";
    case Comparator::Le:
      return "<=";
    case Comparator::Gt:
      return ">";
    case Comparator::Ge:
      return ">=";
  }
  return "?";
}

Comparator flipped(Comparator c) {
  switch (c) {
    case Comparator::Lt:
      return Comparator::Gt;
    case Comparator::Le:
      return Comparator::Ge;
    case Comparator::Gt:
      return Comparator::Lt;
    case Comparator::Ge:
      return Comparator::Le;
    default:
      return c;
  }
}

bool holds(Comparator c, int sign) {
  switch (c) {
    case Comparator::Eq:
      return sign == 0;
    case Comparator::Ne:
      return sign != 0;
    case Comparator::Lt:
      return sign < 0;
    case Comparator::Le:
      return sign <= 0;
    case Comparator::Gt:
      return sign > 0;
    case Comparator::Ge:
      return sign >= 0;
  }
  return false;
}

namespace {

FormulaPtr make_formula(DiffFormula f) { return std::make_shared<const DiffFormula>(std::move(f)); }

int formula_precedence(const DiffFormula& f) {
  switch (f.kind) {
    case DiffFormula::Kind::Or:
      return 1;
    case DiffFormula::Kind::And:
      return 2;
    default:
      return 3;
  }
}

std::string render_formula_at(const FormulaPtr& f, int min_prec) {
  std::string s = render(f);
  return formula_precedence(*f) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

FormulaPtr formula_atom(TermPtr lhs, Comparator cmp, TermPtr rhs) {
  DiffFormula f;
  f.kind = DiffFormula::Kind::Atom;
  f.cmp = cmp;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return make_formula(std::move(f));
}

FormulaPtr formula_and(FormulaPtr a, FormulaPtr b) {
  DiffFormula f;
  f.kind = DiffFormula::Kind::And;
  f.a = std::move(a);
  f.b = std::move(b);
  return make_formula(std::move(f));
}

FormulaPtr formula_or(FormulaPtr a, FormulaPtr b) {
  DiffFormula f;
  f.kind = DiffFormula::Kind::Or;
  f.a = std::move(a);
  f.b = std::move(b);
  return make_formula(std::move(f));
}

FormulaPtr formula_not(FormulaPtr a) {
  DiffFormula f;
  f.kind = DiffFormula::Kind::Not;
  f.a = std::move(a);
  return make_formula(std::move(f));
}

std::string render(const FormulaPtr& f) {
  switch (f->kind) {
    case DiffFormula::Kind::Atom:
      return render(f->lhs) + " " + std::string(to_string(f->cmp)) + " " + render(f->rhs);
    case DiffFormula::Kind::And:
      return render_formula_at(f->a, 2) + " & " + render_formula_at(f->b, 3);
    case DiffFormula::Kind::Or:
      return render_formula_at(f->a, 1) + " | " + render_formula_at(f->b, 2);
    case DiffFormula::Kind::Not:
      return "!" + render_formula_at(f->a, 3);
  }
  return {};
}

}  // namespace odf
