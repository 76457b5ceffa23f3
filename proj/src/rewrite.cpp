#include "odf/rewrite.hpp"

#include <algorithm>

#include "odf/diffpoly.hpp"
#include "odf/error.hpp"

namespace odf {

namespace {

RationalFunction to_rational_function(const TermPtr& t) {
  switch (t->kind) {
    case DiffTerm::Kind::Const:
      return RationalFunction(t->value);
    case DiffTerm::Kind::Var:
      return RationalFunction::variable(t->var);
    case DiffTerm::Kind::Neg:
      return -to_rational_function(t->lhs);
    case DiffTerm::Kind::Add:
      return to_rational_function(t->lhs) + to_rational_function(t->rhs);
    case DiffTerm::Kind::Sub:
      return to_rational_function(t->lhs) - to_rational_function(t->rhs);
    case DiffTerm::Kind::Mul:
      return to_rational_function(t->lhs) * to_rational_function(t->rhs);
    case DiffTerm::Kind::Div: {
      RationalFunction den = to_rational_function(t->rhs);
      if (den.is_zero())
        throw Error(ErrorCode::ZeroDenominator, "denominator " + render(t->rhs) + " is identically zero");
      return to_rational_function(t->lhs) / den;
    }
    case DiffTerm::Kind::Pow:
      return to_rational_function(t->lhs).pow(t->n);
    case DiffTerm::Kind::Apply:
      return free_derive(to_rational_function(t->lhs), t->n);
  }
  return {};
}

void record_depths(const std::vector<Var>& vars, std::map<std::string, std::uint32_t>& depth,
                   std::uint32_t& max_depth) {
  for (const auto& v : vars) {
    auto& d = depth[v.name()];
    d = std::max(d, v.order());
    max_depth = std::max(max_depth, v.order());
  }
}

JetFormulaPtr make(JetFormula f) { return std::make_shared<const JetFormula>(std::move(f)); }

JetFormulaPtr atom(MultiPoly p, Comparator cmp) {
  JetFormula f;
  f.kind = JetFormula::Kind::Atom;
  f.cmp = cmp;
  f.poly = std::move(p);
  return make(std::move(f));
}

JetFormulaPtr combine(JetFormula::Kind kind, JetFormulaPtr a, JetFormulaPtr b = nullptr) {
  JetFormula f;
  f.kind = kind;
  f.a = std::move(a);
  f.b = std::move(b);
  return make(std::move(f));
}

JetFormulaPtr rewrite(const FormulaPtr& f, std::map<std::string, std::uint32_t>& depth, std::uint32_t& max_depth) {
  switch (f->kind) {
    case DiffFormula::Kind::And:
      return combine(JetFormula::Kind::And, rewrite(f->a, depth, max_depth), rewrite(f->b, depth, max_depth));
    case DiffFormula::Kind::Or:
      return combine(JetFormula::Kind::Or, rewrite(f->a, depth, max_depth), rewrite(f->b, depth, max_depth));
    case DiffFormula::Kind::Not:
      return combine(JetFormula::Kind::Not, rewrite(f->a, depth, max_depth));
    case DiffFormula::Kind::Atom:
      break;
  }
  RationalFunction t = to_rational_function(f->lhs) - to_rational_function(f->rhs);
  record_depths(t.vars(), depth, max_depth);
  if (t.is_polynomial()) return atom(t.num() * Rational(1 / t.den().constant_term()), f->cmp);
  const MultiPoly& n = t.num();
  const MultiPoly& d = t.den();
  if (f->cmp == Comparator::Eq || f->cmp == Comparator::Ne)
    return combine(JetFormula::Kind::And, atom(n, f->cmp), atom(d, Comparator::Ne));
  return combine(JetFormula::Kind::Or,
                 combine(JetFormula::Kind::And, atom(d, Comparator::Gt), atom(n, f->cmp)),
                 combine(JetFormula::Kind::And, atom(d, Comparator::Lt), atom(n, flipped(f->cmp))));
}

int jet_precedence(const JetFormula& f) {
  switch (f.kind) {
    case JetFormula::Kind::Or:
      return 1;
    case JetFormula::Kind::And:
      return 2;
    default:
      return 3;
  }
}

std::string render_at(const JetFormulaPtr& f, int min_prec, std::size_t derivations) {
  std::string s = render(f, derivations);
  return jet_precedence(*f) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

JetTerm rewrite_term(const TermPtr& t) {
  JetTerm out;
  out.value = to_rational_function(t);
  out.support = out.value.vars();
  record_depths(out.support, out.depth, out.max_depth);
  return out;
}

RewrittenFormula rewrite_formula(const FormulaPtr& f) {
  RewrittenFormula out;
  out.formula = rewrite(f, out.depth, out.max_depth);
  return out;
}

std::string render(const JetFormulaPtr& f, std::size_t derivations) {
  switch (f->kind) {
    case JetFormula::Kind::Atom: {
      std::string cmp(to_string(f->cmp));
      Rational c = f->poly.constant_term();
      if (f->poly.is_constant() || c == 0) return f->poly.render(derivations) + " " + cmp + " 0";
      return (f->poly - MultiPoly(c)).render(derivations) + " " + cmp + " " + to_string(Rational(-c));
    }
    case JetFormula::Kind::And:
      return render_at(f->a, 2, derivations) + " & " + render_at(f->b, 3, derivations);
    case JetFormula::Kind::Or:
      return render_at(f->a, 1, derivations) + " | " + render_at(f->b, 2, derivations);
    case JetFormula::Kind::Not:
      return "!" + render_at(f->a, 3, derivations);
  }
  return {};
}

std::vector<Var> jet_expand(const std::string& base, std::uint32_t n) {
  std::vector<Var> out;
  for (std::uint32_t k = 0; k <= n; ++k) out.emplace_back(base, std::vector<std::uint32_t>{k});
  return out;
}

std::vector<Var> jet_expand(const std::string& base, std::size_t p, std::uint32_t max_ord) {
  std::vector<Var> out;
  for (const auto& theta : enumerate_theta(p, max_ord)) out.push_back(diff_var(base, theta));
  return out;
}

}  // namespace odf
