#include "odf/models.hpp"

#include <cctype>

#include "odf/error.hpp"
#include "odf/theta.hpp"

namespace odf {

namespace {

TruncatedSeries derivative_along(const TruncatedSeries& s, const std::vector<std::uint32_t>& jet) {
  TruncatedSeries out = s;
  for (std::size_t i = 0; i < jet.size(); ++i)
    for (std::uint32_t k = 0; k < jet[i]; ++k) out = out.derivative(i + 1);
  return out;
}

}  // namespace

TruncatedSeries SeriesPoint::value_of(const Var& v) const {
  auto it = values.find(v.name());
  if (it == values.end()) throw Error(ErrorCode::InvalidArgument, "no series assigned to " + v.name());
  if (v.jet().size() > p)
    throw Error(ErrorCode::InvalidArgument, "variable " + render(v, v.jet().size()) + " uses more than " +
                                                std::to_string(p) + " derivations");
  return derivative_along(it->second, v.jet());
}

TruncatedSeries eval_diff_term(const TermPtr& t, const SeriesPoint& pt) {
  switch (t->kind) {
    case DiffTerm::Kind::Const:
      return TruncatedSeries::constant(pt.p, pt.order, t->value);
    case DiffTerm::Kind::Var:
      return pt.value_of(t->var);
    case DiffTerm::Kind::Neg:
      return -eval_diff_term(t->lhs, pt);
    case DiffTerm::Kind::Add:
      return eval_diff_term(t->lhs, pt) + eval_diff_term(t->rhs, pt);
    case DiffTerm::Kind::Sub:
      return eval_diff_term(t->lhs, pt) - eval_diff_term(t->rhs, pt);
    case DiffTerm::Kind::Mul:
      return eval_diff_term(t->lhs, pt) * eval_diff_term(t->rhs, pt);
    case DiffTerm::Kind::Div:
      return eval_diff_term(t->lhs, pt) / eval_diff_term(t->rhs, pt);
    case DiffTerm::Kind::Pow:
      return eval_diff_term(t->lhs, pt).pow(t->n);
    case DiffTerm::Kind::Apply:
      if (t->n > pt.p) throw Error(ErrorCode::InvalidArgument, "δ_" + std::to_string(t->n) + " is not available");
      return eval_diff_term(t->lhs, pt).derivative(t->n);
  }
  return TruncatedSeries(pt.p, -1);
}

TruncatedSeries eval_jet(const RationalFunction& f, const SeriesPoint& pt) {
  return evaluate<TruncatedSeries>(
      f, [&](const Var& v) { return pt.value_of(v); }, [](const TruncatedSeries& s) { return s.is_unit(); },
      TruncatedSeries::constant(pt.p, pt.order, 0), TruncatedSeries::constant(pt.p, pt.order, 1));
}

bool check_compatibility(const RationalFunction& f, const SeriesPoint& pt, std::size_t i) {
  if (!eval_jet(RationalFunction(f.den()), pt).is_unit())
    throw Error(ErrorCode::DivisionByNonUnit, "f is not defined at the series point");
  TruncatedSeries lhs = eval_jet(f, pt).derivative(i);
  TruncatedSeries rhs = TruncatedSeries::constant(pt.p, pt.order, 0);
  for (const auto& v : f.vars()) rhs = rhs + eval_jet(f.partial(v), pt) * pt.value_of(v).derivative(i);
  return equal_modulo_truncation(lhs, rhs);
}

TruncatedSeries parse_series(std::string_view text) {
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::InvalidArgument, "malformed series literal (" + why + "): " + std::string(text));
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  std::size_t open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') throw bad("expected name(N; ...)");
  std::string_view head = trim(s.substr(0, open));
  std::string_view body = s.substr(open + 1, s.size() - open - 2);
  std::size_t semi = body.find(';');
  std::string_view order_text = trim(semi == std::string_view::npos ? body : body.substr(0, semi));
  std::string_view list = semi == std::string_view::npos ? std::string_view() : body.substr(semi + 1);
  int order;
  try {
    order = std::stoi(std::string(order_text));
  } catch (const std::exception&) {
    throw bad("order");
  }
  if (order < 0) throw bad("negative order");

  std::vector<std::string_view> items;
  if (!trim(list).empty()) {
    std::size_t depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= list.size(); ++k) {
      if (k < list.size() && list[k] == '[') ++depth;
      if (k < list.size() && list[k] == ']') --depth;
      if (k == list.size() || (list[k] == ',' && depth == 0)) {
        items.push_back(trim(list.substr(start, k - start)));
        start = k + 1;
      }
    }
  }

  if (head == "series") {
    std::vector<Rational> coeffs;
    for (auto item : items) coeffs.push_back(parse_rational(item));
    return TruncatedSeries::from_coefficients(order, coeffs);
  }
  if (head == "series2") {
    std::map<TruncatedSeries::Exponents, Rational> coeffs;
    for (auto item : items) {
      std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) throw bad("expected [i,j]=c");
      Theta theta = parse_theta(trim(item.substr(0, eq)));
      if (theta.p() != 2) throw bad("series2 needs two exponents");
      coeffs[theta.exponents()] += parse_rational(trim(item.substr(eq + 1)));
    }
    return TruncatedSeries::from_coefficients(2, order, coeffs);
  }
  throw bad("unknown constructor");
}

const Var& germ_variable() {
  static const Var s("s");
  return s;
}

RationalFunction GermPoint::value_of(const Var& v) const {
  auto it = values.find(v.name());
  if (it == values.end()) throw Error(ErrorCode::InvalidArgument, "no germ assigned to " + v.name());
  if (v.jet().size() > 1)
    throw Error(ErrorCode::HigherDerivationInGermModel, "the germ model has a single derivation d/ds");
  RationalFunction out = it->second;
  for (std::uint32_t k = 0; k < v.order(); ++k) out = out.partial(germ_variable());
  return out;
}

int germ_sign(const RationalFunction& g) {
  if (g.is_zero()) return 0;
  for (const auto& v : g.vars())
    if (!(v == germ_variable()))
      throw Error(ErrorCode::InvalidArgument, "germ depends on " + render(v, 1) + " besides s");
  auto leading = [](const MultiPoly& p) { return sign(p.coefficients_in(germ_variable()).back().constant_term()); };
  return leading(g.num()) * leading(g.den());
}

RationalFunction eval_germ(const TermPtr& t, const GermPoint& pt) {
  switch (t->kind) {
    case DiffTerm::Kind::Const:
      return RationalFunction(t->value);
    case DiffTerm::Kind::Var:
      return pt.value_of(t->var);
    case DiffTerm::Kind::Neg:
      return -eval_germ(t->lhs, pt);
    case DiffTerm::Kind::Add:
      return eval_germ(t->lhs, pt) + eval_germ(t->rhs, pt);
    case DiffTerm::Kind::Sub:
      return eval_germ(t->lhs, pt) - eval_germ(t->rhs, pt);
    case DiffTerm::Kind::Mul:
      return eval_germ(t->lhs, pt) * eval_germ(t->rhs, pt);
    case DiffTerm::Kind::Div: {
      RationalFunction den = eval_germ(t->rhs, pt);
      if (den.is_zero()) throw Error(ErrorCode::DenominatorVanishes, "division by the zero germ");
      return eval_germ(t->lhs, pt) / den;
    }
    case DiffTerm::Kind::Pow:
      return eval_germ(t->lhs, pt).pow(t->n);
    case DiffTerm::Kind::Apply:
      if (t->n != 1)
        throw Error(ErrorCode::HigherDerivationInGermModel, "the germ model has a single derivation d/ds");
      return eval_germ(t->lhs, pt).partial(germ_variable());
  }
  return {};
}

bool eval_formula(const FormulaPtr& f, const GermPoint& pt) {
  switch (f->kind) {
    case DiffFormula::Kind::Atom:
      return holds(f->cmp, germ_sign(eval_germ(f->lhs, pt) - eval_germ(f->rhs, pt)));
    case DiffFormula::Kind::And: {
      // Both sides are evaluated so that errors never depend on short-circuiting.
      bool a = eval_formula(f->a, pt);
      bool b = eval_formula(f->b, pt);
      return a && b;
    }
    case DiffFormula::Kind::Or: {
      bool a = eval_formula(f->a, pt);
      bool b = eval_formula(f->b, pt);
      return a || b;
    }
    case DiffFormula::Kind::Not:
      return !eval_formula(f->a, pt);
  }
  return false;
}

}  // namespace odf
