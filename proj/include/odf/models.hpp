#pragma once

#include <map>
#include <string>
#include <string_view>

#include "odf/rational_function.hpp"
#include "odf/series.hpp"
#include "odf/term.hpp"

namespace odf {

/// Assignment of power series in t_1..t_p (all of the same order) to base
/// variables; δ_i acts as ∂/∂t_i.
struct SeriesPoint {
  std::size_t p = 1;
  int order = 0;
  std::map<std::string, TruncatedSeries> values;

  /// x^θ ↦ ∂^θ x(t). Throws InvalidArgument for unassigned names.
  TruncatedSeries value_of(const Var& v) const;
};

/// Throws DivisionByNonUnit when a divisor has zero constant term. The
/// result's order drops by one for every nested derivative.
TruncatedSeries eval_diff_term(const TermPtr& t, const SeriesPoint& pt);

/// Evaluates a rational function in jet variables; DenominatorVanishes when
/// the denominator is not a unit.
TruncatedSeries eval_jet(const RationalFunction& f, const SeriesPoint& pt);

/// ∂_i f(pt) = Σ_k ∂f/∂y_k(pt) · ∂_i pt_k, compared modulo truncation.
bool check_compatibility(const RationalFunction& f, const SeriesPoint& pt, std::size_t i);

/// Parses `series(N; c0, c1, ...)` (one variable) or
/// `series2(N; [i,j]=c, ...)` (two variables).
TruncatedSeries parse_series(std::string_view text);

/// Rational germs at +∞ in the variable s, with δ = d/ds.
struct GermPoint {
  std::map<std::string, RationalFunction> values;

  RationalFunction value_of(const Var& v) const;
};

const Var& germ_variable();

/// Eventual sign (-1, 0, 1) of a rational function of s as s → +∞.
int germ_sign(const RationalFunction& g);

/// Throws HigherDerivationInGermModel for δ_i with i > 1.
RationalFunction eval_germ(const TermPtr& t, const GermPoint& pt);
bool eval_formula(const FormulaPtr& f, const GermPoint& pt);

}  // namespace odf
