#pragma once

#include <functional>
#include <map>
#include <string>

#include "odf/error.hpp"
#include "odf/multipoly.hpp"

namespace odf {

/// Quotient of polynomials in canonical form: gcd(num, den) = 1 and den has
/// leading coefficient 1 under the grlex order, so equality of functions is
/// structural equality.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(MultiPoly num);  // NOLINT: polynomials embed implicitly
  RationalFunction(const Rational& c) : RationalFunction(MultiPoly(c)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(MultiPoly(c)) {}             // NOLINT
  /// Throws DivisionByZero when den is the zero polynomial.
  RationalFunction(MultiPoly num, MultiPoly den);

  static RationalFunction variable(const Var& v) { return RationalFunction(MultiPoly::variable(v)); }

  const MultiPoly& num() const noexcept { return num_; }
  const MultiPoly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant function (caller checks is_constant()).
  Rational constant_value() const;

  /// Union of the numerator and denominator variables, highest rank first.
  std::vector<Var> vars() const;
  bool contains(const Var& v) const { return num_.contains(v) || den_.contains(v); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
  RationalFunction& operator/=(const RationalFunction& b) { return *this = *this / b; }

  RationalFunction pow(std::uint32_t n) const;
  RationalFunction inverse() const;

  /// Formal partial derivative (quotient rule), canonicalized.
  RationalFunction partial(const Var& v) const;
  /// Quotient rule for an arbitrary derivation D of the polynomial ring,
  /// given dn = D(num) and dd = D(den).
  RationalFunction derived_from(MultiPoly dn, const MultiPoly& dd) const;

  /// Substitutes rational functions for variables; unmapped variables stay.
  RationalFunction substitute(const std::map<Var, RationalFunction, VarRankGreater>& images) const;

  bool operator==(const RationalFunction& other) const = default;

  /// `num` or `num/den`, parenthesizing multi-term parts.
  std::string render(std::size_t derivations = 1) const;

 private:
  void canonicalize();
  // Trusted constructor: parts already coprime and normalized.
  struct Reduced {};
  RationalFunction(MultiPoly num, MultiPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  MultiPoly num_;
  MultiPoly den_ = MultiPoly(1);
};

/// Evaluates the rational function over a field `F` (Rational,
/// TruncatedSeries, RationalFunction, ...). `is_invertible` decides whether
/// the denominator value may be inverted; DenominatorVanishes otherwise.
template <class F, class Value, class Invertible>
F evaluate(const RationalFunction& f, Value&& value, Invertible&& is_invertible, const F& zero,
           const F& one) {
  F den = evaluate<F>(f.den(), value, zero, one);
  if (!is_invertible(den))
    throw Error(ErrorCode::DenominatorVanishes,
                "denominator " + f.den().render() + " vanishes at the evaluation point");
  return evaluate<F>(f.num(), value, zero, one) / den;
}

}  // namespace odf
