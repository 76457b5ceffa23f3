#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "odf/rational.hpp"
#include "odf/var.hpp"

namespace odf {

/// Sparse multivariate polynomial over ℚ.
///
/// The variable list is kept sorted from highest to lowest rank and holds
/// exactly the variables that occur, so two polynomials are equal iff their
/// variable lists and term lists are equal. Terms are sorted by descending
/// graded-lexicographic order (lex with respect to the variable ranking) and
/// never carry a zero coefficient. Operands with different variable lists
/// are aligned on the fly.
class MultiPoly {
 public:
  using Exponents = std::vector<std::uint32_t>;

  struct Term {
    Exponents exp;
    Rational coef;
    bool operator==(const Term&) const = default;
  };

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT: constants convert implicitly
  MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT

  static MultiPoly variable(const Var& v);
  static MultiPoly monomial(const Rational& coef,
                            const std::vector<std::pair<Var, std::uint32_t>>& powers);
  /// Builds from an arbitrary variable list and unsorted terms; canonicalizes.
  static MultiPoly from_terms(std::vector<Var> vars, std::vector<Term> terms);

  const std::vector<Var>& vars() const noexcept { return vars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return vars_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// Coefficient of the empty monomial.
  Rational constant_term() const;
  /// Coefficient of the grlex-leading term; zero for the zero polynomial.
  Rational leading_coefficient() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree(const Var& v) const;
  bool contains(const Var& v) const;
  /// Position of `v` in vars(), if present.
  std::optional<std::size_t> index_of(const Var& v) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  MultiPoly pow(std::uint32_t n) const;
  MultiPoly partial(const Var& v) const;

  /// Coefficients of the polynomial viewed in ℚ[others][v]; index = degree.
  std::vector<MultiPoly> coefficients_in(const Var& v) const;
  static MultiPoly from_coefficients(const Var& v, const std::vector<MultiPoly>& coeffs);

  /// Replaces variables by other variables (must keep the map injective on
  /// the occurring variables or terms simply combine).
  template <class F>
  MultiPoly rename(F&& f) const {
    std::vector<Var> renamed;
    renamed.reserve(vars_.size());
    for (const auto& v : vars_) renamed.push_back(f(v));
    return from_terms(std::move(renamed), terms_);
  }

  bool operator==(const MultiPoly& other) const = default;

  /// Human-readable form, e.g. `x^2 - 2*x*y + 1/2`.
  std::string render(std::size_t derivations = 1) const;

 private:
  void canonicalize();
  static std::vector<Var> merge_vars(const std::vector<Var>& a, const std::vector<Var>& b);
  MultiPoly aligned(const std::vector<Var>& target) const;

  std::vector<Var> vars_;
  std::vector<Term> terms_;
};

/// Descending graded-lexicographic comparison: <0 if a ranks below b.
int grlex_compare(const MultiPoly::Exponents& a, const MultiPoly::Exponents& b);

/// Exact quotient a / b when b divides a, std::nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

/// Positive rational c with p / c having coprime integer coefficients.
Rational numeric_content(const MultiPoly& p);

/// Greatest common divisor, normalized to leading coefficient 1 (gcd(0,0)=0).
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// Generic evaluation: `value(v)` supplies the image of each variable in a
/// commutative ring `R` that is constructible from Rational.
template <class R, class F>
R evaluate(const MultiPoly& p, F&& value, const R& zero, const R& one) {
  const auto& vars = p.vars();
  std::vector<std::vector<R>> powers(vars.size());
  std::vector<std::uint32_t> max_exp(vars.size(), 0);
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < vars.size(); ++i) max_exp[i] = std::max(max_exp[i], t.exp[i]);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    R base = value(vars[i]);
    powers[i].push_back(one);
    for (std::uint32_t k = 1; k <= max_exp[i]; ++k) powers[i].push_back(powers[i].back() * base);
  }
  R sum = zero;
  for (const auto& t : p.terms()) {
    R term = one * t.coef;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (t.exp[i] > 0) term = term * powers[i][t.exp[i]];
    sum = sum + term;
  }
  return sum;
}

}  // namespace odf
