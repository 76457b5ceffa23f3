#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "odf/rational.hpp"

namespace odf {

/// Multivariate power series in t_1..t_p over ℚ, known exactly up to total
/// degree `order()`. Arithmetic results carry the minimum order of their
/// operands; differentiation loses one order. An order of -1 means that no
/// coefficient is known.
class TruncatedSeries {
 public:
  using Exponents = std::vector<std::uint32_t>;

  /// A univariate series with no known coefficients.
  TruncatedSeries() : TruncatedSeries(1, -1) {}
  TruncatedSeries(std::size_t p, int order);
  static TruncatedSeries constant(std::size_t p, int order, const Rational& c);
  /// The series t_i (1-based).
  static TruncatedSeries variable(std::size_t p, int order, std::size_t i);
  static TruncatedSeries from_coefficients(std::size_t p, int order,
                                           const std::map<Exponents, Rational>& coeffs);
  /// Univariate convenience: c_0 + c_1 t + ... .
  static TruncatedSeries from_coefficients(int order, const std::vector<Rational>& coeffs);

  std::size_t p() const noexcept { return p_; }
  int order() const noexcept { return order_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const;
  bool is_unit() const { return order_ >= 0 && constant_term() != 0; }

  /// Drops everything above the given total degree (never raises order).
  TruncatedSeries truncated(int order) const;

  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  /// Throws DivisionByNonUnit when b has zero constant term.
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c);
  friend TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a) { return a * c; }

  TruncatedSeries inverse() const;
  TruncatedSeries pow(std::uint32_t n) const;
  /// ∂/∂t_i (1-based); the result is valid to order - 1.
  TruncatedSeries derivative(std::size_t i) const;
  /// ∂^θ for an exponent vector θ of length p.
  TruncatedSeries derivative(const Exponents& theta) const;

  /// Exact structural equality (same p, order and coefficients).
  bool operator==(const TruncatedSeries& other) const = default;

  /// `c0 + c1*t + ...` for p = 1, `t1`, `t2`, ... otherwise; with the order
  /// appended as `+ O(t^{N+1})`.
  std::string render() const;

 private:
  void drop_zeros();

  std::size_t p_;
  int order_;
  std::map<Exponents, Rational> terms_;
};

/// Equality of all coefficients up to the smaller of the two orders.
bool equal_modulo_truncation(const TruncatedSeries& a, const TruncatedSeries& b);

/// Every exponent vector of length p with total degree ≤ max_degree,
/// sorted by degree then lexicographically.
std::vector<TruncatedSeries::Exponents> monomials_up_to(std::size_t p, int max_degree);

}  // namespace odf
