#pragma once

#include <optional>
#include <string>
#include <vector>

#include "odf/multipoly.hpp"
#include "odf/rational.hpp"

namespace odf {

/// Dense univariate polynomial over ℚ, coefficients in ascending degree.
/// The zero polynomial has no coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }
  /// Throws InvalidArgument when p involves more than one variable.
  static UniPoly from_multipoly(const MultiPoly& p);
  MultiPoly to_multipoly(const Var& v) const;

  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const;

  UniPoly derivative() const;
  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  bool operator==(const UniPoly&) const = default;

  /// Euclidean division; throws DivisionByZero for b = 0.
  static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
  UniPoly monic() const;

  std::string render(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd (zero iff both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// p / gcd(p, p'), monic.
UniPoly squarefree_part(const UniPoly& p);
/// The Sturm sequence p, p', -rem(p, p'), ...
std::vector<UniPoly> sturm_sequence(const UniPoly& p);
/// Number of distinct real roots in the half-open interval (a, b].
std::size_t count_roots(const UniPoly& p, const Rational& a, const Rational& b);
/// |x| < bound for every real root.
Rational root_bound(const UniPoly& p);

/// A real root of a squarefree polynomial: either an exact rational or the
/// only root of `poly` in the open interval (lo, hi), whose endpoints are
/// not roots.
struct RealRoot {
  UniPoly poly;
  Rational lo;
  Rational hi;
  std::optional<Rational> exact;

  /// Shrinks (lo, hi) by bisection until hi - lo ≤ width.
  void refine(const Rational& width);
  /// The root itself when it is rational (found via the denominators the
  /// rational root theorem allows); marks the root exact.
  std::optional<Rational> rational_value();
  std::string render() const;
};

/// Isolating intervals for all real roots of p, pairwise disjoint and sorted.
std::vector<RealRoot> isolate_roots(const UniPoly& p);

/// Sign of q - r (-1, 0, 1) for a rational q and a real root r. May refine r.
int compare(const Rational& q, RealRoot& r);
/// Sign of p at the root r, exactly. May refine r.
int sign_at(const UniPoly& p, RealRoot& r);

/// The rational with the least denominator (then the least |numerator|)
/// strictly between two reals; absent bounds mean ±∞.
Rational simplest_between(RealRoot* lo, RealRoot* hi);

enum class SignCondition { Zero, Positive, Negative, NonZero };
std::string_view to_string(SignCondition s);

struct SignConstraint {
  UniPoly poly;
  SignCondition sign;
};

struct SturmDecision {
  bool sat = false;
  /// A rational point satisfying every constraint, when one exists.
  std::optional<Rational> witness;
  /// Otherwise the irrational algebraic point satisfying them.
  std::optional<RealRoot> root;
};

/// Exact decision of a conjunction of one-variable sign conditions. Throws
/// ZeroPolynomialWithStrictSign for `0 > 0` and `0 < 0`.
SturmDecision sturm_decide(const std::vector<SignConstraint>& constraints);

}  // namespace odf
