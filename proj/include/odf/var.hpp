#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace odf {

/// A polynomial indeterminate. Plain variables (x, s, X0, t1) have an empty
/// jet; differential variables y^θ carry the exponent vector of θ with
/// trailing zeros stripped, so y^id and y coincide and the vector does not
/// depend on the number of derivations in play.
class Var {
 public:
  Var() = default;
  explicit Var(std::string name, std::vector<std::uint32_t> jet = {});

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::uint32_t>& jet() const noexcept { return jet_; }

  /// Total order of the jet index.
  std::uint32_t order() const noexcept;

  /// Exponent of δ_i (1-based) in the jet index.
  std::uint32_t jet_component(std::size_t i) const noexcept;

  /// y^θ ↦ y^{δ_i θ}.
  Var derived(std::size_t i) const;

  bool operator==(const Var& other) const = default;

 private:
  std::string name_;
  std::vector<std::uint32_t> jet_;
};

/// Ranking of variables. Higher jets rank above lower ones (by total order,
/// then lexicographically on the exponents); among equal jets, names rank in
/// natural order, so x ranks above y and y2 above y10. Polynomials list
/// their variables from highest to lowest rank.
std::strong_ordering rank_compare(const Var& a, const Var& b);

/// Natural string comparison: runs of digits compare numerically.
std::strong_ordering natural_compare(const std::string& a, const std::string& b);

/// Renders a variable. With `derivations == 1` jets up to order 3 use primes
/// (x, x', x'', x'''), higher ones `x[4]`; otherwise `y1[2,0]` padded to the
/// given number of derivations.
std::string render(const Var& v, std::size_t derivations);

struct VarRankGreater {
  bool operator()(const Var& a, const Var& b) const { return rank_compare(a, b) > 0; }
};

}  // namespace odf
