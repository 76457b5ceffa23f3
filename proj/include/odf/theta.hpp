#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace odf {

/// A derivative operator θ = δ_1^{e_1}···δ_p^{e_p}, stored as its exponent
/// vector. All binary operations require operands of equal length p.
class Theta {
 public:
  Theta() = default;
  explicit Theta(std::vector<std::uint32_t> exponents) : e_(std::move(exponents)) {}
  Theta(std::initializer_list<std::uint32_t> exponents) : e_(exponents) {}

  static Theta identity(std::size_t p) { return Theta(std::vector<std::uint32_t>(p, 0)); }
  /// δ_i as an element of Θ (1-based).
  static Theta generator(std::size_t p, std::size_t i);

  std::size_t p() const noexcept { return e_.size(); }
  const std::vector<std::uint32_t>& exponents() const noexcept { return e_; }
  std::uint32_t operator[](std::size_t k) const { return e_[k]; }
  std::uint32_t order() const noexcept;
  bool is_identity() const noexcept { return order() == 0; }

  bool operator==(const Theta&) const = default;

  std::string render() const;

 private:
  std::vector<std::uint32_t> e_;
};

/// Parses `[e1,...,ep]`.
Theta parse_theta(std::string_view text);
/// Parses a whitespace-separated list of `[..]` elements.
std::vector<Theta> parse_theta_list(std::string_view text);

/// Monoid product: componentwise sum.
Theta theta_mul(const Theta& a, const Theta& b);

/// The total order <: lexicographic on (ord θ, e_1, ..., e_p).
std::strong_ordering theta_cmp(const Theta& a, const Theta& b);

/// Divisibility a ⪯ b: componentwise a_i ≤ b_i.
bool theta_divides(const Theta& a, const Theta& b);

/// ⪯-supremum (componentwise max) and infimum (componentwise min).
Theta theta_join(const Theta& a, const Theta& b);
Theta theta_meet(const Theta& a, const Theta& b);
Theta theta_join(const std::vector<Theta>& elements, std::size_t p);

/// b = δ_i a for the index i returned, or 0 when b is not an immediate
/// successor of a.
std::size_t successor_index(const Theta& a, const Theta& b);

/// Immediate ⪯-predecessors, in increasing < order; empty iff θ = id.
std::vector<Theta> predecessors(const Theta& theta);

/// All θ with ord θ ≤ max_ord in strictly increasing < order.
std::vector<Theta> enumerate_theta(std::size_t p, std::uint32_t max_ord);

struct ThetaLess {
  bool operator()(const Theta& a, const Theta& b) const { return theta_cmp(a, b) < 0; }
};

/// A finite set of pairwise ⪯-incomparable non-identity elements, kept in
/// decreasing < order.
class Antichain {
 public:
  Antichain() = default;
  /// Throws InvalidArgument unless the elements form an antichain without id.
  Antichain(std::vector<Theta> elements, std::size_t p);

  std::size_t p() const noexcept { return p_; }
  const std::vector<Theta>& elements() const noexcept { return elements_; }
  bool empty() const noexcept { return elements_.empty(); }

 private:
  std::vector<Theta> elements_;
  std::size_t p_ = 0;
};

/// The ⪯-minimal elements of the upward closure of the generators.
/// Throws IdentityInGenerators if id is among them.
Antichain dickson_min(const std::vector<Theta>& generators, std::size_t p);

/// The partition Θ = I ⊔ B induced by an antichain P: B is the upward
/// closure of P, I its complement. Both are infinite and represented by the
/// membership predicate.
class ThetaPartition {
 public:
  explicit ThetaPartition(Antichain P) : P_(std::move(P)) {}

  const Antichain& P() const noexcept { return P_; }
  bool in_B(const Theta& theta) const;
  bool in_I(const Theta& theta) const { return !in_B(theta); }
  bool in_P(const Theta& theta) const;
  /// <-least β ∈ P with β ⪯ θ (θ must lie in B).
  Theta least_generator_below(const Theta& theta) const;

 private:
  Antichain P_;
};

}  // namespace odf
