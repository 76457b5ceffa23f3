#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "odf/diffpoly.hpp"
#include "odf/error.hpp"
#include "odf/rational_function.hpp"

namespace odf {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<std::vector<Rational>>;

/// Rank of a list of row vectors by exact Gaussian elimination.
std::size_t matrix_rank(QMatrix rows);
std::size_t linear_rank(const std::vector<QVector>& vectors);

/// Vectors in ℚ^d labelled 0..n-1; rank(A|B) = dim span(A∪B) - dim span(B).
class LinearMatroid {
 public:
  explicit LinearMatroid(std::vector<QVector> ground);

  std::size_t size() const noexcept { return ground_.size(); }
  const QVector& element(std::size_t i) const;
  /// Throws UnknownElement for labels outside the ground set.
  std::size_t rank(const std::vector<std::size_t>& A, const std::vector<std::size_t>& B = {}) const;

 private:
  std::vector<QVector> ground_;
};

/// Rank of a list of rational functions: the rank of their Jacobian over
/// the fraction field (the transcendence degree of the generated field).
struct JacobianRank {
  enum class Mode { Sampled, Exact };

  Mode mode = Mode::Sampled;
  std::uint64_t seed = 1;
  int attempts = 5;

  std::size_t operator()(const std::vector<RationalFunction>& elements) const;
};

/// Rational functions labelled 0..n-1 with the Jacobian rank.
class AlgebraicMatroid {
 public:
  explicit AlgebraicMatroid(std::vector<RationalFunction> ground, JacobianRank rank = {});

  std::size_t size() const noexcept { return ground_.size(); }
  const RationalFunction& element(std::size_t i) const;
  std::size_t rank(const std::vector<std::size_t>& A, const std::vector<std::size_t>& B = {}) const;

 private:
  std::vector<RationalFunction> ground_;
  JacobianRank jac_;
};

/// A span-rank function on finite lists of elements together with a map δ
/// of the element universe into itself.
template <class Element>
struct EndoSystem {
  std::function<std::size_t(const std::vector<Element>&)> span_rank;
  std::function<Element(const Element&)> delta;

  std::size_t rank(const std::vector<Element>& A, const std::vector<Element>& B) const {
    std::vector<Element> both = A;
    both.insert(both.end(), B.begin(), B.end());
    return span_rank(both) - span_rank(B);
  }

  std::vector<Element> apply(const std::vector<Element>& A) const {
    std::vector<Element> out;
    out.reserve(A.size());
    for (const auto& a : A) out.push_back(delta(a));
    return out;
  }

  /// A, δA, ..., δ^n A (empty for n < 0).
  std::vector<Element> jet(const std::vector<Element>& A, int n) const {
    std::vector<Element> out;
    std::vector<Element> layer = A;
    for (int k = 0; k <= n; ++k) {
      out.insert(out.end(), layer.begin(), layer.end());
      if (k < n) layer = apply(layer);
    }
    return out;
  }
};

using LinearEndoSystem = EndoSystem<QVector>;
using AlgebraicEndoSystem = EndoSystem<RationalFunction>;

/// δ(v) = M v.
LinearEndoSystem linear_endo_system(QMatrix M);
/// δ(f) = d(f) on the ambient rational function field.
AlgebraicEndoSystem algebraic_endo_system(PolyDerivation d, JacobianRank rank = {});

template <class Element>
struct QuasiEndoReport {
  bool ok = true;
  std::vector<Element> A;
  std::vector<Element> B;
};

/// Exhaustive check of rk(δA | A B δB) ≤ rk(A|B) over all pairs of subsets
/// of the universe.
template <class Element>
QuasiEndoReport<Element> check_quasi_endomorphism(const EndoSystem<Element>& S,
                                                  const std::vector<Element>& universe) {
  std::size_t n = universe.size();
  if (n > 12) throw Error(ErrorCode::InvalidArgument, "universe too large for an exhaustive check");
  std::vector<Element> images = S.apply(universe);
  // Element k < n is u_k, element n + k is δu_k; memoize ranks by bit mask.
  std::map<std::uint32_t, std::size_t> memo;
  auto rank_of = [&](std::uint32_t mask) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<Element> set;
    for (std::size_t k = 0; k < 2 * n; ++k)
      if (mask & (1u << k)) set.push_back(k < n ? universe[k] : images[k - n]);
    return memo[mask] = S.span_rank(set);
  };
  std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t a = 0; a <= full; ++a) {
    for (std::uint32_t b = 0; b <= full; ++b) {
      std::size_t lhs = rank_of((a << n) | a | b | (b << n)) - rank_of(a | b | (b << n));
      std::size_t rhs = rank_of(a | b) - rank_of(b);
      if (lhs > rhs) {
        QuasiEndoReport<Element> r;
        r.ok = false;
        for (std::size_t k = 0; k < n; ++k) {
          if (a & (1u << k)) r.A.push_back(universe[k]);
          if (b & (1u << k)) r.B.push_back(universe[k]);
        }
        return r;
      }
    }
  }
  return {};
}

struct DeltaRankResult {
  std::size_t value = 0;
  bool stabilized = false;
  /// d_k = rk(δ^k A | J^{k-1}(A) J^{k_max}(B)) for k = 0, 1, ...
  std::vector<std::size_t> increments;
};

/// Follows the increments until the growth increments d_1, d_2, ... have
/// stayed constant for `window` consecutive steps (window + 1 equal values),
/// or k_max is reached. B is replaced by its jet to depth k_max. Throws
/// MonotonicityViolation if an increment exceeds its predecessor.
template <class Element>
DeltaRankResult delta_rank(const EndoSystem<Element>& S, const std::vector<Element>& A,
                           const std::vector<Element>& B, int k_max, int window) {
  if (window < 1 || k_max < window)
    throw Error(ErrorCode::InvalidArgument, "need k_max >= window >= 1");
  DeltaRankResult out;
  std::vector<Element> base = S.jet(B, k_max);
  std::vector<Element> layer = A;
  int run = 0;
  for (int k = 0; k <= k_max; ++k) {
    std::size_t d = S.rank(layer, base);
    if (!out.increments.empty() && d > out.increments.back())
      throw Error(ErrorCode::MonotonicityViolation,
                  "increment " + std::to_string(k) + " grew from " + std::to_string(out.increments.back()) +
                      " to " + std::to_string(d));
    run = (k >= 2 && d == out.increments.back()) ? run + 1 : 0;
    out.increments.push_back(d);
    out.value = d;
    if (run >= window) {
      out.stabilized = true;
      break;
    }
    base.insert(base.end(), layer.begin(), layer.end());
    layer = S.apply(layer);
  }
  return out;
}

struct ClosureResult {
  bool in_closure = false;
  /// The n with δ^n a ∈ cl(J^{n-1}(a) J^{k_max}(B)), when found.
  std::optional<int> n;
};

/// One-sided test of a ∈ cl^δ(B): false means "not detected up to k_max".
template <class Element>
ClosureResult in_delta_closure(const EndoSystem<Element>& S, const Element& a, const std::vector<Element>& B,
                               int k_max) {
  std::vector<Element> base = S.jet(B, k_max);
  Element current = a;
  for (int n = 0; n <= k_max; ++n) {
    if (S.rank({current}, base) == 0) return {true, n};
    base.push_back(current);
    current = S.delta(current);
  }
  return {};
}

template <class Element>
struct ExchangeReport {
  bool ok = true;
  Element a{};
  Element b{};
  std::vector<Element> B;
};

/// Checks a ∈ cl(Bb) ∖ cl(B) ⇒ b ∈ cl(Ba) for all a, b, B from the universe.
template <class Element>
ExchangeReport<Element> check_exchange(
    const std::function<bool(const Element&, const std::vector<Element>&)>& closure,
    const std::vector<Element>& universe) {
  std::size_t n = universe.size();
  if (n > 8) throw Error(ErrorCode::InvalidArgument, "universe too large for an exhaustive check");
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Element> B;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) B.push_back(universe[k]);
    for (const auto& a : universe) {
      if (closure(a, B)) continue;
      for (const auto& b : universe) {
        std::vector<Element> Bb = B;
        Bb.push_back(b);
        if (!closure(a, Bb)) continue;
        std::vector<Element> Ba = B;
        Ba.push_back(a);
        if (!closure(b, Ba)) return {false, a, b, B};
      }
    }
  }
  return {};
}

/// Closure predicate of an EndoSystem via in_delta_closure.
template <class Element>
std::function<bool(const Element&, const std::vector<Element>&)> delta_closure(const EndoSystem<Element>& S,
                                                                              int k_max) {
  return [S, k_max](const Element& a, const std::vector<Element>& B) {
    return in_delta_closure(S, a, B, k_max).in_closure;
  };
}

struct IndependenceReport {
  bool independent = true;
  /// Order bound of the first deficient J = {θ : ord θ ≤ d}.
  std::optional<std::uint32_t> witness_order;
  std::size_t rank = 0;
  std::size_t size = 0;
};

/// Checks rk(a^J | B^Θ) = |J| for J = {θ : ord θ ≤ d}, d = 0..ord_max, with
/// B^Θ truncated at ord_max. Every deficient finite J lies inside one of
/// these, so this finds a violation whenever one exists up to the bound.
/// Throws NonCommutingDerivations unless δ_i δ_j z = δ_j δ_i z on every
/// ambient variable of the derivations.
IndependenceReport multi_delta_independent(const std::vector<PolyDerivation>& derivations,
                                           const RationalFunction& a, const std::vector<RationalFunction>& B,
                                           std::uint32_t ord_max, JacobianRank rank = {});

/// Checks that a rank function on subsets of {0..n-1} (bit masks) is
/// normalized, bounded by cardinality, monotone and submodular.
bool satisfies_rank_axioms(const std::function<std::size_t(std::uint32_t)>& rank, std::size_t n);

}  // namespace odf
