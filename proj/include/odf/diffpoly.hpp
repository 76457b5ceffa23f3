#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "odf/rational_function.hpp"
#include "odf/theta.hpp"

namespace odf {

/// y_j^θ as a polynomial variable; `y` plus the jet of θ.
Var diff_var(const std::string& base, const Theta& theta);
/// The jet of a variable padded (or checked) to length p.
Theta jet_of(const Var& v, std::size_t p);

/// The free derivation δ_i: the Leibniz extension of y^θ ↦ y^{δ_i θ}.
/// Distinct indices commute because the jets simply add up.
MultiPoly free_derive(const MultiPoly& f, std::size_t i);
RationalFunction free_derive(const RationalFunction& f, std::size_t i);
/// θ applied through the free action, one generator at a time.
RationalFunction free_derive(const RationalFunction& f, const Theta& theta);

/// f^δ = Σ_k ∂f/∂y_k · y_k^δ for the derivation with index i. Scalars are
/// rational, hence constants, so there is no f^{[δ]} part.
inline RationalFunction f_delta(const RationalFunction& f, std::size_t i) { return free_derive(f, i); }

using VarMap = std::map<Var, RationalFunction, VarRankGreater>;

/// A derivation of ℚ(z_1..z_n) given by the images of the z_k.
class PolyDerivation {
 public:
  PolyDerivation() = default;
  explicit PolyDerivation(VarMap images);
  static PolyDerivation zero(const std::vector<Var>& universe);

  const VarMap& images() const noexcept { return images_; }
  std::vector<Var> universe() const;
  /// Throws InvalidArgument for variables outside the universe.
  const RationalFunction& image(const Var& v) const;

  /// Chain rule: Σ_k ∂f/∂z_k · δ(z_k).
  RationalFunction apply(const RationalFunction& f) const;

  bool is_zero() const;
  bool operator==(const PolyDerivation&) const = default;

 private:
  VarMap images_;
};

/// [d, e](z) = d(e(z)) - e(d(z)). Both must share a universe.
PolyDerivation lie_bracket(const PolyDerivation& d, const PolyDerivation& e);
PolyDerivation linear_combination(const RationalFunction& a1, const PolyDerivation& d,
                                  const RationalFunction& a2, const PolyDerivation& e);

using RfMatrix = std::vector<std::vector<RationalFunction>>;

/// rows = functions, columns = variables.
RfMatrix jacobian(const std::vector<RationalFunction>& f, const std::vector<Var>& vars);
RationalFunction determinant(RfMatrix m);

/// For f(x̄, ȳ) = 0 with |f| = |ȳ|, the derivative of the implicit function
/// ȳ = g(x̄): J_g = -(∂f/∂ȳ)^{-1} (∂f/∂x̄), valid where det(∂f/∂ȳ) ≠ 0.
/// Throws SingularJacobian when that determinant is identically zero.
RfMatrix implicit_delta(const std::vector<RationalFunction>& f, const std::vector<Var>& xs,
                        const std::vector<Var>& ys);

}  // namespace odf
