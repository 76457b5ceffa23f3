#include "odf/diffpoly.hpp"

#include "odf/error.hpp"

namespace odf {

Var diff_var(const std::string& base, const Theta& theta) { return Var(base, theta.exponents()); }

Theta jet_of(const Var& v, std::size_t p) {
  if (v.jet().size() > p)
    throw Error(ErrorCode::InvalidArgument, "variable " + render(v, v.jet().size()) + " uses more than " +
                                                std::to_string(p) + " derivations");
  std::vector<std::uint32_t> e = v.jet();
  e.resize(p, 0);
  return Theta(std::move(e));
}

MultiPoly free_derive(const MultiPoly& f, std::size_t i) {
  if (i == 0) throw Error(ErrorCode::InvalidArgument, "derivation indices start at 1");
  MultiPoly out;
  for (const auto& v : f.vars()) out += f.partial(v) * MultiPoly::variable(v.derived(i));
  return out;
}

RationalFunction free_derive(const RationalFunction& f, std::size_t i) {
  return f.derived_from(free_derive(f.num(), i), free_derive(f.den(), i));
}

RationalFunction free_derive(const RationalFunction& f, const Theta& theta) {
  RationalFunction out = f;
  for (std::size_t k = 0; k < theta.p(); ++k)
    for (std::uint32_t n = 0; n < theta[k]; ++n) out = free_derive(out, k + 1);
  return out;
}

PolyDerivation::PolyDerivation(VarMap images) : images_(std::move(images)) {}

PolyDerivation PolyDerivation::zero(const std::vector<Var>& universe) {
  VarMap m;
  for (const auto& v : universe) m.emplace(v, RationalFunction());
  return PolyDerivation(std::move(m));
}

std::vector<Var> PolyDerivation::universe() const {
  std::vector<Var> out;
  for (const auto& [v, img] : images_) out.push_back(v);
  return out;
}

const RationalFunction& PolyDerivation::image(const Var& v) const {
  auto it = images_.find(v);
  if (it == images_.end())
    throw Error(ErrorCode::InvalidArgument, "derivation has no image for " + render(v, 1));
  return it->second;
}

RationalFunction PolyDerivation::apply(const RationalFunction& f) const {
  auto vars = f.vars();
  bool polynomial_images = true;
  for (const auto& v : vars) polynomial_images = polynomial_images && image(v).is_polynomial();
  if (polynomial_images) {
    // Stay in the polynomial ring and apply the quotient rule once.
    auto derive_poly = [&](const MultiPoly& p) {
      MultiPoly out;
      for (const auto& v : p.vars()) {
        const RationalFunction& img = image(v);
        out += p.partial(v) * (img.num() * Rational(1 / img.den().constant_term()));
      }
      return out;
    };
    return f.derived_from(derive_poly(f.num()), derive_poly(f.den()));
  }
  RationalFunction out;
  for (const auto& v : vars) {
    const RationalFunction& img = image(v);
    if (!img.is_zero()) out += f.partial(v) * img;
  }
  return out;
}

bool PolyDerivation::is_zero() const {
  for (const auto& [v, img] : images_)
    if (!img.is_zero()) return false;
  return true;
}

namespace {

void require_same_universe(const PolyDerivation& d, const PolyDerivation& e) {
  if (d.universe() != e.universe())
    throw Error(ErrorCode::InvalidArgument, "derivations act on different variable universes");
}

}  // namespace

PolyDerivation lie_bracket(const PolyDerivation& d, const PolyDerivation& e) {
  require_same_universe(d, e);
  VarMap out;
  for (const auto& [v, img] : d.images()) out.emplace(v, d.apply(e.image(v)) - e.apply(img));
  return PolyDerivation(std::move(out));
}

PolyDerivation linear_combination(const RationalFunction& a1, const PolyDerivation& d,
                                  const RationalFunction& a2, const PolyDerivation& e) {
  require_same_universe(d, e);
  VarMap out;
  for (const auto& [v, img] : d.images()) out.emplace(v, a1 * img + a2 * e.image(v));
  return PolyDerivation(std::move(out));
}

RfMatrix jacobian(const std::vector<RationalFunction>& f, const std::vector<Var>& vars) {
  RfMatrix m(f.size(), std::vector<RationalFunction>(vars.size()));
  for (std::size_t r = 0; r < f.size(); ++r)
    for (std::size_t c = 0; c < vars.size(); ++c) m[r][c] = f[r].partial(vars[c]);
  return m;
}

RationalFunction determinant(RfMatrix m) {
  std::size_t n = m.size();
  RationalFunction det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return RationalFunction();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    RationalFunction inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      RationalFunction factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

RfMatrix implicit_delta(const std::vector<RationalFunction>& f, const std::vector<Var>& xs,
                        const std::vector<Var>& ys) {
  if (f.size() != ys.size())
    throw Error(ErrorCode::InvalidArgument, "need as many functions as dependent variables");
  std::size_t n = ys.size();
  RfMatrix a = jacobian(f, ys);
  RfMatrix b = jacobian(f, xs);
  // Gauss-Jordan on [A | -B].
  for (auto& row : b)
    for (auto& entry : row) entry = -entry;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n)
      throw Error(ErrorCode::SingularJacobian, "the Jacobian with respect to the dependent variables is singular");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    RationalFunction inv = a[col][col].inverse();
    for (std::size_t c = col; c < n; ++c) a[col][c] *= inv;
    for (auto& entry : b[col]) entry *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      RationalFunction factor = a[r][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      for (std::size_t c = 0; c < xs.size(); ++c) b[r][c] -= factor * b[col][c];
    }
  }
  return b;
}

}  // namespace odf
