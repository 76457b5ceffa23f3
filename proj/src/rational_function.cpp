#include "odf/rational_function.hpp"

#include <algorithm>

#include "odf/error.hpp"

namespace odf {

namespace {

MultiPoly exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("inexact division in rational function arithmetic");
  return std::move(*q);
}

}  // namespace

RationalFunction::RationalFunction(MultiPoly num) : num_(std::move(num)) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = MultiPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact(num_, g);
      den_ = exact(den_, g);
    }
  }
  Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational RationalFunction::constant_value() const {
  return num_.constant_term() / den_.constant_term();
}

std::vector<Var> RationalFunction::vars() const {
  std::vector<Var> out = num_.vars();
  for (const auto& v : den_.vars())
    if (!num_.contains(v)) out.push_back(v);
  std::sort(out.begin(), out.end(), VarRankGreater{});
  return out;
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_, Reduced{}); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    MultiPoly n = a.num_ + b.num_;
    if (a.den_.is_constant() || n.is_zero()) return RationalFunction(std::move(n), a.den_);
    return RationalFunction(std::move(n), a.den_);
  }
  if (a.den_.is_constant() && b.den_.is_constant())
    return RationalFunction(a.num_ + b.num_, MultiPoly(1), RationalFunction::Reduced{});
  // Henrici: with g = gcd(da, db) only gcd(num, g) can cancel.
  MultiPoly g = gcd(a.den_, b.den_);
  MultiPoly da = g.is_constant() ? a.den_ : exact(a.den_, g);
  MultiPoly db = g.is_constant() ? b.den_ : exact(b.den_, g);
  MultiPoly n = a.num_ * db + b.num_ * da;
  MultiPoly d = da * b.den_;
  if (n.is_zero()) return RationalFunction();
  if (!g.is_constant()) {
    MultiPoly h = gcd(n, g);
    if (!h.is_constant()) {
      n = exact(n, h);
      d = exact(d, h);
    }
  }
  Rational inv = 1 / d.leading_coefficient();
  return RationalFunction(n * inv, d * inv, RationalFunction::Reduced{});
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  if (a.is_polynomial() && b.is_polynomial())
    return RationalFunction(a.num_ * b.num_, MultiPoly(1), RationalFunction::Reduced{});
  MultiPoly g1 = gcd(a.num_, b.den_);
  MultiPoly g2 = gcd(b.num_, a.den_);
  MultiPoly an = g1.is_constant() ? a.num_ : exact(a.num_, g1);
  MultiPoly bd = g1.is_constant() ? b.den_ : exact(b.den_, g1);
  MultiPoly bn = g2.is_constant() ? b.num_ : exact(b.num_, g2);
  MultiPoly ad = g2.is_constant() ? a.den_ : exact(a.den_, g2);
  MultiPoly n = an * bn;
  MultiPoly d = ad * bd;
  Rational inv = 1 / d.leading_coefficient();
  return RationalFunction(n * inv, d * inv, RationalFunction::Reduced{});
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of the zero rational function");
  Rational inv = 1 / num_.leading_coefficient();
  return RationalFunction(den_ * inv, num_ * inv, Reduced{});
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction RationalFunction::pow(std::uint32_t n) const {
  // Powers of coprime parts stay coprime.
  MultiPoly d = den_.pow(n);
  Rational inv = 1 / d.leading_coefficient();
  return RationalFunction(num_.pow(n) * inv, d * inv, Reduced{});
}

RationalFunction RationalFunction::partial(const Var& v) const {
  return derived_from(num_.partial(v), den_.partial(v));
}

RationalFunction RationalFunction::derived_from(MultiPoly dn, const MultiPoly& dd) const {
  if (den_.is_constant()) return RationalFunction(std::move(dn), den_, Reduced{});
  if (dd.is_zero()) return RationalFunction(std::move(dn), den_);
  // (n/d)' = (n' d - n d') / d^2; cancel g = gcd(d, d') first.
  MultiPoly g = gcd(den_, dd);
  MultiPoly d_red = g.is_constant() ? den_ : exact(den_, g);
  MultiPoly dd_red = g.is_constant() ? dd : exact(dd, g);
  MultiPoly n = dn * d_red - num_ * dd_red;
  return RationalFunction(std::move(n), den_ * d_red);
}

namespace {

struct Image {
  std::vector<MultiPoly> num_pows;
  std::vector<MultiPoly> den_pows;
};

// p(a_v / b_v) as P / Π b_v^{deg_v p}, returning P. `images` must cover every
// variable of p and carry powers up to deg_v p.
MultiPoly homogenized(const MultiPoly& p, const std::map<Var, Image, VarRankGreater>& images) {
  const auto& vars = p.vars();
  std::vector<const Image*> img;
  std::vector<std::uint32_t> top;
  for (const auto& v : vars) {
    img.push_back(&images.at(v));
    top.push_back(p.degree(v));
  }
  MultiPoly out;
  for (const auto& t : p.terms()) {
    MultiPoly term(t.coef);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const auto& im = *img[k];
      if (t.exp[k] > 0) term *= im.num_pows[t.exp[k]];
      if (top[k] > t.exp[k] && im.den_pows.size() > 1) term *= im.den_pows[top[k] - t.exp[k]];
    }
    out += term;
  }
  return out;
}

}  // namespace

RationalFunction RationalFunction::substitute(
    const std::map<Var, RationalFunction, VarRankGreater>& images) const {
  // Clear all image denominators at once so that only one gcd is needed.
  std::map<Var, Image, VarRankGreater> table;
  MultiPoly num_scale(1), den_scale(1);
  for (const auto& v : vars()) {
    std::uint32_t dn = num_.degree(v), dd = den_.degree(v);
    std::uint32_t top = std::max(dn, dd);
    auto it = images.find(v);
    MultiPoly a = it == images.end() ? MultiPoly::variable(v) : it->second.num();
    MultiPoly b = it == images.end() ? MultiPoly(1) : it->second.den();
    Image im;
    im.num_pows.push_back(MultiPoly(1));
    for (std::uint32_t k = 1; k <= top; ++k) im.num_pows.push_back(im.num_pows.back() * a);
    im.den_pows.push_back(MultiPoly(1));
    if (!b.is_constant() || b.leading_coefficient() != 1)
      for (std::uint32_t k = 1; k <= top; ++k) im.den_pows.push_back(im.den_pows.back() * b);
    // num / den = (N / b^dn) / (D / b^dd) = N b^dd / (D b^dn).
    if (im.den_pows.size() > 1) {
      std::uint32_t common = std::min(dn, dd);
      if (dd > common) num_scale *= im.den_pows[dd - common];
      if (dn > common) den_scale *= im.den_pows[dn - common];
    }
    table.emplace(v, std::move(im));
  }
  MultiPoly d = homogenized(den_, table);
  if (d.is_zero()) throw Error(ErrorCode::DenominatorVanishes, "substitution makes the denominator vanish");
  return RationalFunction(homogenized(num_, table) * num_scale, d * den_scale);
}

std::string RationalFunction::render(std::size_t derivations) const {
  std::string n = num_.render(derivations);
  if (den_.is_constant() && den_.leading_coefficient() == 1) return n;
  std::string d = den_.render(derivations);
  if (num_.terms().size() > 1) n = "(" + n + ")";
  if (den_.terms().size() > 1 || (den_.is_monomial() && !den_.is_constant() &&
                                   (den_.leading_coefficient() != 1 ||
                                    d.find('*') != std::string::npos)))
    d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace odf
