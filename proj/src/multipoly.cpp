#include "odf/multipoly.hpp"

#include <algorithm>
#include <cassert>

#include "odf/error.hpp"

namespace odf {

namespace {

using Term = MultiPoly::Term;
using Exponents = MultiPoly::Exponents;

std::uint32_t degree_of(const Exponents& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool term_greater(const Term& a, const Term& b) { return grlex_compare(a.exp, b.exp) > 0; }

// Merges two descending term lists: a + sign * b.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : grlex_compare(a[i].exp, b[j].exp);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coef = -out.back().coef;
    } else {
      Rational s = sign < 0 ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
      if (s != 0) out.push_back(Term{a[i].exp, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

void combine_sorted(std::vector<Term>& terms) {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && out.back().coef == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef == 0) out.pop_back();
  terms = std::move(out);
}

}  // namespace

int grlex_compare(const Exponents& a, const Exponents& b) {
  auto da = degree_of(a);
  auto db = degree_of(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) terms_.push_back(Term{{}, c});
}

MultiPoly MultiPoly::variable(const Var& v) {
  MultiPoly p;
  p.vars_ = {v};
  p.terms_.push_back(Term{{1}, Rational(1)});
  return p;
}

MultiPoly MultiPoly::monomial(const Rational& coef,
                              const std::vector<std::pair<Var, std::uint32_t>>& powers) {
  std::vector<Var> vars;
  Exponents exp;
  for (const auto& [v, e] : powers) {
    vars.push_back(v);
    exp.push_back(e);
  }
  return from_terms(std::move(vars), {Term{std::move(exp), coef}});
}

MultiPoly MultiPoly::from_terms(std::vector<Var> vars, std::vector<Term> terms) {
  // Sort variables by rank and merge duplicates.
  std::vector<std::size_t> order(vars.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rank_compare(vars[a], vars[b]) > 0;
  });
  std::vector<Var> sorted;
  std::vector<std::size_t> target(vars.size());
  for (auto idx : order) {
    if (sorted.empty() || !(sorted.back() == vars[idx])) sorted.push_back(vars[idx]);
    target[idx] = sorted.size() - 1;
  }
  MultiPoly p;
  p.vars_ = std::move(sorted);
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (t.coef == 0) continue;
    Exponents e(p.vars_.size(), 0);
    for (std::size_t i = 0; i < t.exp.size(); ++i) e[target[i]] += t.exp[i];
    p.terms_.push_back(Term{std::move(e), std::move(t.coef)});
  }
  std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
  combine_sorted(p.terms_);
  p.canonicalize();
  return p;
}

void MultiPoly::canonicalize() {
  // Drop variables that no longer occur.
  std::vector<bool> used(vars_.size(), false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (t.exp[i] != 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
  std::vector<Var> kept;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) kept.push_back(vars_[i]);
  for (auto& t : terms_) {
    Exponents e;
    e.reserve(kept.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (used[i]) e.push_back(t.exp[i]);
    t.exp = std::move(e);
  }
  vars_ = std::move(kept);
  // Removing unused coordinates preserves the relative grlex order.
}

std::vector<Var> MultiPoly::merge_vars(const std::vector<Var>& a, const std::vector<Var>& b) {
  std::vector<Var> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (i == a.size()) {
      out.push_back(b[j++]);
    } else if (j == b.size()) {
      out.push_back(a[i++]);
    } else {
      auto c = rank_compare(a[i], b[j]);
      if (c > 0) {
        out.push_back(a[i++]);
      } else if (c < 0) {
        out.push_back(b[j++]);
      } else {
        out.push_back(a[i++]);
        ++j;
      }
    }
  }
  return out;
}

MultiPoly MultiPoly::aligned(const std::vector<Var>& target) const {
  if (vars_ == target) return *this;
  std::vector<std::size_t> pos(vars_.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    while (!(target[j] == vars_[i])) ++j;
    pos[i] = j;
  }
  MultiPoly out;
  out.vars_ = target;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(target.size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i) e[pos[i]] = t.exp[i];
    out.terms_.push_back(Term{std::move(e), t.coef});
  }
  // Inserting zero coordinates preserves the grlex order.
  return out;
}

Rational MultiPoly::constant_term() const {
  if (!terms_.empty() && degree_of(terms_.back().exp) == 0) return terms_.back().coef;
  return Rational(0);
}

Rational MultiPoly::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.front().coef;
}

std::uint32_t MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : degree_of(terms_.front().exp);
}

std::optional<std::size_t> MultiPoly::index_of(const Var& v) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == v) return i;
  return std::nullopt;
}

bool MultiPoly::contains(const Var& v) const { return index_of(v).has_value(); }

std::uint32_t MultiPoly::degree(const Var& v) const {
  auto idx = index_of(v);
  if (!idx) return 0;
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp[*idx]);
  return d;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (other.is_zero()) return *this;
  if (vars_ == other.vars_) {
    terms_ = merge_terms(terms_, other.terms_, 1);
  } else {
    auto target = merge_vars(vars_, other.vars_);
    terms_ = merge_terms(aligned(target).terms_, other.aligned(target).terms_, 1);
    vars_ = std::move(target);
  }
  canonicalize();
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  if (other.is_zero()) return *this;
  if (vars_ == other.vars_) {
    terms_ = merge_terms(terms_, other.terms_, -1);
  } else {
    auto target = merge_vars(vars_, other.vars_);
    terms_ = merge_terms(aligned(target).terms_, other.aligned(target).terms_, -1);
    vars_ = std::move(target);
  }
  canonicalize();
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  if (b.is_constant()) return a * b.terms_.front().coef;
  if (a.is_constant()) return b * a.terms_.front().coef;
  const bool same = a.vars_ == b.vars_;
  auto target = same ? a.vars_ : MultiPoly::merge_vars(a.vars_, b.vars_);
  MultiPoly a_aligned;
  MultiPoly b_aligned;
  const MultiPoly* ap = &a;
  const MultiPoly* bb = &b;
  if (!same) {
    a_aligned = a.aligned(target);
    b_aligned = b.aligned(target);
    ap = &a_aligned;
    bb = &b_aligned;
  }
  MultiPoly out;
  out.vars_ = target;
  if (ap->terms_.size() == 1 || bb->terms_.size() == 1) {
    // Monomial multiplication preserves the order of the other factor.
    const auto& mono = ap->terms_.size() == 1 ? ap->terms_.front() : bb->terms_.front();
    const auto& other = ap->terms_.size() == 1 ? bb->terms_ : ap->terms_;
    out.terms_.reserve(other.size());
    for (const auto& t : other) {
      Exponents e = t.exp;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += mono.exp[k];
      out.terms_.push_back(Term{std::move(e), t.coef * mono.coef});
    }
    return out;
  }
  out.terms_.reserve(ap->terms_.size() * bb->terms_.size());
  for (const auto& s : ap->terms_) {
    for (const auto& t : bb->terms_) {
      Exponents e = s.exp;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += t.exp[k];
      out.terms_.push_back(Term{std::move(e), s.coef * t.coef});
    }
  }
  std::sort(out.terms_.begin(), out.terms_.end(), term_greater);
  combine_sorted(out.terms_);
  out.canonicalize();
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  *this = *this * other;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    vars_.clear();
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

MultiPoly MultiPoly::pow(std::uint32_t n) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::partial(const Var& v) const {
  auto idx = index_of(v);
  if (!idx) return MultiPoly();
  MultiPoly out;
  out.vars_ = vars_;
  for (const auto& t : terms_) {
    if (t.exp[*idx] == 0) continue;
    Term d{t.exp, t.coef * t.exp[*idx]};
    --d.exp[*idx];
    out.terms_.push_back(std::move(d));
  }
  // Lowering one exponent can reorder terms of different shape.
  std::sort(out.terms_.begin(), out.terms_.end(), term_greater);
  out.canonicalize();
  return out;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const Var& v) const {
  auto idx = index_of(v);
  if (!idx) return {*this};
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  std::vector<Var> rest;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (i != *idx) rest.push_back(vars_[i]);
  for (const auto& t : terms_) {
    Exponents e;
    e.reserve(rest.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (i != *idx) e.push_back(t.exp[i]);
    buckets[t.exp[*idx]].push_back(Term{std::move(e), t.coef});
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    MultiPoly c;
    c.vars_ = rest;
    c.terms_ = std::move(b);
    // Projection of a descending list stays descending within one bucket.
    std::sort(c.terms_.begin(), c.terms_.end(), term_greater);
    c.canonicalize();
    out.push_back(std::move(c));
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(const Var& v, const std::vector<MultiPoly>& coeffs) {
  MultiPoly out;
  MultiPoly x = variable(v);
  MultiPoly xk(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) out += coeffs[k] * xk;
    if (k + 1 < coeffs.size()) xk *= x;
  }
  return out;
}

std::string MultiPoly::render(std::size_t derivations) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += odf::render(vars_[i], derivations);
      if (t.exp[i] > 1) mono += "^" + std::to_string(t.exp[i]);
    }
    Rational mag = abs(t.coef);
    std::string piece;
    if (mono.empty()) {
      piece = to_string(mag);
    } else if (mag == 1) {
      piece = mono;
    } else {
      piece = to_string(mag) + "*" + mono;
    }
    if (first) {
      out = (t.coef < 0 ? "-" : "") + piece;
    } else {
      out += (t.coef < 0 ? " - " : " + ") + piece;
    }
    first = false;
  }
  return out;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.is_zero()) return MultiPoly();
  if (b.is_constant()) return a * Rational(1 / b.leading_coefficient());
  for (const auto& v : b.vars())
    if (!a.contains(v)) return std::nullopt;
  if (b.total_degree() > a.total_degree()) return std::nullopt;
  const auto& vars = a.vars();
  // Align b onto a's variable list.
  std::vector<std::size_t> pos(b.vars().size());
  {
    std::size_t j = 0;
    for (std::size_t i = 0; i < b.vars().size(); ++i) {
      while (!(vars[j] == b.vars()[i])) ++j;
      pos[i] = j;
    }
  }
  std::vector<Term> divisor;
  divisor.reserve(b.terms().size());
  for (const auto& t : b.terms()) {
    Exponents e(vars.size(), 0);
    for (std::size_t i = 0; i < pos.size(); ++i) e[pos[i]] = t.exp[i];
    divisor.push_back(Term{std::move(e), t.coef});
  }
  const Term& lead = divisor.front();
  Rational lead_inv = 1 / lead.coef;
  std::vector<Term> rem = a.terms();
  std::vector<Term> quot;
  while (!rem.empty()) {
    const Term& r = rem.front();
    Exponents shift(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (r.exp[k] < lead.exp[k]) return std::nullopt;
      shift[k] = r.exp[k] - lead.exp[k];
    }
    Rational c = r.coef * lead_inv;
    std::vector<Term> scaled;
    scaled.reserve(divisor.size());
    for (const auto& d : divisor) {
      Exponents e = d.exp;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += shift[k];
      scaled.push_back(Term{std::move(e), d.coef * c});
    }
    quot.push_back(Term{std::move(shift), std::move(c)});
    rem = merge_terms(rem, scaled, -1);
  }
  return MultiPoly::from_terms(vars, std::move(quot));
}

Rational numeric_content(const MultiPoly& p) {
  if (p.is_zero()) return Rational(1);
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

namespace {

MultiPoly monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading_coefficient());
}

MultiPoly primitive_numeric(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Rational c = numeric_content(p);
  if (p.leading_coefficient() < 0) c = -c;
  return p * Rational(1 / c);
}

MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b);

MultiPoly content_in(const MultiPoly& p, const Var& v) {
  MultiPoly g;
  for (const auto& c : p.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? primitive_numeric(c) : gcd_impl(g, c);
    if (g.is_constant()) return MultiPoly(1);
  }
  return g;
}

MultiPoly monomial_gcd(const MultiPoly& mono, const MultiPoly& other) {
  const auto& mv = mono.vars();
  std::vector<std::pair<Var, std::uint32_t>> powers;
  const auto& me = mono.terms().front().exp;
  for (std::size_t i = 0; i < mv.size(); ++i) {
    auto idx = other.index_of(mv[i]);
    if (!idx) continue;
    std::uint32_t m = me[i];
    for (const auto& t : other.terms()) m = std::min(m, t.exp[*idx]);
    if (m > 0) powers.emplace_back(mv[i], m);
  }
  return MultiPoly::monomial(Rational(1), powers);
}

// Pseudo-remainder of a by b in ℚ[others][v].
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, const Var& v) {
  auto bc = b.coefficients_in(v);
  std::size_t db = bc.size() - 1;
  const MultiPoly& lb = bc.back();
  MultiPoly r = a;
  MultiPoly x = MultiPoly::variable(v);
  while (!r.is_zero()) {
    std::size_t dr = r.degree(v);
    if (dr < db) break;
    auto rc = r.coefficients_in(v);
    MultiPoly shift = rc.back() * x.pow(static_cast<std::uint32_t>(dr - db));
    r = r * lb - shift * b;
    r = primitive_numeric(r);
  }
  return r;
}

MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  if (a.is_monomial()) return monomial_gcd(a, b);
  if (b.is_monomial()) return monomial_gcd(b, a);
  if (a == b) return monic(a);
  // Variables present in only one operand can only enter through content.
  for (const auto& v : a.vars())
    if (!b.contains(v)) return gcd_impl(content_in(a, v), b);
  for (const auto& v : b.vars())
    if (!a.contains(v)) return gcd_impl(a, content_in(b, v));
  // Trial division catches the common case where one divides the other.
  if (a.total_degree() >= b.total_degree()) {
    if (divide_exact(a, b)) return monic(b);
  } else if (divide_exact(b, a)) {
    return monic(a);
  }
  // Main variable: smallest combined degree.
  const Var* main = &a.vars().front();
  std::uint32_t best = a.degree(*main) + b.degree(*main);
  for (const auto& v : a.vars()) {
    std::uint32_t d = a.degree(v) + b.degree(v);
    if (d < best) {
      best = d;
      main = &v;
    }
  }
  Var v = *main;
  MultiPoly ca = content_in(a, v);
  MultiPoly cb = content_in(b, v);
  MultiPoly c = gcd_impl(ca, cb);
  MultiPoly pa = primitive_numeric(*divide_exact(a, ca));
  MultiPoly pb = primitive_numeric(*divide_exact(b, cb));
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree(v) > 0) {
    MultiPoly r = pseudo_remainder(pa, pb, v);
    pa = std::move(pb);
    if (r.is_zero()) {
      pb = MultiPoly();
    } else {
      MultiPoly cr = content_in(r, v);
      pb = primitive_numeric(*divide_exact(r, cr));
    }
  }
  MultiPoly g = pb.is_zero() ? pa : MultiPoly(1);
  if (!g.is_constant()) {
    MultiPoly cg = content_in(g, v);
    g = *divide_exact(g, cg);
  }
  return monic(c * g);
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) { return gcd_impl(a, b); }

}  // namespace odf
