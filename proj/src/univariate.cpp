#include "odf/univariate.hpp"

#include <algorithm>
#include <sstream>

#include "odf/error.hpp"

namespace odf {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::from_multipoly(const MultiPoly& p) {
  if (p.vars().size() > 1)
    throw Error(ErrorCode::InvalidArgument, "expected a polynomial in one variable, got " + p.render());
  if (p.vars().empty()) return constant(p.constant_term());
  std::vector<Rational> c(p.degree(p.vars().front()) + 1);
  for (const auto& t : p.terms()) c[t.exp[0]] += t.coef;
  return UniPoly(std::move(c));
}

MultiPoly UniPoly::to_multipoly(const Var& v) const {
  MultiPoly out;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) out += MultiPoly::monomial(c_[k], {{v, static_cast<std::uint32_t>(k)}});
  return out;
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int UniPoly::sign_at(const Rational& x) const { return sgn((*this)(x)); }

UniPoly UniPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<unsigned long>(k));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(c));
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0);
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational f = rem[k + b.degree()] / b.leading();
    quo[k] = f;
    if (f == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) rem[k + j] -= f * b.c_[j];
  }
  q = UniPoly(std::move(quo));
  r = UniPoly(std::move(rem));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  UniPoly out = *this;
  Rational lc = leading();
  for (auto& c : out.c_) c /= lc;
  return out;
}

std::string UniPoly::render(const std::string& var) const {
  return to_multipoly(Var(var)).render();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly q, r;
    UniPoly::divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UniPoly q, r;
  UniPoly::divmod(p, gcd(p, p.derivative()), q, r);
  return q.monic();
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq{p};
  if (p.degree() <= 0) return seq;
  seq.push_back(p.derivative());
  while (seq.back().degree() > 0) {
    UniPoly q, r;
    UniPoly::divmod(seq[seq.size() - 2], seq.back(), q, r);
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

namespace {

std::size_t variations(const std::vector<UniPoly>& seq, const Rational& x) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& s : seq) {
    int sg = s.sign_at(x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++v;
    last = sg;
  }
  return v;
}

// Roots of a squarefree m in (a, b), with m(a), m(b) ≠ 0.
std::size_t count_open(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b) {
  return variations(seq, a) - variations(seq, b);
}

// m / (x - r) for a root r of m.
UniPoly deflate(const UniPoly& m, const Rational& r) {
  UniPoly q, rem;
  UniPoly::divmod(m, UniPoly({-r, Rational(1)}), q, rem);
  return q;
}

void isolate(const UniPoly& m, const Rational& lo, const Rational& hi, std::size_t count,
             std::vector<RealRoot>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back(RealRoot{m, lo, hi, std::nullopt});
    return;
  }
  Rational mid = (lo + hi) / 2;
  UniPoly sub = m;
  if (m.sign_at(mid) == 0) {
    sub = deflate(m, mid);
    --count;
  }
  auto seq = sturm_sequence(sub);
  std::size_t left = count_open(seq, lo, mid);
  isolate(sub, lo, mid, left, out);
  if (sub.degree() != m.degree()) out.push_back(RealRoot{UniPoly({-mid, Rational(1)}), mid, mid, mid});
  isolate(sub, mid, hi, count - left, out);
}

RealRoot negated(const RealRoot& r) {
  std::vector<Rational> c = r.poly.coefficients();
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  RealRoot out{UniPoly(std::move(c)), -r.hi, -r.lo, std::nullopt};
  if (r.exact) out.exact = -*r.exact;
  return out;
}

Rational floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

// Least integer strictly above r.
Rational integer_above(RealRoot& r) {
  Rational n = floor_of(r.exact ? *r.exact : r.lo);
  while (compare(n, r) <= 0) n += 1;
  return n;
}

// Simplest rational in (lo, hi) for 0 ≤ lo < hi, by a Stern–Brocot descent
// that takes runs of equal moves in doubling steps.
Rational stern_brocot(RealRoot& lo, RealRoot& hi) {
  Integer p1 = 0, q1 = 1, p2 = 1, q2 = 0;
  while (true) {
    Rational m(Integer(p1 + p2), Integer(q1 + q2));
    m.canonicalize();
    if (compare(m, lo) <= 0) {
      // Move right: left bound becomes (p1 + k p2)/(q1 + k q2) for the largest valid k.
      auto at = [&](const Integer& k) {
        Rational v(Integer(p1 + k * p2), Integer(q1 + k * q2));
        v.canonicalize();
        return v;
      };
      Integer k = 1;
      while (compare(at(2 * k), lo) <= 0) k *= 2;
      Integer step = k / 2;
      while (step > 0) {
        if (compare(at(k + step), lo) <= 0) k += step;
        step /= 2;
      }
      p1 = p1 + k * p2;
      q1 = q1 + k * q2;
    } else if (compare(m, hi) >= 0) {
      auto at = [&](const Integer& k) {
        Rational v(Integer(p2 + k * p1), Integer(q2 + k * q1));
        v.canonicalize();
        return v;
      };
      Integer k = 1;
      while (compare(at(2 * k), hi) >= 0) k *= 2;
      Integer step = k / 2;
      while (step > 0) {
        if (compare(at(k + step), hi) >= 0) k += step;
        step /= 2;
      }
      p2 = p2 + k * p1;
      q2 = q2 + k * q1;
    } else {
      return m;
    }
  }
}

}  // namespace

Rational root_bound(const UniPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coefficients()[k] / p.leading())));
  return m + 1;
}

std::size_t count_roots(const UniPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "the zero polynomial has infinitely many roots");
  if (!(a < b)) return 0;
  UniPoly m = squarefree_part(p);
  std::size_t extra = 0;
  if (m.sign_at(a) == 0) m = deflate(m, a);
  if (m.sign_at(b) == 0) {
    m = deflate(m, b);
    extra = 1;
  }
  return count_open(sturm_sequence(m), a, b) + extra;
}

std::vector<RealRoot> isolate_roots(const UniPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "the zero polynomial has infinitely many roots");
  std::vector<RealRoot> out;
  if (p.degree() <= 0) return out;
  UniPoly m = squarefree_part(p);
  Rational b = root_bound(m);
  isolate(m, -b, b, count_open(sturm_sequence(m), -b, b), out);
  // Degree-one factors give their root exactly.
  for (auto& r : out)
    if (!r.exact && r.poly.degree() == 1) r.exact = -r.poly.coefficients()[0] / r.poly.coefficients()[1];
  for (auto& r : out)
    if (r.exact) r.lo = r.hi = *r.exact;
  return out;
}

void RealRoot::refine(const Rational& width) {
  while (!exact && hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int s = poly.sign_at(mid);
    if (s == 0) {
      exact = mid;
      lo = hi = mid;
    } else if (s != poly.sign_at(lo)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
}

std::optional<Rational> RealRoot::rational_value() {
  if (exact) return exact;
  // Clear denominators; a rational root p/q in lowest terms has q | L.
  Integer den = 1;
  for (const auto& c : poly.coefficients()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  Rational lead = poly.leading() * den;
  Integer L = abs(lead.get_num());
  // Distinct rationals with denominators ≤ L are at least 1/L^2 apart.
  refine(Rational(1, 2) / (L * L));
  if (exact) return exact;
  for (Integer q = 1; q * q <= L; ++q) {
    if (L % q != 0) continue;
    for (const Integer& d : {q, Integer(L / q)}) {
      Rational lo_scaled = lo * d;
      Integer num;
      mpz_cdiv_q(num.get_mpz_t(), lo_scaled.get_num_mpz_t(), lo_scaled.get_den_mpz_t());
      Rational cand(num, d);
      cand.canonicalize();
      if (cand > lo && cand < hi && poly(cand) == 0) {
        exact = cand;
        lo = hi = cand;
        return exact;
      }
    }
  }
  return std::nullopt;
}

std::string RealRoot::render() const {
  if (exact) return exact->get_str();
  return "root of " + poly.render() + " in (" + lo.get_str() + ", " + hi.get_str() + ")";
}

int compare(const Rational& q, RealRoot& r) {
  while (true) {
    if (r.exact) return sgn(q - *r.exact);
    if (q <= r.lo) return -1;
    if (q >= r.hi) return 1;
    int s = r.poly.sign_at(q);
    if (s == 0) {
      r.exact = q;
      r.lo = r.hi = q;
      return 0;
    }
    if (s != r.poly.sign_at(r.lo))
      r.hi = q;
    else
      r.lo = q;
  }
}

int sign_at(const UniPoly& p, RealRoot& r) {
  if (r.exact) return p.sign_at(*r.exact);
  if (p.is_zero()) return 0;
  UniPoly g = gcd(p, r.poly);
  if (g.degree() > 0 && count_open(sturm_sequence(g), r.lo, r.hi) > 0) return 0;
  while (count_roots(p, r.lo, r.hi) - (p.sign_at(r.hi) == 0 ? 1 : 0) > 0) {
    r.refine((r.hi - r.lo) / 2);
    if (r.exact) return p.sign_at(*r.exact);
  }
  return p.sign_at((r.lo + r.hi) / 2);
}

Rational simplest_between(RealRoot* lo, RealRoot* hi) {
  Rational zero = 0;
  bool lo_neg = !lo || compare(zero, *lo) > 0;
  bool hi_pos = !hi || compare(zero, *hi) < 0;
  if (lo_neg && hi_pos) return zero;
  if (!lo_neg) {
    // 0 ≤ lo: the interval lies in the positive half-line.
    Rational n = integer_above(*lo);
    if (!hi || compare(n, *hi) < 0) {
      // Integers have denominator 1; the smallest one above lo is simplest.
      return n;
    }
    return stern_brocot(*lo, *hi);
  }
  // hi ≤ 0: mirror.
  RealRoot nhi = negated(*hi);
  if (!lo) return -integer_above(nhi);
  RealRoot nlo = negated(*lo);
  Rational n = integer_above(nhi);
  if (compare(n, nlo) < 0) return -n;
  return -stern_brocot(nhi, nlo);
}

std::string_view to_string(SignCondition s) {
  switch (s) {
    case SignCondition::Zero: return "= 0";
    case SignCondition::Positive: return "> 0";
    case SignCondition::Negative: return "< 0";
    case SignCondition::NonZero: return "!= 0";
  }
  return "?";
}

namespace {

bool satisfied(SignCondition c, int s) {
  switch (c) {
    case SignCondition::Zero: return s == 0;
    case SignCondition::Positive: return s > 0;
    case SignCondition::Negative: return s < 0;
    case SignCondition::NonZero: return s != 0;
  }
  return false;
}

}  // namespace

SturmDecision sturm_decide(const std::vector<SignConstraint>& constraints) {
  std::vector<SignConstraint> live;
  for (const auto& c : constraints) {
    if (c.poly.is_zero()) {
      if (c.sign == SignCondition::Positive || c.sign == SignCondition::Negative)
        throw Error(ErrorCode::ZeroPolynomialWithStrictSign,
                    "the zero polynomial cannot be " + std::string(to_string(c.sign)));
      if (c.sign == SignCondition::NonZero) return {};
      continue;
    }
    if (c.poly.degree() == 0) {
      if (!satisfied(c.sign, sgn(c.poly.leading()))) return {};
      continue;
    }
    live.push_back(c);
  }
  auto holds_at = [&](const Rational& x) {
    return std::all_of(live.begin(), live.end(),
                       [&](const SignConstraint& c) { return satisfied(c.sign, c.poly.sign_at(x)); });
  };

  UniPoly eq;
  bool have_eq = false;
  for (const auto& c : live)
    if (c.sign == SignCondition::Zero) {
      eq = have_eq ? gcd(eq, c.poly) : c.poly;
      have_eq = true;
    }
  SturmDecision out;
  if (have_eq) {
    if (eq.degree() <= 0) return out;
    for (auto& r : isolate_roots(eq)) {
      bool ok = true;
      for (const auto& c : live)
        if (!satisfied(c.sign, sign_at(c.poly, r))) {
          ok = false;
          break;
        }
      if (!ok) continue;
      out.sat = true;
      if (auto v = r.rational_value()) {
        out.witness = *v;
      } else {
        r.refine(Rational(1, 1024));
        out.root = r;
      }
      return out;
    }
    return out;
  }

  // Only open conditions: the signs are constant between consecutive roots
  // of the product, and every root falsifies some condition.
  UniPoly product = UniPoly::constant(1);
  for (const auto& c : live) product = product * c.poly;
  auto roots = product.degree() > 0 ? isolate_roots(product) : std::vector<RealRoot>{};
  for (std::size_t k = 0; k <= roots.size(); ++k) {
    RealRoot* lo = k == 0 ? nullptr : &roots[k - 1];
    RealRoot* hi = k == roots.size() ? nullptr : &roots[k];
    Rational s = simplest_between(lo, hi);
    if (holds_at(s)) {
      out.sat = true;
      out.witness = s;
      return out;
    }
  }
  return out;
}

}  // namespace odf
