#include "odf/series.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "odf/error.hpp"

namespace odf {

namespace {

int degree_of(const TruncatedSeries::Exponents& e) {
  int d = 0;
  for (auto x : e) d += static_cast<int>(x);
  return d;
}

void require_same_p(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.p() != b.p())
    throw Error(ErrorCode::InvalidArgument, "series over different numbers of variables");
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::size_t p, int order) : p_(p), order_(std::max(order, -1)) {}

TruncatedSeries TruncatedSeries::constant(std::size_t p, int order, const Rational& c) {
  TruncatedSeries s(p, order);
  if (c != 0 && s.order_ >= 0) s.terms_[Exponents(p, 0)] = c;
  return s;
}

TruncatedSeries TruncatedSeries::variable(std::size_t p, int order, std::size_t i) {
  TruncatedSeries s(p, order);
  if (s.order_ >= 1) {
    Exponents e(p, 0);
    e[i - 1] = 1;
    s.terms_[e] = 1;
  }
  return s;
}

TruncatedSeries TruncatedSeries::from_coefficients(std::size_t p, int order,
                                                   const std::map<Exponents, Rational>& coeffs) {
  TruncatedSeries s(p, order);
  for (const auto& [e, c] : coeffs) {
    if (e.size() != p) throw Error(ErrorCode::InvalidArgument, "exponent vector of wrong length");
    if (degree_of(e) <= s.order_ && c != 0) s.terms_[e] = c;
  }
  return s;
}

TruncatedSeries TruncatedSeries::from_coefficients(int order, const std::vector<Rational>& coeffs) {
  TruncatedSeries s(1, order);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (static_cast<int>(k) <= s.order_ && coeffs[k] != 0) s.terms_[{static_cast<std::uint32_t>(k)}] = coeffs[k];
  return s;
}

Rational TruncatedSeries::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncatedSeries::constant_term() const { return coefficient(Exponents(p_, 0)); }

void TruncatedSeries::drop_zeros() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || degree_of(it->first) > order_) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  TruncatedSeries s = *this;
  s.order_ = std::max(std::min(order, order_), -1);
  s.drop_zeros();
  return s;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries s = *this;
  for (auto& [e, c] : s.terms_) c = -c;
  return s;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_p(a, b);
  TruncatedSeries s(a.p_, std::min(a.order_, b.order_));
  for (const auto& [e, c] : a.terms_)
    if (degree_of(e) <= s.order_) s.terms_[e] += c;
  for (const auto& [e, c] : b.terms_)
    if (degree_of(e) <= s.order_) s.terms_[e] += c;
  s.drop_zeros();
  return s;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_p(a, b);
  TruncatedSeries s(a.p_, std::min(a.order_, b.order_));
  for (const auto& [ea, ca] : a.terms_) {
    int da = degree_of(ea);
    if (da > s.order_) continue;
    for (const auto& [eb, cb] : b.terms_) {
      if (da + degree_of(eb) > s.order_) continue;
      TruncatedSeries::Exponents e = ea;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      s.terms_[e] += ca * cb;
    }
  }
  s.drop_zeros();
  return s;
}

TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c) {
  TruncatedSeries s = a;
  for (auto& [e, v] : s.terms_) v *= c;
  s.drop_zeros();
  return s;
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (!is_unit()) throw Error(ErrorCode::DivisionByNonUnit, "series with zero constant term is not invertible");
  // 1/b = (1/b0) Σ_k (-u)^k with u = b/b0 - 1, u(0) = 0.
  Rational b0 = constant_term();
  TruncatedSeries u = (*this) * Rational(1 / b0) - constant(p_, order_, Rational(1));
  TruncatedSeries neg_u = -u;
  TruncatedSeries sum = constant(p_, order_, Rational(1));
  TruncatedSeries power = sum;
  for (int k = 1; k <= order_; ++k) {
    power = power * neg_u;
    if (power.terms_.empty()) break;
    sum = sum + power;
  }
  return sum * Rational(1 / b0);
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_p(a, b);
  if (!b.is_unit()) throw Error(ErrorCode::DivisionByNonUnit, "division by a series with zero constant term");
  return a * b.inverse();
}

TruncatedSeries TruncatedSeries::pow(std::uint32_t n) const {
  TruncatedSeries result = constant(p_, order_, Rational(1));
  for (std::uint32_t k = 0; k < n; ++k) result = result * (*this);
  return result;
}

TruncatedSeries TruncatedSeries::derivative(std::size_t i) const {
  if (i < 1 || i > p_) throw Error(ErrorCode::InvalidArgument, "derivative index out of range");
  TruncatedSeries s(p_, order_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[i - 1] == 0) continue;
    Exponents d = e;
    --d[i - 1];
    if (degree_of(d) <= s.order_) s.terms_[d] = c * e[i - 1];
  }
  return s;
}

TruncatedSeries TruncatedSeries::derivative(const Exponents& theta) const {
  TruncatedSeries s = *this;
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::uint32_t k = 0; k < theta[i]; ++k) s = s.derivative(i + 1);
  return s;
}

std::string TruncatedSeries::render() const {
  std::string out;
  std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    int dx = degree_of(x.first);
    int dy = degree_of(y.first);
    if (dx != dy) return dx < dy;
    return x.first > y.first;
  });
  for (const auto& [e, c] : ordered) {
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += p_ == 1 ? std::string("t") : "t" + std::to_string(k + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    Rational mag = abs(c);
    std::string piece = mono.empty() ? to_string(mag) : mag == 1 ? mono : to_string(mag) + "*" + mono;
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + piece;
    } else {
      out += (c < 0 ? " - " : " + ") + piece;
    }
  }
  if (out.empty()) out = "0";
  if (order_ < 0) return "O(1)";
  std::string t = p_ == 1 ? "t" : "|t|";
  return out + " + O(" + t + "^" + std::to_string(order_ + 1) + ")";
}

bool equal_modulo_truncation(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.p() != b.p()) return false;
  int n = std::min(a.order(), b.order());
  return a.truncated(n).terms() == b.truncated(n).terms();
}

std::vector<TruncatedSeries::Exponents> monomials_up_to(std::size_t p, int max_degree) {
  std::vector<TruncatedSeries::Exponents> out;
  if (max_degree < 0) return out;
  TruncatedSeries::Exponents e(p, 0);
  // Enumerate all vectors with entries ≤ max_degree and filter by degree.
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int remaining) {
    if (k == p) {
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      e[k] = static_cast<std::uint32_t>(v);
      rec(k + 1, remaining - v);
    }
    e[k] = 0;
  };
  rec(0, max_degree);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    int dx = degree_of(x);
    int dy = degree_of(y);
    if (dx != dy) return dx < dy;
    return x < y;
  });
  return out;
}

}  // namespace odf
