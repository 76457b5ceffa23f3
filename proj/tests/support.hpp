#pragma once

// Shared helpers for the test suites: shorthand constructors and seeded
// random generators for polynomials, rational functions and series.

#include <random>
#include <string>
#include <vector>

#include "odf/multipoly.hpp"
#include "odf/rational_function.hpp"
#include "odf/series.hpp"

namespace odf::test {

inline MultiPoly pv(const std::string& name, std::vector<std::uint32_t> jet = {}) {
  return MultiPoly::variable(Var(name, std::move(jet)));
}

inline RationalFunction rv(const std::string& name, std::vector<std::uint32_t> jet = {}) {
  return RationalFunction::variable(Var(name, std::move(jet)));
}

inline Rational q(long n, long d = 1) { return make_rational(n, d); }

class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(int height) {
    int den = integer(1, height);
    return make_rational(integer(-height, height), den);
  }

  Rational nonzero_rational(int height) {
    Rational r;
    do {
      r = rational(height);
    } while (r == 0);
    return r;
  }

  /// Random polynomial with up to `terms` terms of total degree ≤ degree.
  MultiPoly poly(const std::vector<Var>& vars, int degree, int terms, int height = 5) {
    MultiPoly p;
    for (int k = 0; k < terms; ++k) {
      std::vector<std::pair<Var, std::uint32_t>> powers;
      int budget = integer(0, degree);
      for (const auto& v : vars) {
        if (budget == 0) break;
        int e = integer(0, budget);
        budget -= e;
        if (e > 0) powers.emplace_back(v, static_cast<std::uint32_t>(e));
      }
      p += MultiPoly::monomial(rational(height), powers);
    }
    return p;
  }

  MultiPoly nonzero_poly(const std::vector<Var>& vars, int degree, int terms, int height = 5) {
    MultiPoly p;
    while (p.is_zero()) p = poly(vars, degree, terms, height);
    return p;
  }

  RationalFunction rational_function(const std::vector<Var>& vars, int degree, int terms) {
    return RationalFunction(poly(vars, degree, terms), nonzero_poly(vars, degree, terms));
  }

  TruncatedSeries series(std::size_t p, int order, int height = 5) {
    std::map<TruncatedSeries::Exponents, Rational> c;
    for (const auto& e : monomials_up_to(p, order)) c[e] = rational(height);
    return TruncatedSeries::from_coefficients(p, order, c);
  }

  TruncatedSeries unit_series(std::size_t p, int order, int height = 5) {
    TruncatedSeries s = series(p, order, height);
    while (!s.is_unit()) s = series(p, order, height);
    return s;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace odf::test
