#include "odf/codf.hpp"

#include <algorithm>
#include <sstream>

#include "odf/error.hpp"
#include "line_parse.hpp"

namespace odf {

Var singer_var(std::size_t k) { return Var("X" + std::to_string(k)); }

std::string_view to_string(PremiseReport::Clause c) {
  switch (c) {
    case PremiseReport::Clause::None: return "none";
    case PremiseReport::Clause::Shape: return "shape";
    case PremiseReport::Clause::PNonzero: return "P(a) = 0";
    case PremiseReport::Clause::SeparantZero: return "dP/dXn(a) != 0";
    case PremiseReport::Clause::QNotPositive: return "Q(a) > 0";
  }
  return "?";
}

namespace {

// Index k of a variable X_k, or nullopt.
std::optional<std::size_t> singer_index(const Var& v) {
  const auto& s = v.name();
  if (!v.jet().empty() || s.size() < 2 || s[0] != 'X') return std::nullopt;
  if (s.find_first_not_of("0123456789", 1) != std::string::npos) return std::nullopt;
  if (s.size() > 2 && s[1] == '0') return std::nullopt;
  if (s.size() > 6) return std::nullopt;
  return std::stoul(s.substr(1));
}

Rational eval_at(const MultiPoly& p, const std::vector<Rational>& a) {
  return evaluate<Rational>(p, [&](const Var& v) { return a.at(*singer_index(v)); }, Rational(0), Rational(1));
}

std::optional<std::string> shape_problem(const SingerInstance& s) {
  if (s.a.size() != s.n + 1)
    return "the witness has " + std::to_string(s.a.size()) + " entries, expected " + std::to_string(s.n + 1);
  for (const auto& v : s.P.vars()) {
    auto k = singer_index(v);
    if (!k || *k > s.n) return "P uses " + v.name() + ", outside X0..X" + std::to_string(s.n);
  }
  for (const auto& q : s.Qs)
    for (const auto& v : q.vars()) {
      auto k = singer_index(v);
      if (!k || *k >= s.n) return "Q uses " + v.name() + ", outside X0..X" + std::to_string(s.n) + " minus Xn";
    }
  return std::nullopt;
}

}  // namespace

MultiPoly separant(const SingerInstance& s) { return s.P.partial(singer_var(s.n)); }

PremiseReport check_singer_premise(const SingerInstance& s) {
  PremiseReport r;
  auto fail = [&](PremiseReport::Clause c, std::string msg) {
    r.ok = false;
    r.failing = c;
    r.message = std::move(msg);
    return r;
  };
  if (auto problem = shape_problem(s)) return fail(PremiseReport::Clause::Shape, *problem);
  Rational pv = eval_at(s.P, s.a);
  if (pv != 0) {
    r.value = pv;
    return fail(PremiseReport::Clause::PNonzero, "P(a) = " + pv.get_str());
  }
  Rational sv = eval_at(separant(s), s.a);
  if (sv == 0) return fail(PremiseReport::Clause::SeparantZero, "dP/dX" + std::to_string(s.n) + "(a) = 0");
  for (std::size_t i = 0; i < s.Qs.size(); ++i) {
    Rational qv = eval_at(s.Qs[i], s.a);
    if (qv <= 0) {
      r.index = i;
      r.value = qv;
      return fail(PremiseReport::Clause::QNotPositive, "Q" + std::to_string(i + 1) + "(a) = " + qv.get_str());
    }
  }
  return r;
}

namespace {

TruncatedSeries evaluate_jet(const MultiPoly& p, const TruncatedSeries& b, int order) {
  auto value = [&](const Var& v) {
    std::uint32_t k = static_cast<std::uint32_t>(*singer_index(v));
    return b.derivative(TruncatedSeries::Exponents{k}).truncated(order);
  };
  return evaluate<TruncatedSeries>(p, value, TruncatedSeries::constant(1, order, 0),
                                   TruncatedSeries::constant(1, order, 1));
}

}  // namespace

TruncatedSeries singer_residual(const SingerInstance& s, const TruncatedSeries& b) {
  return evaluate_jet(s.P, b, b.order() - static_cast<int>(s.n));
}

TruncatedSeries solve_singer_formal(const SingerInstance& s, int N) {
  PremiseReport premise = check_singer_premise(s);
  if (!premise.ok) throw Error(ErrorCode::PremiseFails, "premise fails: " + premise.message);
  int n = static_cast<int>(s.n);
  if (N < n) throw Error(ErrorCode::InvalidArgument, "truncation order below the order of P");
  std::vector<Rational> c(N + 1);
  for (int k = 0; k <= n; ++k) c[k] = s.a[k] / factorial(k);
  // The t^{k-n} coefficient of P(b, ..., b^{(n)}) is affine in c_k with slope
  // S · k!/(k-n)!, S = ∂P/∂X_n(ā); every other coefficient involved is older.
  Rational S = eval_at(separant(s), s.a);
  for (int k = n + 1; k <= N; ++k) {
    TruncatedSeries b = TruncatedSeries::from_coefficients(N, c);
    Rational r = evaluate_jet(s.P, b, k - n).coefficient({static_cast<std::uint32_t>(k - n)});
    c[k] = -r / (S * factorial(k) / factorial(k - n));
  }
  return TruncatedSeries::from_coefficients(N, c);
}

std::string GeometricSystem::render() const {
  std::ostringstream out;
  out << "vars";
  for (const auto& x : xs) out << " " << x.name();
  for (const auto& y : ys) out << " " << y.name();
  out << "\n";
  for (const auto& [y, x] : chain) out << y.name() << " = " << x.name() << "\n";
  out << P.render() << " = 0\n";
  for (const auto& q : Qs) out << q.render() << " > 0\n";
  return out.str();
}

GeometricSystem singer_to_geometric(const SingerInstance& s) {
  if (s.n == 0) throw Error(ErrorCode::InvalidArgument, "the geometric form needs n >= 1");
  if (auto problem = shape_problem(SingerInstance{s.n, s.P, s.Qs, std::vector<Rational>(s.n + 1)}))
    throw Error(ErrorCode::InvalidArgument, *problem);
  GeometricSystem g;
  g.n = s.n;
  std::map<Var, RationalFunction, VarRankGreater> images;
  for (std::size_t i = 1; i <= s.n; ++i) {
    g.xs.push_back(Var("x" + std::to_string(i)));
    g.ys.push_back(Var("y" + std::to_string(i)));
  }
  for (std::size_t i = 1; i < s.n; ++i) g.chain.emplace_back(g.ys[i - 1], g.xs[i]);
  // X_k ↦ x_{k+1} for k < n, X_n ↦ y_n.
  for (std::size_t k = 0; k < s.n; ++k) images.emplace(singer_var(k), RationalFunction::variable(g.xs[k]));
  images.emplace(singer_var(s.n), RationalFunction::variable(g.ys.back()));
  g.P = RationalFunction(s.P).substitute(images).num();
  for (const auto& q : s.Qs) g.Qs.push_back(RationalFunction(q).substitute(images).num());
  return g;
}

SingerInstance geometric_to_singer(const GeometricSystem& g) {
  if (g.n == 0 || g.xs.size() != g.n || g.ys.size() != g.n)
    throw Error(ErrorCode::InvalidArgument, "malformed geometric system");
  std::map<Var, RationalFunction, VarRankGreater> images;
  for (std::size_t k = 0; k < g.n; ++k) images.emplace(g.xs[k], RationalFunction::variable(singer_var(k)));
  images.emplace(g.ys.back(), RationalFunction::variable(singer_var(g.n)));
  // Through the chain y_i = x_{i+1}, the remaining y_i read as X_i.
  for (const auto& [y, x] : g.chain) {
    auto it = std::find(g.xs.begin(), g.xs.end(), x);
    images.emplace(y, RationalFunction::variable(singer_var(static_cast<std::size_t>(it - g.xs.begin()))));
  }
  SingerInstance s;
  s.n = g.n;
  s.P = RationalFunction(g.P).substitute(images).num();
  for (const auto& q : g.Qs) s.Qs.push_back(RationalFunction(q).substitute(images).num());
  return s;
}

DeltaType delta_type(const CellTypeMatrix& m) {
  DeltaType out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!m.empty() && m[k].size() != m[0].size())
      throw Error(ErrorCode::InvalidArgument, "cell-type matrix rows differ in length");
    int all = 1;
    for (int e : m[k]) {
      if (e != 0 && e != 1) throw Error(ErrorCode::InvalidArgument, "cell-type entries must be 0 or 1");
      all &= e;
    }
    out.type.push_back(all);
    out.dimension += static_cast<std::size_t>(all);
  }
  return out;
}

MultiPoly jet_box_witness(const std::vector<std::pair<Rational, Rational>>& box) {
  Var t("t");
  MultiPoly out;
  for (std::size_t k = 0; k < box.size(); ++k) {
    const auto& [lo, hi] = box[k];
    if (!(lo < hi))
      throw Error(ErrorCode::EmptyInterval,
                  "interval " + std::to_string(k) + " (" + lo.get_str() + ", " + hi.get_str() + ") is empty");
    Rational mid = (lo + hi) / 2;
    if (mid != 0) out += MultiPoly::monomial(mid / factorial(static_cast<unsigned>(k)), {{t, static_cast<std::uint32_t>(k)}});
  }
  return out;
}

SingerInstance parse_singer(std::string_view text) {
  using detail::fail;
  SingerInstance s;
  bool have_n = false, have_p = false, have_a = false;
  std::size_t last_line = 0;
  detail::for_each_statement(text, [&](std::size_t line_no, std::string_view line, std::size_t lead) {
    last_line = line_no;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected '<key> = <value>'", line_no, lead + 1);
    std::string key = detail::trim(line.substr(0, eq));
    std::string_view body = line.substr(eq + 1);
    std::size_t body_col = lead + eq + 1;
    auto poly = [&]() {
      RationalFunction f = detail::parse_rf_at(body, line_no, body_col);
      if (!f.is_polynomial()) fail("expected a polynomial", line_no, body_col + 1);
      return MultiPoly(f.num() * Rational(1 / f.den().constant_term()));
    };
    if (key == "n") {
      std::string v = detail::trim(body);
      if (v.empty() || v.size() > 3 || v.find_first_not_of("0123456789") != std::string::npos)
        fail("expected a natural number", line_no, body_col + 1);
      s.n = std::stoul(v);
      have_n = true;
    } else if (key == "P") {
      s.P = poly();
      have_p = true;
    } else if (key == "Q") {
      s.Qs.push_back(poly());
    } else if (key == "a") {
      std::string v = detail::trim(body);
      if (v.size() < 2 || v.front() != '(' || v.back() != ')')
        fail("expected '(<rational>, ...)'", line_no, body_col + 1);
      std::size_t open = body.find('(');
      std::string_view inner = body.substr(open + 1, body.rfind(')') - open - 1);
      std::size_t start = 0;
      while (start <= inner.size()) {
        std::size_t comma = inner.find(',', start);
        if (comma == std::string_view::npos) comma = inner.size();
        std::string_view part = inner.substr(start, comma - start);
        std::size_t col = body_col + open + 1 + start;
        RationalFunction f = detail::parse_rf_at(part, line_no, col);
        if (!f.is_constant()) fail("expected a rational number", line_no, col + 1);
        s.a.push_back(f.constant_value());
        start = comma + 1;
      }
      have_a = true;
    } else {
      fail("unknown key '" + key + "'", line_no, lead + 1);
    }
  });
  if (!have_n) fail("missing 'n = <nat>'", last_line + 1, 1);
  if (!have_p) fail("missing 'P = <polynomial>'", last_line + 1, 1);
  if (!have_a) fail("missing 'a = (...)'", last_line + 1, 1);
  return s;
}

}  // namespace odf
