#include "odf/coherence.hpp"

#include <algorithm>
#include <sstream>

#include "odf/diffpoly.hpp"
#include "odf/error.hpp"
#include "odf/rewrite.hpp"
#include "odf/term.hpp"
#include "line_parse.hpp"

namespace odf {

Var z_var(const Theta& theta) { return diff_var("z", theta); }

std::string_view to_string(ConditionViolation::Kind kind) {
  using K = ConditionViolation::Kind;
  switch (kind) {
    case K::NotAntichain: return "NotAntichain";
    case K::IdentityInP: return "IdentityInP";
    case K::MissingFunction: return "MissingFunction";
    case K::ForeignVariable: return "ForeignVariable";
    case K::DependenceViolation: return "DependenceViolation";
    case K::VariableInB: return "VariableInB";
    case K::WitnessFails: return "WitnessFails";
  }
  return "?";
}

namespace {

bool in_B(const std::vector<Theta>& P, const Theta& theta) {
  return std::any_of(P.begin(), P.end(), [&](const Theta& b) { return theta_divides(b, theta); });
}

ConditionViolation violation(ConditionViolation::Kind kind, std::string message) {
  ConditionViolation v{kind, std::nullopt, std::nullopt, std::nullopt, std::move(message)};
  return v;
}

// Checks that every variable is some z^θ with θ ∈ I; returns the θ's.
std::optional<ConditionViolation> check_vars(const Condition& c, const std::vector<Var>& vars,
                                             std::vector<Theta>& out) {
  for (const auto& v : vars) {
    if (v.name() != "z" || v.jet().size() > c.p)
      return violation(ConditionViolation::Kind::ForeignVariable,
                       "variable " + render(v, c.p) + " is not a derivative of z");
    Theta t = jet_of(v, c.p);
    if (in_B(c.P, t)) {
      auto out_v = violation(ConditionViolation::Kind::VariableInB, "variable " + render(v, c.p) + " lies in B");
      out_v.theta = t;
      return out_v;
    }
    out.push_back(t);
  }
  return std::nullopt;
}

Rational witness_value(const Condition& c, const Var& v) {
  auto it = c.witness.find(jet_of(v, c.p));
  return it == c.witness.end() ? Rational(0) : it->second;
}

Rational eval_at_witness(const Condition& c, const MultiPoly& poly) {
  return evaluate<Rational>(poly, [&](const Var& v) { return witness_value(c, v); }, Rational(0), Rational(1));
}

bool same_function(const RationalFunction& a, const RationalFunction& b) { return a == b; }

std::optional<Conflict> first_conflict(const DerivedSystem& sys, const std::vector<Theta>& thetas) {
  for (const auto& theta : thetas) {
    const auto& entry = sys.omega.at(theta);
    const auto& base = entry.members.front();
    for (const auto& m : entry.members)
      if (!same_function(m.value, base.value))
        return Conflict{theta, m.via, base.via, m.value - base.value};
  }
  return std::nullopt;
}

void throw_if_invalid(const Condition& c) {
  if (auto v = validate_condition(c))
    throw Error(ErrorCode::InvalidCondition, std::string(to_string(v->kind)) + ": " + v->message);
}

}  // namespace

std::optional<ConditionViolation> validate_condition(const Condition& c) {
  using K = ConditionViolation::Kind;
  if (c.p == 0) throw Error(ErrorCode::InvalidArgument, "a condition needs at least one derivation");
  for (const auto& b : c.P) {
    if (b.p() != c.p) throw Error(ErrorCode::InvalidArgument, "element " + b.render() + " has wrong arity");
    if (b.is_identity()) {
      auto v = violation(K::IdentityInP, "P contains the identity");
      v.beta = b;
      return v;
    }
  }
  for (std::size_t i = 0; i < c.P.size(); ++i)
    for (std::size_t j = 0; j < c.P.size(); ++j)
      if (i != j && theta_divides(c.P[i], c.P[j])) {
        auto v = violation(K::NotAntichain, c.P[i].render() + " divides " + c.P[j].render());
        v.beta = c.P[j];
        v.theta = c.P[i];
        return v;
      }
  for (const auto& b : c.P)
    if (!c.f.count(b)) {
      auto v = violation(K::MissingFunction, "no function given for " + b.render());
      v.beta = b;
      return v;
    }
  for (const auto& [b, fb] : c.f) {
    if (std::find(c.P.begin(), c.P.end(), b) == c.P.end()) {
      auto v = violation(K::MissingFunction, "function given for " + b.render() + ", which is not in P");
      v.beta = b;
      return v;
    }
    std::vector<Theta> used;
    if (auto v = check_vars(c, fb.vars(), used)) {
      // Report the dependence violation first when both apply.
      if (v->kind == K::VariableInB && !(theta_cmp(*v->theta, b) < 0)) v->kind = K::DependenceViolation;
      v->beta = b;
      return v;
    }
    for (const auto& t : used)
      if (!(theta_cmp(t, b) < 0)) {
        auto v = violation(K::DependenceViolation,
                           "f at " + b.render() + " depends on z" + t.render() + ", which is not below it");
        v.beta = b;
        v.theta = t;
        return v;
      }
  }
  for (const auto& u : c.inequalities) {
    std::vector<Theta> used;
    if (auto v = check_vars(c, u.vars(), used)) return v;
  }
  for (const auto& [t, value] : c.witness) {
    if (t.p() != c.p) throw Error(ErrorCode::InvalidArgument, "witness index " + t.render() + " has wrong arity");
    if (in_B(c.P, t)) {
      auto v = violation(K::VariableInB, "witness assigns z" + t.render() + ", which lies in B");
      v.theta = t;
      return v;
    }
  }
  if (!c.witness.empty()) {
    for (std::size_t k = 0; k < c.inequalities.size(); ++k)
      if (eval_at_witness(c, c.inequalities[k]) <= 0) {
        auto v = violation(K::WitnessFails, c.inequalities[k].render(c.p) + " > 0 fails at the witness");
        v.inequality = k;
        return v;
      }
    for (const auto& [b, fb] : c.f)
      if (eval_at_witness(c, fb.den()) == 0) {
        auto v = violation(K::WitnessFails, "denominator of f at " + b.render() + " vanishes at the witness");
        v.beta = b;
        return v;
      }
  }
  return std::nullopt;
}

bool OmegaEntry::singleton() const {
  return std::all_of(members.begin(), members.end(),
                     [&](const OmegaMember& m) { return same_function(m.value, members.front().value); });
}

const RationalFunction& DerivedSystem::g(const Theta& theta) const {
  auto it = omega.find(theta);
  if (it == omega.end())
    throw Error(ErrorCode::InvalidArgument, "g" + theta.render() + " lies beyond the derived order bound");
  return it->second.g;
}

RationalFunction DerivedSystem::lift(const RationalFunction& h, std::size_t i) const {
  RationalFunction d = free_derive(h, i);
  VarMap images;
  for (const auto& v : d.vars()) {
    Theta chi = jet_of(v, p);
    const auto& g_chi = g(chi);
    if (g_chi != RationalFunction::variable(v)) images.emplace(v, g_chi);
  }
  return images.empty() ? d : d.substitute(images);
}

DerivedSystem derive_system(const Condition& c, std::uint32_t ord_bound) {
  throw_if_invalid(c);
  DerivedSystem sys;
  sys.p = c.p;
  sys.ord_bound = ord_bound;
  auto note_domain = [&](const RationalFunction& g) {
    if (g.den().is_constant()) return;
    if (std::find(sys.nonzero.begin(), sys.nonzero.end(), g.den()) == sys.nonzero.end())
      sys.nonzero.push_back(g.den());
  };
  for (const auto& theta : enumerate_theta(c.p, ord_bound)) {
    OmegaEntry entry;
    if (!in_B(c.P, theta)) {
      entry.members.push_back({theta, RationalFunction::variable(z_var(theta))});
    } else if (auto it = c.f.find(theta); it != c.f.end()) {
      entry.members.push_back({theta, it->second});
    } else {
      for (const auto& phi : predecessors(theta)) {
        if (!in_B(c.P, phi)) continue;
        entry.members.push_back({phi, sys.lift(sys.g(phi), successor_index(phi, theta))});
      }
    }
    entry.g = entry.members.front().value;
    for (const auto& m : entry.members) note_domain(m.value);
    sys.omega.emplace(theta, std::move(entry));
  }
  return sys;
}

CoherenceReport is_coherent(const Condition& c) {
  throw_if_invalid(c);
  if (c.P.empty()) return {};
  Theta top = theta_join(c.P, c.p);
  DerivedSystem sys = derive_system(c, top.order());
  std::vector<Theta> below;
  for (const auto& [theta, entry] : sys.omega)
    if (theta_cmp(theta, top) <= 0) below.push_back(theta);
  CoherenceReport report;
  report.conflict = first_conflict(sys, below);
  report.coherent = !report.conflict;
  return report;
}

CoherenceReport strong_coherence_probe(const Condition& c, std::uint32_t ord_bound) {
  DerivedSystem sys = derive_system(c, ord_bound);
  std::vector<Theta> all;
  for (const auto& [theta, entry] : sys.omega) all.push_back(theta);
  CoherenceReport report;
  report.conflict = first_conflict(sys, all);
  report.coherent = !report.conflict;
  return report;
}

namespace {

Rational multi_factorial(const std::vector<std::uint32_t>& e) {
  Rational out = 1;
  for (auto k : e) out *= factorial(k);
  return out;
}

// Evaluates f at s_ψ = ∂^ψ a (truncated to `order`); DenominatorVanishes
// when the denominator has zero constant term.
TruncatedSeries eval_on_series(const RationalFunction& f, const TruncatedSeries& a, std::size_t p, int order) {
  auto value = [&](const Var& v) { return a.derivative(jet_of(v, p).exponents()).truncated(order); };
  TruncatedSeries zero = TruncatedSeries::constant(p, order, 0);
  TruncatedSeries one = TruncatedSeries::constant(p, order, 1);
  return evaluate<TruncatedSeries>(f, value, [](const TruncatedSeries& s) { return s.is_unit(); }, zero, one);
}

}  // namespace

TruncatedSeries solve_condition_series(const Condition& c, const std::map<Theta, Rational, ThetaLess>& init, int N) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "truncation order must be non-negative");
  CoherenceReport report = is_coherent(c);
  if (!report.coherent)
    throw Error(ErrorCode::NotCoherent, "condition is not coherent: conflict at " + report.conflict->theta.render());
  ThetaPartition part(Antichain(c.P, c.p));
  std::map<TruncatedSeries::Exponents, Rational> coeffs;
  // Coefficients are fixed in increasing < order. βa = f_β(a^I) gives
  // (β+r)a(0) = ∂^r[f_β(...)](0), and only coefficients below β+r enter.
  for (const auto& theta : enumerate_theta(c.p, static_cast<std::uint32_t>(N))) {
    Rational jet_value;
    if (part.in_I(theta)) {
      auto it = init.find(theta);
      jet_value = it == init.end() ? Rational(0) : it->second;
    } else {
      Theta beta = part.least_generator_below(theta);
      std::vector<std::uint32_t> r(c.p);
      for (std::size_t k = 0; k < c.p; ++k) r[k] = theta[k] - beta[k];
      TruncatedSeries partial = TruncatedSeries::from_coefficients(c.p, N, coeffs);
      int order = static_cast<int>(theta.order() - beta.order());
      TruncatedSeries F;
      try {
        F = eval_on_series(c.f.at(beta), partial, c.p, order);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DenominatorVanishes) throw;
        throw Error(ErrorCode::SingularInitialData,
                    "denominator of f at " + beta.render() + " vanishes at the initial data, needed for " +
                        theta.render());
      }
      jet_value = F.coefficient(r) * multi_factorial(r);
    }
    if (jet_value != 0) coeffs[theta.exponents()] = jet_value / multi_factorial(theta.exponents());
  }
  return TruncatedSeries::from_coefficients(c.p, N, coeffs);
}

VerifyResult verify_solution(const Condition& c, const TruncatedSeries& a) {
  VerifyResult out;
  if (a.p() != c.p) throw Error(ErrorCode::InvalidArgument, "series has the wrong number of variables");
  for (const auto& beta : c.P) {
    int order = a.order() - static_cast<int>(beta.order());
    if (order < 0) continue;
    TruncatedSeries lhs = a.derivative(beta.exponents()).truncated(order);
    TruncatedSeries rhs;
    try {
      rhs = eval_on_series(c.f.at(beta), a, c.p, order);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DenominatorVanishes) throw;
      out.ok = false;
      out.failing_beta = beta;
      out.message = "denominator of f at " + beta.render() + " vanishes at t = 0";
      return out;
    }
    if (!equal_modulo_truncation(lhs, rhs)) {
      out.ok = false;
      out.failing_beta = beta;
      out.message = "derivative " + beta.render() + " of the series differs from f";
      return out;
    }
  }
  auto jet_at_zero = [&](const Var& v) -> Rational {
    const auto& e = jet_of(v, c.p).exponents();
    return a.coefficient(e) * multi_factorial(e);
  };
  for (std::size_t k = 0; k < c.inequalities.size(); ++k)
    if (evaluate<Rational>(c.inequalities[k], jet_at_zero, Rational(0), Rational(1)) <= 0) {
      out.ok = false;
      out.failing_inequality = k;
      out.message = c.inequalities[k].render(c.p) + " > 0 fails at t = 0";
      return out;
    }
  return out;
}

namespace {

using detail::fail;

Theta parse_z(std::string_view text, std::size_t p, std::size_t line, std::size_t offset) {
  TermPtr t = detail::parse_term_at(text, line, offset);
  if (t->kind != DiffTerm::Kind::Var || t->var.name() != "z" || t->var.jet().size() > p)
    fail("expected a variable z[...]", line, offset + 1);
  return jet_of(t->var, p);
}

}  // namespace

Condition parse_condition(std::string_view text) {
  Condition c;
  bool have_p = false;
  std::size_t last_line = 0;
  detail::for_each_statement(text, [&](std::size_t line_no, std::string_view line, std::size_t lead) {
    last_line = line_no;
    std::size_t kw_end = line.find_first_of(" \t=");
    std::string keyword(line.substr(0, kw_end));
    std::size_t rest_at = kw_end == std::string_view::npos ? line.size() : kw_end;
    std::string_view rest = line.substr(rest_at);
    std::size_t rest_col = lead + rest_at;  // 0-based column where `rest` starts
    auto col_of = [&](std::string_view part) {
      return rest_col + static_cast<std::size_t>(part.data() - rest.data());
    };

    if (keyword == "p") {
      std::string r = detail::trim(rest);
      if (r.empty() || r[0] != '=') fail("expected '=' after p", line_no, rest_col + 1);
      std::string n = detail::trim(std::string_view(r).substr(1));
      if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos || n.size() > 3)
        fail("expected a number of derivations", line_no, rest_col + 2);
      c.p = std::stoul(n);
      if (c.p == 0) fail("p must be positive", line_no, rest_col + 2);
      have_p = true;
      return;
    }
    if (!have_p) fail("the first statement must be 'p = <n>'", line_no, lead + 1);

    if (keyword == "beta") {
      std::size_t assign = rest.find(":=");
      if (assign == std::string_view::npos) fail("expected ':='", line_no, rest_col + rest.size() + 1);
      Theta beta;
      try {
        beta = parse_theta(detail::trim(rest.substr(0, assign)));
      } catch (const Error& e) {
        fail(e.what(), line_no, rest_col + 1);
      }
      if (beta.p() != c.p) fail("element " + beta.render() + " has wrong arity", line_no, rest_col + 1);
      std::string_view body = rest.substr(assign + 2);
      if (c.f.count(beta)) fail("duplicate function for " + beta.render(), line_no, lead + 1);
      c.P.push_back(beta);
      c.f.emplace(beta, detail::parse_rf_at(body, line_no, col_of(body)));
    } else if (keyword == "ineq") {
      std::size_t gt = rest.rfind('>');
      if (gt == std::string_view::npos || detail::trim(rest.substr(gt + 1)) != "0")
        fail("expected '<term> > 0'", line_no, rest_col + 1);
      std::string_view body = rest.substr(0, gt);
      RationalFunction u = detail::parse_rf_at(body, line_no, col_of(body));
      if (!u.is_polynomial()) fail("inequalities must be polynomial", line_no, rest_col + 1);
      c.inequalities.push_back(u.num() * Rational(1 / u.den().constant_term()));
    } else if (keyword == "witness" || keyword == "init") {
      std::size_t eq = rest.find('=');
      if (eq == std::string_view::npos) fail("expected '='", line_no, rest_col + rest.size() + 1);
      std::string_view lhs = rest.substr(0, eq);
      std::string_view rhs = rest.substr(eq + 1);
      Theta theta = parse_z(lhs, c.p, line_no, col_of(lhs));
      RationalFunction value = detail::parse_rf_at(rhs, line_no, col_of(rhs));
      if (!value.is_constant()) fail("expected a rational constant", line_no, col_of(rhs) + 1);
      auto& target = keyword == "witness" ? c.witness : c.init;
      target[theta] = value.constant_value();
    } else {
      fail("unknown statement '" + keyword + "'", line_no, lead + 1);
    }
  });
  if (!have_p) fail("missing 'p = <n>'", last_line + 1, 1);
  return c;
}

std::string render(const Condition& c) {
  std::ostringstream out;
  out << "p = " << c.p << "\n";
  for (const auto& beta : c.P) out << "beta " << beta.render() << " := " << c.f.at(beta).render(c.p) << "\n";
  for (const auto& u : c.inequalities) out << "ineq " << u.render(c.p) << " > 0\n";
  auto z = [&](const Theta& t) {
    std::string s = "z[";
    for (std::size_t k = 0; k < t.p(); ++k) s += (k ? "," : "") + std::to_string(t[k]);
    return s + "]";
  };
  for (const auto& [t, v] : c.witness) out << "witness " << z(t) << " = " << v.get_str() << "\n";
  for (const auto& [t, v] : c.init) out << "init " << z(t) << " = " << v.get_str() << "\n";
  return out.str();
}

}  // namespace odf
