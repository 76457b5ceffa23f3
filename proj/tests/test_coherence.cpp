#include <doctest.h>

#include "odf/coherence.hpp"
#include "odf/diffpoly.hpp"
#include "odf/error.hpp"
#include "instances.hpp"

using namespace odf;
using namespace odf::test;

namespace {

Rational fact(std::uint32_t n) {
  Rational out = 1;
  for (std::uint32_t k = 2; k <= n; ++k) out *= k;
  return out;
}

Rational jet_value(const TruncatedSeries& a, const Theta& t) {
  Rational out = a.coefficient(t.exponents());
  for (auto k : t.exponents()) out *= fact(k);
  return out;
}

}  // namespace

TEST_CASE("validation") {
  CHECK_FALSE(validate_condition(make(2, {{Theta{1, 1}, z({1, 0}) * z({0, 1})}})));

  auto dep = validate_condition(make(2, {{Theta{0, 1}, z({2, 0})}}));
  REQUIRE(dep);
  CHECK(dep->kind == ConditionViolation::Kind::DependenceViolation);
  CHECK(*dep->beta == Theta{0, 1});
  CHECK(*dep->theta == Theta{2, 0});

  auto anti = validate_condition(make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{1, 1}, z({0, 0})}}));
  REQUIRE(anti);
  CHECK(anti->kind == ConditionViolation::Kind::NotAntichain);

  Condition in_b = make(2, {{Theta{1, 0}, z({0, 0})}});
  in_b.inequalities.push_back(MultiPoly::variable(z_var({2, 0})));
  auto vb = validate_condition(in_b);
  REQUIRE(vb);
  CHECK(vb->kind == ConditionViolation::Kind::VariableInB);
  CHECK(*vb->theta == Theta{2, 0});

  Condition w = make(1, {{Theta{1}, RationalFunction(1) / z({0})}});
  w.inequalities.push_back(MultiPoly::variable(z_var({0})) - MultiPoly(1));
  w.witness[Theta{0}] = 2;
  CHECK_FALSE(validate_condition(w));
  w.witness[Theta{0}] = q(1, 2);
  auto wf = validate_condition(w);
  REQUIRE(wf);
  CHECK(wf->kind == ConditionViolation::Kind::WitnessFails);
  CHECK(*wf->inequality == 0);
  w.inequalities.clear();
  w.witness[Theta{0}] = 0;
  auto wd = validate_condition(w);
  REQUIRE(wd);
  CHECK(wd->kind == ConditionViolation::Kind::WitnessFails);

  CHECK(validate_condition(make(1, {{Theta{0}, z({0})}}))->kind == ConditionViolation::Kind::IdentityInP);
  Condition foreign = make(1, {{Theta{1}, RationalFunction::variable(Var("y"))}});
  CHECK(validate_condition(foreign)->kind == ConditionViolation::Kind::ForeignVariable);

  try {
    (void)derive_system(make(2, {{Theta{0, 1}, z({2, 0})}}), 2);
    FAIL("expected InvalidCondition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidCondition);
  }
}

TEST_CASE("derived system") {
  auto same = derive_system(make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 1}, z({0, 0})}}), 2);
  const auto& o = same.omega.at(Theta{1, 1});
  REQUIRE(o.members.size() == 2);
  CHECK(o.members[0].value == z({0, 0}));
  CHECK(o.members[1].value == z({0, 0}));
  CHECK(o.singleton());

  auto split = derive_system(make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 1}, RationalFunction(1)}}), 2);
  const auto& s = split.omega.at(Theta{1, 1});
  REQUIRE(s.members.size() == 2);
  // pred((1,1)) in increasing order: (0,1) then (1,0).
  CHECK(s.members[0].via == Theta{0, 1});
  CHECK(s.members[0].value == RationalFunction(0));
  CHECK(s.members[1].via == Theta{1, 0});
  CHECK(s.members[1].value == RationalFunction(1));
  CHECK(s.g == RationalFunction(0));

  // I-elements map to themselves.
  auto single = derive_system(make(2, {{Theta{1, 1}, z({1, 0}) * z({0, 1})}}), 3);
  for (const auto& theta : {Theta{0, 0}, Theta{1, 0}, Theta{0, 3}, Theta{2, 0}, Theta{3, 0}}) {
    const auto& e = single.omega.at(theta);
    REQUIRE(e.members.size() == 1);
    CHECK(e.g == z(theta));
  }
  CHECK(single.g({1, 1}) == z({1, 0}) * z({0, 1}));
  // (2,1) = δ1(1,1): g = z[2,0] z[0,1] + z[1,0] z[1,1], and z[1,1] ↦ z[1,0] z[0,1].
  CHECK(single.g({2, 1}) == z({2, 0}) * z({0, 1}) + z({1, 0}) * z({1, 0}) * z({0, 1}));
}

TEST_CASE("rational right-hand sides record their domain") {
  auto sys = derive_system(make(1, {{Theta{1}, RationalFunction(1) / z({0})}}), 3);
  CHECK(sys.g({2}) == -RationalFunction(1) / z({0}).pow(3));
  CHECK(sys.g({3}) == RationalFunction(3) / z({0}).pow(5));
  REQUIRE_FALSE(sys.nonzero.empty());
  for (const auto& d : sys.nonzero) CHECK(d.vars() == std::vector<Var>{z_var({0})});
}

TEST_CASE("coherence decision") {
  CHECK(is_coherent(make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 1}, z({0, 0})}})).coherent);

  auto bad = is_coherent(make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 1}, RationalFunction(1)}}));
  CHECK_FALSE(bad.coherent);
  REQUIRE(bad.conflict);
  CHECK(bad.conflict->theta == Theta{1, 1});
  CHECK(bad.conflict->phi1 == Theta{1, 0});
  CHECK(bad.conflict->phi2 == Theta{0, 1});
  CHECK(bad.conflict->difference == RationalFunction(1));

  CHECK(is_coherent(make(2, {{Theta{1, 1}, z({1, 0}) * z({0, 1})}})).coherent);
  CHECK(is_coherent(make(3, {{Theta{0, 2, 0}, z({0, 1, 0}).pow(2) + z({1, 0, 0})}})).coherent);
  CHECK(is_coherent(Condition{2, {}, {}, {}, {}, {}}).coherent);

  // δ1 a = a and δ2 a = t-independent zero: δ2δ1 a = 0 both ways.
  CHECK(is_coherent(make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 1}, RationalFunction(0)}})).coherent);
  // δ1 a = δ2 a with δ2² a = a is coherent (a = e^{t1+t2}); δ1 a = a with
  // δ2² a = δ2 a + 1 is not, and the first clash sits at ⋁P = (1,2).
  CHECK(is_coherent(make(2, {{Theta{1, 0}, z({0, 1})}, {Theta{0, 2}, z({0, 0})}})).coherent);
  auto deep = is_coherent(make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 2}, z({0, 1}) + RationalFunction(1)}}));
  CHECK_FALSE(deep.coherent);
  REQUIRE(deep.conflict);
  CHECK(deep.conflict->theta == Theta{1, 2});
  CHECK(deep.conflict->phi1 == Theta{1, 1});
  CHECK(deep.conflict->phi2 == Theta{0, 2});
  CHECK(deep.conflict->difference == RationalFunction(1));
}

TEST_CASE("strong coherence probe") {
  CHECK(strong_coherence_probe(make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 1}, z({0, 0})}}), 5).coherent);
  auto single = derive_system(make(2, {{Theta{1, 1}, z({1, 0}) * z({0, 1})}}), 4);
  CHECK(single.omega.at(Theta{2, 2}).members.size() == 2);
  CHECK(single.omega.at(Theta{2, 2}).singleton());
  CHECK(strong_coherence_probe(make(1, {{Theta{2}, z({1}).pow(2) / z({0})}}), 5).coherent);
}

TEST_CASE("series solutions") {
  Condition expo = make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 1}, z({0, 0})}});
  auto a = solve_condition_series(expo, {{Theta{0, 0}, 1}}, 8);
  for (const auto& t : enumerate_theta(2, 8)) CHECK(a.coefficient(t.exponents()) == 1 / (fact(t[0]) * fact(t[1])));
  CHECK(verify_solution(expo, a).ok);

  Condition constant = make(1, {{Theta{1}, RationalFunction(0)}});
  auto c = solve_condition_series(constant, {{Theta{0}, q(7, 3)}}, 6);
  CHECK(c == TruncatedSeries::constant(1, 6, q(7, 3)));
  CHECK(verify_solution(constant, c).ok);

  Condition prod = make(2, {{Theta{1, 1}, z({1, 0}) * z({0, 1})}});
  auto b = solve_condition_series(prod, {{Theta{0, 0}, 0}, {Theta{1, 0}, 1}, {Theta{0, 1}, 1}}, 5);
  CHECK(b.coefficient({1, 1}) == 1);
  CHECK(verify_solution(prod, b).ok);

  auto bad = make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 1}, RationalFunction(1)}});
  try {
    (void)solve_condition_series(bad, {}, 3);
    FAIL("expected NotCoherent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCoherent);
  }

  Condition pole = make(1, {{Theta{1}, RationalFunction(1) / z({0})}});
  try {
    (void)solve_condition_series(pole, {}, 3);
    FAIL("expected SingularInitialData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularInitialData);
  }
  // a' = 1/a, a(0) = 1: a = sqrt(1 + 2t) = 1 + t - t^2/2 + t^3/2 - ...
  auto root = solve_condition_series(pole, {{Theta{0}, 1}}, 4);
  CHECK(root == TruncatedSeries::from_coefficients(4, {1, 1, q(-1, 2), q(1, 2), q(-5, 8)}));
}

TEST_CASE("verification detects corrupted coefficients") {
  Condition expo = make(2, {{Theta{1, 0}, z({0, 0})}, {Theta{0, 1}, z({0, 0})}});
  auto a = solve_condition_series(expo, {{Theta{0, 0}, 1}}, 6);
  auto coeffs = a.terms();
  coeffs[{1, 2}] += 1;
  auto broken = TruncatedSeries::from_coefficients(2, 6, coeffs);
  auto r = verify_solution(expo, broken);
  CHECK_FALSE(r.ok);
  REQUIRE(r.failing_beta);

  Condition with_u = make(1, {{Theta{1}, z({0})}});
  with_u.inequalities.push_back(MultiPoly::variable(z_var({0})));
  CHECK(verify_solution(with_u, solve_condition_series(with_u, {{Theta{0}, 2}}, 4)).ok);
  auto neg = verify_solution(with_u, solve_condition_series(with_u, {{Theta{0}, -2}}, 4));
  CHECK_FALSE(neg.ok);
  CHECK(*neg.failing_inequality == 0);
}

TEST_CASE("series solver agrees with the symbolic recursion") {
  test::Random rng(71);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Condition c = trial % 3 == 0 ? random_pair(rng) : random_single(rng);
    int N = 4;
    std::map<Theta, Rational, ThetaLess> init;
    for (const auto& t : enumerate_theta(c.p, N)) init[t] = rng.rational(3);
    TruncatedSeries a;
    try {
      a = solve_condition_series(c, init, N);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::SingularInitialData);
      continue;
    }
    auto sys = derive_system(c, N);
    ThetaPartition part(Antichain(c.P, c.p));
    auto at_init = [&](const Var& v) {
      auto t = jet_of(v, c.p);
      return part.in_I(t) ? init.at(t) : Rational(0);
    };
    for (const auto& [theta, entry] : sys.omega) {
      Rational expected = evaluate<Rational>(
          entry.g, at_init, [](const Rational& d) { return d != 0; }, Rational(0), Rational(1));
      CHECK(jet_value(a, theta) == expected);
    }
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("solve then verify round trip") {
  test::Random rng(5);
  int solved = 0;
  for (int trial = 0; trial < 80; ++trial) {
    Condition c = random_single(rng);
    std::map<Theta, Rational, ThetaLess> init;
    for (const auto& t : enumerate_theta(c.p, 5)) init[t] = rng.rational(4);
    try {
      auto a = solve_condition_series(c, init, 5);
      auto r = verify_solution(c, a);
      CHECK_MESSAGE(r.ok, r.message);
      ++solved;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SingularInitialData);
    }
  }
  CHECK(solved > 40);
}

TEST_CASE("derivations of g lift through the system") {
  test::Random rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Condition c = trial % 2 ? random_pair(rng) : random_single(rng);
    REQUIRE(is_coherent(c).coherent);
    auto sys = derive_system(c, 4);
    for (const auto& theta : enumerate_theta(c.p, 3))
      for (std::size_t i = 1; i <= c.p; ++i) {
        Theta next = theta_mul(theta, Theta::generator(c.p, i));
        CHECK(sys.g(next) == sys.lift(sys.g(theta), i));
      }
  }
}

TEST_CASE("coherent systems stay coherent at higher orders") {
  test::Random rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Condition c = trial % 2 ? random_pair(rng) : random_single(rng);
    REQUIRE(is_coherent(c).coherent);
    CHECK(strong_coherence_probe(c, trial % 2 ? 5 : 4).coherent);
  }
}

TEST_CASE("condition files") {
  const char* text =
      "# exponential\n"
      "p = 2\n"
      "beta [1,0] := z\n"
      "beta [0,1] := z[0,0]\n"
      "ineq z + 1 > 0\n"
      "witness z[0,0] = 3/2\n"
      "init z[0,0] = 1\n";
  Condition c = parse_condition(text);
  CHECK(c.p == 2);
  CHECK(c.P.size() == 2);
  CHECK(c.f.at(Theta{1, 0}) == z({0, 0}));
  CHECK(c.inequalities.size() == 1);
  CHECK(c.witness.at(Theta{0, 0}) == q(3, 2));
  CHECK(c.init.at(Theta{0, 0}) == 1);
  CHECK_FALSE(validate_condition(c));

  Condition again = parse_condition(render(c));
  CHECK(again.P == c.P);
  CHECK(again.f == c.f);
  CHECK(again.inequalities == c.inequalities);
  CHECK(again.witness == c.witness);
  CHECK(again.init == c.init);

  Condition one = parse_condition("p = 1\nbeta [2] := z'^2 - z\n");
  CHECK(one.f.at(Theta{2}) == z({1}).pow(2) - z({0}));

  try {
    (void)parse_condition("p = 2\nbeta [1,0] := z +\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 14);
  }
  CHECK_THROWS_AS(parse_condition("beta [1] := z\n"), ParseError);
  CHECK_THROWS_AS(parse_condition("p = 1\nfoo\n"), ParseError);
  CHECK_THROWS_AS(parse_condition("p = 1\nineq z >= 0\n"), ParseError);
  CHECK_THROWS_AS(parse_condition("p = 1\nineq 1/z > 0\n"), ParseError);
  CHECK_THROWS_AS(parse_condition("p = 1\ninit y = 1\n"), ParseError);
}
