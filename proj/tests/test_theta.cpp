#include <doctest.h>

#include <algorithm>
#include <set>

#include "odf/error.hpp"
#include "odf/theta.hpp"

using namespace odf;

namespace {

// Every exponent vector in the box [0, side]^p.
std::vector<Theta> box(std::size_t p, std::uint32_t side) {
  std::vector<Theta> out;
  std::vector<std::uint32_t> e(p, 0);
  while (true) {
    out.emplace_back(e);
    std::size_t k = 0;
    while (k < p && e[k] == side) e[k++] = 0;
    if (k == p) break;
    ++e[k];
  }
  return out;
}

bool covered(const std::vector<Theta>& gens, const Theta& t) {
  return std::any_of(gens.begin(), gens.end(), [&](const Theta& g) { return theta_divides(g, t); });
}

std::set<std::vector<std::uint32_t>> as_set(const std::vector<Theta>& v) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& t : v) out.insert(t.exponents());
  return out;
}

// Brute-force minimal elements of the upward closure inside a box.
std::set<std::vector<std::uint32_t>> brute_minimal(const std::vector<Theta>& gens, std::size_t p,
                                                  std::uint32_t side) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& t : box(p, side)) {
    if (!covered(gens, t)) continue;
    bool minimal = true;
    for (const auto& s : predecessors(t))
      if (covered(gens, s)) minimal = false;
    if (minimal) out.insert(t.exponents());
  }
  return out;
}

}  // namespace

TEST_CASE("monoid product") {
  CHECK(theta_mul({1, 0}, {0, 2}) == Theta{1, 2});
  CHECK(theta_mul(Theta::identity(2), {3, 1}) == Theta{3, 1});
  CHECK(theta_mul({2, 1}, {1, 1}) == Theta{3, 2});
  CHECK(theta_mul({2, 1}, {1, 1}).order() == 5);
  CHECK_THROWS_AS(theta_mul({1}, {1, 0}), Error);
}

TEST_CASE("total order") {
  CHECK(theta_cmp({0, 2}, {1, 1}) < 0);
  CHECK(theta_cmp({0, 1}, {1, 0}) < 0);
  CHECK(theta_cmp({1, 1}, {1, 1}) == 0);
  CHECK(theta_cmp({3, 0}, {0, 4}) < 0);
}

TEST_CASE("divisibility") {
  CHECK(theta_divides({1, 0}, {1, 2}));
  CHECK_FALSE(theta_divides({2, 0}, {1, 2}));
  // (0,2) precedes (1,1) in the total order without dividing it.
  CHECK(theta_cmp({0, 2}, {1, 1}) < 0);
  CHECK_FALSE(theta_divides({0, 2}, {1, 1}));
}

TEST_CASE("join and meet") {
  CHECK(theta_join({2, 0}, {1, 1}) == Theta{2, 1});
  CHECK(theta_meet({2, 0}, {1, 1}) == Theta{1, 0});
  CHECK(theta_join({3, 4}, {3, 4}) == Theta{3, 4});
}

TEST_CASE("immediate predecessors") {
  auto p = predecessors({2, 1});
  CHECK(as_set(p) == as_set({Theta{1, 1}, Theta{2, 0}}));
  CHECK(p.size() == 2);
  CHECK(theta_cmp(p[0], p[1]) < 0);
  CHECK(predecessors(Theta::identity(2)).empty());
  CHECK(predecessors({0, 3}) == std::vector<Theta>{Theta{0, 2}});
  CHECK(successor_index({1, 0}, {1, 1}) == 2);
  CHECK(successor_index({1, 0}, {1, 2}) == 0);
}

TEST_CASE("Dickson minimal antichains") {
  auto a = dickson_min({{2, 0}, {1, 1}, {2, 2}}, 2);
  CHECK(as_set(a.elements()) == brute_minimal({{2, 0}, {1, 1}, {2, 2}}, 2, 4));
  CHECK(as_set(a.elements()) == as_set({Theta{2, 0}, Theta{1, 1}}));

  auto b = dickson_min({{2, 0}, {0, 2}, {1, 1}}, 2);
  CHECK(as_set(b.elements()) == brute_minimal({{2, 0}, {0, 2}, {1, 1}}, 2, 4));
  CHECK(b.elements() == std::vector<Theta>{Theta{2, 0}, Theta{1, 1}, Theta{0, 2}});

  CHECK(dickson_min({{1, 0}}, 2).elements() == std::vector<Theta>{Theta{1, 0}});

  try {
    (void)dickson_min({{0, 0}, {1, 0}}, 2);
    FAIL("expected IdentityInGenerators");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IdentityInGenerators);
  }
}

TEST_CASE("Dickson minimal sets preserve the upward closure") {
  // Deterministic sweep over generator sets drawn from small boxes.
  for (std::size_t p = 1; p <= 3; ++p) {
    auto candidates = box(p, 2);
    candidates.erase(candidates.begin());  // drop the identity
    std::size_t n = candidates.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << std::min<std::size_t>(n, 10)); mask += 7) {
      std::vector<Theta> gens;
      for (std::size_t k = 0; k < n && k < 10; ++k)
        if (mask & (std::size_t{1} << k)) gens.push_back(candidates[k]);
      auto a = dickson_min(gens, p);
      const auto& el = a.elements();
      for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = 0; j < el.size(); ++j)
          if (i != j) CHECK_FALSE(theta_divides(el[i], el[j]));
      for (const auto& t : box(p, 4)) CHECK(covered(gens, t) == covered(el, t));
      CHECK(as_set(el) == brute_minimal(gens, p, 4));
    }
  }
}

TEST_CASE("enumeration") {
  CHECK(enumerate_theta(2, 1) == std::vector<Theta>{Theta{0, 0}, Theta{0, 1}, Theta{1, 0}});
  CHECK(enumerate_theta(1, 3) == std::vector<Theta>{Theta{0}, Theta{1}, Theta{2}, Theta{3}});
  CHECK(enumerate_theta(2, 0) == std::vector<Theta>{Theta{0, 0}});

  for (std::size_t p = 1; p <= 3; ++p) {
    auto all = enumerate_theta(p, 5);
    for (std::size_t k = 1; k < all.size(); ++k) CHECK(theta_cmp(all[k - 1], all[k]) < 0);
    std::size_t expected = 0;
    for (const auto& t : box(p, 5))
      if (t.order() <= 5) ++expected;
    CHECK(all.size() == expected);
    CHECK(as_set(all).size() == expected);
  }
}

TEST_CASE("divisibility refines the total order") {
  for (std::size_t p = 1; p <= 3; ++p) {
    auto all = enumerate_theta(p, 6);
    for (const auto& a : all)
      for (const auto& b : all)
        if (a != b && theta_divides(a, b)) REQUIRE(theta_cmp(a, b) < 0);
  }
}

TEST_CASE("the total order is compatible with the product") {
  auto all = enumerate_theta(2, 4);
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : enumerate_theta(2, 2))
        if (theta_cmp(a, b) < 0) REQUIRE(theta_cmp(theta_mul(a, c), theta_mul(b, c)) < 0);
}

TEST_CASE("lattice laws") {
  for (std::size_t p = 1; p <= 2; ++p) {
    auto all = enumerate_theta(p, 5);
    for (const auto& a : all)
      for (const auto& b : all) {
        REQUIRE(theta_join(a, b) == theta_join(b, a));
        REQUIRE(theta_meet(a, b) == theta_meet(b, a));
        REQUIRE(theta_join(a, theta_meet(a, b)) == a);
        REQUIRE(theta_meet(a, theta_join(a, b)) == a);
        REQUIRE(theta_divides(a, theta_join(a, b)));
        REQUIRE(theta_divides(theta_meet(a, b), a));
      }
  }
  auto small = enumerate_theta(2, 3);
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& c : small) {
        REQUIRE(theta_join(theta_join(a, b), c) == theta_join(a, theta_join(b, c)));
        REQUIRE(theta_meet(theta_meet(a, b), c) == theta_meet(a, theta_meet(b, c)));
      }
}

TEST_CASE("partition induced by an antichain") {
  ThetaPartition part(Antichain({{2, 0}, {1, 1}}, 2));
  CHECK(part.in_I({0, 5}));
  CHECK(part.in_I({1, 0}));
  CHECK(part.in_B({3, 0}));
  CHECK(part.in_B({1, 2}));
  CHECK(part.in_P({1, 1}));
  CHECK_FALSE(part.in_P({2, 1}));
  CHECK(part.least_generator_below({2, 1}) == Theta{1, 1});
  CHECK(part.least_generator_below({3, 0}) == Theta{2, 0});

  // I is downward closed and P is the set of minimal elements of B.
  for (const auto& t : enumerate_theta(2, 6)) {
    if (part.in_I(t))
      for (const auto& s : predecessors(t)) CHECK(part.in_I(s));
    bool minimal = part.in_B(t);
    for (const auto& s : predecessors(t))
      if (part.in_B(s)) minimal = false;
    CHECK(minimal == part.in_P(t));
  }

  CHECK_THROWS_AS(Antichain({{1, 0}, {1, 1}}, 2), Error);
}

TEST_CASE("textual notation") {
  CHECK(parse_theta("[1, 2]") == Theta{1, 2});
  CHECK(Theta{1, 2}.render() == "[1,2]");
  CHECK(parse_theta_list("[2,0] [1,1]") == std::vector<Theta>{Theta{2, 0}, Theta{1, 1}});
  CHECK_THROWS_AS(parse_theta("[1,"), Error);
  CHECK_THROWS_AS(parse_theta("1,2"), Error);
}
