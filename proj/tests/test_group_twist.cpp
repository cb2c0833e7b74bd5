#include <random>

#include "doctest.h"
#include "mfg/group.hpp"

using namespace mfg;

namespace {

RingPtr ring_of(std::vector<std::string> vars, const std::string& f) {
  std::vector<int> w(vars.size(), 1);
  return std::make_shared<GradedRing>(Field::rationals(), vars, w, f);
}

ActionPtr sign_action(const RingPtr& r) {
  std::vector<Polynomial> id, neg;
  for (int i = 0; i < r->nvars(); ++i) {
    id.push_back(r->variable(i));
    neg.push_back(-r->variable(i));
  }
  return std::make_shared<GroupAction>(r, FiniteGroup::cyclic(2), std::vector{id, neg});
}

ActionPtr swap_action(const RingPtr& r) {
  std::vector<Polynomial> id{r->variable(0), r->variable(1)}, sw{r->variable(1), r->variable(0)};
  return std::make_shared<GroupAction>(r, FiniteGroup::cyclic(2), std::vector{id, sw});
}

Polynomial random_poly(std::mt19937_64& rng, const GradedRing& r) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2), count(0, 3);
  Polynomial p(Scalar::zero(r.field()), r.nvars());
  for (int t = count(rng); t > 0; --t) {
    std::vector<int> e(r.nvars());
    for (auto& x : e) x = deg(rng);
    p += Polynomial::monomial(r.nvars(), Monomial::from_exponents(e), Scalar(coef(rng), r.field()));
  }
  return p;
}

TwistedElement random_element(std::mt19937_64& rng, const GroupAction& a) {
  TwistedElement t = TwistedElement::zero(a);
  for (auto& c : t.coeffs) c = random_poly(rng, a.ring());
  return t;
}

PolyMatrix mat(std::initializer_list<std::initializer_list<Polynomial>> rows) {
  PolyMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("group tables are validated") {
  CHECK(FiniteGroup::cyclic(3).inverse(1) == 2);
  CHECK_THROWS_AS(FiniteGroup({"a", "b"}, {{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(FiniteGroup({"a", "b"}, {{0, 1}}), Error);
  // Identity need not come first.
  FiniteGroup g({"s", "e"}, {{1, 0}, {0, 1}});
  CHECK(g.identity() == 1);
  CHECK(g.inverse(0) == 0);
}

TEST_CASE("ring actions are validated") {
  RingPtr r = ring_of({"x", "y"}, "x^2 + y^2");
  Polynomial x = r->variable(0), y = r->variable(1);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  // Not fixing f.
  CHECK_THROWS_AS(GroupAction(r, z2, {{x, y}, {x + y, y}}), Error);
  // Not an involution, so the group law fails.
  CHECK_THROWS_AS(GroupAction(r, z2, {{x, y}, {y, -x}}), Error);
  // Degree must be preserved.
  RingPtr rx = ring_of({"x"}, "x^2");
  CHECK_THROWS_AS(GroupAction(rx, z2, {{rx->variable(0)}, {rx->variable(0).pow(2)}}), Error);
  // Z/4 acting by x -> y, y -> -x is fine.
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  CHECK_NOTHROW(GroupAction(r, z4, {{x, y}, {y, -x}, {-x, -y}, {-y, x}}));
}

TEST_CASE("twisted_multiply examples") {
  RingPtr r = ring_of({"x"}, "x^2");
  Polynomial x = r->variable(0), one = r->constant(1);
  auto triv = GroupAction::trivial(r);
  auto a = TwistedElement::basis(*triv, x + one, 0), b = TwistedElement::basis(*triv, x, 0);
  CHECK(twisted_multiply(*triv, a, b) == TwistedElement::basis(*triv, (x + one) * x, 0));

  auto sign = sign_action(r);
  const int s = 1, e = 0;
  auto u = TwistedElement::basis(*sign, one, s), v = TwistedElement::basis(*sign, x, s);
  CHECK(twisted_multiply(*sign, u, v) == TwistedElement::basis(*sign, -x, e));
  CHECK(twisted_multiply(*sign, v, v) == TwistedElement::basis(*sign, -(x * x), e));
}

TEST_CASE("is_invariant examples") {
  RingPtr r = ring_of({"x"}, "x^2");
  auto sign = sign_action(r);
  CHECK(is_invariant(r->parse("x^2"), *sign));
  CHECK_FALSE(is_invariant(r->parse("x"), *sign));
  RingPtr r2 = ring_of({"x", "y"}, "x^2 + y^2");
  CHECK(is_invariant(r2->parse("x + y"), *swap_action(r2)));
}

TEST_CASE("twisted group ring is associative and unital; invariants are central") {
  RingPtr r = ring_of({"x", "y"}, "x^2 + y^2");
  std::mt19937_64 rng(11);
  for (const ActionPtr& act : {sign_action(r), swap_action(r)}) {
    const auto unit = TwistedElement::basis(*act, r->constant(1), act->group().identity());
    for (int t = 0; t < 100; ++t) {
      auto a = random_element(rng, *act), b = random_element(rng, *act), c = random_element(rng, *act);
      CHECK(twisted_multiply(*act, twisted_multiply(*act, a, b), c) ==
            twisted_multiply(*act, a, twisted_multiply(*act, b, c)));
      CHECK(twisted_multiply(*act, unit, a) == a);
      CHECK(twisted_multiply(*act, a, unit) == a);

      // Symmetrize a polynomial to get an invariant.
      Polynomial p = random_poly(rng, *r), inv = p + act->apply(1, p);
      REQUIRE(is_invariant(inv, *act));
      auto z = TwistedElement::basis(*act, inv, act->group().identity());
      CHECK(twisted_multiply(*act, z, a) == twisted_multiply(*act, a, z));
    }
  }
}

TEST_CASE("check_semilinear_module examples") {
  RingPtr r = ring_of({"x"}, "x^2");
  Polynomial x = r->variable(0), one = r->constant(1);
  auto sign = sign_action(r);
  SemilinearModule p0{{{0}}, {mat({{one}}), mat({{one}})}};
  SemilinearModule p1{{{1}}, {mat({{one}}), mat({{-one}})}};
  SemilinearModule p1_bad{{{1}}, {mat({{one}}), mat({{one}})}};
  CHECK(check_semilinear_module(*sign, p0));
  CHECK(check_semilinear_module(*sign, p1));
  CHECK(check_intertwines(*sign, p1, p0, mat({{x}}), "A"));
  auto bad = check_intertwines(*sign, p1_bad, p0, mat({{x}}), "A");
  CHECK_FALSE(bad);
  CHECK(bad.message.find("A does not commute") == 0);

  SemilinearModule not_cocycle{{{0}}, {mat({{one}}), mat({{r->constant(2)}})}};
  CHECK_FALSE(check_semilinear_module(*sign, not_cocycle));
  SemilinearModule wrong_identity{{{0}}, {mat({{-one}}), mat({{-one}})}};
  CHECK_FALSE(check_semilinear_module(*sign, wrong_identity));
  SemilinearModule bad_degree{{{0}}, {mat({{one}}), mat({{x}})}};
  CHECK_FALSE(check_semilinear_module(*sign, bad_degree));
}

TEST_CASE("semilinear actions give Q#G-modules") {
  RingPtr r = ring_of({"x", "y"}, "x^2 + y^2");
  Polynomial x = r->variable(0), y = r->variable(1), one = r->constant(1), zero = r->constant(0);
  std::mt19937_64 rng(23);
  // Sign action with M_s = diag(1, -1); swap action with M_s the permutation.
  struct Case {
    ActionPtr act;
    SemilinearModule m;
  };
  std::vector<Case> cases{
      {sign_action(r), {{{0, 1}}, {poly_identity(2), mat({{one, zero}, {zero, -one}})}}},
      {swap_action(r), {{{0, 0}}, {poly_identity(2), mat({{zero, one}, {one, zero}})}}},
  };
  for (const auto& c : cases) {
    REQUIRE(check_semilinear_module(*c.act, c.m));
    CHECK(multiply(c.m.action[1], inverse_action_matrix(*c.act, c.m, 1)) == poly_identity(2));
    for (int t = 0; t < 50; ++t) {
      auto u = random_element(rng, *c.act), v = random_element(rng, *c.act);
      PolyMatrix vec = mat({{random_poly(rng, *r)}, {random_poly(rng, *r)}});
      CHECK(act(*c.act, c.m, twisted_multiply(*c.act, u, v), vec) ==
            act(*c.act, c.m, u, act(*c.act, c.m, v, vec)));
    }
  }
}
