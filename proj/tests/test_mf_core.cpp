#include "doctest.h"
#include "fixtures.hpp"
#include "mfg/serialize.hpp"

using namespace mfg;
using namespace fixtures;

namespace {

MFMorphism random_morphism(std::mt19937_64& rng, const MorphismSpace& s) {
  std::uniform_int_distribution<int> c(-2, 2);
  FieldVector v(s.dimension());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Scalar(c(rng), s.field());
  return s.combine(v);
}

/// Random equivariant homotopy X -> Y, by averaging random coefficients.
Homotopy random_homotopy(std::mt19937_64& rng, const EquivariantMF& x, const EquivariantMF& y) {
  std::uniform_int_distribution<int> c(-2, 2);
  const GradedRing& r = x.ring();
  auto fill = [&](const GradedFreeModule& src, const GradedFreeModule& tgt, int shift) {
    MapCoordinates mc(src, tgt, shift, r);
    FieldVector v(mc.dimension());
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Scalar(c(rng), r.field());
    return mc.decode(v, 0);
  };
  Homotopy h{fill(x.p0, y.p1, 0), fill(x.p1, y.p0, -r.potential_degree())};
  return average_homotopy(x, y, h);
}

/// Equivariant rank-one objects for f = x^4 under the sign action, plus
/// their sums.
std::vector<EquivariantMF> x4_sign_catalog(const ActionPtr& s) {
  std::vector<EquivariantMF> out;
  out.push_back(rank_one_z2(s, "x", "x^3", 1, -1));
  out.push_back(rank_one_z2(s, "x", "x^3", -1, 1));
  out.push_back(rank_one_z2(s, "x^2", "x^2", 1, 1));
  out.push_back(rank_one_z2(s, "x^2", "x^2", -1, -1));
  out.push_back(rank_one_z2(s, "x^3", "x", 1, -1));
  out.push_back(rank_one_z2(s, "1", "x^4", 1, 1));
  return out;
}

EquivariantMF random_object(std::mt19937_64& rng, const std::vector<EquivariantMF>& cat, int max_pieces) {
  std::uniform_int_distribution<size_t> pick(0, cat.size() - 1);
  std::uniform_int_distribution<int> pieces(1, max_pieces), tw(-1, 1);
  EquivariantMF x = twist(cat[pick(rng)], tw(rng));
  for (int n = pieces(rng) - 1; n > 0; --n) x = direct_sum(x, twist(cat[pick(rng)], tw(rng)));
  return x;
}

}  // namespace

TEST_CASE("validate_mf examples") {
  auto t = trivial(ring({"x"}, "x^2"));
  CHECK_NOTHROW(rank_one(t, "x", "x"));
  const GradedRing& r = t->ring();
  auto x = EquivariantMF::make(t, {0}, {0}, mat(r, {{"1"}}), mat(r, {{"x^2"}}));
  CHECK(validate_mf(x));

  auto t3 = trivial(ring({"x"}, "x^3"));
  EquivariantMF bad = rank_one(trivial(ring({"x"}, "x^2")), "x", "x");
  bad.action = t3;
  auto rep = validate_mf(bad);
  CHECK_FALSE(rep);
  CHECK(rep.message.find("B") == 0);  // B has degree 1 but must have degree 2 for x^3
  CHECK_THROWS_AS(EquivariantMF::make(t3, {0}, {1}, mat(t3->ring(), {{"x"}}), mat(t3->ring(), {{"x"}})),
                  ValidationError);
}

TEST_CASE("validate_mf reports an unfactored potential") {
  // Degrees are legal but AB = x^2 differs from f = xy.
  auto t = trivial(ring({"x", "y"}, "x*y"));
  const GradedRing& r = t->ring();
  EquivariantMF x;
  x.action = t;
  x.p0 = {{0}};
  x.p1 = {{1}};
  x.a = mat(r, {{"x"}});
  x.b = mat(r, {{"x"}});
  x.m0 = {poly_identity(1)};
  x.m1 = {poly_identity(1)};
  auto rep = validate_mf(x);
  CHECK_FALSE(rep);
  CHECK(rep.message.find("AB = f I fails at entry (0,0)") == 0);
}

TEST_CASE("equivariant structures on (x, x) for the sign action") {
  auto s = sign(ring({"x"}, "x^2"));
  CHECK_NOTHROW(rank_one_z2(s, "x", "x", 1, -1));
  CHECK_NOTHROW(rank_one_z2(s, "x", "x", -1, 1));
  CHECK_THROWS_AS(rank_one_z2(s, "x", "x", 1, 1), ValidationError);
}

TEST_CASE("morphism_space examples") {
  auto t = trivial(ring({"x"}, "x^2"));
  auto xx = rank_one(t, "x", "x");
  MorphismSpace end(xx, xx);
  CHECK(end.dimension() == 1);
  CHECK(end.coordinates(identity_morphism(xx)).has_value());

  auto unit = rank_one(t, "1", "x^2");
  for (const auto& y : {xx, unit, twist(xx, 1), twist(unit, -1)}) {
    MorphismSpace hom(unit, y);
    for (const auto& u : hom.basis()) CHECK(homotopy_witness(unit, y, u, zero_morphism(unit, y)));
  }

  // f = x^4: X = (x, x^3), Y = (x^3, x). Degree-0 maps: U0 is a scalar c and
  // U1 has degree 1 - 3 < 0, so U0 A = A' U1 forces c x = 0.
  auto t4 = trivial(ring({"x"}, "x^4"));
  auto a = rank_one(t4, "x", "x^3"), b = rank_one(t4, "x^3", "x");
  CHECK(MorphismSpace(a, b).dimension() == 0);
  // After twisting Y by -2: U0 = c x^2, U1 = d, and c x^3 = d x^3 leaves one parameter.
  CHECK(MorphismSpace(a, twist(b, -2)).dimension() == 1);
}

TEST_CASE("homotopy_witness examples") {
  auto t = trivial(ring({"x"}, "x^2"));
  auto xx = rank_one(t, "x", "x");
  auto id = identity_morphism(xx);
  auto h = homotopy_witness(xx, xx, id, id);
  REQUIRE(h);
  CHECK(is_zero(h->h0));
  CHECK(is_zero(h->h1));
  CHECK_FALSE(homotopy_witness(xx, xx, id, zero_morphism(xx, xx)));

  auto unit = rank_one(t, "1", "x^2");
  auto hu = homotopy_witness(unit, unit, identity_morphism(unit), zero_morphism(unit, unit));
  REQUIRE(hu);
  CHECK(hu->h0 == mat(t->ring(), {{"1"}}));
  CHECK(hu->h1 == mat(t->ring(), {{"0"}}));
  CHECK(check_homotopy(unit, unit, identity_morphism(unit), zero_morphism(unit, unit), *hu));
}

TEST_CASE("is_contractible examples") {
  auto t = trivial(ring({"x"}, "x^2"));
  CHECK(is_contractible(rank_one(t, "1", "x^2")));
  CHECK_FALSE(is_contractible(rank_one(t, "x", "x")));
  CHECK(is_contractible(direct_sum(rank_one(t, "1", "x^2"), rank_one(t, "x^2", "1"))));
  CHECK(is_contractible(EquivariantMF::zero(t)));
}

TEST_CASE("stable_hom examples") {
  auto t = trivial(ring({"x"}, "x^2"));
  auto xx = rank_one(t, "x", "x");
  StableHomSpace end(xx, xx);
  CHECK(end.dimension() == 1);
  CHECK_FALSE(end.is_null_homotopic(identity_morphism(xx)));
  CHECK(StableHomSpace(xx, rank_one(t, "1", "x^2")).dimension() == 0);

  auto t4 = trivial(ring({"x"}, "x^4"));
  auto a = rank_one(t4, "x", "x^3"), b = rank_one(t4, "x^2", "x^2");
  auto sum = direct_sum(a, b);
  Eigen::Index blocks = StableHomSpace(a, a).dimension() + StableHomSpace(a, b).dimension() +
                        StableHomSpace(b, a).dimension() + StableHomSpace(b, b).dimension();
  CHECK(StableHomSpace(sum, sum).dimension() == blocks);
  // Hand count for (x, x^3): U0 = c, U1 = d with c x = x d; both homotopy
  // components have negative degree, so the class space is span(id).
  CHECK(StableHomSpace(a, a).dimension() == 1);
  CHECK(StableHomSpace(b, b).dimension() == 1);
}

TEST_CASE("shift, twist and cone examples") {
  auto t = trivial(ring({"x"}, "x^3"));
  auto x = rank_one(t, "x", "x^2");
  CHECK(validate_mf(shift(x)));
  CHECK(shift(shift(x)) == twist(x, -3));

  auto c = cone(x, x, identity_morphism(x));
  CHECK(validate_mf(c));
  CHECK(is_contractible(c));

  auto y = rank_one(t, "x^2", "x");
  CHECK(cone(x, y, zero_morphism(x, y)) == direct_sum(y, shift(x)));
  CHECK_THROWS_AS(cone(x, x, identity_morphism(x).scaled(Scalar(2)) + MFMorphism{poly_zero(1, 1), poly_identity(1)}),
                  ValidationError);
}

TEST_CASE("homotopies are found by both routes under the sign action") {
  auto s = sign(ring({"x"}, "x^4"));
  auto cat = x4_sign_catalog(s);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto x = random_object(rng, cat, 2), y = random_object(rng, cat, 2);
    MorphismSpace hom(x, y);
    auto u = random_morphism(rng, hom);
    auto n = boundary(x, y, random_homotopy(rng, x, y));
    // u + n is homotopic to u by construction; u itself is null iff the
    // averaging route also says so.
    auto h1 = homotopy_witness(x, y, u + n, u);
    auto h2 = homotopy_witness_by_averaging(x, y, u + n, u);
    REQUIRE(h1);
    REQUIRE(h2);
    CHECK(check_homotopy(x, y, u + n, u, *h1));
    CHECK(check_homotopy(x, y, u + n, u, *h2));
    auto z = zero_morphism(x, y);
    CHECK(homotopy_witness(x, y, u, z).has_value() == homotopy_witness_by_averaging(x, y, u, z).has_value());
  }
}

TEST_CASE("null-homotopic maps form a two-sided ideal; composition preserves morphisms") {
  auto s = sign(ring({"x"}, "x^4"));
  auto cat = x4_sign_catalog(s);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 15; ++t) {
    auto x = random_object(rng, cat, 2), y = random_object(rng, cat, 2), z = random_object(rng, cat, 2);
    MorphismSpace xy(x, y), yz(y, z);
    auto f = random_morphism(rng, xy), g = random_morphism(rng, yz);
    CHECK(check_morphism(x, z, compose(g, f)));
    auto n = boundary(x, y, random_homotopy(rng, x, y));
    REQUIRE(check_morphism(x, y, n));
    CHECK(homotopy_witness(x, z, compose(g, n), zero_morphism(x, z)));
    auto m = boundary(y, z, random_homotopy(rng, y, z));
    CHECK(homotopy_witness(x, z, compose(m, f), zero_morphism(x, z)));
  }
}

TEST_CASE("constructions stay valid and stable hom is additive") {
  auto s = sign(ring({"x"}, "x^4"));
  auto cat = x4_sign_catalog(s);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 15; ++t) {
    auto x = random_object(rng, cat, 2), y = random_object(rng, cat, 2), z = random_object(rng, cat, 1);
    CHECK(validate_mf(direct_sum(x, y)));
    CHECK(validate_mf(shift(x)));
    CHECK(validate_mf(twist(x, 2)));
    MorphismSpace hom(x, y);
    auto u = random_morphism(rng, hom);
    auto c = cone(x, y, u);
    CHECK(validate_mf(c));

    auto i = cone_inclusion(x, y), p = cone_projection(x, y);
    CHECK(check_morphism(y, c, i));
    CHECK(check_morphism(c, shift(x), p));
    CHECK(StableHomSpace(y, shift(x)).is_null_homotopic(compose(p, i)));

    auto d = [](const EquivariantMF& a, const EquivariantMF& b) { return StableHomSpace(a, b).dimension(); };
    CHECK(d(direct_sum(x, y), z) == d(x, z) + d(y, z));
    CHECK(d(z, direct_sum(x, y)) == d(z, x) + d(z, y));
  }
}

TEST_CASE("stable hom classes reduce compositions into the basis") {
  auto t = trivial(ring({"x", "y"}, "x^2 + y^2"));
  const GradedRing& r = t->ring();
  auto x = EquivariantMF::make(t, {0, 0}, {1, 1}, mat(r, {{"x", "y"}, {"-y", "x"}}),
                               mat(r, {{"x", "-y"}, {"y", "x"}}));
  StableHomSpace end(x, x);
  CHECK(end.dimension() >= 1);
  for (const auto& a : end.representatives())
    for (const auto& b : end.representatives()) {
      auto c = end.class_coordinates(compose(a, b));
      REQUIRE(c);
      CHECK(end.is_null_homotopic(end.combine(*c) - compose(a, b)));
    }
}

TEST_CASE("objects round-trip through JSON bit-exactly") {
  auto s = sign(ring({"x"}, "x^4"));
  auto cat = x4_sign_catalog(s);
  std::mt19937_64 rng(21);
  RingPtr r2 = ring_from_json(ring_to_json(s->ring()));
  CHECK(*r2 == s->ring());
  ActionPtr s2 = group_from_json(group_to_json(*s), r2);
  for (int t = 0; t < 10; ++t) {
    auto x = random_object(rng, cat, 3);
    Json j = mf_to_json(x);
    auto back = mf_from_json(j, s2);
    CHECK(back == x);
    CHECK(mf_to_json(back).dump() == j.dump());
  }

  Field qi = Field::extension(Field::rationals(), {mpq_class(1), mpq_class(0), mpq_class(1)}, "i");
  CHECK(field_from_json(field_to_json(qi)) == qi);
  CHECK(field_from_json(Json("GF(7)")) == Field::prime(7));
  CHECK_THROWS_AS(field_from_json(Json("R")), SchemaError);

  auto t = trivial(ring({"x", "y"}, "x^2 + y^2", qi));
  const GradedRing& r = t->ring();
  auto z = EquivariantMF::make(t, {0}, {1}, mat(r, {{"x + i*y"}}), mat(r, {{"x - i*y"}}));
  CHECK(mf_from_json(mf_to_json(z), t) == z);
}
