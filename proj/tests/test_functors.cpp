#include "doctest.h"
#include "fixtures.hpp"
#include "mfg/functors.hpp"
#include "mfg/samples.hpp"

using namespace mfg;
using fixtures::rank_one;
using fixtures::rank_one_z2;
using fixtures::ring;
using fixtures::sign;
using fixtures::trivial;

namespace {

std::vector<samples::Setting> z2_settings() {
  std::vector<samples::Setting> out;
  for (auto& s : samples::desk_settings())
    if (s.action->order() == 2) out.push_back(s);
  return out;
}

bool same_data(const EquivariantMF& x, const EquivariantMF& y) {
  return x.p0 == y.p0 && x.p1 == y.p1 && x.a == y.a && x.b == y.b;
}

}  // namespace

TEST_CASE("forget examples") {
  auto s = sign(ring({"x"}, "x^2"));
  EquivariantMF plus = rank_one_z2(s, "x", "x", 1, -1), minus = rank_one_z2(s, "x", "x", -1, 1);
  EquivariantMF f = forget(plus);
  CHECK(f.order() == 1);
  CHECK(same_data(f, plus));
  CHECK(forget(f) == f);
  CHECK(forget(direct_sum(plus, minus)) == direct_sum(forget(plus), forget(minus)));
}

TEST_CASE("induce examples") {
  auto r = ring({"x"}, "x^2");
  auto t = trivial(r);
  EquivariantMF p = rank_one(t, "x", "x");
  CHECK(same_data(induce(p, t), p));

  auto s = sign(r);
  EquivariantMF i = induce(p, s);
  CHECK(validate_mf(i));
  CHECK(i.rank() == 2);
  // id (x) d on the basis g (x) e: block g is sigma_g(d_P).
  CHECK(i.a == fixtures::mat(*r, {{"x", "0"}, {"0", "-x"}}));
  CHECK(i.b == fixtures::mat(*r, {{"x", "0"}, {"0", "-x"}}));

  KSDecomposition d = ks_decompose(i);
  CHECK(check_ks_decomposition(i, d));
  REQUIRE(d.classes.size() == 2);
  CHECK(d.classes[0].multiplicity == 1);
  CHECK(d.classes[1].multiplicity == 1);
  EquivariantMF plus = rank_one_z2(s, "x", "x", 1, -1), minus = rank_one_z2(s, "x", "x", -1, 1);
  int hits_plus = 0, hits_minus = 0;
  for (const auto& c : d.classes) {
    const EquivariantMF& y = d.summands[c.representative].object;
    hits_plus += strict_isomorphism(y, plus).has_value();
    hits_minus += strict_isomorphism(y, minus).has_value();
  }
  CHECK(hits_plus == 1);
  CHECK(hits_minus == 1);

  CHECK_THROWS_AS(induce(plus, s), ValidationError);
}

TEST_CASE("induce and forget are additive functors") {
  std::mt19937_64 rng(11);
  for (const auto& s : z2_settings()) {
    CAPTURE(s.name);
    EquivariantMF x = forget(samples::random_sum(rng, s, 1, 2).object);
    EquivariantMF y = forget(samples::random_sum(rng, s, 1, 2).object);
    MorphismSpace hxy(x, y), hyx(y, x);
    MFMorphism u = samples::random_morphism(rng, hxy), v = samples::random_morphism(rng, hyx);
    EquivariantMF ix = induce(x, s.action), iy = induce(y, s.action);
    CHECK(validate_mf(ix));
    CHECK(check_morphism(ix, iy, induce(u, s.action)));
    CHECK(induce(compose(v, u), s.action) == compose(induce(v, s.action), induce(u, s.action)));
    CHECK(induce(identity_morphism(x), s.action) == identity_morphism(ix));
    Homotopy h = samples::random_homotopy(rng, x, y);
    CHECK(induce(boundary(x, y, h), s.action) == boundary(ix, iy, induce(h, s.action)));
    CHECK(check_homotopy(ix, iy, induce(boundary(x, y, h), s.action), zero_morphism(ix, iy), induce(h, s.action)));
    // The basis reordering g (x) (x_i, y_j) -> (g (x) x_i, g (x) y_j) is an equivariant isomorphism.
    EquivariantMF isum = induce(direct_sum(x, y), s.action), sumi = direct_sum(ix, iy);
    auto reorder = [&](Eigen::Index rx, Eigen::Index ry) {
      const int n = s.action->order();
      PolyMatrix m = poly_zero(n * (rx + ry), n * (rx + ry));
      for (int g = 0; g < n; ++g) {
        for (Eigen::Index i = 0; i < rx; ++i) m(g * rx + i, g * (rx + ry) + i) = 1;
        for (Eigen::Index i = 0; i < ry; ++i) m(n * rx + g * ry + i, g * (rx + ry) + rx + i) = 1;
      }
      return m;
    };
    MFMorphism perm{reorder(x.rank(), y.rank()), reorder(x.rank(), y.rank())};
    MFMorphism back{perm.u0.transpose(), perm.u1.transpose()};
    CHECK(check_morphism(isum, sumi, perm));
    CHECK(compose(back, perm) == identity_morphism(isum));
    CHECK(compose(perm, back) == identity_morphism(sumi));
  }
}

TEST_CASE("averaging_splitting examples") {
  auto r = ring({"x"}, "x^2");
  EquivariantMF p = rank_one(trivial(r), "x", "x");
  AveragingSplitting triv = averaging_splitting(p);
  CHECK(triv.ok());
  CHECK(triv.p == identity_morphism(p));
  CHECK(triv.j == identity_morphism(p));

  auto s = sign(r);
  for (int e0 : {1, -1}) {
    EquivariantMF y = rank_one_z2(s, "x", "x", e0, -e0);
    AveragingSplitting a = averaging_splitting(y);
    CHECK(a.ok());
    CHECK(compose(a.p, a.j) == identity_morphism(y));
    // Direct evaluation of j(y) = 1/|G| sum_g g^-1 (x) g(y) on the generator.
    const GroupAction& act = *s;
    PolyMatrix col = poly_zero(2, 1);
    for (int g = 0; g < 2; ++g) {
      int gi = act.group().inverse(g);
      Polynomial gy = y.m0[g](0, 0);  // g(e) = M_g e
      col(gi, 0) = act.apply(gi, gy) * Scalar(1, 2, r->field());
    }
    CHECK(a.j.u0 == col);
  }

  auto r2 = ring({"x"}, "x^2", Field::prime(2));
  EquivariantMF y2 = rank_one(sign(r2), "x", "x");
  CHECK_THROWS_AS(averaging_splitting(y2), CharacteristicError);
}

TEST_CASE("Y is a summand of induce(forget(Y))") {
  std::mt19937_64 rng(12);
  auto settings = z2_settings();
  for (int trial = 0; trial < 20; ++trial) {
    const auto& s = settings[trial % settings.size()];
    CAPTURE(s.name);
    EquivariantMF y = samples::random_conjugate(rng, samples::random_sum(rng, s, 1, 2).object).object;
    AveragingSplitting a = averaging_splitting(y);
    CHECK(a.linear);
    CHECK(a.chain_map);
    CHECK(a.section);
    CHECK(check_morphism(a.induced, y, a.p));
    CHECK(check_morphism(y, a.induced, a.j));
  }
}

TEST_CASE("base_change examples") {
  auto r = ring({"x"}, "x^2");
  auto t = trivial(r);
  EquivariantMF p = rank_one(t, "x", "x");
  RingHom id = RingHom::identity(t);
  CHECK(id.kind() == RingHomKind::identity);
  CHECK(base_change(id, p) == p);
  EndHomologyComparison cid = compare_end_homology(id, p);
  CHECK(cid.is_isomorphism());

  // x -> x into k[x, y] with the same potential.
  auto r2 = ring({"x", "y"}, "x^2");
  RingHom sub(t, trivial(r2), {r2->parse("x")});
  CHECK(sub.kind() == RingHomKind::substitution);
  EquivariantMF q = base_change(sub, p);
  CHECK(q.a == fixtures::mat(*r2, {{"x"}}));
  CHECK(q.b == fixtures::mat(*r2, {{"x"}}));
  CHECK_THROWS_AS(RingHom(t, trivial(r2), {r2->parse("y")}), ValidationError);
  CHECK_THROWS_AS(RingHom(t, trivial(r2), {r2->parse("x^2")}), ValidationError);

  Field qi = Field::extension(Field::rationals(), {1, 0, 1}, "i");
  RingHom ext = RingHom::field_extension(t, qi);
  CHECK(ext.kind() == RingHomKind::field_extension);
  EndHomologyComparison c = compare_end_homology(ext, p);
  CHECK(c.is_isomorphism());
  CHECK(c.source_dim[0] == 1);
  CHECK(c.target_dim[0] == 1);
  CHECK(c.source_dim[1] == c.target_dim[1]);
  CHECK(c.to_json()["isomorphism"] == true);
}

TEST_CASE("base change along Q -> Q(i) splits the rank-two factorization of x^2 + y^2") {
  auto all = samples::desk_settings();
  const samples::Setting* s = nullptr;
  for (const auto& c : all)
    if (c.name == "x^2+y^2/trivial") s = &c;
  REQUIRE(s);
  const EquivariantMF& x = s->catalog[0];
  CHECK(ks_decompose(x).summands.size() == 1);
  Field qi = Field::extension(Field::rationals(), {1, 0, 1}, "i");
  RingHom ext = RingHom::field_extension(s->action, qi);
  EquivariantMF xi = base_change(ext, x);
  KSDecomposition d = ks_decompose(xi);
  CHECK(check_ks_decomposition(xi, d));
  CHECK(d.summands.size() == 2);
  CHECK(d.noncontractible_classes().size() == 2);
  CHECK(compare_end_homology(ext, x).is_isomorphism());
}

TEST_CASE("base change preserves factorizations and null-homotopic maps") {
  std::mt19937_64 rng(13);
  Field qi = Field::extension(Field::rationals(), {1, 0, 1}, "i");
  for (const auto& s : samples::desk_settings()) {
    CAPTURE(s.name);
    RingHom ext = RingHom::field_extension(s.action, qi);
    EquivariantMF x = samples::random_sum(rng, s, 1, 2).object;
    EquivariantMF y = samples::random_sum(rng, s, 1, 2).object;
    EquivariantMF xe = base_change(ext, x), ye = base_change(ext, y);
    CHECK(validate_mf(xe));
    Homotopy h = samples::random_homotopy(rng, x, y);
    MFMorphism b = boundary(x, y, h);
    CHECK(base_change(ext, b) == boundary(xe, ye, base_change(ext, h)));
    CHECK(StableHomSpace(xe, ye).is_null_homotopic(base_change(ext, b)));
    MorphismSpace hxy(x, y), hyx(y, x);
    MFMorphism u = samples::random_morphism(rng, hxy), v = samples::random_morphism(rng, hyx);
    CHECK(base_change(ext, compose(v, u)) == compose(base_change(ext, v), base_change(ext, u)));
    CHECK(check_morphism(xe, ye, base_change(ext, u)));
    CHECK(StableHomSpace(xe, ye).dimension() == StableHomSpace(x, y).dimension());
  }
}

TEST_CASE("homotopy-equivariant objects") {
  auto r = ring({"x"}, "x^2");
  auto s = sign(r);
  EquivariantMF plus = rank_one_z2(s, "x", "x", 1, -1);
  auto o = HomotopyEquivariantObject::from_equivariant(plus);
  CHECK(check_homotopy_equivariant(o));

  EquivariantMF p = forget(plus);
  MFMorphism id = identity_morphism(p), flip{fixtures::scalar_mat(*r, 1), fixtures::scalar_mat(*r, -1)};
  // P^s = (-x, -x), so the identity is not a map P^s -> P.
  CHECK_THROWS_AS(HomotopyEquivariantObject::make(s, p, {id, id}), ValidationError);
  // 2 flip is a map, but 2 flip sigma(2 flip) = 4 is not homotopic to 1.
  CHECK_THROWS_AS(HomotopyEquivariantObject::make(s, p, {id, flip.scaled(Scalar(2))}), ValidationError);
  auto made = HomotopyEquivariantObject::make(s, p, {id, flip});
  CHECK(check_homotopy_equivariant(made));

  Json j = made.to_json();
  auto back = HomotopyEquivariantObject::from_json(j, s);
  CHECK(back.theta == made.theta);
  CHECK(back.to_json() == j);
  j["theta"]["s"]["U0"][0][0] = "2";
  CHECK_THROWS(HomotopyEquivariantObject::from_json(j, s));
}

TEST_CASE("strictify examples") {
  auto r = ring({"x"}, "x^2");
  auto s = sign(r);
  EquivariantMF plus = rank_one_z2(s, "x", "x", 1, -1), minus = rank_one_z2(s, "x", "x", -1, 1);
  EquivariantMF p = forget(plus);
  MFMorphism id = identity_morphism(p), flip{fixtures::scalar_mat(*r, 1), fixtures::scalar_mat(*r, -1)};

  auto op = HomotopyEquivariantObject::make(s, p, {id, flip});
  auto om = HomotopyEquivariantObject::make(s, p, {id, -flip});
  Strictification sp = strictify(op), sm = strictify(om);
  CHECK(check_strictification(op, sp));
  CHECK(check_strictification(om, sm));
  CHECK(stable_isomorphism(sp.z, plus).has_value());
  CHECK(stable_isomorphism(sm.z, minus).has_value());
  CHECK_FALSE(stable_isomorphism(sp.z, sm.z).has_value());

  auto t = trivial(r);
  auto ot = HomotopyEquivariantObject::make(t, p, {id});
  Strictification st = strictify(ot);
  CHECK(check_strictification(ot, st));
  CHECK(stable_isomorphism(st.z, p).has_value());

  auto r2 = ring({"x"}, "x^2", Field::prime(2));
  EquivariantMF p2 = rank_one(trivial(r2), "x", "x");
  auto o2 = HomotopyEquivariantObject{sign(r2), p2, {identity_morphism(p2), identity_morphism(p2)}, {}, {}};
  CHECK_THROWS_AS(strictify(o2), CharacteristicError);
}

TEST_CASE("strictify inverts the comparison functor on sampled objects") {
  std::mt19937_64 rng(14);
  auto settings = z2_settings();
  for (int trial = 0; trial < 8; ++trial) {
    const auto& s = settings[trial % settings.size()];
    CAPTURE(s.name);
    samples::CoherentSample c = samples::random_homotopy_equivariant(rng, s);
    CHECK(check_homotopy_equivariant(c.object));
    Strictification z = strictify(c.object);
    CHECK(check_strictification(c.object, z));
    CHECK(stable_isomorphism(z.z, c.genuine).has_value());
  }
}
