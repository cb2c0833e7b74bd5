#include "doctest.h"
#include "fixtures.hpp"
#include "mfg/samples.hpp"
#include "mfg/splitting.hpp"

using namespace mfg;
using fixtures::rank_one;
using fixtures::ring;
using fixtures::trivial;

namespace {

const samples::Setting& setting(const std::vector<samples::Setting>& all, const std::string& name) {
  for (const auto& s : all)
    if (s.name == name) return s;
  throw Error("no setting " + name);
}

MFMorphism projection_onto_first(const EquivariantMF& a, const EquivariantMF& b) {
  return direct_sum(identity_morphism(a), zero_morphism(b, b));
}

}  // namespace

TEST_CASE("split_strict_idempotent examples") {
  auto t = trivial(ring({"x"}, "x^4"));
  EquivariantMF t1 = rank_one(t, "x", "x^3"), t2 = rank_one(t, "x^2", "x^2");
  EquivariantMF x = direct_sum(t1, t2);

  SplitResult id = split_strict_idempotent(x, identity_morphism(x));
  CHECK(id.y == x);
  CHECK(id.pi == identity_morphism(x));
  CHECK(id.iota == identity_morphism(x));

  SplitResult zero = split_strict_idempotent(x, zero_morphism(x, x));
  CHECK(zero.y.rank() == 0);
  CHECK(check_split(x, zero_morphism(x, x), zero, true));

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    samples::Conjugate c = samples::random_conjugate(rng, x);
    MFMorphism e = compose(c.iso, compose(projection_onto_first(t1, t2), c.inverse));
    SplitResult s = split_strict_idempotent(c.object, e);
    CHECK(check_split(c.object, e, s, true));
    auto iso = strict_isomorphism(s.y, t1);
    REQUIRE(iso);
    CHECK(check_isomorphism(s.y, t1, *iso, true));
    KSDecomposition d = ks_decompose(s.y);
    CHECK(d.summands.size() == 1);
  }

  CHECK_THROWS_AS(split_strict_idempotent(x, identity_morphism(x).scaled(Scalar(2))), ValidationError);
}

TEST_CASE("ks_decompose examples") {
  auto t2 = trivial(ring({"x"}, "x^2"));
  KSDecomposition single = ks_decompose(rank_one(t2, "x", "x"));
  REQUIRE(single.summands.size() == 1);
  CHECK(single.classes.size() == 1);
  CHECK(single.classes[0].multiplicity == 1);
  CHECK(!single.summands[0].contractible);

  auto t = trivial(ring({"x"}, "x^4"));
  EquivariantMF x = direct_sum({rank_one(t, "x", "x^3"), rank_one(t, "x^2", "x^2"), rank_one(t, "1", "x^4")}, t);
  KSDecomposition d = ks_decompose(x);
  CHECK(check_ks_decomposition(x, d));
  CHECK(d.summands.size() == 3);
  CHECK(d.noncontractible_classes().size() == 2);
  CHECK(d.contractible_count() == 1);

  EquivariantMF y = rank_one(t, "x", "x^3");
  KSDecomposition dd = ks_decompose(direct_sum(y, y));
  CHECK(check_ks_decomposition(direct_sum(y, y), dd));
  REQUIRE(dd.classes.size() == 1);
  CHECK(dd.classes[0].multiplicity == 2);
  CHECK(strict_isomorphism(dd.summands[0].object, y));

  CHECK(ks_decompose(EquivariantMF::zero(t)).summands.empty());
}

TEST_CASE("split_homotopy_idempotent examples") {
  auto t = trivial(ring({"x"}, "x^4"));
  EquivariantMF t1 = rank_one(t, "x", "x^3"), t2 = rank_one(t, "x^2", "x^2");
  EquivariantMF x = direct_sum(t1, t2);
  std::mt19937_64 rng(4);

  MFMorphism near_id = identity_morphism(x) + boundary(x, x, samples::random_homotopy(rng, x, x));
  SplitResult all = split_homotopy_idempotent(x, near_id);
  CHECK(check_split(x, near_id, all, false));
  CHECK(stable_isomorphism(all.y, x));

  MFMorphism near_zero = boundary(x, x, samples::random_homotopy(rng, x, x));
  SplitResult none = split_homotopy_idempotent(x, near_zero);
  CHECK(check_split(x, near_zero, none, false));
  CHECK(none.y.rank() == 0);

  for (int trial = 0; trial < 5; ++trial) {
    MFMorphism n = boundary(x, x, samples::random_homotopy(rng, x, x));
    MFMorphism id = identity_morphism(x);
    MFMorphism e = compose(id + n, compose(projection_onto_first(t1, t2), id - n));
    SplitResult s = split_homotopy_idempotent(x, e);
    CHECK(check_split(x, e, s, false));
    auto iso = stable_isomorphism(s.y, t1);
    REQUIRE(iso);
    CHECK(check_isomorphism(s.y, t1, *iso, false));
    CHECK(ks_decompose(s.y).noncontractible_classes().size() == 1);
  }

  CHECK_THROWS_AS(split_homotopy_idempotent(x, identity_morphism(x).scaled(Scalar(2))), ValidationError);
}

TEST_CASE("formal idempotent completion") {
  auto t = trivial(ring({"x"}, "x^4"));
  EquivariantMF t1 = rank_one(t, "x", "x^3"), t2 = rank_one(t, "x^2", "x^2");
  EquivariantMF x = direct_sum(t1, t2);

  auto plain = FormalIdempotentObject::make(x, identity_morphism(x));
  auto other = FormalIdempotentObject::make(t1, identity_morphism(t1));
  CHECK(formal_hom_dimension(plain, other) == StableHomSpace(x, t1).dimension());
  CHECK(formal_hom_dimension(plain, plain) == StableHomSpace(x, x).dimension());

  auto o = FormalIdempotentObject::make(x, projection_onto_first(t1, t2));
  CHECK(formal_identity(o) == o.e);
  CHECK(StableHomSpace(x, x).is_null_homotopic(formal_compose(o.e, o.e) - o.e));
  CHECK(check_formal_morphism(o, o, o.e));
  CHECK_FALSE(check_formal_morphism(o, o, identity_morphism(x)));

  FormalComparison c = formal_comparison(o);
  CHECK(check_formal_comparison(o, c));
  CHECK(stable_isomorphism(c.split.x, t1));

  CHECK_THROWS_AS(FormalIdempotentObject::make(x, identity_morphism(x).scaled(Scalar(3))), ValidationError);
}

TEST_CASE("randomized homotopy idempotents split with exact certificates") {
  auto all = samples::desk_settings();
  std::mt19937_64 rng(77);
  int done = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const auto& s = all[trial % all.size()];
    CAPTURE(s.name);
    samples::IdempotentSample sm = samples::random_homotopy_idempotent(rng, s);
    SplitResult r = split_homotopy_idempotent(sm.x, sm.e);
    CHECK(check_split(sm.x, sm.e, r, false));
    auto iso = stable_isomorphism(r.y, sm.expected);
    REQUIRE(iso);
    CHECK(check_isomorphism(r.y, sm.expected, *iso, false));
    ++done;
  }
  CHECK(done == 24);
}

TEST_CASE("strict idempotents split bit-exactly") {
  auto all = samples::desk_settings();
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 24; ++trial) {
    const auto& s = all[trial % all.size()];
    CAPTURE(s.name);
    samples::IdempotentSample sm = samples::random_strict_idempotent(rng, s);
    REQUIRE(compose(sm.e, sm.e) == sm.e);
    SplitResult r = split_strict_idempotent(sm.x, sm.e);
    CHECK(compose(r.pi, r.iota) == identity_morphism(r.y));
    CHECK(compose(r.iota, r.pi) == sm.e);
    CHECK(strict_isomorphism(r.y, sm.expected).has_value());
  }
}

TEST_CASE("Krull-Schmidt multisets are invariant under conjugation") {
  auto all = samples::desk_settings();
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 16; ++trial) {
    const auto& s = all[trial % all.size()];
    CAPTURE(s.name);
    samples::SampleSum x = samples::random_sum(rng, s, 1, 3);
    samples::Conjugate c = samples::random_conjugate(rng, x.object);
    KSDecomposition d1 = ks_decompose(x.object), d2 = ks_decompose(c.object);
    CHECK(check_ks_decomposition(x.object, d1));
    CHECK(check_ks_decomposition(c.object, d2));
    CHECK(d1.summands.size() == x.pieces.size());
    REQUIRE(d1.classes.size() == d2.classes.size());
    // Match classes by isomorphism of representatives, with equal multiplicity.
    std::vector<bool> used(d2.classes.size(), false);
    for (const auto& a : d1.classes) {
      bool found = false;
      for (size_t j = 0; j < d2.classes.size() && !found; ++j) {
        if (used[j] || d2.classes[j].multiplicity != a.multiplicity) continue;
        if (strict_isomorphism(d1.summands[a.representative].object, d2.summands[d2.classes[j].representative].object))
          used[j] = found = true;
      }
      CHECK(found);
    }
    // Contractible strict summands are exactly those that vanish stably.
    for (const auto& sm : d1.summands) CHECK(sm.contractible == (StableHomSpace(sm.object, sm.object).dimension() == 0));
  }
}

TEST_CASE("equivariant summands respect the group action") {
  auto all = samples::desk_settings();
  const auto& s = setting(all, "x^4/sign");
  EquivariantMF x = direct_sum(s.catalog[0], s.catalog[1]);
  KSDecomposition d = ks_decompose(x);
  CHECK(check_ks_decomposition(x, d));
  CHECK(d.classes.size() == 2);
  CHECK_FALSE(strict_isomorphism(s.catalog[0], s.catalog[1]));
  CHECK_FALSE(stable_isomorphism(s.catalog[0], s.catalog[1]));
  CHECK(strict_isomorphism(forget(s.catalog[0]), forget(s.catalog[1])));
}
