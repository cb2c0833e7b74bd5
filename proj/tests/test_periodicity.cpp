#include "doctest.h"
#include "fixtures.hpp"
#include "mfg/periodicity.hpp"
#include "mfg/samples.hpp"
#include "mfg/splitting.hpp"

using namespace mfg;
using fixtures::mat;
using fixtures::rank_one;
using fixtures::ring;
using fixtures::trivial;

namespace {

/// Hilbert function of coker(A) over Q/(f) computed over Q: since AB = f I,
/// coker(A) is already killed by f and A is injective over Q.
long coker_dim_over_q(const GradedRing& r, const PolyMatrix& a, const std::vector<int>& w0,
                      const std::vector<int>& w1, int d) {
  const Field& k = r.field();
  std::vector<std::vector<Monomial>> tgt;
  Eigen::Index rows = 0;
  for (int w : w0) {
    tgt.push_back(d - w >= 0 ? r.basis(d - w) : std::vector<Monomial>{});
    rows += static_cast<Eigen::Index>(tgt.back().size());
  }
  Eigen::Index ncols = 0;
  for (int w : w1) ncols += d - w >= 0 ? static_cast<Eigen::Index>(r.basis(d - w).size()) : 0;
  FieldMatrix m = zero_matrix(rows, ncols, k);
  Eigen::Index col = 0;
  for (size_t j = 0; j < w1.size(); ++j) {
    if (d - w1[j] < 0) continue;
    for (const Monomial& mono : r.basis(d - w1[j])) {
      Eigen::Index off = 0;
      for (size_t i = 0; i < w0.size(); ++i) {
        Polynomial p = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                       Polynomial::monomial(r.nvars(), mono, Scalar::one(k));
        FieldVector c = encode_homogeneous(p, tgt[i], k);
        if (c.size()) m.col(col).segment(off, c.size()) = c;
        off += static_cast<Eigen::Index>(tgt[i].size());
      }
      ++col;
    }
  }
  return rows - (m.size() ? static_cast<long>(matrix_rank(m)) : 0);
}

}  // namespace

TEST_CASE("ring Hilbert function of a hypersurface") {
  auto r = ring({"x", "y"}, "x^2 + y^2");
  CHECK(ring_hilbert(*r, -1) == 0);
  CHECK(ring_hilbert(*r, 0) == 1);
  CHECK(ring_hilbert(*r, 1) == 2);
  for (int d = 2; d < 7; ++d) CHECK(ring_hilbert(*r, d) == 2);  // (d + 1) - (d - 1)
  auto r3 = ring({"x"}, "x^3");
  CHECK(ring_hilbert(*r3, 2) == 1);
  CHECK(ring_hilbert(*r3, 3) == 0);
}

TEST_CASE("syzygy_step examples") {
  auto r = ring({"x"}, "x^3");
  GradedRModule k = GradedRModule::residue_field(r);
  CHECK(k.hilbert.at(0) == 1);
  CHECK(k.hilbert.at(1) == 0);
  SyzygyStep s = syzygy_step(k, 6);
  CHECK(s.connecting == mat(*r, {{"x"}}));
  // (x) = R(-1)/(x^2).
  CHECK(s.syzygy.generators == std::vector<int>{1});
  CHECK(s.syzygy.relations == std::vector<int>{3});
  CHECK(s.syzygy.presentation == mat(*r, {{"x^2"}}));
  CHECK(s.kernel_dims == s.generated_dims);

  GradedRModule f = GradedRModule::free(r, {0, 2});
  SyzygyStep z = syzygy_step(f, 6);
  CHECK(z.connecting.cols() == 0);
  CHECK(z.syzygy.generators.empty());

  auto r2 = ring({"x", "y"}, "x^2 + y^2");
  SyzygyStep t = syzygy_step(GradedRModule::residue_field(r2), 4);
  CHECK(t.connecting == mat(*r2, {{"x", "y"}}));
  CHECK(t.source == std::vector<int>{1, 1});
  // Kernel of (x, y): R(-1)^2 -> R in degree 2 has dimension 2 * 2 - dim R_2 = 2.
  REQUIRE(t.kernel_dims.size() >= 2);
  CHECK(t.kernel_dims[0] == 0);
  CHECK(t.kernel_dims[1] == 2);
  CHECK(t.syzygy.relations == std::vector<int>{2, 2});

  auto bad = GradedRModule::make(r, {0}, {0}, mat(*r, {{"1"}}));
  CHECK_THROWS_AS(syzygy_step(bad, 6), ValidationError);
  CHECK_THROWS_AS(syzygy_step(k, 1), DegreeBoundError);
  CHECK_THROWS_AS(syzygy_step(k, 3), DegreeBoundError);
}

TEST_CASE("resolve_periodic examples") {
  auto r3 = ring({"x"}, "x^3");
  ResolutionTail t3 = resolve_periodic(GradedRModule::residue_field(r3), 4, 6);
  CHECK(check_resolution(t3));
  CHECK(t3.period_start == 1);
  CHECK(t3.d(1) == mat(*r3, {{"x"}}));
  CHECK(t3.d(2) == mat(*r3, {{"x^2"}}));
  CHECK(t3.a == mat(*r3, {{"x"}}));
  CHECK(t3.b == mat(*r3, {{"x^2"}}));
  CHECK(t3.exact_repeat);

  auto r2 = ring({"x"}, "x^2");
  ResolutionTail t2 = resolve_periodic(GradedRModule::residue_field(r2), 4, 4);
  CHECK(t2.period_start == 1);
  CHECK(t2.d(1) == mat(*r2, {{"x"}}));
  CHECK(t2.d(2) == mat(*r2, {{"x"}}));

  ResolutionTail tf = resolve_periodic(GradedRModule::free(r2, {0}), 4, 4);
  CHECK(tf.period_start == 0);
  CHECK(tf.steps.empty());
  CHECK_THROWS_AS(extract_factorization(tf, 1), PeriodicityError);

  CHECK_THROWS_AS(resolve_periodic(GradedRModule::residue_field(r3), 1, 6), PeriodicityError);

  Json j = t3.to_json();
  CHECK(j["period_start"] == 1);
  CHECK(j["steps"].size() == t3.steps.size());
}

TEST_CASE("kstab examples") {
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    auto r = ring({"x"}, "x^" + std::to_string(n));
    KStab k = kstab(r);
    CHECK(validate_mf(k.mf));
    CHECK(k.tail.period_start <= 2);
    CHECK(k.mf.a == mat(*r, {{"x"}}));
    CHECK(k.mf.b == fixtures::mat(*r, {{("x^" + std::to_string(n - 1)).c_str()}}));
    EquivariantMF expected = rank_one(trivial(r), "x", ("x^" + std::to_string(n - 1)).c_str());
    CHECK(stable_isomorphism(k.mf, expected).has_value());
  }

  auto r = ring({"x", "y"}, "x^2 + y^2");
  KStab k = kstab(r);
  CHECK(validate_mf(k.mf));
  CHECK(k.mf.rank() == 2);
  CHECK(check_resolution(k.tail));
  PolyMatrix f = poly_identity(2);
  f(0, 0) = f(1, 1) = r->potential();
  CHECK(multiply(k.mf.a, k.mf.b) == f);
  CHECK(multiply(k.mf.b, k.mf.a) == f);
  EquivariantMF ref = EquivariantMF::make(trivial(r), {0, 0}, {1, 1}, mat(*r, {{"x", "-y"}, {"y", "x"}}),
                                          mat(*r, {{"x", "y"}, {"-y", "x"}}));
  KSDecomposition d = ks_decompose(k.mf);
  CHECK(d.noncontractible_classes().size() == 1);
  bool matched = false;
  for (int tw = -2; tw <= 2 && !matched; ++tw) matched = stable_isomorphism(k.mf, twist(ref, tw)).has_value();
  for (int tw = -2; tw <= 2 && !matched; ++tw) matched = stable_isomorphism(k.mf, shift(twist(ref, tw))).has_value();
  CHECK(matched);
}

TEST_CASE("resolutions are exact complexes over R and cokernels match the syzygies") {
  for (const auto& s : samples::desk_settings()) {
    if (s.action->order() != 1) continue;
    CAPTURE(s.name);
    const RingPtr& r = s.action->ring_ptr();
    KStab k = kstab(r);
    CHECK(check_resolution(k.tail));
    const int st = k.tail.period_start;
    const GradedRModule& omega =
        st == 1 ? GradedRModule::residue_field(r) : k.tail.steps[st - 2].syzygy;
    const auto& w0 = k.mf.p0.weights;
    const auto& w1 = k.mf.p1.weights;
    for (const auto& [d, h] : omega.hilbert) CHECK(coker_dim_over_q(*r, k.mf.a, w0, w1, d) == h);
  }
}

TEST_CASE("k^stab depends on the syzygy only up to shift and twist") {
  for (const auto& s : samples::desk_settings()) {
    if (s.action->order() != 1) continue;
    CAPTURE(s.name);
    const RingPtr& r = s.action->ring_ptr();
    KStab k = kstab(r);
    const int st = k.tail.period_start;
    const int df = r->potential_degree();
    EquivariantMF x0 = extract_factorization(k.tail, st);
    EquivariantMF x1 = extract_factorization(k.tail, st + 1);
    EquivariantMF x2 = extract_factorization(k.tail, st + 2);
    bool twist_match = false;
    for (int tw : {df, -df}) twist_match = twist_match || stable_isomorphism(x2, twist(x0, tw)).has_value();
    CHECK(twist_match);
    bool shift_match = false;
    for (int tw = -df; tw <= df && !shift_match; ++tw) shift_match = stable_isomorphism(x1, twist(shift(x0), tw)).has_value();
    CHECK(shift_match);
  }
}
