#include "mfg/samples.hpp"

#include <algorithm>

namespace mfg::samples {

namespace {

/// Algebra whose basis products are single scaled basis elements:
/// e_i e_j = coeff * e_index, or zero when index < 0.
struct Cell {
  int index;
  int coeff;
};

FinDimAlgebra table_algebra(const Field& k, const std::vector<std::vector<Cell>>& t) {
  const int n = static_cast<int>(t.size());
  FieldVector unit = zero_vector(n, k);
  unit(0) = Scalar::one(k);
  return FinDimAlgebra::from_products(
      k, n,
      [&](int i, int j) {
        FieldVector v = zero_vector(n, k);
        if (t[i][j].index >= 0) v(t[i][j].index) = Scalar(t[i][j].coeff, k);
        return v;
      },
      unit);
}

FinDimAlgebra direct_product(const FinDimAlgebra& a, const FinDimAlgebra& b) {
  const int n = a.dimension(), m = b.dimension();
  FieldVector unit(n + m);
  unit << a.unit(), b.unit();
  return FinDimAlgebra::from_products(
      a.field(), n + m,
      [&](int i, int j) {
        FieldVector v = zero_vector(n + m, a.field());
        if (i < n && j < n) v.head(n) = a.product(i, j);
        if (i >= n && j >= n) v.tail(m) = b.product(i - n, j - n);
        return v;
      },
      unit);
}

UPoly coeffs(const Field& k, std::initializer_list<int> c) {
  UPoly p;
  for (int x : c) p.push_back(Scalar(x, k));
  upoly::trim(p);
  return p;
}

}  // namespace

FinDimAlgebra polynomial_quotient(const Field& k, const UPoly& g0) {
  UPoly g = upoly::monic(g0);
  const int n = upoly::degree(g);
  if (n < 1) throw Error("polynomial_quotient: modulus must have positive degree");
  FieldVector unit = zero_vector(n, k);
  unit(0) = Scalar::one(k);
  return FinDimAlgebra::from_products(
      k, n,
      [&](int i, int j) {
        UPoly mono(static_cast<size_t>(i + j + 1), Scalar::zero(k));
        mono[i + j] = Scalar::one(k);
        UPoly r = upoly::mod(mono, g);
        FieldVector v = zero_vector(n, k);
        for (size_t x = 0; x < r.size(); ++x) v(static_cast<Eigen::Index>(x)) = r[x];
        return v;
      },
      unit);
}

std::vector<NamedAlgebra> algebra_corpus(const Field& k) {
  using A = FinDimAlgebra;
  std::vector<NamedAlgebra> out;
  for (int n = 1; n <= 4; ++n) out.push_back({"k^" + std::to_string(n), A::product_of_fields(k, n)});
  for (int n = 2; n <= 4; ++n) out.push_back({"k[t]/t^" + std::to_string(n), A::truncated_polynomial(k, n)});
  out.push_back({"T2(k)", A::upper_triangular(k, 2)});
  out.push_back({"M2(k)", A::matrix_algebra(k, 2)});
  out.push_back({"k x k[t]/t^2", direct_product(A::product_of_fields(k, 1), A::truncated_polynomial(k, 2))});
  out.push_back({"k x k[t]/t^3", direct_product(A::product_of_fields(k, 1), A::truncated_polynomial(k, 3))});
  out.push_back({"k[t]/t^2 x k[t]/t^2",
                 direct_product(A::truncated_polynomial(k, 2), A::truncated_polynomial(k, 2))});
  out.push_back({"k x T2(k)", direct_product(A::product_of_fields(k, 1), A::upper_triangular(k, 2))});
  // Basis 1, x, y with all products of x, y zero.
  out.push_back({"k[x,y]/(x,y)^2", table_algebra(k, {{{0, 1}, {1, 1}, {2, 1}},
                                                     {{1, 1}, {-1, 0}, {-1, 0}},
                                                     {{2, 1}, {-1, 0}, {-1, 0}}})});
  // Basis 1, x, y, xy with x^2 = y^2 = yx = 0.
  out.push_back({"k<x,y>/(x^2,y^2,yx)", table_algebra(k, {{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                                                         {{1, 1}, {-1, 0}, {3, 1}, {-1, 0}},
                                                         {{2, 1}, {-1, 0}, {-1, 0}, {-1, 0}},
                                                         {{3, 1}, {-1, 0}, {-1, 0}, {-1, 0}}})});
  // Exterior algebra on x, y: yx = -xy.
  out.push_back({"exterior(x,y)", table_algebra(k, {{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                                                   {{1, 1}, {-1, 0}, {3, 1}, {-1, 0}},
                                                   {{2, 1}, {3, -1}, {-1, 0}, {-1, 0}},
                                                   {{3, 1}, {-1, 0}, {-1, 0}, {-1, 0}}})});
  out.push_back({"k[t]/(t^2+1)", polynomial_quotient(k, coeffs(k, {1, 0, 1}))});
  out.push_back({"k[t]/(t^2-2)", polynomial_quotient(k, coeffs(k, {-2, 0, 1}))});
  out.push_back({"k[t]/(t^3-2)", polynomial_quotient(k, coeffs(k, {-2, 0, 0, 1}))});
  out.push_back({"k[t]/(t^4-1)", polynomial_quotient(k, coeffs(k, {-1, 0, 0, 0, 1}))});
  out.push_back({"k[t]/(t^4+1)", polynomial_quotient(k, coeffs(k, {1, 0, 0, 0, 1}))});
  out.push_back({"k[t]/((t^2+1)t^2)", polynomial_quotient(k, coeffs(k, {0, 0, 1, 0, 1}))});
  out.push_back({"k[t]/(t^3-1)", polynomial_quotient(k, coeffs(k, {-1, 0, 0, 1}))});
  return out;
}

FieldMatrix random_invertible(const Field& k, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-2, 2);
  for (;;) {
    FieldMatrix p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = Scalar(coef(rng), k);
    if (matrix_rank<Scalar>(p) == n) return p;
  }
}

FinDimAlgebra change_basis(const FinDimAlgebra& a, const FieldMatrix& p) {
  const int n = a.dimension();
  auto to_new = [&](const FieldVector& v) {
    auto sol = solve_linear<Scalar>(p, v);
    if (!sol || sol->kernel.cols() != 0) throw Error("change_basis: matrix is not invertible");
    return FieldVector(sol->particular);
  };
  return FinDimAlgebra::from_products(
      a.field(), n, [&](int i, int j) { return to_new(a.multiply(p.col(i), p.col(j))); }, to_new(a.unit()));
}

RingPtr unit_weight_ring(const std::vector<std::string>& vars, const std::string& f, const Field& k) {
  return std::make_shared<GradedRing>(k, vars, std::vector<int>(vars.size(), 1), f);
}

ActionPtr sign_action(const RingPtr& r) {
  std::vector<Polynomial> id, neg;
  for (int i = 0; i < r->nvars(); ++i) {
    id.push_back(r->variable(i));
    neg.push_back(-r->variable(i));
  }
  return std::make_shared<GroupAction>(r, FiniteGroup::cyclic(2), std::vector<std::vector<Polynomial>>{id, neg});
}

ActionPtr swap_action(const RingPtr& r) {
  if (r->nvars() < 2) throw Error("swap_action: needs two variables");
  std::vector<Polynomial> id, sw;
  for (int i = 0; i < r->nvars(); ++i) {
    id.push_back(r->variable(i));
    sw.push_back(r->variable(i < 2 ? 1 - i : i));
  }
  return std::make_shared<GroupAction>(r, FiniteGroup::cyclic(2), std::vector<std::vector<Polynomial>>{id, sw});
}

namespace {

PolyMatrix one_by_one(const Polynomial& p) {
  PolyMatrix m(1, 1);
  m(0, 0) = p;
  return m;
}

PolyMatrix parse_matrix(const GradedRing& r, const std::vector<std::vector<std::string>>& rows) {
  PolyMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = r.parse(rows[i][j]);
  return m;
}

/// Z/2 structures (e, s) with the non-identity element acting by s.
std::vector<PolyMatrix> z2(const PolyMatrix& s) { return {poly_identity(s.rows()), s}; }

}  // namespace

EquivariantMF rank_one(const ActionPtr& act, const std::string& a, const std::string& b, int e0, int e1) {
  const GradedRing& r = act->ring();
  Polynomial pa = r.parse(a), pb = r.parse(b);
  PolyMatrix ma = one_by_one(pa), mb = one_by_one(pb);
  if (act->order() == 1) return EquivariantMF::make(act, {0}, {r.degree(pa)}, ma, mb);
  if (act->order() != 2) throw Error("rank_one: signs are only defined for Z/2");
  const int s = act->group().identity() == 0 ? 1 : 0;
  std::vector<PolyMatrix> m0(2), m1(2);
  m0[1 - s] = m1[1 - s] = poly_identity(1);
  m0[s] = one_by_one(r.constant(Scalar(e0)));
  m1[s] = one_by_one(r.constant(Scalar(e1)));
  return EquivariantMF::make(act, {0}, {r.degree(pa)}, ma, mb, m0, m1);
}

std::vector<Setting> desk_settings() {
  std::vector<Setting> out;
  auto add = [&](std::string name, ActionPtr act, std::vector<EquivariantMF> cat) {
    Setting s{std::move(name), std::move(act), std::move(cat), {}};
    for (const auto& x : s.catalog) s.contractible.push_back(is_contractible(x));
    out.push_back(std::move(s));
  };
  {
    RingPtr r = unit_weight_ring({"x"}, "x^3");
    ActionPtr t = GroupAction::trivial(r);
    add("x^3/trivial", t, {rank_one(t, "x", "x^2"), rank_one(t, "x^2", "x"), rank_one(t, "1", "x^3")});
  }
  {
    RingPtr r = unit_weight_ring({"x"}, "x^4");
    ActionPtr t = GroupAction::trivial(r), s = sign_action(r);
    add("x^4/trivial", t,
        {rank_one(t, "x", "x^3"), rank_one(t, "x^2", "x^2"), rank_one(t, "x^3", "x"), rank_one(t, "1", "x^4")});
    add("x^4/sign", s,
        {rank_one(s, "x", "x^3", 1, -1), rank_one(s, "x", "x^3", -1, 1), rank_one(s, "x^2", "x^2", 1, 1),
         rank_one(s, "x^2", "x^2", -1, -1), rank_one(s, "x^3", "x", 1, -1), rank_one(s, "x^3", "x", -1, 1),
         rank_one(s, "1", "x^4", 1, 1)});
  }
  {
    RingPtr r = unit_weight_ring({"x", "y"}, "x^2 + y^2");
    const GradedRing& g = *r;
    PolyMatrix a = parse_matrix(g, {{"x", "-y"}, {"y", "x"}}), b = parse_matrix(g, {{"x", "y"}, {"-y", "x"}});
    ActionPtr t = GroupAction::trivial(r), s = sign_action(r), w = swap_action(r);
    PolyMatrix id = poly_identity(2), neg = scale(poly_identity(2), Scalar(-1));
    PolyMatrix perm = parse_matrix(g, {{"0", "1"}, {"1", "0"}}), diag = parse_matrix(g, {{"1", "0"}, {"0", "-1"}});
    add("x^2+y^2/trivial", t, {EquivariantMF::make(t, {0, 0}, {1, 1}, a, b), rank_one(t, "1", "x^2 + y^2")});
    add("x^2+y^2/sign", s,
        {EquivariantMF::make(s, {0, 0}, {1, 1}, a, b, z2(id), z2(neg)),
         EquivariantMF::make(s, {0, 0}, {1, 1}, a, b, z2(neg), z2(id)), rank_one(s, "1", "x^2 + y^2", 1, 1),
         rank_one(s, "1", "x^2 + y^2", -1, -1)});
    add("x^2+y^2/swap", w,
        {EquivariantMF::make(w, {0, 0}, {1, 1}, a, b, z2(perm), z2(diag)),
         EquivariantMF::make(w, {0, 0}, {1, 1}, a, b, z2(scale(perm, Scalar(-1))), z2(scale(diag, Scalar(-1)))),
         rank_one(w, "1", "x^2 + y^2", 1, 1), rank_one(w, "1", "x^2 + y^2", -1, -1)});
  }
  {
    RingPtr r = unit_weight_ring({"x", "y"}, "x^3 + y^3");
    ActionPtr t = GroupAction::trivial(r), w = swap_action(r);
    const std::string l = "x + y", q = "x^2 - x*y + y^2";
    add("x^3+y^3/trivial", t, {rank_one(t, l, q), rank_one(t, q, l), rank_one(t, "1", "x^3 + y^3")});
    add("x^3+y^3/swap", w,
        {rank_one(w, l, q, 1, 1), rank_one(w, l, q, -1, -1), rank_one(w, q, l, 1, 1), rank_one(w, q, l, -1, -1),
         rank_one(w, "1", "x^3 + y^3", 1, 1)});
  }
  return out;
}

MFMorphism random_morphism(std::mt19937_64& rng, const MorphismSpace& s) {
  std::uniform_int_distribution<int> c(-2, 2);
  FieldVector v(s.dimension());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Scalar(c(rng), s.field());
  return s.combine(v);
}

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

SampleSum random_sum(std::mt19937_64& rng, const Setting& s, int min_pieces, int max_pieces) {
  std::uniform_int_distribution<int> pieces(min_pieces, max_pieces), tw(-1, 1);
  std::uniform_int_distribution<size_t> pick(0, s.catalog.size() - 1);
  SampleSum out{EquivariantMF::zero(s.action), {}, {}};
  for (int n = pieces(rng); n > 0; --n) {
    const size_t i = pick(rng);
    out.pieces.push_back(twist(s.catalog[i], tw(rng)));
    out.indices.push_back(static_cast<int>(i));
  }
  out.object = direct_sum(out.pieces, s.action);
  return out;
}

namespace {

/// Random graded automorphism of a free module and its inverse.
std::pair<PolyMatrix, PolyMatrix> random_automorphism(std::mt19937_64& rng, const GradedFreeModule& m,
                                                      const GradedRing& r) {
  const Eigen::Index n = m.rank();
  PolyMatrix u = poly_identity(n), inv = poly_identity(n);
  if (n == 0) return {u, inv};
  std::uniform_int_distribution<Eigen::Index> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2), kind(0, 3);
  for (int step = 0; step < 2 * static_cast<int>(n) + 2; ++step) {
    const Eigen::Index i = idx(rng), j = idx(rng);
    PolyMatrix e = poly_identity(n), einv = poly_identity(n);
    if (i == j || kind(rng) == 0) {
      // Scale one generator by 2 or -1.
      const bool two = coef(rng) > 0;
      e(i, i) = r.constant(Scalar(two ? 2 : -1));
      einv(i, i) = r.constant(two ? Scalar(1, 2, r.field()) : Scalar(-1));
    } else {
      const int d = m.weights[j] - m.weights[i];
      if (d < 0) continue;
      auto monos = r.basis(d);
      if (monos.empty()) continue;
      std::uniform_int_distribution<size_t> pm(0, monos.size() - 1);
      int c = coef(rng);
      if (c == 0) c = 1;
      Polynomial p = Polynomial::monomial(r.nvars(), monos[pm(rng)], Scalar(c, r.field()));
      e(i, j) = p;
      einv(i, j) = -p;
    }
    u = multiply(e, u);
    inv = multiply(inv, einv);
  }
  return {u, inv};
}

}  // namespace

Conjugate random_conjugate(std::mt19937_64& rng, const EquivariantMF& x) {
  const GradedRing& r = x.ring();
  const GroupAction& act = x.group_action();
  auto [u0, v0] = random_automorphism(rng, x.p0, r);
  auto [u1, v1] = random_automorphism(rng, x.p1, r);
  std::vector<PolyMatrix> m0, m1;
  for (int g = 0; g < x.order(); ++g) {
    m0.push_back(multiply(multiply(u0, x.m0[g]), act.apply(g, v0)));
    m1.push_back(multiply(multiply(u1, x.m1[g]), act.apply(g, v1)));
  }
  EquivariantMF y = EquivariantMF::make(x.action, x.p0.weights, x.p1.weights, multiply(multiply(u0, x.a), v1),
                                        multiply(multiply(u1, x.b), v0), m0, m1);
  return {std::move(y), {u0, u1}, {v0, v1}};
}

namespace {

IdempotentSample block_idempotent(std::mt19937_64& rng, const Setting& s, Conjugate& conj) {
  SampleSum sum = random_sum(rng, s, 1, 3);
  std::vector<MFMorphism> blocks;
  std::vector<EquivariantMF> chosen;
  for (const auto& p : sum.pieces) {
    const bool keep = rng() % 2;
    blocks.push_back(keep ? identity_morphism(p) : zero_morphism(p, p));
    if (keep) chosen.push_back(p);
  }
  MFMorphism e = blocks[0];
  for (size_t i = 1; i < blocks.size(); ++i) e = direct_sum(e, blocks[i]);
  conj = random_conjugate(rng, sum.object);
  return {conj.object, compose(conj.iso, compose(e, conj.inverse)), direct_sum(chosen, s.action)};
}

}  // namespace

IdempotentSample random_strict_idempotent(std::mt19937_64& rng, const Setting& s) {
  Conjugate conj;
  return block_idempotent(rng, s, conj);
}

IdempotentSample random_homotopy_idempotent(std::mt19937_64& rng, const Setting& s) {
  Conjugate conj;
  IdempotentSample out = block_idempotent(rng, s, conj);
  const EquivariantMF& x = out.x;
  MFMorphism n = boundary(x, x, random_homotopy(rng, x, x));
  MFMorphism id = identity_morphism(x);
  MFMorphism e = compose(id + n, compose(out.e, id - n));
  out.e = e + boundary(x, x, random_homotopy(rng, x, x));
  return out;
}

CoherentSample random_homotopy_equivariant(std::mt19937_64& rng, const Setting& s, int max_pieces) {
  SampleSum sum = random_sum(rng, s, 1, max_pieces);
  const EquivariantMF& x = sum.object;
  const GroupAction& act = *x.action;
  Conjugate c = random_conjugate(rng, forget(x));
  std::vector<MFMorphism> theta;
  for (int g = 0; g < act.order(); ++g) {
    MFMorphism t = compose(c.iso, compose(MFMorphism{x.m0[g], x.m1[g]}, pullback(c.inverse, act, g)));
    EquivariantMF src = pullback(c.object, act, g);
    theta.push_back(t + boundary(src, c.object, random_homotopy(rng, src, c.object)));
  }
  return {HomotopyEquivariantObject::make(x.action, c.object, theta), x};
}

}  // namespace mfg::samples
