#include "mfg/splitting.hpp"

namespace mfg {

namespace {

PolyMatrix constant_matrix(const FieldMatrix& m, const GradedRing& r) {
  PolyMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = r.constant(m(i, j));
  return out;
}

FieldMatrix constant_part(const PolyMatrix& m, const Field& k) {
  FieldMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).constant_term().coerce(k);
  return out;
}

PolyMatrix select(const PolyMatrix& m, const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols) {
  PolyMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

std::vector<Eigen::Index> all_indices(Eigen::Index n) {
  std::vector<Eigen::Index> v(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) v[i] = i;
  return v;
}

/// Inverse of a square degree-0 graded matrix whose constant part is invertible.
PolyMatrix graded_inverse(const PolyMatrix& g, const GradedRing& r) {
  const Eigen::Index n = g.rows();
  const Field& k = r.field();
  FieldMatrix g0 = constant_part(g, k);
  FieldMatrix id = zero_matrix(n, n, k);
  for (Eigen::Index i = 0; i < n; ++i) id(i, i) = Scalar::one(k);
  FieldMatrix g0inv(n, n);
  Eliminator<Scalar> elim(g0);
  if (elim.rank() != n) throw Error("graded_inverse: constant part is singular (internal error)");
  for (Eigen::Index j = 0; j < n; ++j) {
    auto sol = solve_linear<Scalar>(g0, FieldVector(id.col(j)));
    g0inv.col(j) = sol->particular;
  }
  PolyMatrix c = constant_matrix(g0inv, r);
  // g0^-1 g = I + N with N nilpotent (every entry raises degree), so the
  // Neumann series terminates.
  PolyMatrix nil = multiply(c, g) - poly_identity(n);
  PolyMatrix sum = poly_identity(n), term = poly_identity(n);
  for (Eigen::Index step = 0; !is_zero(term); ++step) {
    if (step > 4 * n + 64) throw Error("graded_inverse: series did not terminate (internal error)");
    term = -multiply(term, nil);
    sum += term;
  }
  return multiply(sum, c);
}

PolyMatrix hstack(const std::vector<PolyMatrix>& blocks, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  PolyMatrix out = poly_zero(rows, cols);
  Eigen::Index c = 0;
  for (const auto& b : blocks) {
    if (b.cols()) out.middleCols(c, b.cols()) = b;
    c += b.cols();
  }
  return out;
}

PolyMatrix vstack(const std::vector<PolyMatrix>& blocks, Eigen::Index cols) {
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  PolyMatrix out = poly_zero(rows, cols);
  Eigen::Index r = 0;
  for (const auto& b : blocks) {
    if (b.rows()) out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

void require_morphism(const EquivariantMF& x, const MFMorphism& e, const char* what) {
  if (auto rep = check_morphism(x, x, e); !rep) throw ValidationError(std::string(what) + ": " + rep.message);
}

/// Maps into / out of a direct sum, given per-block morphisms.
MFMorphism from_blocks(const std::vector<MFMorphism>& maps, const EquivariantMF& tgt) {
  std::vector<PolyMatrix> b0, b1;
  for (const auto& m : maps) {
    b0.push_back(m.u0);
    b1.push_back(m.u1);
  }
  return {hstack(b0, tgt.p0.rank()), hstack(b1, tgt.p1.rank())};
}

MFMorphism into_blocks(const std::vector<MFMorphism>& maps, const EquivariantMF& src) {
  std::vector<PolyMatrix> b0, b1;
  for (const auto& m : maps) {
    b0.push_back(m.u0);
    b1.push_back(m.u1);
  }
  return {vstack(b0, src.p0.rank()), vstack(b1, src.p1.rank())};
}

/// Blocks of a morphism on X + Y.
MFMorphism block(const MFMorphism& u, const EquivariantMF& x, const EquivariantMF& y, bool from_x, bool to_x) {
  const Eigen::Index r0 = to_x ? 0 : x.p0.rank(), c0 = from_x ? 0 : x.p0.rank();
  const Eigen::Index r1 = to_x ? 0 : x.p1.rank(), c1 = from_x ? 0 : x.p1.rank();
  const Eigen::Index n0 = to_x ? x.p0.rank() : y.p0.rank(), m0 = from_x ? x.p0.rank() : y.p0.rank();
  const Eigen::Index n1 = to_x ? x.p1.rank() : y.p1.rank(), m1 = from_x ? x.p1.rank() : y.p1.rank();
  return {u.u0.block(r0, c0, n0, m0), u.u1.block(r1, c1, n1, m1)};
}

}  // namespace

FinDimAlgebra strict_end_algebra(const MorphismSpace& end) {
  const int n = static_cast<int>(end.dimension());
  const auto& b = end.basis();
  if (n == 0) return FinDimAlgebra(end.field(), {}, zero_vector(0, end.field()));
  auto coords = [&](const MFMorphism& u) {
    auto c = end.coordinates(u);
    if (!c) throw Error("strict_end_algebra: composite left the hom space (internal error)");
    return *c;
  };
  MFMorphism id{poly_identity(b[0].u0.rows()), poly_identity(b[0].u1.rows())};
  return FinDimAlgebra::from_products(
      end.field(), n, [&](int i, int j) { return coords(compose(b[i], b[j])); }, coords(id), false);
}

FinDimAlgebra stable_end_algebra(const StableHomSpace& end) {
  const int n = static_cast<int>(end.dimension());
  const Field& k = end.cycles().field();
  if (n == 0) return FinDimAlgebra(k, {}, zero_vector(0, k));
  const auto& b = end.representatives();
  auto coords = [&](const MFMorphism& u) {
    auto c = end.class_coordinates(u);
    if (!c) throw Error("stable_end_algebra: composite is not a cycle (internal error)");
    return *c;
  };
  MFMorphism id{poly_identity(b[0].u0.rows()), poly_identity(b[0].u1.rows())};
  return FinDimAlgebra::from_products(
      k, n, [&](int i, int j) { return coords(compose(b[i], b[j])); }, coords(id), false);
}

ProjectorSplitting split_projector(const PolyMatrix& e, const std::vector<int>& weights, const GradedRing& ring) {
  const Field& k = ring.field();
  const Eigen::Index n = e.rows();
  ProjectorSplitting out;
  if (n == 0) {
    out.iota = poly_zero(0, 0);
    out.pi = poly_zero(0, 0);
    return out;
  }
  // Modulo the irrelevant ideal, e is a linear projector; columns forming a
  // basis of its image lift to a free basis of im(e) by graded Nakayama.
  FieldMatrix e0 = constant_part(e, k);
  Eliminator<Scalar> ce(e0);
  std::vector<Eigen::Index> cols = ce.pivot_columns();
  const Eigen::Index r = static_cast<Eigen::Index>(cols.size());
  FieldMatrix sub(r, n);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = e0(j, cols[i]);
  std::vector<Eigen::Index> rows = Eliminator<Scalar>(sub).pivot_columns();
  for (auto c : cols) out.weights.push_back(weights[c]);
  out.iota = select(e, all_indices(n), cols);
  if (r == 0) {
    out.pi = poly_zero(0, n);
    return out;
  }
  PolyMatrix g = select(e, rows, cols);
  out.pi = multiply(graded_inverse(g, ring), select(e, rows, all_indices(n)));
  if (multiply(out.pi, out.iota) != poly_identity(r) || multiply(out.iota, out.pi) != e)
    throw Error("split_projector: image is not a graded free summand (internal error)");
  return out;
}

SplitResult split_strict_idempotent(const EquivariantMF& x, const MFMorphism& e) {
  require_morphism(x, e, "split_strict_idempotent");
  if (compose(e, e) != e) throw ValidationError("split_strict_idempotent: e is not exactly idempotent");
  const GradedRing& r = x.ring();
  const GroupAction& act = x.group_action();
  ProjectorSplitting s0 = split_projector(e.u0, x.p0.weights, r), s1 = split_projector(e.u1, x.p1.weights, r);
  if (s0.weights.size() != s1.weights.size())
    throw Error("split_strict_idempotent: image components have different ranks (internal error)");
  PolyMatrix a = multiply(multiply(s0.pi, x.a), s1.iota), b = multiply(multiply(s1.pi, x.b), s0.iota);
  std::vector<PolyMatrix> m0, m1;
  for (int g = 0; g < x.order(); ++g) {
    m0.push_back(multiply(multiply(s0.pi, x.m0[g]), act.apply(g, s0.iota)));
    m1.push_back(multiply(multiply(s1.pi, x.m1[g]), act.apply(g, s1.iota)));
  }
  SplitResult out{EquivariantMF::make(x.action, s0.weights, s1.weights, a, b, m0, m1),
                  {s0.pi, s1.pi},
                  {s0.iota, s1.iota},
                  std::nullopt,
                  std::nullopt};
  return out;
}

int KSDecomposition::contractible_count() const {
  int n = 0;
  for (const auto& s : summands) n += s.contractible;
  return n;
}

std::vector<KSClass> KSDecomposition::noncontractible_classes() const {
  std::vector<KSClass> out;
  for (const auto& c : classes)
    if (!c.contractible) out.push_back(c);
  return out;
}

KSDecomposition ks_decompose(const EquivariantMF& x, std::stop_token stop) {
  KSDecomposition d;
  if (x.rank() == 0) return d;
  MorphismSpace end(x, x, stop);
  FinDimAlgebra alg = strict_end_algebra(end);
  std::vector<FieldVector> idem = primitive_decomposition(alg);
  std::vector<int> class_of;
  for (size_t i = 0; i < idem.size(); ++i) {
    if (stop.stop_requested()) throw Cancelled();
    SplitResult s = split_strict_idempotent(x, end.combine(idem[i]));
    KSSummand sm{s.y, s.pi, s.iota, is_contractible(s.y, stop), -1, identity_morphism(s.y), identity_morphism(s.y)};
    for (size_t c = 0; c < d.classes.size() && sm.class_index < 0; ++c) {
      const int rep = d.classes[c].representative;
      auto iso = idempotent_isomorphism(alg, idem[rep], idem[i]);
      if (!iso) continue;
      const KSSummand& r = d.summands[rep];
      sm.class_index = static_cast<int>(c);
      sm.to_representative = compose(r.projection, compose(end.combine(iso->first), sm.inclusion));
      sm.from_representative = compose(sm.projection, compose(end.combine(iso->second), r.inclusion));
      ++d.classes[c].multiplicity;
    }
    if (sm.class_index < 0) {
      sm.class_index = static_cast<int>(d.classes.size());
      d.classes.push_back({static_cast<int>(i), 1, sm.contractible});
    }
    d.summands.push_back(std::move(sm));
  }
  return d;
}

CheckReport check_ks_decomposition(const EquivariantMF& x, const KSDecomposition& d) {
  MFMorphism total = zero_morphism(x, x);
  for (size_t i = 0; i < d.summands.size(); ++i) {
    const KSSummand& s = d.summands[i];
    if (auto r = validate_mf(s.object); !r) return CheckReport::fail("summand " + std::to_string(i) + ": " + r.message);
    if (auto r = check_morphism(x, s.object, s.projection); !r) return CheckReport::fail("projection: " + r.message);
    if (auto r = check_morphism(s.object, x, s.inclusion); !r) return CheckReport::fail("inclusion: " + r.message);
    total = total + compose(s.inclusion, s.projection);
    for (size_t j = 0; j < d.summands.size(); ++j) {
      MFMorphism p = compose(s.projection, d.summands[j].inclusion);
      MFMorphism want = i == j ? identity_morphism(s.object) : zero_morphism(d.summands[j].object, s.object);
      if (p != want) return CheckReport::fail("pi_i iota_j differs from delta_ij at " + std::to_string(i) + "," + std::to_string(j));
    }
    const KSSummand& rep = d.summands[d.classes.at(s.class_index).representative];
    if (compose(s.from_representative, s.to_representative) != identity_morphism(s.object) ||
        compose(s.to_representative, s.from_representative) != identity_morphism(rep.object))
      return CheckReport::fail("summand " + std::to_string(i) + " is not isomorphic to its class representative");
    if (auto r = check_morphism(s.object, rep.object, s.to_representative); !r) return CheckReport::fail(r.message);
    if (auto r = check_morphism(rep.object, s.object, s.from_representative); !r) return CheckReport::fail(r.message);
    if (!is_nc_local(strict_end_algebra(MorphismSpace(s.object, s.object))))
      return CheckReport::fail("summand " + std::to_string(i) + " has a non-local endomorphism ring");
    if (is_contractible(s.object) != s.contractible)
      return CheckReport::fail("summand " + std::to_string(i) + " has a wrong contractibility flag");
  }
  if (total != identity_morphism(x)) return CheckReport::fail("sum of iota_i pi_i is not the identity");
  return CheckReport::pass();
}

SplitResult split_homotopy_idempotent(const EquivariantMF& x, const MFMorphism& e, std::stop_token stop) {
  require_morphism(x, e, "split_homotopy_idempotent");
  if (!homotopy_witness(x, x, compose(e, e), e, stop))
    throw ValidationError("split_homotopy_idempotent: e e is not homotopic to e");
  StableHomSpace st(x, x, stop);
  FinDimAlgebra alg = stable_end_algebra(st);
  std::vector<KSSummand> pieces;
  std::vector<FieldVector> eps;
  std::vector<FieldVector> primitives;
  if (alg.dimension() > 0) {
    FieldVector ebar = *st.class_coordinates(e);
    if (!alg.is_idempotent(ebar)) throw Error("split_homotopy_idempotent: class of e is not idempotent (internal error)");
    for (auto& s : ks_decompose(x, stop).summands) {
      if (s.contractible) continue;
      eps.push_back(*st.class_coordinates(compose(s.inclusion, s.projection)));
      pieces.push_back(std::move(s));
    }
    CornerAlgebra c = corner(alg, ebar);
    if (c.algebra.dimension() > 0)
      for (const auto& p : primitive_decomposition(c.algebra)) primitives.push_back(c.embedding * p);
  }

  std::vector<bool> used(pieces.size(), false);
  std::vector<EquivariantMF> objs;
  std::vector<MFMorphism> incl, proj;
  for (const auto& f : primitives) {
    bool found = false;
    for (size_t i = 0; i < pieces.size() && !found; ++i) {
      if (used[i]) continue;
      auto iso = idempotent_isomorphism(alg, f, eps[i]);
      if (!iso) continue;
      used[i] = found = true;
      objs.push_back(pieces[i].object);
      incl.push_back(compose(st.combine(iso->first), pieces[i].inclusion));
      proj.push_back(compose(pieces[i].projection, st.combine(iso->second)));
    }
    if (!found) throw Error("split_homotopy_idempotent: no summand matches a primitive idempotent (internal error)");
  }
  SplitResult out;
  out.y = direct_sum(objs, x.action);
  out.iota = from_blocks(incl, x);
  out.pi = into_blocks(proj, x);
  if (objs.empty()) {
    out.iota = zero_morphism(out.y, x);
    out.pi = zero_morphism(x, out.y);
  }
  out.section_witness = homotopy_witness(out.y, out.y, compose(out.pi, out.iota), identity_morphism(out.y), stop);
  out.idempotent_witness = homotopy_witness(x, x, compose(out.iota, out.pi), e, stop);
  if (!out.section_witness || !out.idempotent_witness)
    throw Error("split_homotopy_idempotent: certificates could not be produced (internal error)");
  return out;
}

CheckReport check_split(const EquivariantMF& x, const MFMorphism& e, const SplitResult& s, bool strict) {
  if (auto r = validate_mf(s.y); !r) return CheckReport::fail("split object: " + r.message);
  if (auto r = check_morphism(x, s.y, s.pi); !r) return CheckReport::fail("pi: " + r.message);
  if (auto r = check_morphism(s.y, x, s.iota); !r) return CheckReport::fail("iota: " + r.message);
  MFMorphism pi_iota = compose(s.pi, s.iota), iota_pi = compose(s.iota, s.pi);
  if (strict) {
    if (pi_iota != identity_morphism(s.y)) return CheckReport::fail("pi iota is not the identity");
    if (iota_pi != e) return CheckReport::fail("iota pi differs from e");
    return CheckReport::pass();
  }
  if (!s.section_witness || !s.idempotent_witness) return CheckReport::fail("missing homotopy witness");
  if (auto r = check_homotopy(s.y, s.y, pi_iota, identity_morphism(s.y), *s.section_witness); !r)
    return CheckReport::fail("pi iota ~ id: " + r.message);
  if (auto r = check_homotopy(x, x, iota_pi, e, *s.idempotent_witness); !r)
    return CheckReport::fail("iota pi ~ e: " + r.message);
  return CheckReport::pass();
}

namespace {

std::optional<Isomorphism> isomorphism_via(const EquivariantMF& x, const EquivariantMF& y, bool stable,
                                           std::stop_token stop) {
  EquivariantMF s = direct_sum(x, y);
  MFMorphism ex = direct_sum(identity_morphism(x), zero_morphism(y, y));
  MFMorphism ey = direct_sum(zero_morphism(x, x), identity_morphism(y));
  Isomorphism iso;
  if (stable) {
    StableHomSpace st(s, s, stop);
    FinDimAlgebra alg = stable_end_algebra(st);
    if (alg.dimension() == 0) {
      iso = {zero_morphism(x, y), zero_morphism(y, x), std::nullopt, std::nullopt};
    } else {
      auto pq = idempotent_equivalence(alg, *st.class_coordinates(ex), *st.class_coordinates(ey));
      if (!pq) return std::nullopt;
      // p in ex E ey is a map Y -> X; q in ey E ex is a map X -> Y.
      MFMorphism p = compose(ex, compose(st.combine(pq->first), ey));
      MFMorphism q = compose(ey, compose(st.combine(pq->second), ex));
      iso = {block(q, x, y, true, false), block(p, x, y, false, true), std::nullopt, std::nullopt};
    }
    iso.backward_forward =
        homotopy_witness(x, x, compose(iso.backward, iso.forward), identity_morphism(x), stop);
    iso.forward_backward =
        homotopy_witness(y, y, compose(iso.forward, iso.backward), identity_morphism(y), stop);
    if (!iso.backward_forward || !iso.forward_backward)
      throw Error("stable_isomorphism: witnesses missing (internal error)");
    return iso;
  }
  if (x.rank() == 0 && y.rank() == 0) return Isomorphism{zero_morphism(x, y), zero_morphism(y, x), {}, {}};
  MorphismSpace end(s, s, stop);
  FinDimAlgebra alg = strict_end_algebra(end);
  auto pq = idempotent_equivalence(alg, *end.coordinates(ex), *end.coordinates(ey));
  if (!pq) return std::nullopt;
  iso = {block(end.combine(pq->second), x, y, true, false), block(end.combine(pq->first), x, y, false, true),
         std::nullopt, std::nullopt};
  return iso;
}

}  // namespace

std::optional<Isomorphism> strict_isomorphism(const EquivariantMF& x, const EquivariantMF& y, std::stop_token stop) {
  return isomorphism_via(x, y, false, stop);
}

std::optional<Isomorphism> stable_isomorphism(const EquivariantMF& x, const EquivariantMF& y, std::stop_token stop) {
  return isomorphism_via(x, y, true, stop);
}

CheckReport check_isomorphism(const EquivariantMF& x, const EquivariantMF& y, const Isomorphism& iso, bool strict) {
  if (auto r = check_morphism(x, y, iso.forward); !r) return CheckReport::fail("forward: " + r.message);
  if (auto r = check_morphism(y, x, iso.backward); !r) return CheckReport::fail("backward: " + r.message);
  MFMorphism bf = compose(iso.backward, iso.forward), fb = compose(iso.forward, iso.backward);
  if (strict) {
    if (bf != identity_morphism(x) || fb != identity_morphism(y)) return CheckReport::fail("maps are not inverse");
    return CheckReport::pass();
  }
  if (!iso.backward_forward || !iso.forward_backward) return CheckReport::fail("missing homotopy witness");
  if (auto r = check_homotopy(x, x, bf, identity_morphism(x), *iso.backward_forward); !r)
    return CheckReport::fail("backward forward ~ id: " + r.message);
  if (auto r = check_homotopy(y, y, fb, identity_morphism(y), *iso.forward_backward); !r)
    return CheckReport::fail("forward backward ~ id: " + r.message);
  return CheckReport::pass();
}

FormalIdempotentObject FormalIdempotentObject::make(EquivariantMF x, MFMorphism e) {
  require_morphism(x, e, "formal idempotent");
  auto h = homotopy_witness(x, x, compose(e, e), e);
  if (!h) throw ValidationError("formal idempotent: e e is not homotopic to e");
  return {std::move(x), std::move(e), std::move(*h)};
}

CheckReport check_formal_morphism(const FormalIdempotentObject& src, const FormalIdempotentObject& tgt,
                                  const MFMorphism& f) {
  if (auto r = check_morphism(src.x, tgt.x, f); !r) return r;
  StableHomSpace st(src.x, tgt.x);
  MFMorphism left = compose(tgt.e, f), right = compose(f, src.e);
  if (!st.is_null_homotopic(left - f))
    return CheckReport::fail("e' f is not homotopic to f");
  if (!st.is_null_homotopic(right - f)) return CheckReport::fail("f e is not homotopic to f");
  return CheckReport::pass();
}

Eigen::Index formal_hom_dimension(const FormalIdempotentObject& src, const FormalIdempotentObject& tgt) {
  StableHomSpace st(src.x, tgt.x);
  if (st.dimension() == 0) return 0;
  FieldMatrix img(st.dimension(), st.dimension());
  for (Eigen::Index i = 0; i < st.dimension(); ++i)
    img.col(i) = *st.class_coordinates(compose(tgt.e, compose(st.representatives()[i], src.e)));
  return matrix_rank<Scalar>(img);
}

FormalComparison formal_comparison(const FormalIdempotentObject& o, std::stop_token stop) {
  SplitResult s = split_homotopy_idempotent(o.x, o.e, stop);
  FormalComparison c{FormalIdempotentObject::make(s.y, identity_morphism(s.y)), s.pi, s.iota,
                     *s.section_witness, *s.idempotent_witness};
  return c;
}

CheckReport check_formal_comparison(const FormalIdempotentObject& o, const FormalComparison& c) {
  if (auto r = check_formal_morphism(o, c.split, c.to_split); !r) return CheckReport::fail("to split: " + r.message);
  if (auto r = check_formal_morphism(c.split, o, c.from_split); !r) return CheckReport::fail("from split: " + r.message);
  if (auto r = check_homotopy(c.split.x, c.split.x, compose(c.to_split, c.from_split), identity_morphism(c.split.x),
                              c.to_from);
      !r)
    return CheckReport::fail("composite on the split object: " + r.message);
  if (auto r = check_homotopy(o.x, o.x, compose(c.from_split, c.to_split), o.e, c.from_to); !r)
    return CheckReport::fail("composite on (X, e): " + r.message);
  return CheckReport::pass();
}

}  // namespace mfg
