#include "mfg/functors.hpp"

namespace mfg {

namespace {

void set_block(PolyMatrix& dst, Eigen::Index r, Eigen::Index c, const PolyMatrix& src) {
  if (src.rows() && src.cols()) dst.block(r, c, src.rows(), src.cols()) = src;
}

PolyMatrix get_block(const PolyMatrix& m, Eigen::Index r, Eigen::Index c, Eigen::Index rows, Eigen::Index cols) {
  if (!rows || !cols) return poly_zero(rows, cols);
  return m.block(r, c, rows, cols);
}

std::vector<int> repeat(const std::vector<int>& w, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

PolyMatrix block_diagonal_orbit(const PolyMatrix& m, const GroupAction& act) {
  const int n = act.order();
  PolyMatrix out = poly_zero(n * m.rows(), n * m.cols());
  for (int g = 0; g < n; ++g) set_block(out, g * m.rows(), g * m.cols(), act.apply(g, m));
  return out;
}

void require_plain(const EquivariantMF& p, const GroupAction& action, const char* what) {
  if (p.order() != 1) throw ValidationError(std::string(what) + ": expected an object without group action");
  if (!(p.ring() == action.ring())) throw ValidationError(std::string(what) + ": object lives over a different ring");
}

Homotopy zero_homotopy(const EquivariantMF& x, const EquivariantMF& y) {
  return {poly_zero(y.p1.rank(), x.p0.rank()), poly_zero(y.p0.rank(), x.p1.rank())};
}

Homotopy witness_or_throw(const EquivariantMF& x, const EquivariantMF& y, const MFMorphism& u,
                          const MFMorphism& v, const std::string& what, std::stop_token stop) {
  auto h = homotopy_witness(x, y, u, v, stop);
  if (!h) throw ValidationError(what + " does not hold up to homotopy");
  return *h;
}

Json section(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j[key];
}

}  // namespace

// ---- induction ----

EquivariantMF induce(const EquivariantMF& p, const ActionPtr& action) {
  require_plain(p, *action, "induce");
  const int n = action->order();
  const FiniteGroup& grp = action->group();
  const Eigen::Index r = p.rank();
  std::vector<PolyMatrix> m0(n), m1(n);
  for (int h = 0; h < n; ++h) {
    PolyMatrix m = poly_zero(n * r, n * r);
    for (int g = 0; g < n; ++g) set_block(m, grp.multiply(h, g) * r, g * r, poly_identity(r));
    m0[h] = m1[h] = m;
  }
  return EquivariantMF::make(action, repeat(p.p0.weights, n), repeat(p.p1.weights, n),
                             block_diagonal_orbit(p.a, *action), block_diagonal_orbit(p.b, *action), m0, m1);
}

MFMorphism induce(const MFMorphism& u, const ActionPtr& action) {
  return {block_diagonal_orbit(u.u0, *action), block_diagonal_orbit(u.u1, *action)};
}

Homotopy induce(const Homotopy& h, const ActionPtr& action) {
  return {block_diagonal_orbit(h.h0, *action), block_diagonal_orbit(h.h1, *action)};
}

AveragingSplitting averaging_splitting(const EquivariantMF& y) {
  const GroupAction& act = *y.action;
  act.require_order_invertible("averaging_splitting");
  const int n = act.order();
  const Field& k = y.ring().field();
  const Scalar inv = Scalar(1, n, k);
  AveragingSplitting out{induce(forget(y), y.action), {}, {}, {}, {}, {}};
  const Eigen::Index r0 = y.p0.rank(), r1 = y.p1.rank();
  // p(g (x) e_i) = g(e_i) = M_g e_i; j has block h equal to (1/|G|) M_h^-1.
  out.p = {poly_zero(r0, n * r0), poly_zero(r1, n * r1)};
  out.j = {poly_zero(n * r0, r0), poly_zero(n * r1, r1)};
  for (int g = 0; g < n; ++g) {
    set_block(out.p.u0, 0, g * r0, y.m0[g]);
    set_block(out.p.u1, 0, g * r1, y.m1[g]);
    set_block(out.j.u0, g * r0, 0, scale(inverse_action_matrix(act, y.module0(), g), inv));
    set_block(out.j.u1, g * r1, 0, scale(inverse_action_matrix(act, y.module1(), g), inv));
  }
  const EquivariantMF& e = out.induced;
  out.linear = check_intertwines(act, e.module0(), y.module0(), out.p.u0, "p0");
  if (out.linear) out.linear = check_intertwines(act, e.module1(), y.module1(), out.p.u1, "p1");
  if (out.linear) out.linear = check_intertwines(act, y.module0(), e.module0(), out.j.u0, "j0");
  if (out.linear) out.linear = check_intertwines(act, y.module1(), e.module1(), out.j.u1, "j1");

  auto chain = [](const EquivariantMF& x, const EquivariantMF& t, const MFMorphism& u, const char* name) {
    if (multiply(u.u0, x.a) != multiply(t.a, u.u1))
      return CheckReport::fail(std::string(name) + ": U0 A = A' U1 fails");
    if (multiply(u.u1, x.b) != multiply(t.b, u.u0))
      return CheckReport::fail(std::string(name) + ": U1 B = B' U0 fails");
    return CheckReport::pass();
  };
  out.chain_map = chain(e, y, out.p, "p");
  if (out.chain_map) out.chain_map = chain(y, e, out.j, "j");
  out.section = compose(out.p, out.j) == identity_morphism(y) ? CheckReport::pass()
                                                             : CheckReport::fail("p j differs from the identity");
  return out;
}

// ---- base change ----

RingHom::RingHom(ActionPtr source, ActionPtr target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  const GradedRing &s = source_->ring(), &t = target_->ring();
  if (source_->group().table() != target_->group().table())
    throw ValidationError("ring homomorphism: source and target carry different groups");
  if (static_cast<int>(images_.size()) != s.nvars())
    throw ValidationError("ring homomorphism: expected one image per source variable");
  const bool same_field = s.field() == t.field();
  if (!same_field && !(t.field().is_extension() && t.field().base() == s.field()))
    throw ValidationError("ring homomorphism: target field must equal or extend the source field");
  for (int i = 0; i < s.nvars(); ++i) {
    images_[i] = images_[i].map_coefficients(t.field()).with_nvars(t.nvars());
    if (!images_[i].is_zero() && (!images_[i].is_homogeneous(t.weights()) || t.degree(images_[i]) != s.weights()[i]))
      throw ValidationError("ring homomorphism: image of " + s.variables()[i] + " is not homogeneous of degree " +
                            std::to_string(s.weights()[i]));
  }
  if (apply(s.potential()) != t.potential())
    throw ValidationError("ring homomorphism: phi(f) = " + t.format(apply(s.potential())) +
                          " differs from the target potential " + t.format(t.potential()));
  for (int g = 0; g < source_->order(); ++g)
    for (int i = 0; i < s.nvars(); ++i)
      if (apply(source_->images(g)[i]) != target_->apply(g, images_[i]))
        throw ValidationError("ring homomorphism: not equivariant for element " + source_->group().label(g));

  bool identity_images = s.nvars() == t.nvars();
  for (int i = 0; identity_images && i < s.nvars(); ++i) identity_images = images_[i] == t.variable(i);
  if (!same_field) {
    if (!identity_images)
      throw ValidationError("ring homomorphism: field extension combined with substitution is not supported");
    kind_ = RingHomKind::field_extension;
  } else {
    kind_ = identity_images && s == t ? RingHomKind::identity : RingHomKind::substitution;
  }
}

RingHom RingHom::identity(const ActionPtr& action) {
  const GradedRing& r = action->ring();
  std::vector<Polynomial> vars;
  for (int i = 0; i < r.nvars(); ++i) vars.push_back(r.variable(i));
  return RingHom(action, action, vars);
}

RingHom RingHom::field_extension(const ActionPtr& action, const Field& extension) {
  const GradedRing& r = action->ring();
  auto ring = std::make_shared<GradedRing>(r.with_field(extension));
  std::vector<std::vector<Polynomial>> images(action->order());
  for (int g = 0; g < action->order(); ++g)
    for (const auto& p : action->images(g)) images[g].push_back(p.map_coefficients(extension).with_nvars(r.nvars()));
  auto target = std::make_shared<GroupAction>(ring, action->group(), images);
  std::vector<Polynomial> vars;
  for (int i = 0; i < r.nvars(); ++i) vars.push_back(ring->variable(i));
  return RingHom(action, target, vars);
}

Polynomial RingHom::apply(const Polynomial& p) const {
  const GradedRing& t = target_->ring();
  return p.map_coefficients(t.field()).substitute(images_).with_nvars(t.nvars());
}

PolyMatrix RingHom::apply(const PolyMatrix& m) const {
  PolyMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = apply(m(i, j));
  return out;
}

EquivariantMF base_change(const RingHom& phi, const EquivariantMF& x) {
  if (!(x.ring() == phi.source()->ring())) throw ValidationError("base_change: object is not over the source ring");
  std::vector<PolyMatrix> m0, m1;
  for (int g = 0; g < x.order(); ++g) {
    m0.push_back(phi.apply(x.m0[g]));
    m1.push_back(phi.apply(x.m1[g]));
  }
  return EquivariantMF::make(phi.target(), x.p0.weights, x.p1.weights, phi.apply(x.a), phi.apply(x.b), m0, m1);
}

MFMorphism base_change(const RingHom& phi, const MFMorphism& u) { return {phi.apply(u.u0), phi.apply(u.u1)}; }

Homotopy base_change(const RingHom& phi, const Homotopy& h) { return {phi.apply(h.h0), phi.apply(h.h1)}; }

bool EndHomologyComparison::is_isomorphism() const {
  for (int d = 0; d < 2; ++d)
    if (source_dim[d] != target_dim[d] || induced_rank[d] != source_dim[d]) return false;
  return true;
}

Json EndHomologyComparison::to_json() const {
  Json j;
  for (int d = 0; d < 2; ++d)
    j["degree" + std::to_string(d)] = {
        {"source_dimension", source_dim[d]}, {"target_dimension", target_dim[d]}, {"induced_rank", induced_rank[d]}};
  j["isomorphism"] = is_isomorphism();
  return j;
}

EndHomologyComparison compare_end_homology(const RingHom& phi, const EquivariantMF& x, std::stop_token stop) {
  EndHomologyComparison out;
  const EquivariantMF xt = base_change(phi, x);
  const Field& k = phi.target()->ring().field();
  for (int d = 0; d < 2; ++d) {
    StableHomSpace src(x, d ? shift(x) : x, stop), tgt(xt, d ? shift(xt) : xt, stop);
    out.source_dim[d] = src.dimension();
    out.target_dim[d] = tgt.dimension();
    FieldMatrix m = zero_matrix(tgt.dimension(), src.dimension(), k);
    for (Eigen::Index c = 0; c < src.dimension(); ++c) {
      auto coords = tgt.class_coordinates(base_change(phi, src.representatives()[c]));
      if (!coords) throw Error("compare_end_homology: image of a cycle is not a cycle (internal error)");
      m.col(c) = *coords;
    }
    out.induced_rank[d] = m.size() ? matrix_rank(m) : 0;
  }
  return out;
}

// ---- homotopy-coherent equivariant objects ----

EquivariantMF pullback(const EquivariantMF& p, const GroupAction& action, int g) {
  require_plain(p, action, "pullback");
  return EquivariantMF::make(p.action, p.p0.weights, p.p1.weights, action.apply(g, p.a), action.apply(g, p.b));
}

MFMorphism pullback(const MFMorphism& u, const GroupAction& action, int g) {
  return {action.apply(g, u.u0), action.apply(g, u.u1)};
}

HomotopyEquivariantObject HomotopyEquivariantObject::make(ActionPtr action, EquivariantMF p,
                                                          std::vector<MFMorphism> theta, std::stop_token stop) {
  require_plain(p, *action, "homotopy-equivariant object");
  const int n = action->order();
  if (static_cast<int>(theta.size()) != n) throw ValidationError("expected one theta per group element");
  const FiniteGroup& grp = action->group();
  std::vector<EquivariantMF> pulled;
  for (int g = 0; g < n; ++g) {
    pulled.push_back(pullback(p, *action, g));
    if (auto c = check_morphism(pulled[g], p, theta[g]); !c)
      throw ValidationError("theta_" + grp.label(g) + " is not a map P^g -> P: " + c.message);
  }
  HomotopyEquivariantObject o{action, p, theta, {}, {}};
  o.unit_witness = witness_or_throw(p, p, theta[grp.identity()], identity_morphism(p), "theta_e ~ id", stop);
  o.cocycle_witness.assign(n, {});
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const int gh = grp.multiply(g, h);
      MFMorphism lhs = compose(theta[g], pullback(theta[h], *action, g));
      o.cocycle_witness[g].push_back(witness_or_throw(pulled[gh], p, lhs, theta[gh],
                                                      "cocycle for (" + grp.label(g) + ", " + grp.label(h) + ")",
                                                      stop));
    }
  return o;
}

HomotopyEquivariantObject HomotopyEquivariantObject::from_equivariant(const EquivariantMF& x) {
  HomotopyEquivariantObject o{x.action, forget(x), {}, {}, {}};
  const int n = x.order();
  for (int g = 0; g < n; ++g) o.theta.push_back({x.m0[g], x.m1[g]});
  o.unit_witness = zero_homotopy(o.p, o.p);
  o.cocycle_witness.assign(n, std::vector<Homotopy>(n, o.unit_witness));
  return o;
}

CheckReport check_homotopy_equivariant(const HomotopyEquivariantObject& o) {
  const GroupAction& act = *o.action;
  const FiniteGroup& grp = act.group();
  const int n = act.order();
  if (o.p.order() != 1) return CheckReport::fail("P must carry the trivial group");
  if (static_cast<int>(o.theta.size()) != n || static_cast<int>(o.cocycle_witness.size()) != n)
    return CheckReport::fail("theta data has the wrong number of group elements");
  std::vector<EquivariantMF> pulled;
  for (int g = 0; g < n; ++g) {
    pulled.push_back(pullback(o.p, act, g));
    if (auto c = check_morphism(pulled[g], o.p, o.theta[g]); !c) return CheckReport::fail("theta_" + grp.label(g) + ": " + c.message);
  }
  if (auto c = check_homotopy(o.p, o.p, o.theta[grp.identity()], identity_morphism(o.p), o.unit_witness); !c)
    return CheckReport::fail("theta_e ~ id: " + c.message);
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(o.cocycle_witness[g].size()) != n) return CheckReport::fail("cocycle witness table is ragged");
    for (int h = 0; h < n; ++h) {
      const int gh = grp.multiply(g, h);
      MFMorphism lhs = compose(o.theta[g], pullback(o.theta[h], act, g));
      if (auto c = check_homotopy(pulled[gh], o.p, lhs, o.theta[gh], o.cocycle_witness[g][h]); !c)
        return CheckReport::fail("cocycle (" + grp.label(g) + ", " + grp.label(h) + "): " + c.message);
    }
  }
  return CheckReport::pass();
}

Json HomotopyEquivariantObject::to_json() const {
  const GradedRing& r = p.ring();
  const FiniteGroup& grp = action->group();
  Json j;
  j["schema"] = "mfg.homotopy-equivariant/1";
  j["object"] = mf_to_json(p);
  Json th = Json::object(), cw = Json::object();
  for (int g = 0; g < grp.order(); ++g) {
    th[grp.label(g)] = morphism_to_json(r, theta[g]);
    Json row = Json::object();
    for (int h = 0; h < grp.order(); ++h) row[grp.label(h)] = homotopy_to_json(r, cocycle_witness[g][h]);
    cw[grp.label(g)] = row;
  }
  j["theta"] = th;
  j["unit_witness"] = homotopy_to_json(r, unit_witness);
  j["cocycle_witness"] = cw;
  return j;
}

HomotopyEquivariantObject HomotopyEquivariantObject::from_json(const Json& j, const ActionPtr& action) {
  const GradedRing& r = action->ring();
  const FiniteGroup& grp = action->group();
  HomotopyEquivariantObject o{action, mf_from_json(section(j, "object"), GroupAction::trivial(action->ring_ptr())),
                              {}, {}, {}};
  const Json th = section(j, "theta"), cw = section(j, "cocycle_witness");
  std::vector<EquivariantMF> pulled;
  for (int g = 0; g < grp.order(); ++g) pulled.push_back(pullback(o.p, *action, g));
  for (int g = 0; g < grp.order(); ++g)
    o.theta.push_back(morphism_from_json(r, section(th, grp.label(g).c_str()), pulled[g], o.p));
  o.unit_witness = homotopy_from_json(r, section(j, "unit_witness"), o.p, o.p);
  o.cocycle_witness.assign(grp.order(), {});
  for (int g = 0; g < grp.order(); ++g) {
    const Json row = section(cw, grp.label(g).c_str());
    for (int h = 0; h < grp.order(); ++h)
      o.cocycle_witness[g].push_back(
          homotopy_from_json(r, section(row, grp.label(h).c_str()), pulled[grp.multiply(g, h)], o.p));
  }
  if (auto c = check_homotopy_equivariant(o); !c) throw ValidationError("homotopy-equivariant object: " + c.message);
  return o;
}

std::optional<CoherentIsomorphism> coherent_isomorphism(const HomotopyEquivariantObject& a,
                                                        const HomotopyEquivariantObject& b,
                                                        const MFMorphism& forward, const MFMorphism& backward,
                                                        std::stop_token stop) {
  if (!check_morphism(a.p, b.p, forward) || !check_morphism(b.p, a.p, backward)) return std::nullopt;
  auto bf = homotopy_witness(a.p, a.p, compose(backward, forward), identity_morphism(a.p), stop);
  if (!bf) return std::nullopt;
  auto fb = homotopy_witness(b.p, b.p, compose(forward, backward), identity_morphism(b.p), stop);
  if (!fb) return std::nullopt;
  CoherentIsomorphism iso{forward, backward, *bf, *fb, {}};
  const GroupAction& act = *a.action;
  for (int g = 0; g < act.order(); ++g) {
    EquivariantMF pa = pullback(a.p, act, g);
    auto w = homotopy_witness(pa, b.p, compose(forward, a.theta[g]), compose(b.theta[g], pullback(forward, act, g)),
                              stop);
    if (!w) return std::nullopt;
    iso.compatibility.push_back(*w);
  }
  return iso;
}

CheckReport check_coherent_isomorphism(const HomotopyEquivariantObject& a, const HomotopyEquivariantObject& b,
                                       const CoherentIsomorphism& iso) {
  if (auto c = check_morphism(a.p, b.p, iso.forward); !c) return CheckReport::fail("forward: " + c.message);
  if (auto c = check_morphism(b.p, a.p, iso.backward); !c) return CheckReport::fail("backward: " + c.message);
  if (auto c = check_homotopy(a.p, a.p, compose(iso.backward, iso.forward), identity_morphism(a.p),
                              iso.backward_forward);
      !c)
    return CheckReport::fail("backward forward ~ id: " + c.message);
  if (auto c = check_homotopy(b.p, b.p, compose(iso.forward, iso.backward), identity_morphism(b.p),
                              iso.forward_backward);
      !c)
    return CheckReport::fail("forward backward ~ id: " + c.message);
  const GroupAction& act = *a.action;
  if (static_cast<int>(iso.compatibility.size()) != act.order())
    return CheckReport::fail("one compatibility witness per group element expected");
  for (int g = 0; g < act.order(); ++g) {
    EquivariantMF pa = pullback(a.p, act, g);
    if (auto c = check_homotopy(pa, b.p, compose(iso.forward, a.theta[g]),
                                compose(b.theta[g], pullback(iso.forward, act, g)), iso.compatibility[g]);
        !c)
      return CheckReport::fail("compatibility with theta_" + act.group().label(g) + ": " + c.message);
  }
  return CheckReport::pass();
}

Strictification strictify(const HomotopyEquivariantObject& obj, std::stop_token stop) {
  const GroupAction& act = *obj.action;
  act.require_order_invertible("strictify");
  if (auto c = check_homotopy_equivariant(obj); !c) throw ValidationError("strictify: " + c.message);
  const FiniteGroup& grp = act.group();
  const int n = act.order();
  const Eigen::Index r0 = obj.p.p0.rank(), r1 = obj.p.p1.rank();
  const Scalar inv = Scalar(1, n, obj.p.ring().field());

  Strictification s;
  s.induced = induce(obj.p, obj.action);
  s.projector = {poly_zero(n * r0, n * r0), poly_zero(n * r1, n * r1)};
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g) {
      const MFMorphism& t = obj.theta[grp.multiply(grp.inverse(h), g)];
      set_block(s.projector.u0, h * r0, g * r0, scale(act.apply(h, t.u0), inv));
      set_block(s.projector.u1, h * r1, g * r1, scale(act.apply(h, t.u1), inv));
    }
  if (auto c = check_morphism(s.induced, s.induced, s.projector); !c)
    throw Error("strictify: projector is not an equivariant chain map (internal error): " + c.message);
  s.split = split_homotopy_idempotent(s.induced, s.projector, stop);
  s.z = s.split.y;

  // forward = |G| pr_e iota: Z -> P, backward = pi in_e: P -> Z.
  const int e = grp.identity();
  MFMorphism forward{scale(get_block(s.split.iota.u0, e * r0, 0, r0, s.z.p0.rank()), Scalar(n)),
                     scale(get_block(s.split.iota.u1, e * r1, 0, r1, s.z.p1.rank()), Scalar(n))};
  MFMorphism backward{get_block(s.split.pi.u0, 0, e * r0, s.z.p0.rank(), r0),
                      get_block(s.split.pi.u1, 0, e * r1, s.z.p1.rank(), r1)};
  auto iso = coherent_isomorphism(HomotopyEquivariantObject::from_equivariant(s.z), obj, forward, backward, stop);
  if (!iso) throw Error("strictify: could not certify the comparison isomorphism");
  s.comparison = *iso;
  return s;
}

CheckReport check_strictification(const HomotopyEquivariantObject& obj, const Strictification& s) {
  if (auto c = validate_mf(s.z); !c) return CheckReport::fail("Z: " + c.message);
  if (auto c = check_split(s.induced, s.projector, s.split, false); !c) return CheckReport::fail("split: " + c.message);
  if (!(s.split.y == s.z)) return CheckReport::fail("Z differs from the split image");
  return check_coherent_isomorphism(HomotopyEquivariantObject::from_equivariant(s.z), obj, s.comparison);
}

}  // namespace mfg
