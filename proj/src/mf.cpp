#include "mfg/mf.hpp"

#include <functional>
#include <sstream>

namespace mfg {

namespace {

using Blocks = std::vector<PolyMatrix>;
using LinearMap = std::function<Blocks(const Blocks&)>;

/// Matrix of a linear map between tuples of degree-legal polynomial matrices,
/// in the monomial coordinates of the given block spaces.
FieldMatrix assemble(const std::vector<const MapCoordinates*>& in,
                     const std::vector<const MapCoordinates*>& out, const LinearMap& f, const Field& k,
                     std::stop_token stop) {
  Eigen::Index cols = 0, rows = 0;
  for (auto* c : in) cols += c->dimension();
  for (auto* c : out) rows += c->dimension();
  FieldMatrix m = zero_matrix(rows, cols, k);
  Blocks zeros;
  for (auto* c : in) zeros.push_back(poly_zero(c->rows(), c->cols()));
  Eigen::Index col = 0;
  for (size_t b = 0; b < in.size(); ++b) {
    for (Eigen::Index s = 0; s < in[b]->dimension(); ++s, ++col) {
      if (stop.stop_requested()) throw Cancelled();
      Blocks x = zeros;
      x[b] = in[b]->basis_matrix(s);
      Blocks y = f(x);
      FieldVector v = zero_vector(rows, k);
      Eigen::Index off = 0;
      for (size_t o = 0; o < out.size(); ++o) {
        out[o]->encode(y[o], v, off);
        off += out[o]->dimension();
      }
      m.col(col) = v;
    }
  }
  return m;
}

FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
  FieldMatrix m(a.rows() + b.rows(), a.cols());
  if (a.rows() > 0) m.topRows(a.rows()) = a;
  if (b.rows() > 0) m.bottomRows(b.rows()) = b;
  return m;
}

PolyMatrix blocks2x2(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d) {
  PolyMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
  if (a.size()) m.topLeftCorner(a.rows(), a.cols()) = a;
  if (b.size()) m.topRightCorner(b.rows(), b.cols()) = b;
  if (c.size()) m.bottomLeftCorner(c.rows(), c.cols()) = c;
  if (d.size()) m.bottomRightCorner(d.rows(), d.cols()) = d;
  return m;
}

PolyMatrix normalized(PolyMatrix m, const GradedRing& r) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    m.data()[i] = m.data()[i].with_nvars(r.nvars()).map_coefficients(r.field());
  return m;
}

std::string describe_entry_mismatch(const GradedRing& r, const std::string& what, const PolyMatrix& lhs,
                                    const PolyMatrix& rhs) {
  for (Eigen::Index i = 0; i < lhs.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
      if (lhs(i, j) != rhs(i, j)) {
        std::ostringstream os;
        os << what << " fails at entry (" << i << "," << j << "): " << r.format(lhs(i, j)) << " vs "
           << r.format(rhs(i, j));
        return os.str();
      }
  return what + " fails";
}

void require_compatible(const EquivariantMF& x, const EquivariantMF& y) {
  if (x.action == y.action) return;
  if (!(x.ring() == y.ring())) throw Error("objects live over different rings");
  const auto &gx = x.action->group(), &gy = y.action->group();
  if (gx.table() != gy.table()) throw Error("objects carry different groups");
  for (int g = 0; g < gx.order(); ++g)
    if (x.action->images(g) != y.action->images(g)) throw Error("objects carry different group actions");
}

bool has_nontrivial_elements(const EquivariantMF& x) { return x.order() > 1; }

CheckReport check_degrees(const GradedRing& r, const GradedMatrix& m, const std::string& name) {
  std::string v = m.degree_violation(r);
  if (!v.empty()) return CheckReport::fail(name + ": " + v);
  return CheckReport::pass();
}

/// Block coordinate spaces for maps and homotopies X -> Y.
struct HomCoordinates {
  MapCoordinates u0, u1;  // P0 -> P0', P1 -> P1'
  MapCoordinates h0, h1;  // P0 -> P1' (0), P1 -> P0' (-d_f)
  MapCoordinates a, b;    // P1 -> P0' (0), P0 -> P1' (d_f): chain-map defects

  HomCoordinates(const EquivariantMF& x, const EquivariantMF& y)
      : u0(x.p0, y.p0, 0, x.ring()),
        u1(x.p1, y.p1, 0, x.ring()),
        h0(x.p0, y.p1, 0, x.ring()),
        h1(x.p1, y.p0, -x.ring().potential_degree(), x.ring()),
        a(x.p1, y.p0, 0, x.ring()),
        b(x.p0, y.p1, x.ring().potential_degree(), x.ring()) {}
};

/// Matrix of the chain-map and equivariance constraints on (U0, U1).
FieldMatrix morphism_constraints(const EquivariantMF& x, const EquivariantMF& y, const HomCoordinates& hc,
                                 std::stop_token stop) {
  const GroupAction& act = x.group_action();
  std::vector<const MapCoordinates*> out{&hc.a, &hc.b};
  for (int g = 0; g < x.order(); ++g) {
    if (g == act.group().identity()) continue;
    out.push_back(&hc.u0);
    out.push_back(&hc.u1);
  }
  LinearMap f = [&](const Blocks& u) {
    Blocks r{multiply(u[0], x.a) - multiply(y.a, u[1]), multiply(u[1], x.b) - multiply(y.b, u[0])};
    for (int g = 0; g < x.order(); ++g) {
      if (g == act.group().identity()) continue;
      r.push_back(multiply(y.m0[g], act.apply(g, u[0])) - multiply(u[0], x.m0[g]));
      r.push_back(multiply(y.m1[g], act.apply(g, u[1])) - multiply(u[1], x.m1[g]));
    }
    return r;
  };
  return assemble({&hc.u0, &hc.u1}, out, f, x.ring().field(), stop);
}

/// Matrix of H -> d'H + Hd in (U0, U1) coordinates.
FieldMatrix boundary_matrix(const EquivariantMF& x, const EquivariantMF& y, const HomCoordinates& hc,
                            std::stop_token stop) {
  LinearMap f = [&](const Blocks& h) {
    return Blocks{multiply(y.a, h[0]) + multiply(h[1], x.b), multiply(y.b, h[1]) + multiply(h[0], x.a)};
  };
  return assemble({&hc.h0, &hc.h1}, {&hc.u0, &hc.u1}, f, x.ring().field(), stop);
}

/// Matrix of the equivariance constraints on (H0, H1); zero rows for trivial G.
FieldMatrix homotopy_equivariance(const EquivariantMF& x, const EquivariantMF& y, const HomCoordinates& hc,
                                  std::stop_token stop) {
  const GroupAction& act = x.group_action();
  std::vector<const MapCoordinates*> out;
  for (int g = 0; g < x.order(); ++g) {
    if (g == act.group().identity()) continue;
    out.push_back(&hc.h0);
    out.push_back(&hc.h1);
  }
  LinearMap f = [&](const Blocks& h) {
    Blocks r;
    for (int g = 0; g < x.order(); ++g) {
      if (g == act.group().identity()) continue;
      r.push_back(multiply(y.m1[g], act.apply(g, h[0])) - multiply(h[0], x.m0[g]));
      r.push_back(multiply(y.m0[g], act.apply(g, h[1])) - multiply(h[1], x.m1[g]));
    }
    return r;
  };
  return assemble({&hc.h0, &hc.h1}, out, f, x.ring().field(), stop);
}

FieldVector encode_pair(const MapCoordinates& c0, const MapCoordinates& c1, const PolyMatrix& m0,
                        const PolyMatrix& m1, const Field& k) {
  FieldVector v = zero_vector(c0.dimension() + c1.dimension(), k);
  c0.encode(m0, v, 0);
  c1.encode(m1, v, c0.dimension());
  return v;
}

Homotopy decode_homotopy(const HomCoordinates& hc, const FieldVector& v) {
  return {hc.h0.decode(v, 0), hc.h1.decode(v, hc.h0.dimension())};
}

std::optional<Homotopy> solve_homotopy(const EquivariantMF& x, const EquivariantMF& y, const MFMorphism& u,
                                       const MFMorphism& v, bool equivariant, std::stop_token stop) {
  require_compatible(x, y);
  HomCoordinates hc(x, y);
  const Field& k = x.ring().field();
  FieldVector rhs = encode_pair(hc.u0, hc.u1, u.u0 - v.u0, u.u1 - v.u1, k);
  FieldMatrix sys = boundary_matrix(x, y, hc, stop);
  if (equivariant && has_nontrivial_elements(x)) {
    FieldMatrix eq = homotopy_equivariance(x, y, hc, stop);
    sys = vstack(sys, eq);
    FieldVector full = zero_vector(sys.rows(), k);
    full.head(rhs.size()) = rhs;
    rhs = full;
  }
  auto sol = solve_linear<Scalar>(sys, rhs, stop);
  if (!sol) return std::nullopt;
  return decode_homotopy(hc, sol->particular);
}

}  // namespace

EquivariantMF EquivariantMF::make(ActionPtr action, std::vector<int> w0, std::vector<int> w1, PolyMatrix a,
                                  PolyMatrix b) {
  std::vector<PolyMatrix> m0(action->order(), poly_identity(static_cast<Eigen::Index>(w0.size())));
  std::vector<PolyMatrix> m1(action->order(), poly_identity(static_cast<Eigen::Index>(w1.size())));
  return make(std::move(action), std::move(w0), std::move(w1), std::move(a), std::move(b), std::move(m0),
              std::move(m1));
}

EquivariantMF EquivariantMF::make(ActionPtr action, std::vector<int> w0, std::vector<int> w1, PolyMatrix a,
                                  PolyMatrix b, std::vector<PolyMatrix> m0, std::vector<PolyMatrix> m1) {
  EquivariantMF x;
  const GradedRing& r = action->ring();
  x.action = std::move(action);
  x.p0 = {std::move(w0)};
  x.p1 = {std::move(w1)};
  x.a = normalized(std::move(a), r);
  x.b = normalized(std::move(b), r);
  for (auto& m : m0) x.m0.push_back(normalized(std::move(m), r));
  for (auto& m : m1) x.m1.push_back(normalized(std::move(m), r));
  CheckReport rep = validate_mf(x);
  if (!rep) throw ValidationError("invalid matrix factorization: " + rep.message);
  return x;
}

EquivariantMF EquivariantMF::zero(ActionPtr action) {
  return make(std::move(action), {}, {}, PolyMatrix(0, 0), PolyMatrix(0, 0));
}

bool operator==(const EquivariantMF& x, const EquivariantMF& y) {
  if (x.action != y.action) {
    if (!(x.ring() == y.ring()) || x.action->group().table() != y.action->group().table()) return false;
    for (int g = 0; g < x.order(); ++g)
      if (x.action->images(g) != y.action->images(g)) return false;
  }
  return x.p0 == y.p0 && x.p1 == y.p1 && x.a == y.a && x.b == y.b && x.m0 == y.m0 && x.m1 == y.m1;
}

CheckReport validate_mf(const EquivariantMF& x) {
  if (!x.action) return CheckReport::fail("missing group action");
  const GradedRing& r = x.ring();
  const Eigen::Index n = x.p0.rank();
  if (x.p1.rank() != n) return CheckReport::fail("P0 and P1 have different ranks");
  if (auto c = check_degrees(r, {x.p1, x.p0, 0, x.a}, "A"); !c) return c;
  if (auto c = check_degrees(r, {x.p0, x.p1, r.potential_degree(), x.b}, "B"); !c) return c;
  PolyMatrix fi = poly_identity(n) * r.potential();
  PolyMatrix ab = multiply(x.a, x.b), ba = multiply(x.b, x.a);
  if (ab != fi) return CheckReport::fail(describe_entry_mismatch(r, "AB = f I", ab, fi));
  if (ba != fi) return CheckReport::fail(describe_entry_mismatch(r, "BA = f I", ba, fi));
  if (auto c = check_semilinear_module(*x.action, x.module0()); !c)
    return CheckReport::fail("P0 action: " + c.message);
  if (auto c = check_semilinear_module(*x.action, x.module1()); !c)
    return CheckReport::fail("P1 action: " + c.message);
  if (auto c = check_intertwines(*x.action, x.module1(), x.module0(), x.a, "A"); !c) return c;
  if (auto c = check_intertwines(*x.action, x.module0(), x.module1(), x.b, "B"); !c) return c;
  return CheckReport::pass();
}

MFMorphism identity_morphism(const EquivariantMF& x) {
  return {poly_identity(x.p0.rank()), poly_identity(x.p1.rank())};
}

MFMorphism zero_morphism(const EquivariantMF& x, const EquivariantMF& y) {
  return {poly_zero(y.p0.rank(), x.p0.rank()), poly_zero(y.p1.rank(), x.p1.rank())};
}

MFMorphism compose(const MFMorphism& g, const MFMorphism& f) {
  if (g.u0.cols() != f.u0.rows() || g.u1.cols() != f.u1.rows()) throw Error("compose: shape mismatch");
  return {multiply(g.u0, f.u0), multiply(g.u1, f.u1)};
}

CheckReport check_morphism(const EquivariantMF& x, const EquivariantMF& y, const MFMorphism& u) {
  require_compatible(x, y);
  const GradedRing& r = x.ring();
  if (auto c = check_degrees(r, {x.p0, y.p0, 0, u.u0}, "U0"); !c) return c;
  if (auto c = check_degrees(r, {x.p1, y.p1, 0, u.u1}, "U1"); !c) return c;
  PolyMatrix l = multiply(u.u0, x.a), rr = multiply(y.a, u.u1);
  if (l != rr) return CheckReport::fail(describe_entry_mismatch(r, "U0 A = A' U1", l, rr));
  l = multiply(u.u1, x.b);
  rr = multiply(y.b, u.u0);
  if (l != rr) return CheckReport::fail(describe_entry_mismatch(r, "U1 B = B' U0", l, rr));
  if (auto c = check_intertwines(*x.action, x.module0(), y.module0(), u.u0, "U0"); !c) return c;
  if (auto c = check_intertwines(*x.action, x.module1(), y.module1(), u.u1, "U1"); !c) return c;
  return CheckReport::pass();
}

MFMorphism boundary(const EquivariantMF& x, const EquivariantMF& y, const Homotopy& h) {
  return {multiply(y.a, h.h0) + multiply(h.h1, x.b), multiply(y.b, h.h1) + multiply(h.h0, x.a)};
}

CheckReport check_homotopy(const EquivariantMF& x, const EquivariantMF& y, const MFMorphism& u,
                           const MFMorphism& v, const Homotopy& h) {
  require_compatible(x, y);
  const GradedRing& r = x.ring();
  if (auto c = check_degrees(r, {x.p0, y.p1, 0, h.h0}, "H0"); !c) return c;
  if (auto c = check_degrees(r, {x.p1, y.p0, -r.potential_degree(), h.h1}, "H1"); !c) return c;
  if (auto c = check_intertwines(*x.action, x.module0(), y.module1(), h.h0, "H0"); !c) return c;
  if (auto c = check_intertwines(*x.action, x.module1(), y.module0(), h.h1, "H1"); !c) return c;
  if (u.u0.rows() != y.p0.rank() || u.u0.cols() != x.p0.rank() || v.u0.rows() != u.u0.rows() ||
      v.u0.cols() != u.u0.cols() || u.u1.rows() != y.p1.rank() || u.u1.cols() != x.p1.rank() ||
      v.u1.rows() != u.u1.rows() || v.u1.cols() != u.u1.cols())
    return CheckReport::fail("morphism shapes do not match the objects");
  MFMorphism d = boundary(x, y, h), diff = u - v;
  if (d.u0 != diff.u0) return CheckReport::fail(describe_entry_mismatch(r, "U0 - V0 = A'H0 + H1B", diff.u0, d.u0));
  if (d.u1 != diff.u1) return CheckReport::fail(describe_entry_mismatch(r, "U1 - V1 = B'H1 + H0A", diff.u1, d.u1));
  return CheckReport::pass();
}

MorphismSpace::MorphismSpace(const EquivariantMF& x, const EquivariantMF& y, std::stop_token stop)
    : field_(x.ring().field()), c0_(x.p0, y.p0, 0, x.ring()), c1_(x.p1, y.p1, 0, x.ring()) {
  require_compatible(x, y);
  HomCoordinates hc(x, y);
  FieldMatrix cons = morphism_constraints(x, y, hc, stop);
  columns_ = kernel_basis<Scalar>(cons, stop);
  for (Eigen::Index k = 0; k < columns_.cols(); ++k) basis_.push_back(decode(columns_.col(k)));
  elim_.emplace(columns_, stop);
}

FieldVector MorphismSpace::encode(const MFMorphism& u) const {
  return encode_pair(c0_, c1_, u.u0, u.u1, field_);
}

MFMorphism MorphismSpace::decode(const FieldVector& v) const {
  return {c0_.decode(v, 0), c1_.decode(v, c0_.dimension())};
}

std::optional<FieldVector> MorphismSpace::coordinates(const MFMorphism& u) const {
  FieldVector v;
  try {
    v = encode(u);
  } catch (const Error&) {
    return std::nullopt;
  }
  FieldVector w = elim_->transform(v);
  if (!elim_->in_span(w)) return std::nullopt;
  return FieldVector(w.head(dimension()));
}

MFMorphism MorphismSpace::combine(const FieldVector& c) const {
  FieldVector v = zero_vector(ambient_dimension(), field_);
  for (Eigen::Index k = 0; k < c.size(); ++k)
    if (!c(k).is_zero()) v += columns_.col(k) * c(k);
  return decode(v);
}

std::optional<Homotopy> homotopy_witness(const EquivariantMF& x, const EquivariantMF& y, const MFMorphism& u,
                                         const MFMorphism& v, std::stop_token stop) {
  return solve_homotopy(x, y, u, v, true, stop);
}

std::optional<Homotopy> homotopy_witness_by_averaging(const EquivariantMF& x, const EquivariantMF& y,
                                                      const MFMorphism& u, const MFMorphism& v,
                                                      std::stop_token stop) {
  x.action->require_order_invertible("homotopy averaging");
  auto h = solve_homotopy(x, y, u, v, false, stop);
  if (!h) return std::nullopt;
  return average_homotopy(x, y, *h);
}

Homotopy average_homotopy(const EquivariantMF& x, const EquivariantMF& y, const Homotopy& h) {
  const GroupAction& act = x.group_action();
  act.require_order_invertible("homotopy averaging");
  if (x.order() == 1) return h;
  Homotopy out{poly_zero(h.h0.rows(), h.h0.cols()), poly_zero(h.h1.rows(), h.h1.cols())};
  for (int g = 0; g < x.order(); ++g) {
    out.h0 += multiply(multiply(y.m1[g], act.apply(g, h.h0)), inverse_action_matrix(act, x.module0(), g));
    out.h1 += multiply(multiply(y.m0[g], act.apply(g, h.h1)), inverse_action_matrix(act, x.module1(), g));
  }
  Scalar inv = Scalar(1, x.order(), x.ring().field());
  return {scale(out.h0, inv), scale(out.h1, inv)};
}

std::optional<Homotopy> contraction(const EquivariantMF& x, std::stop_token stop) {
  return homotopy_witness(x, x, identity_morphism(x), zero_morphism(x, x), stop);
}

bool is_contractible(const EquivariantMF& x, std::stop_token stop) { return contraction(x, stop).has_value(); }

StableHomSpace::StableHomSpace(const EquivariantMF& x, const EquivariantMF& y, std::stop_token stop)
    : cycles_(x, y, stop) {
  HomCoordinates hc(x, y);
  FieldMatrix bd = boundary_matrix(x, y, hc, stop);
  if (has_nontrivial_elements(x)) {
    FieldMatrix eq = homotopy_equivariance(x, y, hc, stop);
    FieldMatrix ker = kernel_basis<Scalar>(eq, stop);
    bd = bd * ker;
  }
  quotient_.emplace(bd, cycles_.basis_columns(), stop);
  boundary_dim_ = quotient_->sub_dimension();
  for (Eigen::Index idx : quotient_->representatives()) reps_.push_back(cycles_.basis()[idx]);
}

std::optional<FieldVector> StableHomSpace::class_coordinates(const MFMorphism& u) const {
  FieldVector v;
  try {
    v = cycles_.encode(u);
  } catch (const Error&) {
    return std::nullopt;
  }
  return quotient_->coordinates(v);
}

bool StableHomSpace::is_null_homotopic(const MFMorphism& u) const {
  auto c = class_coordinates(u);
  if (!c) return false;
  for (Eigen::Index k = 0; k < c->size(); ++k)
    if (!(*c)(k).is_zero()) return false;
  return true;
}

MFMorphism StableHomSpace::combine(const FieldVector& c) const {
  if (c.size() != dimension()) throw Error("StableHomSpace::combine: wrong coordinate count");
  MFMorphism out = cycles_.decode(zero_vector(cycles_.ambient_dimension(), cycles_.field()));
  for (Eigen::Index k = 0; k < c.size(); ++k)
    if (!c(k).is_zero()) out = out + reps_[k].scaled(c(k));
  return out;
}

EquivariantMF direct_sum(const EquivariantMF& x, const EquivariantMF& y) {
  require_compatible(x, y);
  EquivariantMF s;
  s.action = x.action;
  s.p0 = direct_sum(x.p0, y.p0);
  s.p1 = direct_sum(x.p1, y.p1);
  s.a = block_diagonal(x.a, y.a);
  s.b = block_diagonal(x.b, y.b);
  for (int g = 0; g < x.order(); ++g) {
    s.m0.push_back(block_diagonal(x.m0[g], y.m0[g]));
    s.m1.push_back(block_diagonal(x.m1[g], y.m1[g]));
  }
  return s;
}

EquivariantMF direct_sum(const std::vector<EquivariantMF>& xs, const ActionPtr& action) {
  EquivariantMF s = EquivariantMF::zero(action);
  for (const auto& x : xs) s = direct_sum(s, x);
  return s;
}

MFMorphism direct_sum(const MFMorphism& u, const MFMorphism& v) {
  return {block_diagonal(u.u0, v.u0), block_diagonal(u.u1, v.u1)};
}

EquivariantMF shift(const EquivariantMF& x) {
  EquivariantMF s;
  s.action = x.action;
  s.p0 = x.p1.twisted(-x.ring().potential_degree());
  s.p1 = x.p0;
  s.a = -x.b;
  s.b = -x.a;
  s.m0 = x.m1;
  s.m1 = x.m0;
  return s;
}

MFMorphism shift(const MFMorphism& u) { return {u.u1, u.u0}; }

EquivariantMF twist(const EquivariantMF& x, int j) {
  EquivariantMF t = x;
  t.p0 = x.p0.twisted(j);
  t.p1 = x.p1.twisted(j);
  return t;
}

EquivariantMF cone(const EquivariantMF& x, const EquivariantMF& y, const MFMorphism& u) {
  require_compatible(x, y);
  if (auto c = check_morphism(x, y, u); !c) throw ValidationError("cone: not a morphism: " + c.message);
  EquivariantMF c;
  c.action = y.action;
  c.p0 = direct_sum(y.p0, x.p1.twisted(-x.ring().potential_degree()));
  c.p1 = direct_sum(y.p1, x.p0);
  const Eigen::Index nx = x.rank(), ny = y.rank();
  c.a = blocks2x2(y.a, u.u0, poly_zero(nx, ny), -x.b);
  c.b = blocks2x2(y.b, u.u1, poly_zero(nx, ny), -x.a);
  for (int g = 0; g < y.order(); ++g) {
    c.m0.push_back(block_diagonal(y.m0[g], x.m1[g]));
    c.m1.push_back(block_diagonal(y.m1[g], x.m0[g]));
  }
  return c;
}

MFMorphism cone_inclusion(const EquivariantMF& x, const EquivariantMF& y) {
  const Eigen::Index nx = x.rank(), ny = y.rank();
  PolyMatrix i = blocks2x2(poly_identity(ny), PolyMatrix(ny, 0), poly_zero(nx, ny), PolyMatrix(nx, 0));
  return {i, i};
}

MFMorphism cone_projection(const EquivariantMF& x, const EquivariantMF& y) {
  const Eigen::Index nx = x.rank(), ny = y.rank();
  PolyMatrix p(nx, ny + nx);
  p << poly_zero(nx, ny), poly_identity(nx);
  return {p, p};
}

EquivariantMF forget(const EquivariantMF& x) {
  EquivariantMF f = x;
  if (x.order() == 1) return f;
  f.action = GroupAction::trivial(x.action->ring_ptr());
  f.m0 = {poly_identity(x.p0.rank())};
  f.m1 = {poly_identity(x.p1.rank())};
  return f;
}

}  // namespace mfg
