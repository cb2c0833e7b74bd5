#include "mfg/group.hpp"

#include <sstream>

namespace mfg {

FiniteGroup::FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table)
    : labels_(std::move(labels)), table_(std::move(table)) {
  const int n = order();
  if (n == 0) throw Error("group must be nonempty");
  if (static_cast<int>(table_.size()) != n) throw Error("multiplication table has wrong size");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw Error("multiplication table has wrong size");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("multiplication table entry out of range");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (labels_[i] == labels_[j]) throw Error("duplicate group label " + labels_[i]);
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw Error("multiplication table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error("multiplication table is not associative at (" + labels_[a] + "," + labels_[b] +
                      "," + labels_[c] + ")");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inverse_[a] < 0) throw Error("element " + labels_[a] + " has no inverse");
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({"e"}, {{0}}); }

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "e" : (n == 2 ? "s" : "g" + std::to_string(i)));
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return FiniteGroup(labels, table);
}

int FiniteGroup::index(const std::string& label) const {
  for (int i = 0; i < order(); ++i)
    if (labels_[i] == label) return i;
  throw Error("unknown group element '" + label + "'");
}

GroupAction::GroupAction(RingPtr ring, FiniteGroup group, std::vector<std::vector<Polynomial>> images)
    : ring_(std::move(ring)), group_(std::move(group)), images_(std::move(images)) {
  const GradedRing& r = *ring_;
  const int n = r.nvars();
  if (static_cast<int>(images_.size()) != order()) throw Error("action needs images for every element");
  acts_trivially_.assign(order(), true);
  for (int g = 0; g < order(); ++g) {
    if (static_cast<int>(images_[g].size()) != n) throw Error("action needs an image per variable");
    for (int i = 0; i < n; ++i) {
      Polynomial& p = images_[g][i];
      p = p.with_nvars(n).map_coefficients(r.field());
      if (!p.is_homogeneous(r.weights()) || r.degree(p) != r.weights()[i])
        throw Error("image of " + r.variables()[i] + " under " + group_.label(g) +
                    " is not homogeneous of the variable's weight");
      if (p != r.variable(i)) acts_trivially_[g] = false;
    }
    if (!acts_trivially_[g]) trivial_ = false;
  }
  if (!acts_trivially_[group_.identity()]) throw Error("identity must act trivially");
  for (int g = 0; g < order(); ++g)
    for (int h = 0; h < order(); ++h)
      for (int i = 0; i < n; ++i) {
        // (x^h)^g must equal x^(gh).
        Polynomial lhs = images_[h][i].substitute(images_[g]);
        if (lhs != images_[group_.multiply(g, h)][i])
          throw Error("action does not respect the group law at (" + group_.label(g) + "," +
                      group_.label(h) + ") on " + r.variables()[i]);
      }
  for (int g = 0; g < order(); ++g)
    if (apply(g, r.potential()) != r.potential())
      throw Error("potential is not fixed by " + group_.label(g));
}

std::shared_ptr<const GroupAction> GroupAction::trivial(RingPtr ring) {
  std::vector<Polynomial> vars;
  for (int i = 0; i < ring->nvars(); ++i) vars.push_back(ring->variable(i));
  return std::make_shared<GroupAction>(ring, FiniteGroup::trivial(), std::vector<std::vector<Polynomial>>{vars});
}

Polynomial GroupAction::apply(int g, const Polynomial& p) const {
  if (acts_trivially_[g]) return p;
  return p.substitute(images_[g]).with_nvars(ring_->nvars());
}

PolyMatrix GroupAction::apply(int g, const PolyMatrix& m) const {
  if (acts_trivially_[g]) return m;
  PolyMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.size(); ++i) r.data()[i] = apply(g, m.data()[i]);
  return r;
}

void GroupAction::require_order_invertible(const std::string& what) const {
  if (!ring_->field().is_unit_integer(order()))
    throw CharacteristicError(what + ": characteristic " + std::to_string(ring_->field().characteristic()) +
                              " divides |G| = " + std::to_string(order()));
}

bool is_invariant(const Polynomial& a, const GroupAction& action) {
  for (int g = 0; g < action.order(); ++g)
    if (action.apply(g, a) != a) return false;
  return true;
}

TwistedElement TwistedElement::zero(const GroupAction& action) {
  return {std::vector<Polynomial>(action.order(),
                                  Polynomial(Scalar::zero(action.ring().field()), action.ring().nvars()))};
}

TwistedElement TwistedElement::basis(const GroupAction& action, const Polynomial& a, int g) {
  TwistedElement t = zero(action);
  t.coeffs[g] = a;
  return t;
}

TwistedElement TwistedElement::operator+(const TwistedElement& o) const {
  TwistedElement r = *this;
  for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
  return r;
}

TwistedElement twisted_multiply(const GroupAction& action, const TwistedElement& u,
                                const TwistedElement& v) {
  TwistedElement r = TwistedElement::zero(action);
  const FiniteGroup& G = action.group();
  for (int g = 0; g < G.order(); ++g) {
    if (u.coeffs[g].is_zero()) continue;
    for (int h = 0; h < G.order(); ++h) {
      if (v.coeffs[h].is_zero()) continue;
      r.coeffs[G.multiply(g, h)] += u.coeffs[g] * action.apply(g, v.coeffs[h]);
    }
  }
  return r;
}

namespace {

std::string describe_matrix(const GradedRing& ring, const PolyMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << ring.format(m(i, j));
  }
  os << "]";
  return os.str();
}

}  // namespace

CheckReport check_semilinear_module(const GroupAction& action, const SemilinearModule& m) {
  const GradedRing& ring = action.ring();
  const FiniteGroup& G = action.group();
  if (static_cast<int>(m.action.size()) != G.order())
    return CheckReport::fail("action matrices missing for some group elements");
  const Eigen::Index r = m.module.rank();
  for (int g = 0; g < G.order(); ++g) {
    GradedMatrix gm{m.module, m.module, 0, m.action[g]};
    std::string v = gm.degree_violation(ring);
    if (!v.empty()) return CheckReport::fail("M_" + G.label(g) + ": " + v);
  }
  if (m.action[G.identity()] != poly_identity(r))
    return CheckReport::fail("M_e = I fails: M_e = " + describe_matrix(ring, m.action[G.identity()]));
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h) {
      PolyMatrix lhs = multiply(m.action[g], action.apply(g, m.action[h]));
      const PolyMatrix& rhs = m.action[G.multiply(g, h)];
      if (lhs != rhs)
        return CheckReport::fail("cocycle M_g (M_h)^g = M_gh fails at g=" + G.label(g) + ", h=" +
                                 G.label(h) + ": " + describe_matrix(ring, lhs) + " vs " +
                                 describe_matrix(ring, rhs));
    }
  return CheckReport::pass();
}

CheckReport check_intertwines(const GroupAction& action, const SemilinearModule& src,
                              const SemilinearModule& tgt, const PolyMatrix& map,
                              const std::string& name) {
  const FiniteGroup& G = action.group();
  for (int g = 0; g < G.order(); ++g) {
    PolyMatrix lhs = multiply(tgt.action[g], action.apply(g, map));
    PolyMatrix rhs = multiply(map, src.action[g]);
    if (lhs != rhs)
      return CheckReport::fail(name + " does not commute with the action of " + G.label(g) + ": " +
                               describe_matrix(action.ring(), lhs) + " vs " +
                               describe_matrix(action.ring(), rhs));
  }
  return CheckReport::pass();
}

PolyMatrix act(const GroupAction& action, const SemilinearModule& m, const TwistedElement& u,
               const PolyMatrix& vec) {
  PolyMatrix out = poly_zero(vec.rows(), vec.cols());
  for (int g = 0; g < action.order(); ++g) {
    if (u.coeffs[g].is_zero()) continue;
    PolyMatrix gv = multiply(m.action[g], action.apply(g, vec));
    out += gv * u.coeffs[g];
  }
  return out;
}

PolyMatrix inverse_action_matrix(const GroupAction& action, const SemilinearModule& m, int g) {
  return action.apply(g, m.action[action.group().inverse(g)]);
}

}  // namespace mfg
