#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mfg/graded.hpp"

namespace mfg {

/// Finite group given by its multiplication table. Element 0 need not be the
/// identity; the identity is located and the group law verified on
/// construction.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<int>> table);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);

  int order() const { return static_cast<int>(labels_.size()); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  int index(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

/// A degree-preserving action of a finite group on a graded ring by ring
/// automorphisms, written a -> a^g.
///
/// Convention: the action is a left action, (a^h)^g = a^(gh), so that the
/// twisted product ag * bh = a b^g gh is associative. The composition law is
/// verified on construction.
class GroupAction {
 public:
  /// images[g][i] is the image of variable i under g.
  GroupAction(RingPtr ring, FiniteGroup group, std::vector<std::vector<Polynomial>> images);

  static std::shared_ptr<const GroupAction> trivial(RingPtr ring);

  const GradedRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const FiniteGroup& group() const { return group_; }
  int order() const { return group_.order(); }
  bool is_trivial() const { return trivial_; }
  const std::vector<Polynomial>& images(int g) const { return images_[g]; }

  Polynomial apply(int g, const Polynomial& p) const;
  PolyMatrix apply(int g, const PolyMatrix& m) const;

  /// Throws CharacteristicError unless |G| is a unit in the field.
  void require_order_invertible(const std::string& what) const;

 private:
  RingPtr ring_;
  FiniteGroup group_;
  std::vector<std::vector<Polynomial>> images_;
  std::vector<bool> acts_trivially_;
  bool trivial_ = true;
};

using ActionPtr = std::shared_ptr<const GroupAction>;

bool is_invariant(const Polynomial& a, const GroupAction& action);

/// Element sum_g a_g g of the twisted group ring Q#G.
struct TwistedElement {
  std::vector<Polynomial> coeffs;  // indexed by group element

  static TwistedElement zero(const GroupAction& action);
  static TwistedElement basis(const GroupAction& action, const Polynomial& a, int g);
  friend bool operator==(const TwistedElement&, const TwistedElement&) = default;
  TwistedElement operator+(const TwistedElement& o) const;
};

/// Product in Q#G: (a g)(b h) = a b^g (gh).
TwistedElement twisted_multiply(const GroupAction& action, const TwistedElement& u,
                                const TwistedElement& v);

struct CheckReport {
  bool ok = true;
  std::string message;  // first violated identity, with witnesses

  static CheckReport pass() { return {}; }
  static CheckReport fail(std::string m) { return {false, std::move(m)}; }
  explicit operator bool() const { return ok; }
};

/// Graded free module with a semilinear G-action g(m) = M_g m^g.
struct SemilinearModule {
  GradedFreeModule module;
  std::vector<PolyMatrix> action;  // M_g, indexed by group element
};

/// Checks degree legality, M_e = I and the cocycle M_g (M_h)^g = M_gh, which
/// together say g(am) = a^g g(m) defines a left Q#G-module.
CheckReport check_semilinear_module(const GroupAction& action, const SemilinearModule& m);

/// Checks that `map` (src -> tgt) commutes with the actions: N_g map^g = map M_g.
CheckReport check_intertwines(const GroupAction& action, const SemilinearModule& src,
                              const SemilinearModule& tgt, const PolyMatrix& map,
                              const std::string& name);

/// u acting on a column vector m of the module: sum_g a_g M_g m^g.
PolyMatrix act(const GroupAction& action, const SemilinearModule& m, const TwistedElement& u,
               const PolyMatrix& vec);

/// Inverse of an action matrix, M_g^{-1} = (M_{g^-1})^g.
PolyMatrix inverse_action_matrix(const GroupAction& action, const SemilinearModule& m, int g);

}  // namespace mfg
