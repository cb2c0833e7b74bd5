#pragma once

#include <optional>
#include <stop_token>
#include <vector>

#include "mfg/group.hpp"

namespace mfg {

/// Raised when input data fails validation (as opposed to a computation that
/// cannot be completed).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Object of mf_G(Q, f): P = P0 + P1 graded free of equal rank with
///   A: P1 -> P0 (entry degree w1(j) - w0(i)),
///   B: P0 -> P1 (entry degree d_f + w0(j) - w1(i)),
/// AB = BA = f I, and a semilinear action g(p) = M_g p^g on each component
/// commuting with A and B.
struct EquivariantMF {
  ActionPtr action;
  GradedFreeModule p0, p1;
  PolyMatrix a, b;
  std::vector<PolyMatrix> m0, m1;  // action matrices, indexed by group element

  const GradedRing& ring() const { return action->ring(); }
  const GroupAction& group_action() const { return *action; }
  int order() const { return action->order(); }
  Eigen::Index rank() const { return p0.rank(); }

  SemilinearModule module0() const { return {p0, m0}; }
  SemilinearModule module1() const { return {p1, m1}; }

  /// Builds an object with every M_g = I; throws ValidationError if invalid.
  static EquivariantMF make(ActionPtr action, std::vector<int> w0, std::vector<int> w1, PolyMatrix a,
                            PolyMatrix b);
  /// Builds an object with the given action matrices; throws ValidationError if invalid.
  static EquivariantMF make(ActionPtr action, std::vector<int> w0, std::vector<int> w1, PolyMatrix a,
                            PolyMatrix b, std::vector<PolyMatrix> m0, std::vector<PolyMatrix> m1);
  /// The rank-0 object.
  static EquivariantMF zero(ActionPtr action);

  friend bool operator==(const EquivariantMF& x, const EquivariantMF& y);
};

CheckReport validate_mf(const EquivariantMF& x);

/// Even degree-0 map X -> Y: U0: P0 -> P0', U1: P1 -> P1'.
struct MFMorphism {
  PolyMatrix u0, u1;

  friend bool operator==(const MFMorphism&, const MFMorphism&) = default;
  MFMorphism operator+(const MFMorphism& o) const { return {u0 + o.u0, u1 + o.u1}; }
  MFMorphism operator-(const MFMorphism& o) const { return {u0 - o.u0, u1 - o.u1}; }
  MFMorphism operator-() const { return {-u0, -u1}; }
  MFMorphism scaled(const Scalar& s) const { return {scale(u0, s), scale(u1, s)}; }
};

/// Odd map X -> Y: H0: P0 -> P1' (shift 0), H1: P1 -> P0' (shift -d_f).
/// Witnesses U - V = d' H + H d, i.e.
///   U0 - V0 = A' H0 + H1 B,   U1 - V1 = B' H1 + H0 A.
struct Homotopy {
  PolyMatrix h0, h1;
  friend bool operator==(const Homotopy&, const Homotopy&) = default;
};

MFMorphism identity_morphism(const EquivariantMF& x);
MFMorphism zero_morphism(const EquivariantMF& x, const EquivariantMF& y);
/// g after f.
MFMorphism compose(const MFMorphism& g, const MFMorphism& f);

/// Degree legality, chain-map identities and equivariance.
CheckReport check_morphism(const EquivariantMF& x, const EquivariantMF& y, const MFMorphism& u);
/// Degree legality, equivariance and U - V = d'H + Hd.
CheckReport check_homotopy(const EquivariantMF& x, const EquivariantMF& y, const MFMorphism& u,
                           const MFMorphism& v, const Homotopy& h);
/// d'H + Hd.
MFMorphism boundary(const EquivariantMF& x, const EquivariantMF& y, const Homotopy& h);

/// Basis of the space of degree-0 equivariant chain maps X -> Y, with
/// coordinates of arbitrary maps.
class MorphismSpace {
 public:
  MorphismSpace(const EquivariantMF& x, const EquivariantMF& y, std::stop_token stop = {});

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<MFMorphism>& basis() const { return basis_; }
  const Field& field() const { return field_; }
  /// Coordinates in the basis; nullopt when u is not an equivariant chain map.
  std::optional<FieldVector> coordinates(const MFMorphism& u) const;
  MFMorphism combine(const FieldVector& c) const;

  /// Coordinates of u among all degree-legal pairs (U0, U1).
  FieldVector encode(const MFMorphism& u) const;
  MFMorphism decode(const FieldVector& v) const;
  Eigen::Index ambient_dimension() const { return c0_.dimension() + c1_.dimension(); }
  /// Basis as columns in ambient coordinates.
  const FieldMatrix& basis_columns() const { return columns_; }

 private:
  Field field_;
  MapCoordinates c0_, c1_;
  std::vector<MFMorphism> basis_;
  FieldMatrix columns_;
  std::optional<Eliminator<Scalar>> elim_;
};

/// Equivariant homotopy with u - v = d'H + Hd, or nullopt if none exists.
/// Solves the equivariant linear system directly.
std::optional<Homotopy> homotopy_witness(const EquivariantMF& x, const EquivariantMF& y,
                                         const MFMorphism& u, const MFMorphism& v,
                                         std::stop_token stop = {});
/// Same question answered by solving without equivariance and averaging the
/// witness over G; requires |G| invertible.
std::optional<Homotopy> homotopy_witness_by_averaging(const EquivariantMF& x, const EquivariantMF& y,
                                                      const MFMorphism& u, const MFMorphism& v,
                                                      std::stop_token stop = {});
/// (1/|G|) sum_g M'_g H^g M_g^{-1}, componentwise.
Homotopy average_homotopy(const EquivariantMF& x, const EquivariantMF& y, const Homotopy& h);

bool is_contractible(const EquivariantMF& x, std::stop_token stop = {});
std::optional<Homotopy> contraction(const EquivariantMF& x, std::stop_token stop = {});

/// Hom in the homotopy category: equivariant chain maps modulo boundaries of
/// equivariant homotopies.
class StableHomSpace {
 public:
  StableHomSpace(const EquivariantMF& x, const EquivariantMF& y, std::stop_token stop = {});

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(reps_.size()); }
  Eigen::Index cycles_dimension() const { return cycles_.dimension(); }
  Eigen::Index boundaries_dimension() const { return boundary_dim_; }
  const std::vector<MFMorphism>& representatives() const { return reps_; }
  const MorphismSpace& cycles() const { return cycles_; }

  /// Class of u in the representative basis; nullopt when u is not a cycle.
  std::optional<FieldVector> class_coordinates(const MFMorphism& u) const;
  bool is_null_homotopic(const MFMorphism& u) const;
  MFMorphism combine(const FieldVector& c) const;

 private:
  MorphismSpace cycles_;
  Eigen::Index boundary_dim_ = 0;
  std::vector<MFMorphism> reps_;
  std::optional<QuotientSpace<Scalar>> quotient_;
};

EquivariantMF direct_sum(const EquivariantMF& x, const EquivariantMF& y);
EquivariantMF direct_sum(const std::vector<EquivariantMF>& xs, const ActionPtr& action);
/// Block-diagonal sum of morphisms between direct sums.
MFMorphism direct_sum(const MFMorphism& u, const MFMorphism& v);

/// X[1] = (P1(-d_f), P0) with A' = -B, B' = -A. In the graded setting
/// X[2] = X(-d_f) with identical matrices.
EquivariantMF shift(const EquivariantMF& x);
MFMorphism shift(const MFMorphism& u);
/// All generator weights raised by j.
EquivariantMF twist(const EquivariantMF& x, int j);

/// Cone of u: X -> Y on Y + X[1] with differential [[d_Y, u], [0, -d_X]].
EquivariantMF cone(const EquivariantMF& x, const EquivariantMF& y, const MFMorphism& u);
/// Canonical maps Y -> cone(u) and cone(u) -> X[1].
MFMorphism cone_inclusion(const EquivariantMF& x, const EquivariantMF& y);
MFMorphism cone_projection(const EquivariantMF& x, const EquivariantMF& y);

/// Restricts to the trivial group (action matrices dropped).
EquivariantMF forget(const EquivariantMF& x);

}  // namespace mfg
