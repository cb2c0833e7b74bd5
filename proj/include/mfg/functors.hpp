#pragma once

#include <optional>
#include <stop_token>
#include <vector>

#include "mfg/mf.hpp"
#include "mfg/serialize.hpp"
#include "mfg/splitting.hpp"

namespace mfg {

// ---- induction and the averaging splitting ----

/// (Q#G) (x)_Q P with G acting through the left factor. In the basis
/// g (x) e_i the differential is block diagonal with block g equal to
/// sigma_g(d_P), and h sends block g to block hg by the identity.
/// P must carry the trivial group over the ring of `action`.
EquivariantMF induce(const EquivariantMF& p, const ActionPtr& action);
MFMorphism induce(const MFMorphism& u, const ActionPtr& action);
Homotopy induce(const Homotopy& h, const ActionPtr& action);

/// p: induce(forget(Y)) -> Y (multiplication) and its section
/// j(y) = 1/|G| sum_g g^-1 (x) g(y), with the three checks of the argument.
struct AveragingSplitting {
  EquivariantMF induced;
  MFMorphism p, j;
  CheckReport linear;     // p and j intertwine the actions
  CheckReport chain_map;  // p and j commute with the differentials
  CheckReport section;    // p j = id exactly

  bool ok() const { return linear.ok && chain_map.ok && section.ok; }
};
/// Throws CharacteristicError when |G| is not a unit.
AveragingSplitting averaging_splitting(const EquivariantMF& y);

// ---- base change ----

enum class RingHomKind { identity, field_extension, substitution };

/// Graded, G-equivariant homomorphism Q -> Q' with phi(f) = f'. Coefficients
/// are coerced into the target field; variable i maps to images[i].
class RingHom {
 public:
  /// Validates degrees, phi(f) = f' and phi(x^g) = phi(x)^g; throws ValidationError.
  RingHom(ActionPtr source, ActionPtr target, std::vector<Polynomial> images);

  static RingHom identity(const ActionPtr& action);
  /// Same variables and action over an extension field of the source field.
  static RingHom field_extension(const ActionPtr& action, const Field& extension);

  const ActionPtr& source() const { return source_; }
  const ActionPtr& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }
  RingHomKind kind() const { return kind_; }

  Polynomial apply(const Polynomial& p) const;
  PolyMatrix apply(const PolyMatrix& m) const;

 private:
  ActionPtr source_, target_;
  std::vector<Polynomial> images_;
  RingHomKind kind_ = RingHomKind::identity;
};

/// Extension of scalars; throws ValidationError if the image is not a matrix
/// factorization of f'.
EquivariantMF base_change(const RingHom& phi, const EquivariantMF& x);
MFMorphism base_change(const RingHom& phi, const MFMorphism& u);
Homotopy base_change(const RingHom& phi, const Homotopy& h);

/// Stable End of X and of its base change in Z/2-degrees 0 ([X, X]) and 1
/// ([X, X[1]]), with the rank of the induced map in each degree.
struct EndHomologyComparison {
  Eigen::Index source_dim[2] = {0, 0};
  Eigen::Index target_dim[2] = {0, 0};
  Eigen::Index induced_rank[2] = {0, 0};

  bool is_isomorphism() const;
  Json to_json() const;
};
EndHomologyComparison compare_end_homology(const RingHom& phi, const EquivariantMF& x,
                                           std::stop_token stop = {});

// ---- homotopy-coherent equivariant objects ----

/// P^g = (sigma_g A, sigma_g B): P with its coefficients moved along g.
EquivariantMF pullback(const EquivariantMF& p, const GroupAction& action, int g);
/// sigma_g applied entrywise to a morphism or homotopy.
MFMorphism pullback(const MFMorphism& u, const GroupAction& action, int g);

/// A matrix factorization P without action together with maps
/// theta_g: P^g -> P satisfying theta_e ~ id and theta_g sigma_g(theta_h) ~ theta_gh,
/// each certified by a non-equivariant homotopy.
struct HomotopyEquivariantObject {
  ActionPtr action;
  EquivariantMF p;               // trivial group
  std::vector<MFMorphism> theta;  // indexed by group element
  Homotopy unit_witness;          // theta_e - id = dH + Hd
  std::vector<std::vector<Homotopy>> cocycle_witness;  // [g][h]

  /// Finds the witnesses; throws ValidationError if some condition fails.
  static HomotopyEquivariantObject make(ActionPtr action, EquivariantMF p, std::vector<MFMorphism> theta,
                                        std::stop_token stop = {});
  /// Image of a genuine equivariant object: theta_g = M_g.
  static HomotopyEquivariantObject from_equivariant(const EquivariantMF& x);

  Json to_json() const;
  /// Parses and re-checks every witness; throws SchemaError or ValidationError.
  static HomotopyEquivariantObject from_json(const Json& j, const ActionPtr& action);
};

/// Re-checks the witnesses stored in the object.
CheckReport check_homotopy_equivariant(const HomotopyEquivariantObject& o);

/// Isomorphism in [mf]^G: phi: P -> P' stable-invertible with
/// phi theta_g ~ theta'_g sigma_g(phi) for every g.
struct CoherentIsomorphism {
  MFMorphism forward, backward;                  // P -> P', P' -> P
  Homotopy backward_forward, forward_backward;  // ~ id_P, ~ id_P'
  std::vector<Homotopy> compatibility;           // forward theta_g - theta'_g sigma_g(forward)
};
std::optional<CoherentIsomorphism> coherent_isomorphism(const HomotopyEquivariantObject& a,
                                                        const HomotopyEquivariantObject& b,
                                                        const MFMorphism& forward, const MFMorphism& backward,
                                                        std::stop_token stop = {});
CheckReport check_coherent_isomorphism(const HomotopyEquivariantObject& a, const HomotopyEquivariantObject& b,
                                       const CoherentIsomorphism& iso);

/// Genuine equivariant Z with from_equivariant(Z) isomorphic to obj. Z splits
/// the theta-twisted averaging projector on induce(P), whose (h, g) block is
/// 1/|G| sigma_h(theta_{h^-1 g}): P^g -> P^h.
struct Strictification {
  EquivariantMF z;
  EquivariantMF induced;
  MFMorphism projector;
  SplitResult split;             // of the projector on `induced`
  CoherentIsomorphism comparison;  // from_equivariant(z) -> obj
};
/// Throws CharacteristicError if |G| is not a unit, ValidationError if the
/// projector is not idempotent up to homotopy.
Strictification strictify(const HomotopyEquivariantObject& obj, std::stop_token stop = {});
CheckReport check_strictification(const HomotopyEquivariantObject& obj, const Strictification& s);

}  // namespace mfg
