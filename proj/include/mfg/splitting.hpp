#pragma once

#include <optional>
#include <stop_token>
#include <vector>

#include "mfg/algebra.hpp"
#include "mfg/mf.hpp"

namespace mfg {

/// Endomorphism algebras in the coordinates of the given hom space bases.
FinDimAlgebra strict_end_algebra(const MorphismSpace& end);
FinDimAlgebra stable_end_algebra(const StableHomSpace& end);

/// Splitting of an idempotent e on X: pi: X -> Y, iota: Y -> X.
/// In homotopy mode the two witnesses certify pi iota ~ id_Y and iota pi ~ e.
struct SplitResult {
  EquivariantMF y;
  MFMorphism pi, iota;
  std::optional<Homotopy> section_witness;     // pi iota - id_Y = dH + Hd
  std::optional<Homotopy> idempotent_witness;  // iota pi - e = dH + Hd
};

/// Splits a degree-0 graded idempotent matrix: E = iota pi, pi iota = I, where
/// iota: F(weights) -> P. Returns the weights of the image basis.
struct ProjectorSplitting {
  std::vector<int> weights;
  PolyMatrix iota, pi;
};
ProjectorSplitting split_projector(const PolyMatrix& e, const std::vector<int>& weights, const GradedRing& ring);

/// Strict splitting through im(e): pi iota = id and iota pi = e exactly.
/// Throws ValidationError unless e is an equivariant chain map with e e = e.
SplitResult split_strict_idempotent(const EquivariantMF& x, const MFMorphism& e);

struct KSSummand {
  EquivariantMF object;
  MFMorphism projection, inclusion;  // X -> Y_i and Y_i -> X
  bool contractible = false;
  int class_index = 0;
  /// Mutually inverse maps Y_i -> Y_rep and Y_rep -> Y_i.
  MFMorphism to_representative, from_representative;
};

struct KSClass {
  int representative = 0;  // index into summands
  int multiplicity = 0;
  bool contractible = false;
};

struct KSDecomposition {
  std::vector<KSSummand> summands;
  std::vector<KSClass> classes;

  int contractible_count() const;
  /// Classes of non-contractible summands.
  std::vector<KSClass> noncontractible_classes() const;
};

/// Krull-Schmidt decomposition by primitive idempotents of End(X).
KSDecomposition ks_decompose(const EquivariantMF& x, std::stop_token stop = {});
/// Re-checks the decomposition: sum_i iota_i pi_i = id, pi_i iota_j = delta_ij,
/// the representative isomorphisms, local endomorphism rings and the
/// contractibility flags.
CheckReport check_ks_decomposition(const EquivariantMF& x, const KSDecomposition& d);

/// Splits e with e e ~ e: Y is a subsum of the Krull-Schmidt summands of X
/// matched to the primitive idempotents of [e] End(X) [e] in the homotopy
/// category. Throws ValidationError if e is not idempotent up to homotopy.
SplitResult split_homotopy_idempotent(const EquivariantMF& x, const MFMorphism& e, std::stop_token stop = {});

/// Re-verifies a split result; `strict` demands exact identities.
CheckReport check_split(const EquivariantMF& x, const MFMorphism& e, const SplitResult& s, bool strict);

/// Mutually inverse maps with, in homotopy mode, witnesses for both composites.
struct Isomorphism {
  MFMorphism forward, backward;               // X -> Y, Y -> X
  std::optional<Homotopy> backward_forward;  // backward forward ~ id_X
  std::optional<Homotopy> forward_backward;  // forward backward ~ id_Y
};
std::optional<Isomorphism> strict_isomorphism(const EquivariantMF& x, const EquivariantMF& y,
                                              std::stop_token stop = {});
std::optional<Isomorphism> stable_isomorphism(const EquivariantMF& x, const EquivariantMF& y,
                                              std::stop_token stop = {});
CheckReport check_isomorphism(const EquivariantMF& x, const EquivariantMF& y, const Isomorphism& iso, bool strict);

/// Object (X, e) of the idempotent completion of the homotopy category.
struct FormalIdempotentObject {
  EquivariantMF x;
  MFMorphism e;
  Homotopy witness;  // e e - e = dH + Hd

  /// Certifies e e ~ e; throws ValidationError otherwise.
  static FormalIdempotentObject make(EquivariantMF x, MFMorphism e);
};

/// f: (X, e) -> (X', e') requires e' f ~ f ~ f e.
CheckReport check_formal_morphism(const FormalIdempotentObject& src, const FormalIdempotentObject& tgt,
                                  const MFMorphism& f);
inline MFMorphism formal_identity(const FormalIdempotentObject& o) { return o.e; }
inline MFMorphism formal_compose(const MFMorphism& g, const MFMorphism& f) { return compose(g, f); }
/// Dimension of e' [X, X'] e.
Eigen::Index formal_hom_dimension(const FormalIdempotentObject& src, const FormalIdempotentObject& tgt);

/// Isomorphism (X, e) = (Y, id) with Y from split_homotopy_idempotent: the pair
/// (pi, iota) with witnesses for pi iota ~ id_Y and iota pi ~ e.
struct FormalComparison {
  FormalIdempotentObject split;  // (Y, id)
  MFMorphism to_split, from_split;
  Homotopy to_from, from_to;  // to from ~ id_Y, from to ~ e
};
FormalComparison formal_comparison(const FormalIdempotentObject& o, std::stop_token stop = {});
CheckReport check_formal_comparison(const FormalIdempotentObject& o, const FormalComparison& c);

}  // namespace mfg
