#pragma once

#include <random>
#include <string>
#include <vector>

#include "mfg/algebra.hpp"
#include "mfg/functors.hpp"
#include "mfg/mf.hpp"

namespace mfg::samples {

struct NamedAlgebra {
  std::string name;
  FinDimAlgebra algebra;
};

/// Fixed corpus of algebras of dimension <= 4 over k: products of fields,
/// truncated polynomial rings, matrix and triangular algebras, local monomial
/// algebras and k[t]/(g) for a few g.
std::vector<NamedAlgebra> algebra_corpus(const Field& k);

/// The same algebra presented in the basis given by the columns of p.
FinDimAlgebra change_basis(const FinDimAlgebra& a, const FieldMatrix& p);

/// Random invertible n x n matrix with small integer entries.
FieldMatrix random_invertible(const Field& k, int n, std::mt19937_64& rng);

/// k[t]/(g) for g given by coefficients from the constant term upward.
FinDimAlgebra polynomial_quotient(const Field& k, const UPoly& g);

// ---- matrix factorization samples ----

/// Polynomial ring with unit weights.
RingPtr unit_weight_ring(const std::vector<std::string>& vars, const std::string& f,
                         const Field& k = Field::rationals());
/// Z/2 acting by x_i -> -x_i, and Z/2 swapping the first two variables.
ActionPtr sign_action(const RingPtr& r);
ActionPtr swap_action(const RingPtr& r);

/// Rank-one object (a, b) with P0 = [0], P1 = [deg a]. For a Z/2 action the
/// non-identity element acts by the signs (e0, e1).
EquivariantMF rank_one(const ActionPtr& act, const std::string& a, const std::string& b, int e0 = 1, int e1 = 1);

/// A potential with a group action and a catalog of indecomposable objects
/// (contractible ones included and flagged).
struct Setting {
  std::string name;
  ActionPtr action;
  std::vector<EquivariantMF> catalog;
  std::vector<bool> contractible;
};

/// f in {x^3, x^4, x^2+y^2, x^3+y^3} over the rationals with every action from
/// {trivial, sign, swap} that fixes f.
std::vector<Setting> desk_settings();

/// Random element of a hom space with coefficients in [-2, 2].
MFMorphism random_morphism(std::mt19937_64& rng, const MorphismSpace& s);
/// Random equivariant homotopy X -> Y (averaged over the group).
Homotopy random_homotopy(std::mt19937_64& rng, const EquivariantMF& x, const EquivariantMF& y);

/// Direct sum of catalog entries with random twists in [-1, 1].
struct SampleSum {
  EquivariantMF object;
  std::vector<EquivariantMF> pieces;
  std::vector<int> indices;  // into the catalog
};
SampleSum random_sum(std::mt19937_64& rng, const Setting& s, int min_pieces, int max_pieces);

/// X' = U X U^-1 for a random graded automorphism U built from elementary
/// operations; `iso` is U: X -> X' and `inverse` its inverse.
struct Conjugate {
  EquivariantMF object;
  MFMorphism iso, inverse;
};
Conjugate random_conjugate(std::mt19937_64& rng, const EquivariantMF& x);

/// Idempotent e on a conjugated sum X whose image is the sum `expected` of
/// the selected pieces. Strict samples have e e = e exactly; homotopy samples
/// are further perturbed by units id + n with n null-homotopic.
struct IdempotentSample {
  EquivariantMF x;
  MFMorphism e;
  EquivariantMF expected;
};
IdempotentSample random_strict_idempotent(std::mt19937_64& rng, const Setting& s);
IdempotentSample random_homotopy_idempotent(std::mt19937_64& rng, const Setting& s);

/// Homotopy-equivariant object obtained from a random genuine sum X: P is a
/// random conjugate U forget(X) U^-1 and theta_g = U M_g sigma_g(U^-1) plus a
/// random boundary.
struct CoherentSample {
  HomotopyEquivariantObject object;
  EquivariantMF genuine;
};
CoherentSample random_homotopy_equivariant(std::mt19937_64& rng, const Setting& s, int max_pieces = 2);

}  // namespace mfg::samples
