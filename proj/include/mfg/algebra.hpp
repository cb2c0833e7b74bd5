#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mfg/linalg.hpp"
#include "mfg/upoly.hpp"

namespace mfg {

/// The primitive-idempotent search could neither split a corner nor certify it
/// as primitive (a noncommutative division corner over the rationals).
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// Finite-dimensional associative unital algebra given by structure constants:
/// e_i e_j = sum_k c_ijk e_k. Elements are coordinate vectors.
class FinDimAlgebra {
 public:
  /// `products[i][j]` holds the coordinates of e_i e_j. The unit laws are
  /// always checked; associativity on all basis triples unless the caller
  /// knows it already (e.g. the product is composition of maps).
  FinDimAlgebra(Field k, std::vector<std::vector<FieldVector>> products, FieldVector unit,
                bool check_associativity = true);

  /// Algebra spanned by `n` basis elements whose products are reported by
  /// `product(i, j)` in the same coordinates.
  static FinDimAlgebra from_products(Field k, int n, const std::function<FieldVector(int, int)>& product,
                                     FieldVector unit, bool check_associativity = true);
  /// Subalgebra of square matrices spanned by `basis`; it must be closed under
  /// multiplication and contain the identity.
  static FinDimAlgebra from_matrices(Field k, const std::vector<FieldMatrix>& basis);

  /// k^n with componentwise product, k[t]/(t^n), full matrix algebra M_n(k),
  /// upper-triangular n x n matrices.
  static FinDimAlgebra product_of_fields(Field k, int n);
  static FinDimAlgebra truncated_polynomial(Field k, int n);
  static FinDimAlgebra matrix_algebra(Field k, int n);
  static FinDimAlgebra upper_triangular(Field k, int n);

  int dimension() const { return n_; }
  const Field& field() const { return field_; }
  const FieldVector& unit() const { return unit_; }
  FieldVector zero() const;
  FieldVector basis_element(int i) const;
  /// Coordinates of e_i e_j.
  const FieldVector& product(int i, int j) const { return products_[i][j]; }

  FieldVector multiply(const FieldVector& a, const FieldVector& b) const;
  FieldVector power(const FieldVector& a, int k) const;
  /// Matrix of x -> a x and of x -> x a.
  FieldMatrix left_matrix(const FieldVector& a) const;
  FieldMatrix right_matrix(const FieldVector& a) const;
  bool is_idempotent(const FieldVector& a) const;
  bool is_commutative() const;

  /// Structure-constant table for debugging.
  std::string table() const;

 private:
  Field field_;
  int n_;
  std::vector<std::vector<FieldVector>> products_;
  FieldVector unit_;
};

/// Two-sided ideal given by a basis (columns of `basis`, in algebra coordinates).
struct AlgebraIdeal {
  FieldMatrix basis;

  int dimension() const { return static_cast<int>(basis.cols()); }
  bool contains(const FieldVector& v) const;
};

/// Span of all products using a basis of I on the left and of J on the right.
AlgebraIdeal ideal_product(const FinDimAlgebra& a, const AlgebraIdeal& i, const AlgebraIdeal& j);
/// Basis-independent ideal test: closed under left and right multiplication.
bool is_two_sided_ideal(const FinDimAlgebra& a, const AlgebraIdeal& i);
/// Smallest m with I^m = 0, or -1 if I is not nilpotent.
int nilpotency_index(const FinDimAlgebra& a, const AlgebraIdeal& i);

/// Jacobson radical via the kernel of the trace form (a, b) -> Tr(L_ab).
/// Requires characteristic 0 or p > dim; throws CharacteristicError otherwise.
AlgebraIdeal radical(const FinDimAlgebra& a);

/// Quotient algebra A/I with the projection A -> A/I and a section A/I -> A
/// (chosen representative basis elements), both as matrices.
struct QuotientAlgebra {
  FinDimAlgebra algebra;
  FieldMatrix projection;
  FieldMatrix section;
};
QuotientAlgebra quotient(const FinDimAlgebra& a, const AlgebraIdeal& i);

/// Trace form of the algebra as a Gram matrix.
FieldMatrix trace_form(const FinDimAlgebra& a);

/// Newton lifting e <- 3e^2 - 2e^3 of an idempotent modulo a nilpotent ideal.
FieldVector lift_idempotent(const FinDimAlgebra& a, const AlgebraIdeal& n, const FieldVector& e0);

/// Minimal polynomial of x inside the corner algebra with unit `one` (x must
/// satisfy one x = x one = x).
UPoly minimal_polynomial(const FinDimAlgebra& a, const FieldVector& x, const FieldVector& one);

/// Complete family of primitive orthogonal idempotents. Every postcondition is
/// checked before returning. Over an extension field the search runs on the
/// underlying algebra over the prime field.
std::vector<FieldVector> primitive_decomposition(const FinDimAlgebra& a);

/// True iff A/J(A) has no nontrivial idempotents.
bool is_nc_local(const FinDimAlgebra& a);

/// Corner algebra eAe with unit e; `embedding` columns are its basis in A.
struct CornerAlgebra {
  FinDimAlgebra algebra;
  FieldMatrix embedding;
};
CornerAlgebra corner(const FinDimAlgebra& a, const FieldVector& e);

/// Two-sided inverse of x, or nullopt when x is not a unit.
std::optional<FieldVector> algebra_inverse(const FinDimAlgebra& a, const FieldVector& x);

/// For idempotents f, g with local corners: (p, q) with p in fAg, q in gAf,
/// pq = f and qp = g, or nullopt when fA and gA are not isomorphic.
std::optional<std::pair<FieldVector, FieldVector>> idempotent_isomorphism(const FinDimAlgebra& a,
                                                                          const FieldVector& f,
                                                                          const FieldVector& g);

/// General idempotents f, g: (p, q) with p in fAg, q in gAf, pq = f and qp = g,
/// found by matching primitive decompositions of the two corners.
std::optional<std::pair<FieldVector, FieldVector>> idempotent_equivalence(const FinDimAlgebra& a,
                                                                          const FieldVector& f,
                                                                          const FieldVector& g);

/// The same ring viewed over the prime field (dimension times extension degree).
/// Coordinates are ordered (basis index, power of the generator).
FinDimAlgebra restrict_scalars(const FinDimAlgebra& a);
FieldVector restrict_element(const FinDimAlgebra& a, const FieldVector& v);
FieldVector extend_element(const FinDimAlgebra& a, const FieldVector& v);

}  // namespace mfg
