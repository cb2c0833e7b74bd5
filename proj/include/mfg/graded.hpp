#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mfg/linalg.hpp"
#include "mfg/polynomial.hpp"

namespace mfg {

/// Weighted polynomial ring k[x_1..x_n] with a homogeneous potential f in the
/// irrelevant ideal.
class GradedRing {
 public:
  GradedRing(Field field, std::vector<std::string> variables, std::vector<int> weights,
             Polynomial potential);
  /// Parses the potential from text.
  GradedRing(Field field, std::vector<std::string> variables, std::vector<int> weights,
             const std::string& potential);

  const Field& field() const { return field_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<int>& weights() const { return weights_; }
  int nvars() const { return static_cast<int>(variables_.size()); }
  const Polynomial& potential() const { return potential_; }
  int potential_degree() const { return potential_degree_; }

  Polynomial variable(int i) const { return Polynomial::variable(nvars(), i, field_); }
  Polynomial constant(const Scalar& c) const { return Polynomial(c.coerce(field_), nvars()); }
  Polynomial parse(const std::string& text) const;
  std::string format(const Polynomial& p) const;
  int degree(const Polynomial& p) const { return p.weighted_degree(weights_); }
  /// Monomial basis of the degree-d piece Q_d.
  std::vector<Monomial> basis(int d) const { return monomials_of_degree(weights_, d); }

  /// Same variables and potential, different field (coefficients coerced).
  GradedRing with_field(const Field& f) const;

  friend bool operator==(const GradedRing& a, const GradedRing& b);

 private:
  Field field_;
  std::vector<std::string> variables_;
  std::vector<int> weights_;
  Polynomial potential_;
  int potential_degree_ = 0;
};

using RingPtr = std::shared_ptr<const GradedRing>;

/// A graded free module, given by the internal degrees of its generators.
struct GradedFreeModule {
  std::vector<int> weights;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(weights.size()); }
  GradedFreeModule twisted(int j) const;
  friend bool operator==(const GradedFreeModule&, const GradedFreeModule&) = default;
};

GradedFreeModule direct_sum(const GradedFreeModule& a, const GradedFreeModule& b);

/// Required degree of entry (i, j) of a map src -> tgt of the given shift.
inline int entry_degree(const GradedFreeModule& src, const GradedFreeModule& tgt, int shift,
                        Eigen::Index i, Eigen::Index j) {
  return src.weights[j] + shift - tgt.weights[i];
}

/// Homogeneous map src -> tgt raising internal degree by `shift`.
struct GradedMatrix {
  GradedFreeModule source;
  GradedFreeModule target;
  int shift = 0;
  PolyMatrix entries;

  /// Empty string when all entries have the required degree, else a
  /// description of the first offending entry.
  std::string degree_violation(const GradedRing& ring) const;
  GradedMatrix compose(const GradedMatrix& inner) const;  // this * inner
};

/// Basis of all degree-legal maps src -> tgt of the given shift, one matrix
/// per (entry, monomial).
std::vector<GradedMatrix> graded_map_space(const GradedFreeModule& src, const GradedFreeModule& tgt,
                                           int shift, const GradedRing& ring);

/// Coordinates of the degree-legal matrices src -> tgt: enumerates the
/// (row, col, monomial) slots in a fixed order.
class MapCoordinates {
 public:
  MapCoordinates(const GradedFreeModule& src, const GradedFreeModule& tgt, int shift,
                 const GradedRing& ring);
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(slots_.size()); }
  /// Writes coordinates of m into v starting at offset; throws on illegal terms.
  void encode(const PolyMatrix& m, FieldVector& v, Eigen::Index offset) const;
  PolyMatrix decode(const FieldVector& v, Eigen::Index offset) const;
  PolyMatrix basis_matrix(Eigen::Index k) const;
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

 private:
  struct Slot {
    Eigen::Index row, col;
    Monomial mono;
  };
  int nvars_;
  Field field_;
  Eigen::Index rows_, cols_;
  std::vector<Slot> slots_;
  std::vector<std::vector<Eigen::Index>> entry_first_;  // first slot index per entry
  std::vector<std::vector<std::vector<Monomial>>> entry_monos_;
};

/// Result of the Tjurina-algebra finiteness test.
struct SingularityReport {
  bool isolated = false;
  long dimension = -1;            // dim_k Q/(f, df) when finite
  int checked_up_to_degree = 0;   // degree window used
};

/// Decides whether Q/(f, df/dx_1, ..., df/dx_n) is finite-dimensional.
SingularityReport is_isolated_singularity(const GradedRing& ring);

/// Coordinates of a homogeneous polynomial of degree d in the monomial basis.
FieldVector encode_homogeneous(const Polynomial& p, const std::vector<Monomial>& basis,
                               const Field& f);

}  // namespace mfg
