#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mfg/field.hpp"

namespace mfg {

inline constexpr int kMaxVariables = 8;

/// Malformed polynomial text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Exponent vector packed one byte per variable (variable i in bits 8i..8i+7).
class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial variable(int i, int power = 1);
  static Monomial from_exponents(const std::vector<int>& e);

  int exponent(int i) const { return static_cast<int>((bits_ >> (8 * i)) & 0xff); }
  std::vector<int> exponents(int nvars) const;
  int total_degree() const;
  int weighted_degree(const std::vector<int>& weights) const;
  bool is_one() const { return bits_ == 0; }
  bool divides(const Monomial& o) const;

  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;  // requires divides
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.bits_ == b.bits_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.bits_ != b.bits_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.bits_ < b.bits_; }
  std::uint64_t bits() const { return bits_; }

 private:
  explicit constexpr Monomial(std::uint64_t b) : bits_(b) {}
  std::uint64_t bits_ = 0;
};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept sorted by packed monomial with no zero coefficients. A
/// polynomial with no variables (`nvars() == 0`) is a free-floating constant
/// that adapts to the ring of the other operand.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Scalar>;

  Polynomial() = default;
  Polynomial(int c);  // NOLINT: constants for Eigen
  explicit Polynomial(const Scalar& c, int nvars = 0);
  Polynomial(int nvars, std::vector<Term> terms);

  static Polynomial variable(int nvars, int i, const Field& f);
  static Polynomial monomial(int nvars, const Monomial& m, const Scalar& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const std::vector<Term>& terms() const { return terms_; }
  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const { return coefficient(Monomial()); }
  size_t size() const { return terms_.size(); }

  /// Weighted degree of the monomials; -1 for the zero polynomial.
  int weighted_degree(const std::vector<int>& weights) const;
  bool is_homogeneous(const std::vector<int>& weights) const;
  /// Keeps only the monomials of the given weighted degree.
  Polynomial homogeneous_part(const std::vector<int>& weights, int d) const;

  Polynomial derivative(int var) const;
  /// Substitutes images[i] for variable i.
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  Polynomial map_coefficients(const Field& target) const;
  /// Re-embeds into a ring with more variables (same indices).
  Polynomial with_nvars(int nvars) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(int e) const;

 private:
  static int merge_nvars(int a, int b);
  void normalize();
  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// Canonical text form: terms by descending weighted degree, then descending
/// lex (x before y), e.g. "3*x^2*y - 1/2*z".
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names,
                              const std::vector<int>& weights);

/// Debug form with variables named x0, x1, ... and unit weights.
std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Parses sums/products/powers of variables, rational literals, the field
/// generator (extension fields) and parentheses.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names,
                            const Field& field);

/// All monomials in `nvars` variables of the given weighted degree, in
/// canonical (descending lex) order.
std::vector<Monomial> monomials_of_degree(const std::vector<int>& weights, int degree);

}  // namespace mfg

namespace Eigen {
template <>
struct NumTraits<mfg::Polynomial> : GenericNumTraits<mfg::Polynomial> {
  typedef mfg::Polynomial Real;
  typedef mfg::Polynomial NonInteger;
  typedef mfg::Polynomial Nested;
  typedef mfg::Polynomial Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 256
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace mfg {
using PolyMatrix = Eigen::Matrix<Polynomial, Eigen::Dynamic, Eigen::Dynamic>;

/// Entrywise ring substitution.
PolyMatrix substitute(const PolyMatrix& m, const std::vector<Polynomial>& images);
PolyMatrix scale(const PolyMatrix& m, const Scalar& s);
/// Product that skips zero entries; Eigen's product works too but is slower
/// for sparse polynomial matrices.
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);
bool is_zero(const PolyMatrix& m);
PolyMatrix poly_identity(Eigen::Index n);
PolyMatrix poly_zero(Eigen::Index r, Eigen::Index c);
PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b);
}  // namespace mfg
