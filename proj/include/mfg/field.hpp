#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation is not available in the field's characteristic.
class CharacteristicError : public Error {
 public:
  using Error::Error;
};

namespace detail {
struct FieldData;
}

/// Handle to an exact coefficient field: the rationals, a prime field F_p, or a
/// simple algebraic extension K(t)/(mu) of one of those.
///
/// Descriptors are interned and immutable, so handles compare by pointer and
/// are cheap to copy.
class Field {
 public:
  Field();  // rationals

  static Field rationals();
  static Field prime(std::uint64_t p);
  /// `minpoly` lists base-field coefficients from constant term upward; it must
  /// be monic of degree >= 2 and irreducible (irreducibility is checked for
  /// degree <= 3 only).
  static Field extension(const Field& base, const std::vector<mpq_class>& minpoly,
                         const std::string& generator);

  std::uint64_t characteristic() const;
  bool is_rationals() const;
  bool is_prime() const;
  bool is_extension() const;
  int degree() const;  // over the prime field (1 unless extension)
  Field base() const;  // itself unless extension
  const std::string& generator() const;
  const std::vector<mpq_class>& minpoly() const;

  /// True when the integer n is invertible in the field.
  bool is_unit_integer(long n) const;

  std::string describe() const;

  const detail::FieldData* data() const { return data_; }
  friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_; }

 private:
  explicit Field(const detail::FieldData* d) : data_(d) {}
  const detail::FieldData* data_;
  friend class Scalar;
};

/// An exact field element.
///
/// A Scalar built from an integer literal carries no field and adopts the
/// field of whatever it is combined with; this lets Eigen's Zero()/Identity()
/// work with field-typed matrices.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : value_(v) {}  // NOLINT: literals are untyped constants
  Scalar(long v) : value_(v) {}  // NOLINT
  explicit Scalar(const mpq_class& q) : value_(q) { value_.canonicalize(); }
  Scalar(const mpq_class& q, const Field& f);
  Scalar(long num, long den, const Field& f);

  static Scalar zero(const Field& f) { return Scalar(0, f); }
  static Scalar one(const Field& f) { return Scalar(1, f); }
  /// The generator t of an extension field.
  static Scalar generator(const Field& f);
  /// Builds an extension element from base coordinates c_0 + c_1 t + ....
  static Scalar from_coordinates(const Field& f, const std::vector<mpq_class>& c);

  bool typed() const { return field_ != nullptr; }
  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar inverse() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Rational value for base-field elements (integer representative in F_p).
  const mpq_class& rational() const;
  /// Base-field coordinates (length = extension degree, 1 otherwise).
  std::vector<mpq_class> coordinates() const;
  /// True if the element lies in the prime subfield.
  bool in_base() const;
  Scalar coerce(const Field& f) const;

  std::string str() const;
  /// Lossy conversion used only for numeric root guessing.
  double approx() const;

  // Makes the printed sign of a term readable ("- 1/2*z").
  bool is_negative_rational() const;

 private:
  void adopt(const detail::FieldData* f);
  void unify(Scalar& o);
  const detail::FieldData* field_ = nullptr;
  mpq_class value_;               // base element (or untyped rational)
  std::vector<mpq_class> ext_;    // extension coordinates, empty otherwise
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses "3", "-1/2" as an untyped rational constant.
Scalar parse_rational(const std::string& text);

bool is_prime(std::uint64_t n);

}  // namespace mfg

#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<mfg::Scalar> : GenericNumTraits<mfg::Scalar> {
  typedef mfg::Scalar Real;
  typedef mfg::Scalar NonInteger;
  typedef mfg::Scalar Nested;
  typedef mfg::Scalar Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace mfg {
using FieldMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using FieldVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

FieldMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols, const Field& f);
FieldVector zero_vector(Eigen::Index n, const Field& f);
}  // namespace mfg
