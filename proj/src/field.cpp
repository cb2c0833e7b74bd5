#include "mfg/field.hpp"

#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

namespace mfg {

namespace detail {

enum class FieldKind { Rationals, Prime, Extension };

struct FieldData {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;
  const FieldData* base = nullptr;     // extension only
  std::vector<mpq_class> minpoly;      // monic, low -> high
  std::string generator;
  int degree = 1;
  mpz_class pz;                       // p as a GMP integer
};

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::unique_ptr<FieldData>>& registry() {
  static std::vector<std::unique_ptr<FieldData>> r;
  return r;
}

const FieldData* intern(FieldData d) {
  std::lock_guard lock(registry_mutex());
  for (const auto& e : registry()) {
    if (e->kind == d.kind && e->p == d.p && e->base == d.base && e->minpoly == d.minpoly &&
        e->generator == d.generator)
      return e.get();
  }
  registry().push_back(std::make_unique<FieldData>(std::move(d)));
  return registry().back().get();
}

}  // namespace

}  // namespace detail

using detail::FieldData;
using detail::FieldKind;

namespace {

const FieldData* rationals_data() {
  static const FieldData* q = detail::intern(FieldData{});
  return q;
}

mpz_class modp(const mpz_class& z, const FieldData* f) {
  mpz_class m;
  mpz_mod(m.get_mpz_t(), z.get_mpz_t(), f->pz.get_mpz_t());
  return m;
}

// Canonical representative of a rational in a base field.
mpq_class base_reduce(const FieldData* f, const mpq_class& q) {
  if (f->kind == FieldKind::Rationals) return q;
  const mpz_class& pz = f->pz;
  mpz_class den = modp(q.get_den(), f);
  if (den == 0) throw Error("denominator not invertible in F_" + std::to_string(f->p));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  return mpq_class(modp(q.get_num() * inv, f));
}

mpq_class base_add(const FieldData* f, const mpq_class& a, const mpq_class& b) {
  if (f->kind == FieldKind::Rationals) return a + b;
  return mpq_class(modp(a.get_num() + b.get_num(), f));
}
mpq_class base_sub(const FieldData* f, const mpq_class& a, const mpq_class& b) {
  if (f->kind == FieldKind::Rationals) return a - b;
  return mpq_class(modp(a.get_num() - b.get_num(), f));
}
mpq_class base_mul(const FieldData* f, const mpq_class& a, const mpq_class& b) {
  if (f->kind == FieldKind::Rationals) return a * b;
  return mpq_class(modp(a.get_num() * b.get_num(), f));
}
mpq_class base_inv(const FieldData* f, const mpq_class& a) {
  if (a == 0) throw Error("division by zero");
  if (f->kind == FieldKind::Rationals) return 1 / a;
  const mpz_class& pz = f->pz;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), a.get_num().get_mpz_t(), pz.get_mpz_t());
  return mpq_class(inv);
}

using BasePoly = std::vector<mpq_class>;

void trim(BasePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

BasePoly poly_mul(const FieldData* f, const BasePoly& a, const BasePoly& b) {
  if (a.empty() || b.empty()) return {};
  BasePoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = base_add(f, r[i + j], base_mul(f, a[i], b[j]));
  }
  trim(r);
  return r;
}

// Remainder of a modulo b, quotient optional.
BasePoly poly_divmod(const FieldData* f, BasePoly a, const BasePoly& b, BasePoly* quot) {
  trim(a);
  if (quot) quot->clear();
  if (b.empty()) throw Error("polynomial division by zero");
  mpq_class lead_inv = base_inv(f, b.back());
  if (a.size() >= b.size() && quot) quot->assign(a.size() - b.size() + 1, mpq_class(0));
  while (a.size() >= b.size()) {
    mpq_class c = base_mul(f, a.back(), lead_inv);
    size_t shift = a.size() - b.size();
    if (quot) (*quot)[shift] = c;
    for (size_t j = 0; j < b.size(); ++j)
      a[shift + j] = base_sub(f, a[shift + j], base_mul(f, c, b[j]));
    a.pop_back();
    trim(a);
  }
  return a;
}

BasePoly poly_sub(const FieldData* f, const BasePoly& a, const BasePoly& b) {
  BasePoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < r.size(); ++i) {
    mpq_class x = i < a.size() ? a[i] : mpq_class(0);
    mpq_class y = i < b.size() ? b[i] : mpq_class(0);
    r[i] = base_sub(f, x, y);
  }
  trim(r);
  return r;
}

// Inverse of a modulo the irreducible m.
BasePoly poly_invmod(const FieldData* f, const BasePoly& a, const BasePoly& m) {
  BasePoly r0 = m, r1 = a, s0, s1{mpq_class(1)};
  trim(r1);
  if (r1.empty()) throw Error("division by zero");
  while (!r1.empty()) {
    BasePoly q;
    BasePoly r2 = poly_divmod(f, r0, r1, &q);
    BasePoly s2 = poly_sub(f, s0, poly_mul(f, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw Error("extension modulus is reducible");
  mpq_class c = base_inv(f, r0[0]);
  BasePoly out = poly_mul(f, s0, BasePoly{c});
  return poly_divmod(f, out, m, nullptr);
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  mpz_class z(std::to_string(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

Field::Field() : data_(rationals_data()) {}

Field Field::rationals() { return Field(rationals_data()); }

Field Field::prime(std::uint64_t p) {
  if (!mfg::is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  FieldData d;
  d.kind = FieldKind::Prime;
  d.p = p;
  d.pz = mpz_class(std::to_string(p));
  return Field(detail::intern(std::move(d)));
}

Field Field::extension(const Field& base, const std::vector<mpq_class>& minpoly,
                       const std::string& generator) {
  if (base.is_extension()) throw Error("towers of extensions are not supported");
  if (minpoly.size() < 3) throw Error("extension modulus must have degree >= 2");
  std::vector<mpq_class> m;
  for (const auto& c : minpoly) m.push_back(base_reduce(base.data_, c));
  if (m.back() != 1) throw Error("extension modulus must be monic");
  const int deg = static_cast<int>(m.size()) - 1;
  if (deg <= 3) {
    // No roots means irreducible in degree <= 3. Roots are searched among
    // integers/small fractions (Q) or all residues (small p).
    auto eval = [&](const mpq_class& x) {
      mpq_class acc(0);
      for (int i = deg; i >= 0; --i) acc = base_add(base.data_, base_mul(base.data_, acc, x), m[i]);
      return acc;
    };
    if (base.is_prime() && base.characteristic() < 100000) {
      for (std::uint64_t x = 0; x < base.characteristic(); ++x)
        if (eval(mpq_class(static_cast<long>(x))) == 0) throw Error("extension modulus has a root");
    } else if (base.is_rationals()) {
      for (long num = -64; num <= 64; ++num)
        for (long den = 1; den <= 16; ++den)
          if (eval(mpq_class(num, den)) == 0) throw Error("extension modulus has a root");
    }
  }
  FieldData d;
  d.kind = FieldKind::Extension;
  d.p = base.characteristic();
  d.pz = base.data_->pz;
  d.base = base.data_;
  d.minpoly = std::move(m);
  d.generator = generator;
  d.degree = deg;
  return Field(detail::intern(std::move(d)));
}

std::uint64_t Field::characteristic() const { return data_->p; }
bool Field::is_rationals() const { return data_->kind == FieldKind::Rationals; }
bool Field::is_prime() const { return data_->kind == FieldKind::Prime; }
bool Field::is_extension() const { return data_->kind == FieldKind::Extension; }
int Field::degree() const { return data_->degree; }
Field Field::base() const { return data_->base ? Field(data_->base) : *this; }
const std::string& Field::generator() const { return data_->generator; }
const std::vector<mpq_class>& Field::minpoly() const { return data_->minpoly; }

bool Field::is_unit_integer(long n) const {
  if (characteristic() == 0) return n != 0;
  long p = static_cast<long>(characteristic());
  return ((n % p) + p) % p != 0;
}

std::string Field::describe() const {
  if (is_rationals()) return "QQ";
  if (is_prime()) return "GF(" + std::to_string(characteristic()) + ")";
  std::ostringstream os;
  os << base().describe() << "[" << generator() << "]/(";
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const auto& c = minpoly()[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    mpq_class a = abs(c);
    if (i == 0 || a != 1) os << a.get_str() << (i > 0 ? "*" : "");
    if (i > 0) os << generator() << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  os << ")";
  return os.str();
}

Scalar::Scalar(const mpq_class& q, const Field& f) : value_(q) {
  value_.canonicalize();
  adopt(f.data_);
}

Scalar::Scalar(long num, long den, const Field& f) : value_(num, den) {
  value_.canonicalize();
  adopt(f.data_);
}

Scalar Scalar::generator(const Field& f) {
  if (!f.is_extension()) throw Error("field has no generator");
  Scalar s(0, f);
  s.ext_[1] = 1;
  return s;
}

Scalar Scalar::from_coordinates(const Field& f, const std::vector<mpq_class>& c) {
  if (!f.is_extension()) {
    if (c.size() != 1) throw Error("coordinate length mismatch");
    return Scalar(c[0], f);
  }
  if (static_cast<int>(c.size()) != f.degree()) throw Error("coordinate length mismatch");
  Scalar s(0, f);
  for (size_t i = 0; i < c.size(); ++i) s.ext_[i] = base_reduce(f.data_->base, c[i]);
  return s;
}

void Scalar::adopt(const FieldData* f) {
  if (field_ == f) return;
  if (field_ != nullptr) throw Error("mixed-field operands");
  field_ = f;
  if (f->kind == FieldKind::Extension) {
    ext_.assign(f->degree, mpq_class(0));
    ext_[0] = base_reduce(f->base, value_);
    value_ = 0;
  } else {
    value_ = base_reduce(f, value_);
  }
}

void Scalar::unify(Scalar& o) {
  if (field_ == o.field_) return;
  if (field_ == nullptr) {
    adopt(o.field_);
  } else if (o.field_ == nullptr) {
    o.adopt(field_);
  } else {
    throw Error("mixed-field operands");
  }
}

Field Scalar::field() const { return field_ ? Field(field_) : Field::rationals(); }

bool Scalar::is_zero() const {
  if (!ext_.empty()) {
    for (const auto& c : ext_)
      if (c != 0) return false;
    return true;
  }
  return value_ == 0;
}

bool Scalar::is_one() const {
  if (!ext_.empty()) {
    if (ext_[0] != 1) return false;
    for (size_t i = 1; i < ext_.size(); ++i)
      if (ext_[i] != 0) return false;
    return true;
  }
  return value_ == 1;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  Scalar r = *this;
  if (field_ == nullptr) {
    r.value_ = 1 / value_;
  } else if (field_->kind == FieldKind::Extension) {
    BasePoly a = ext_;
    BasePoly inv = poly_invmod(field_->base, a, field_->minpoly);
    inv.resize(field_->degree, mpq_class(0));
    r.ext_ = std::move(inv);
  } else {
    r.value_ = base_inv(field_, value_);
  }
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_ == nullptr) {
    r.value_ = -value_;
  } else if (field_->kind == FieldKind::Extension) {
    for (auto& c : r.ext_) c = base_sub(field_->base, mpq_class(0), c);
  } else {
    r.value_ = base_sub(field_, mpq_class(0), value_);
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o_in) {
  Scalar o = o_in;
  unify(o);
  if (field_ == nullptr) {
    value_ += o.value_;
  } else if (field_->kind == FieldKind::Extension) {
    for (size_t i = 0; i < ext_.size(); ++i) ext_[i] = base_add(field_->base, ext_[i], o.ext_[i]);
  } else {
    value_ = base_add(field_, value_, o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o_in) {
  if (field_ == o_in.field_ && ext_.empty()) {
    // Hot path: same base field.
    if (field_ == nullptr || field_->kind == FieldKind::Rationals) {
      value_ *= o_in.value_;
    } else {
      value_ = base_mul(field_, value_, o_in.value_);
    }
    return *this;
  }
  Scalar o = o_in;
  unify(o);
  if (field_ == nullptr) {
    value_ *= o.value_;
  } else if (field_->kind == FieldKind::Extension) {
    const FieldData* b = field_->base;
    BasePoly prod = poly_mul(b, ext_, o.ext_);
    BasePoly rem = poly_divmod(b, prod, field_->minpoly, nullptr);
    rem.resize(field_->degree, mpq_class(0));
    ext_ = std::move(rem);
  } else {
    value_ = base_mul(field_, value_, o.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a_in, const Scalar& b_in) {
  if (a_in.field_ == b_in.field_) return a_in.value_ == b_in.value_ && a_in.ext_ == b_in.ext_;
  Scalar a = a_in, b = b_in;
  a.unify(b);
  return a.value_ == b.value_ && a.ext_ == b.ext_;
}

const mpq_class& Scalar::rational() const {
  if (!ext_.empty()) {
    for (size_t i = 1; i < ext_.size(); ++i)
      if (ext_[i] != 0) throw Error("element is not in the base field");
    return ext_[0];
  }
  return value_;
}

std::vector<mpq_class> Scalar::coordinates() const {
  if (!ext_.empty()) return ext_;
  return {value_};
}

bool Scalar::in_base() const {
  for (size_t i = 1; i < ext_.size(); ++i)
    if (ext_[i] != 0) return false;
  return true;
}

Scalar Scalar::coerce(const Field& f) const {
  if (field_ == f.data_) return *this;
  if (field_ == nullptr) return Scalar(value_, f);
  if (f.is_extension() && field_ == f.data_->base) {
    Scalar r(0, f);
    r.ext_[0] = value_;
    return r;
  }
  throw Error("cannot coerce " + Field(field_).describe() + " into " + f.describe());
}

bool Scalar::is_negative_rational() const {
  if (!ext_.empty()) {
    // A single negative coordinate prints with a leading sign, e.g. "-i".
    if (field_->base->kind != FieldKind::Rationals) return false;
    int nonzero = 0;
    bool neg = false;
    for (const auto& c : ext_)
      if (c != 0) {
        ++nonzero;
        neg = c < 0;
      }
    return nonzero == 1 && neg;
  }
  if (field_ != nullptr && field_->kind == FieldKind::Prime) return false;
  return value_ < 0;
}

std::string Scalar::str() const {
  if (ext_.empty()) return rational_str(value_);
  std::ostringstream os;
  bool first = true;
  int nonzero = 0;
  for (const auto& c : ext_)
    if (c != 0) ++nonzero;
  if (nonzero == 0) return "0";
  if (nonzero > 1) os << "(";
  for (int i = static_cast<int>(ext_.size()) - 1; i >= 0; --i) {
    const mpq_class& c = ext_[i];
    if (c == 0) continue;
    bool neg = field_->base->kind == FieldKind::Rationals && c < 0;
    mpq_class a = neg ? mpq_class(-c) : c;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << field_->generator;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (nonzero > 1) os << ")";
  return os.str();
}

double Scalar::approx() const { return (ext_.empty() ? value_ : ext_[0]).get_d(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw Error("bad rational literal '" + text + "'");
  q.canonicalize();
  return Scalar(q);
}

FieldMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols, const Field& f) {
  return FieldMatrix::Constant(rows, cols, Scalar::zero(f));
}

FieldVector zero_vector(Eigen::Index n, const Field& f) {
  return FieldVector::Constant(n, Scalar::zero(f));
}

}  // namespace mfg
