#include "mfg/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace mfg {

namespace {
constexpr std::uint64_t kHighBits = 0x8080808080808080ULL;
}

Monomial Monomial::variable(int i, int power) {
  if (i < 0 || i >= kMaxVariables) throw Error("variable index out of range");
  if (power < 0 || power > 255) throw Error("exponent out of range");
  return Monomial(static_cast<std::uint64_t>(power) << (8 * i));
}

Monomial Monomial::from_exponents(const std::vector<int>& e) {
  if (static_cast<int>(e.size()) > kMaxVariables) throw Error("too many variables");
  std::uint64_t b = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] > 255) throw Error("exponent out of range");
    b |= static_cast<std::uint64_t>(e[i]) << (8 * i);
  }
  return Monomial(b);
}

std::vector<int> Monomial::exponents(int nvars) const {
  std::vector<int> e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = exponent(i);
  return e;
}

int Monomial::total_degree() const {
  int d = 0;
  for (int i = 0; i < kMaxVariables; ++i) d += exponent(i);
  return d;
}

int Monomial::weighted_degree(const std::vector<int>& weights) const {
  int d = 0;
  for (size_t i = 0; i < weights.size(); ++i) d += weights[i] * exponent(static_cast<int>(i));
  return d;
}

bool Monomial::divides(const Monomial& o) const {
  for (int i = 0; i < kMaxVariables; ++i)
    if (exponent(i) > o.exponent(i)) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (((bits_ | o.bits_) & kHighBits) == 0) return Monomial(bits_ + o.bits_);
  std::uint64_t b = 0;
  for (int i = 0; i < kMaxVariables; ++i) {
    int e = exponent(i) + o.exponent(i);
    if (e > 255) throw Error("exponent overflow");
    b |= static_cast<std::uint64_t>(e) << (8 * i);
  }
  return Monomial(b);
}

Monomial Monomial::operator/(const Monomial& o) const {
  if (!o.divides(*this)) throw Error("monomial does not divide");
  return Monomial(bits_ - o.bits_);
}

Polynomial::Polynomial(int c) {
  if (c != 0) terms_.emplace_back(Monomial(), Scalar(c));
}

Polynomial::Polynomial(const Scalar& c, int nvars) : nvars_(nvars) {
  if (!c.is_zero()) terms_.emplace_back(Monomial(), c);
}

Polynomial::Polynomial(int nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms)) {
  normalize();
}

Polynomial Polynomial::variable(int nvars, int i, const Field& f) {
  if (i >= nvars) throw Error("variable index out of range");
  return monomial(nvars, Monomial::variable(i), Scalar::one(f));
}

Polynomial Polynomial::monomial(int nvars, const Monomial& m, const Scalar& c) {
  Polynomial p;
  p.nvars_ = nvars;
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.second.is_zero(); });
  terms_ = std::move(out);
}

int Polynomial::merge_nvars(int a, int b) {
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw Error("mixed-ring operands (" + std::to_string(a) + " vs " + std::to_string(b) +
              " variables)");
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return t.first < x; });
  if (it != terms_.end() && it->first == m) return it->second;
  if (!terms_.empty()) return Scalar::zero(terms_[0].second.field());
  return Scalar(0);
}

int Polynomial::weighted_degree(const std::vector<int>& weights) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.first.weighted_degree(weights));
  return d;
}

bool Polynomial::is_homogeneous(const std::vector<int>& weights) const {
  if (terms_.empty()) return true;
  int d = terms_[0].first.weighted_degree(weights);
  for (const auto& t : terms_)
    if (t.first.weighted_degree(weights) != d) return false;
  return true;
}

Polynomial Polynomial::homogeneous_part(const std::vector<int>& weights, int d) const {
  Polynomial r;
  r.nvars_ = nvars_;
  for (const auto& t : terms_)
    if (t.first.weighted_degree(weights) == d) r.terms_.push_back(t);
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(var);
    if (e == 0) continue;
    out.emplace_back(m / Monomial::variable(var), c * Scalar(e));
  }
  return Polynomial(nvars_, std::move(out));
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (static_cast<int>(images.size()) < nvars_) throw Error("substitution needs an image per variable");
  Polynomial result;
  // powers[i][e] = images[i]^e, filled lazily.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (const auto& [m, c] : terms_) {
    Polynomial term(c);
    for (int i = 0; i < nvars_; ++i) {
      int e = m.exponent(i);
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Polynomial(1));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[i]);
      term = term * pw[e];
    }
    result += term;
  }
  if (result.nvars_ == 0 && !images.empty()) result.nvars_ = images[0].nvars_;
  return result;
}

Polynomial Polynomial::map_coefficients(const Field& target) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.emplace_back(m, c.coerce(target));
  return Polynomial(nvars_, std::move(out));
}

Polynomial Polynomial::with_nvars(int nvars) const {
  if (nvars < nvars_) throw Error("cannot drop variables");
  Polynomial r = *this;
  r.nvars_ = nvars;
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  nvars_ = merge_nvars(nvars_, o.nvars_);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      Scalar c = terms_[i].second + o.terms_[j].second;
      if (!c.is_zero()) out.emplace_back(terms_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  r.nvars_ = Polynomial::merge_nvars(a.nvars_, b.nvars_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.terms_.emplace_back(ma * mb, ca * cb);
  r.normalize();
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= s;
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.nvars_ != 0 && b.nvars_ != 0 && a.nvars_ != b.nvars_) return a.terms_.empty();
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second)
      return false;
  return true;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw Error("negative power");
  Polynomial r = Polynomial(1).with_nvars(nvars_);
  if (!terms_.empty()) r = Polynomial(Scalar::one(terms_[0].second.field()), nvars_);
  Polynomial b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

namespace {

// Canonical order: descending weighted degree, then descending lex.
bool canonical_before(const Monomial& a, const Monomial& b, const std::vector<int>& weights) {
  int da = a.weighted_degree(weights), db = b.weighted_degree(weights);
  if (da != db) return da > db;
  for (int i = 0; i < kMaxVariables; ++i)
    if (a.exponent(i) != b.exponent(i)) return a.exponent(i) > b.exponent(i);
  return false;
}

void enumerate(const std::vector<int>& weights, size_t var, int remaining, std::vector<int>& e,
               std::vector<Monomial>& out) {
  if (var == weights.size()) {
    if (remaining == 0) out.push_back(Monomial::from_exponents(e));
    return;
  }
  for (int k = remaining / weights[var]; k >= 0; --k) {
    e[var] = k;
    enumerate(weights, var + 1, remaining - k * weights[var], e, out);
  }
  e[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const std::vector<int>& weights, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (weights.empty()) {
    if (degree == 0) out.push_back(Monomial());
    return out;
  }
  std::vector<int> e(weights.size(), 0);
  enumerate(weights, 0, degree, e, out);
  return out;
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names,
                              const std::vector<int>& weights) {
  if (p.is_zero()) return "0";
  std::vector<Polynomial::Term> terms = p.terms();
  std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    return canonical_before(a.first, b.first, weights);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    bool neg = c.is_negative_rational();
    Scalar a = neg ? -c : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (size_t i = 0; i < names.size(); ++i) {
      int e = m.exponent(static_cast<int>(i));
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      os << a.str();
    } else if (a.is_one()) {
      os << mono;
    } else {
      os << a.str() << "*" << mono;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& names, const Field& f)
      : s_(s), names_(names), field_(f), nvars_(static_cast<int>(names.size())) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p.with_nvars(std::max(p.nvars(), nvars_)).map_coefficients(field_);
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("cannot parse polynomial '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Polynomial constant(const Scalar& s) const { return Polynomial(s.coerce(field_), nvars_); }

  Polynomial expr() {
    Polynomial acc(Scalar::zero(field_), nvars_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Polynomial t = term();
    acc = neg ? acc - t : acc + t;
    while (true) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = power();
    while (true) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
        acc = acc * d.constant_term().inverse();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial power() {
    Polynomial b = atom();
    if (eat('^')) {
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = b.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return b;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      for (int i = 0; i < nvars_; ++i)
        if (names_[i] == id) return Polynomial::variable(nvars_, i, field_);
      if (field_.is_extension() && id == field_.generator())
        return Polynomial(Scalar::generator(field_), nvars_);
      fail("unknown symbol '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  Field field_;
  int nvars_;
  size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names,
                            const Field& field) {
  return Parser(text, names, field).parse();
}

PolyMatrix substitute(const PolyMatrix& m, const std::vector<Polynomial>& images) {
  PolyMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).substitute(images);
  return r;
}

PolyMatrix scale(const PolyMatrix& m, const Scalar& s) {
  PolyMatrix r = m;
  for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] *= s;
  return r;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix dimension mismatch in product");
  PolyMatrix r = poly_zero(a.rows(), b.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (b(k, j).is_zero()) continue;
        r(i, j) += a(i, k) * b(k, j);
      }
    }
  return r;
}

bool is_zero(const PolyMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

PolyMatrix poly_identity(Eigen::Index n) {
  PolyMatrix r = poly_zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) r(i, i) = Polynomial(1);
  return r;
}

PolyMatrix poly_zero(Eigen::Index r, Eigen::Index c) { return PolyMatrix::Constant(r, c, Polynomial()); }

PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix r = poly_zero(a.rows() + b.rows(), a.cols() + b.cols());
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

}  // namespace mfg

namespace mfg {

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  std::vector<std::string> names;
  for (int i = 0; i < std::max(p.nvars(), 1); ++i) names.push_back("x" + std::to_string(i));
  return os << format_polynomial(p, names, std::vector<int>(names.size(), 1));
}

}  // namespace mfg
