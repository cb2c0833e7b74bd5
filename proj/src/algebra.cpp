#include "mfg/algebra.hpp"

#include <random>
#include <sstream>

namespace mfg {

namespace {

bool is_zero_vector(const FieldVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

/// Columns of m forming a basis of its column span.
FieldMatrix column_basis(const FieldMatrix& m, const Field& k) {
  if (m.cols() == 0) return zero_matrix(m.rows(), 0, k);
  Eliminator<Scalar> elim(m);
  const auto& piv = elim.pivot_columns();
  FieldMatrix out(m.rows(), static_cast<Eigen::Index>(piv.size()));
  for (size_t i = 0; i < piv.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(piv[i]);
  return out;
}

/// Coordinates of v in the column basis b (which must span v).
FieldVector express(const FieldMatrix& b, const FieldVector& v, const char* what) {
  auto sol = solve_linear<Scalar>(b, v);
  if (!sol) throw Error(std::string(what) + ": element outside the spanned subspace");
  return sol->particular;
}

FieldVector evaluate(const FinDimAlgebra& a, const UPoly& p, const FieldVector& x, const FieldVector& one) {
  FieldVector acc = a.zero();
  for (size_t i = p.size(); i-- > 0;) {
    acc = a.multiply(acc, x);
    acc += one * p[i];
  }
  return acc;
}

void check_field(const FieldVector& v, int n, const char* what) {
  if (v.size() != n) throw Error(std::string(what) + ": wrong vector length");
}

}  // namespace

FinDimAlgebra::FinDimAlgebra(Field k, std::vector<std::vector<FieldVector>> products, FieldVector unit,
                             bool check_associativity)
    : field_(k), n_(static_cast<int>(products.size())), products_(std::move(products)), unit_(std::move(unit)) {
  check_field(unit_, n_, "FinDimAlgebra unit");
  for (auto& row : products_) {
    if (static_cast<int>(row.size()) != n_) throw Error("FinDimAlgebra: structure constants must be n x n");
    for (auto& v : row) {
      check_field(v, n_, "FinDimAlgebra product");
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = v(i).coerce(k);
    }
  }
  for (Eigen::Index i = 0; i < unit_.size(); ++i) unit_(i) = unit_(i).coerce(k);
  for (int i = 0; i < n_; ++i) {
    FieldVector ei = basis_element(i);
    if (multiply(unit_, ei) != ei || multiply(ei, unit_) != ei)
      throw Error("FinDimAlgebra: unit law fails for basis element " + std::to_string(i));
  }
  if (!check_associativity) return;
  // (e_i e_j) e_l = sum_k c_ijk e_k e_l and e_i (e_j e_l) = sum_k c_jlk e_i e_k.
  const FieldVector zero = zero_vector(n_, field_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int l = 0; l < n_; ++l) {
        FieldVector lhs = zero, rhs = zero;
        const FieldVector &ij = products_[i][j], &jl = products_[j][l];
        for (int m = 0; m < n_; ++m) {
          if (!ij(m).is_zero()) lhs += ij(m) * products_[m][l];
          if (!jl(m).is_zero()) rhs += jl(m) * products_[i][m];
        }
        if (lhs != rhs)
          throw Error("FinDimAlgebra: associativity fails on basis triple (" + std::to_string(i) + "," +
                      std::to_string(j) + "," + std::to_string(l) + ")");
      }
}

FinDimAlgebra FinDimAlgebra::from_products(Field k, int n, const std::function<FieldVector(int, int)>& product,
                                           FieldVector unit, bool check_associativity) {
  std::vector<std::vector<FieldVector>> p(n, std::vector<FieldVector>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[i][j] = product(i, j);
  return FinDimAlgebra(k, std::move(p), std::move(unit), check_associativity);
}

FinDimAlgebra FinDimAlgebra::from_matrices(Field k, const std::vector<FieldMatrix>& basis) {
  if (basis.empty()) throw Error("from_matrices: empty basis");
  const Eigen::Index d = basis[0].rows();
  const int n = static_cast<int>(basis.size());
  auto flatten = [&](const FieldMatrix& m) {
    FieldVector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = m(i, j).coerce(k);
    return v;
  };
  FieldMatrix cols(d * d, n);
  for (int i = 0; i < n; ++i) cols.col(i) = flatten(basis[i]);
  if (Eliminator<Scalar>(cols).rank() != n) throw Error("from_matrices: basis is linearly dependent");
  FieldMatrix id = zero_matrix(d, d, k);
  for (Eigen::Index i = 0; i < d; ++i) id(i, i) = Scalar::one(k);
  FieldVector unit = express(cols, flatten(id), "from_matrices (identity)");
  return from_products(
      k, n, [&](int i, int j) { return express(cols, flatten(basis[i] * basis[j]), "from_matrices"); }, unit);
}

FinDimAlgebra FinDimAlgebra::product_of_fields(Field k, int n) {
  FieldVector unit = zero_vector(n, k);
  for (int i = 0; i < n; ++i) unit(i) = Scalar::one(k);
  return from_products(
      k, n,
      [&](int i, int j) {
        FieldVector v = zero_vector(n, k);
        if (i == j) v(i) = Scalar::one(k);
        return v;
      },
      unit);
}

FinDimAlgebra FinDimAlgebra::truncated_polynomial(Field k, int n) {
  FieldVector unit = zero_vector(n, k);
  unit(0) = Scalar::one(k);
  return from_products(
      k, n,
      [&](int i, int j) {
        FieldVector v = zero_vector(n, k);
        if (i + j < n) v(i + j) = Scalar::one(k);
        return v;
      },
      unit);
}

FinDimAlgebra FinDimAlgebra::matrix_algebra(Field k, int n) {
  std::vector<FieldMatrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FieldMatrix m = zero_matrix(n, n, k);
      m(i, j) = Scalar::one(k);
      basis.push_back(m);
    }
  return from_matrices(k, basis);
}

FinDimAlgebra FinDimAlgebra::upper_triangular(Field k, int n) {
  std::vector<FieldMatrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      FieldMatrix m = zero_matrix(n, n, k);
      m(i, j) = Scalar::one(k);
      basis.push_back(m);
    }
  return from_matrices(k, basis);
}

FieldVector FinDimAlgebra::zero() const { return zero_vector(n_, field_); }

FieldVector FinDimAlgebra::basis_element(int i) const {
  FieldVector v = zero();
  v(i) = Scalar::one(field_);
  return v;
}

FieldVector FinDimAlgebra::multiply(const FieldVector& a, const FieldVector& b) const {
  check_field(a, n_, "multiply");
  check_field(b, n_, "multiply");
  FieldVector out = zero();
  for (int i = 0; i < n_; ++i) {
    if (a(i).is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (b(j).is_zero()) continue;
      out += products_[i][j] * (a(i) * b(j));
    }
  }
  return out;
}

FieldVector FinDimAlgebra::power(const FieldVector& a, int k) const {
  FieldVector out = unit_;
  for (int i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

FieldMatrix FinDimAlgebra::left_matrix(const FieldVector& a) const {
  FieldMatrix m(n_, n_);
  for (int j = 0; j < n_; ++j) m.col(j) = multiply(a, basis_element(j));
  return m;
}

FieldMatrix FinDimAlgebra::right_matrix(const FieldVector& a) const {
  FieldMatrix m(n_, n_);
  for (int j = 0; j < n_; ++j) m.col(j) = multiply(basis_element(j), a);
  return m;
}

bool FinDimAlgebra::is_idempotent(const FieldVector& a) const { return multiply(a, a) == a; }

bool FinDimAlgebra::is_commutative() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (products_[i][j] != products_[j][i]) return false;
  return true;
}

std::string FinDimAlgebra::table() const {
  std::ostringstream os;
  os << "algebra of dimension " << n_ << " over " << field_.describe() << "\n";
  auto show = [&](const FieldVector& v) {
    std::string s;
    for (int k = 0; k < n_; ++k) {
      if (v(k).is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += (v(k).is_one() ? std::string() : v(k).str() + "*") + "e" + std::to_string(k);
    }
    return s.empty() ? std::string("0") : s;
  };
  os << "unit = " << show(unit_) << "\n";
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (!is_zero_vector(products_[i][j]))
        os << "e" << i << " * e" << j << " = " << show(products_[i][j]) << "\n";
  return os.str();
}

bool AlgebraIdeal::contains(const FieldVector& v) const {
  if (basis.cols() == 0) return is_zero_vector(v);
  return solve_linear<Scalar>(basis, v).has_value();
}

AlgebraIdeal ideal_product(const FinDimAlgebra& a, const AlgebraIdeal& i, const AlgebraIdeal& j) {
  FieldMatrix all(a.dimension(), i.basis.cols() * j.basis.cols());
  Eigen::Index c = 0;
  for (Eigen::Index x = 0; x < i.basis.cols(); ++x)
    for (Eigen::Index y = 0; y < j.basis.cols(); ++y)
      all.col(c++) = a.multiply(i.basis.col(x), j.basis.col(y));
  return {column_basis(all, a.field())};
}

bool is_two_sided_ideal(const FinDimAlgebra& a, const AlgebraIdeal& i) {
  for (Eigen::Index x = 0; x < i.basis.cols(); ++x)
    for (int k = 0; k < a.dimension(); ++k) {
      FieldVector e = a.basis_element(k);
      if (!i.contains(a.multiply(e, i.basis.col(x))) || !i.contains(a.multiply(i.basis.col(x), e)))
        return false;
    }
  return true;
}

int nilpotency_index(const FinDimAlgebra& a, const AlgebraIdeal& i) {
  AlgebraIdeal p = i;
  for (int m = 1; m <= a.dimension() + 1; ++m) {
    if (p.dimension() == 0) return m;
    p = ideal_product(a, p, i);
  }
  return -1;
}

FieldMatrix trace_form(const FinDimAlgebra& a) {
  const int n = a.dimension();
  std::vector<Scalar> t(n);
  for (int k = 0; k < n; ++k) t[k] = a.left_matrix(a.basis_element(k)).trace();
  FieldMatrix g = zero_matrix(n, n, a.field());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!a.product(i, j)(k).is_zero()) g(i, j) += a.product(i, j)(k) * t[k];
  return g;
}

AlgebraIdeal radical(const FinDimAlgebra& a) {
  const std::uint64_t p = a.field().characteristic();
  const int dim = a.dimension() * a.field().degree();
  if (p != 0 && p <= static_cast<std::uint64_t>(dim))
    throw CharacteristicError("radical: the trace-form method needs characteristic 0 or greater than " +
                              std::to_string(dim) + " (got " + std::to_string(p) +
                              "); work over the rationals instead");
  // For a in the kernel, Tr(L_a^k) = 0 for all k, and Newton's identities
  // (valid because p > dim) force L_a to be nilpotent.
  AlgebraIdeal j{kernel_basis<Scalar>(trace_form(a))};
  if (nilpotency_index(a, j) < 0 || !is_two_sided_ideal(a, j))
    throw Error("radical: trace-form kernel is not a nilpotent ideal (internal error)");
  return j;
}

QuotientAlgebra quotient(const FinDimAlgebra& a, const AlgebraIdeal& i) {
  const int n = a.dimension();
  const Field& k = a.field();
  FieldMatrix id = zero_matrix(n, n, k);
  for (int x = 0; x < n; ++x) id(x, x) = Scalar::one(k);
  FieldMatrix sub = i.basis.cols() ? i.basis : zero_matrix(n, 0, k);
  QuotientSpace<Scalar> q(sub, id);
  const int s = static_cast<int>(q.dimension());
  FieldMatrix proj(s, n), sec = zero_matrix(n, s, k);
  for (int x = 0; x < n; ++x) proj.col(x) = *q.coordinates(id.col(x));
  for (int y = 0; y < s; ++y) sec(q.representatives()[y], y) = Scalar::one(k);
  const auto& reps = q.representatives();
  FinDimAlgebra alg = FinDimAlgebra::from_products(
      k, s,
      [&](int x, int y) {
        FieldVector v = proj * a.product(static_cast<int>(reps[x]), static_cast<int>(reps[y]));
        return v;
      },
      proj * a.unit(), false);
  return {std::move(alg), std::move(proj), std::move(sec)};
}

FieldVector lift_idempotent(const FinDimAlgebra& a, const AlgebraIdeal& n, const FieldVector& e0) {
  const int idx = nilpotency_index(a, n);
  if (idx < 0) throw Error("lift_idempotent: ideal is not nilpotent");
  if (!n.contains(a.multiply(e0, e0) - e0)) throw Error("lift_idempotent: element is not idempotent modulo the ideal");
  FieldVector e = e0;
  // The defect e^2 - e moves from N^k to N^(2k) per step.
  for (int step = 0; !a.is_idempotent(e); ++step) {
    if (step > idx + 1) throw Error("lift_idempotent: iteration did not converge (internal error)");
    FieldVector e2 = a.multiply(e, e);
    e = e2 * Scalar(3) - a.multiply(e2, e) * Scalar(2);
  }
  return e;
}

UPoly minimal_polynomial(const FinDimAlgebra& a, const FieldVector& x, const FieldVector& one) {
  const Field& k = a.field();
  std::vector<FieldVector> powers{one};
  for (int d = 1; d <= a.dimension() + 1; ++d) {
    FieldVector next = a.multiply(powers.back(), x);
    FieldMatrix m(a.dimension(), d);
    for (int i = 0; i < d; ++i) m.col(i) = powers[i];
    if (auto sol = solve_linear<Scalar>(m, next)) {
      UPoly mu(d + 1);
      for (int i = 0; i < d; ++i) mu[i] = -sol->particular(i);
      mu[d] = Scalar::one(k);
      return mu;
    }
    powers.push_back(next);
  }
  throw Error("minimal_polynomial: no dependence found (internal error)");
}

namespace {

UPoly quotient_poly(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  upoly::divmod(a, b, q, r);
  return q;
}

/// Splits the idempotent eps of the semisimple algebra s into primitive ones.
void split_corner(const FinDimAlgebra& s, const FieldVector& eps, std::mt19937_64& rng,
                  std::vector<FieldVector>& out) {
  const Field& k = s.field();
  const int n = s.dimension();
  FieldMatrix img(n, n);
  for (int j = 0; j < n; ++j) img.col(j) = s.multiply(s.multiply(eps, s.basis_element(j)), eps);
  FieldMatrix cb = column_basis(img, k);
  const Eigen::Index c = cb.cols();
  if (c == 1) {
    out.push_back(eps);
    return;
  }
  bool commutative = true;
  for (Eigen::Index i = 0; i < c && commutative; ++i)
    for (Eigen::Index j = i + 1; j < c && commutative; ++j)
      commutative = s.multiply(cb.col(i), cb.col(j)) == s.multiply(cb.col(j), cb.col(i));

  auto attempt = [&](const FieldVector& x) -> int {
    UPoly mu = minimal_polynomial(s, x, eps);
    if (upoly::degree(mu) <= 1) return 0;
    // Nilpotent parts can occur in noncommutative corners; split by the
    // distinct irreducible factors of the squarefree part.
    UPoly rad = quotient_poly(mu, upoly::gcd(mu, upoly::derivative(mu)));
    std::vector<UPoly> factors = upoly::factor_squarefree(rad);
    if (factors.size() == 1)
      return commutative && upoly::degree(mu) == c && upoly::degree(rad) == c ? 1 : 0;
    UPoly power = factors[0];
    while (upoly::mod(mu, upoly::mul(power, factors[0])).empty()) power = upoly::mul(power, factors[0]);
    UPoly h = quotient_poly(mu, power), u, v;
    upoly::xgcd(h, power, u, v);
    FieldVector e = evaluate(s, upoly::mod(upoly::mul(u, h), mu), x, eps);
    split_corner(s, e, rng, out);
    split_corner(s, eps - e, rng, out);
    return 2;
  };

  std::vector<FieldVector> candidates;
  for (Eigen::Index i = 0; i < c; ++i) candidates.push_back(cb.col(i));
  for (Eigen::Index i = 0; i < c; ++i)
    for (Eigen::Index j = i + 1; j < c; ++j) candidates.push_back(cb.col(i) + cb.col(j));
  for (const auto& x : candidates) {
    int r = attempt(x);
    if (r == 2) return;
    if (r == 1) {
      out.push_back(eps);
      return;
    }
  }
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 64; ++t) {
    FieldVector x = zero_vector(n, k);
    for (Eigen::Index i = 0; i < c; ++i) x += cb.col(i) * Scalar(coef(rng));
    int r = attempt(x);
    if (r == 2) return;
    if (r == 1) {
      out.push_back(eps);
      return;
    }
  }
  throw InconclusiveError("primitive_decomposition: could not split or certify a corner of dimension " +
                          std::to_string(c) + " (possibly a noncommutative division algebra)");
}

std::vector<FieldVector> decompose_prime_field(const FinDimAlgebra& a) {
  const int n = a.dimension();
  if (n == 0) return {};
  AlgebraIdeal j = radical(a);
  QuotientAlgebra q = quotient(a, j);
  std::mt19937_64 rng(0xC0FFEE);
  std::vector<FieldVector> bar;
  split_corner(q.algebra, q.algebra.unit(), rng, bar);

  std::vector<FieldVector> out;
  FieldVector rest = a.unit();
  for (size_t i = 0; i + 1 < bar.size(); ++i) {
    FieldVector pre = q.section * bar[i];
    pre = a.multiply(a.multiply(rest, pre), rest);
    FieldVector e = lift_idempotent(a, j, pre);
    out.push_back(e);
    rest -= e;
  }
  out.push_back(rest);

  FieldVector sum = a.zero();
  for (size_t x = 0; x < out.size(); ++x) {
    sum += out[x];
    for (size_t y = 0; y < out.size(); ++y) {
      FieldVector p = a.multiply(out[x], out[y]);
      if (p != (x == y ? out[x] : a.zero()))
        throw Error("primitive_decomposition: orthogonality check failed (internal error)");
    }
  }
  if (sum != a.unit()) throw Error("primitive_decomposition: completeness check failed (internal error)");
  return out;
}

}  // namespace

CornerAlgebra corner(const FinDimAlgebra& a, const FieldVector& e) {
  const int n = a.dimension();
  FieldMatrix img(n, n);
  for (int j = 0; j < n; ++j) img.col(j) = a.multiply(a.multiply(e, a.basis_element(j)), e);
  FieldMatrix cb = column_basis(img, a.field());
  const int c = static_cast<int>(cb.cols());
  FinDimAlgebra alg = FinDimAlgebra::from_products(
      a.field(), c, [&](int i, int j) { return express(cb, a.multiply(cb.col(i), cb.col(j)), "corner"); },
      c ? express(cb, e, "corner unit") : zero_vector(0, a.field()), false);
  return {std::move(alg), std::move(cb)};
}

std::optional<FieldVector> algebra_inverse(const FinDimAlgebra& a, const FieldVector& x) {
  auto sol = solve_linear<Scalar>(a.left_matrix(x), a.unit());
  if (!sol || sol->kernel.cols() != 0) return std::nullopt;
  FieldVector y = sol->particular;
  if (a.multiply(y, x) != a.unit()) return std::nullopt;
  return y;
}

std::optional<std::pair<FieldVector, FieldVector>> idempotent_isomorphism(const FinDimAlgebra& a,
                                                                          const FieldVector& f,
                                                                          const FieldVector& g) {
  const int n = a.dimension();
  const Field& k = a.field();
  auto sandwich = [&](const FieldVector& l, const FieldVector& r) {
    FieldMatrix img(n, n);
    for (int j = 0; j < n; ++j) img.col(j) = a.multiply(a.multiply(l, a.basis_element(j)), r);
    return column_basis(img, k);
  };
  FieldMatrix fg = sandwich(f, g), gf = sandwich(g, f);
  CornerAlgebra cf = corner(a, f);
  // span(fAg gAf) is an ideal of the local ring fAf, so it contains a unit iff
  // some product of basis elements is one.
  for (Eigen::Index i = 0; i < fg.cols(); ++i)
    for (Eigen::Index j = 0; j < gf.cols(); ++j) {
      FieldVector w = a.multiply(fg.col(i), gf.col(j));
      auto wc = solve_linear<Scalar>(cf.embedding, w);
      if (!wc) continue;
      auto inv = algebra_inverse(cf.algebra, wc->particular);
      if (!inv) continue;
      FieldVector p = fg.col(i), q = a.multiply(gf.col(j), FieldVector(cf.embedding * *inv));
      if (a.multiply(p, q) == f && a.multiply(q, p) == g) return std::make_pair(p, q);
    }
  return std::nullopt;
}

std::optional<std::pair<FieldVector, FieldVector>> idempotent_equivalence(const FinDimAlgebra& a,
                                                                          const FieldVector& f,
                                                                          const FieldVector& g) {
  auto primitives = [&](const FieldVector& e) {
    std::vector<FieldVector> out;
    CornerAlgebra c = corner(a, e);
    if (c.algebra.dimension() == 0) return out;
    for (const auto& x : primitive_decomposition(c.algebra)) out.push_back(c.embedding * x);
    return out;
  };
  std::vector<FieldVector> pf = primitives(f), pg = primitives(g);
  if (pf.size() != pg.size()) return std::nullopt;
  std::vector<bool> used(pg.size(), false);
  FieldVector p = a.zero(), q = a.zero();
  for (const auto& x : pf) {
    bool matched = false;
    for (size_t j = 0; j < pg.size() && !matched; ++j) {
      if (used[j]) continue;
      if (auto iso = idempotent_isomorphism(a, x, pg[j])) {
        used[j] = matched = true;
        p += iso->first;
        q += iso->second;
      }
    }
    if (!matched) return std::nullopt;
  }
  if (a.multiply(p, q) != f || a.multiply(q, p) != g)
    throw Error("idempotent_equivalence: assembled maps are not inverse (internal error)");
  return std::make_pair(p, q);
}

FinDimAlgebra restrict_scalars(const FinDimAlgebra& a) {
  const Field& k = a.field();
  if (!k.is_extension()) return a;
  const int n = a.dimension(), m = k.degree();
  const Field base = k.base();
  Scalar t = Scalar::generator(k);
  std::vector<Scalar> tp{Scalar::one(k)};
  for (int i = 1; i < 2 * m; ++i) tp.push_back(tp.back() * t);
  return FinDimAlgebra::from_products(
      base, n * m,
      [&](int x, int y) {
        const int i = x / m, s = x % m, j = y / m, r = y % m;
        FieldVector v = zero_vector(n * m, base);
        for (int l = 0; l < n; ++l) {
          const Scalar& c = a.product(i, j)(l);
          if (c.is_zero()) continue;
          auto coords = (c * tp[s + r]).coordinates();
          for (int q = 0; q < m; ++q) v(l * m + q) = Scalar(coords[q], base);
        }
        return v;
      },
      restrict_element(a, a.unit()), false);
}

FieldVector restrict_element(const FinDimAlgebra& a, const FieldVector& v) {
  const Field& k = a.field();
  if (!k.is_extension()) return v;
  const int n = a.dimension(), m = k.degree();
  FieldVector out(n * m);
  for (int i = 0; i < n; ++i) {
    auto coords = v(i).coerce(k).coordinates();
    for (int q = 0; q < m; ++q) out(i * m + q) = Scalar(coords[q], k.base());
  }
  return out;
}

FieldVector extend_element(const FinDimAlgebra& a, const FieldVector& v) {
  const Field& k = a.field();
  if (!k.is_extension()) return v;
  const int n = a.dimension(), m = k.degree();
  FieldVector out(n);
  for (int i = 0; i < n; ++i) {
    std::vector<mpq_class> c(m);
    for (int q = 0; q < m; ++q) c[q] = v(i * m + q).rational();
    out(i) = Scalar::from_coordinates(k, c);
  }
  return out;
}

std::vector<FieldVector> primitive_decomposition(const FinDimAlgebra& a) {
  if (!a.field().is_extension()) return decompose_prime_field(a);
  std::vector<FieldVector> out;
  for (const auto& e : decompose_prime_field(restrict_scalars(a))) out.push_back(extend_element(a, e));
  return out;
}

bool is_nc_local(const FinDimAlgebra& a) { return a.dimension() > 0 && primitive_decomposition(a).size() == 1; }

}  // namespace mfg
