#include <random>

#include "doctest.h"
#include "mfg/algebra.hpp"
#include "mfg/samples.hpp"

using namespace mfg;

namespace {

UPoly up(const Field& k, std::initializer_list<long> c) {
  UPoly p;
  for (long x : c) p.push_back(Scalar(x, k));
  upoly::trim(p);
  return p;
}

UPoly product(const std::vector<UPoly>& fs, const Field& k) {
  UPoly p{Scalar::one(k)};
  for (const auto& f : fs) p = upoly::mul(p, f);
  return p;
}

// Independent irreducibility oracle over a small prime field: no monic
// divisor of degree 1..deg/2, found by enumerating all of them.
bool brute_irreducible(const UPoly& f, std::uint64_t p) {
  const Field k = Field::prime(p);
  const int n = upoly::degree(f);
  for (int d = 1; 2 * d <= n; ++d) {
    std::vector<int> c(d, 0);
    for (;;) {
      UPoly g;
      for (int x : c) g.push_back(Scalar(x, k));
      g.push_back(Scalar::one(k));
      if (upoly::mod(f, g).empty()) return false;
      int i = 0;
      while (i < d && ++c[i] == static_cast<int>(p)) c[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

FieldVector vec(const Field& k, std::initializer_list<long> xs) {
  FieldVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = Scalar(x, k);
  return v;
}

// Native-integer brute force over GF(p): every idempotent of the algebra.
std::vector<std::vector<std::uint64_t>> brute_idempotents(const FinDimAlgebra& a) {
  const std::uint64_t p = a.field().characteristic();
  const int n = a.dimension();
  std::vector<std::uint64_t> c(static_cast<size_t>(n * n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c[(i * n + j) * n + k] = a.product(i, j)(k).rational().get_num().get_ui();
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> x(n, 0), sq(n);
  for (;;) {
    std::fill(sq.begin(), sq.end(), 0);
    for (int i = 0; i < n; ++i) {
      if (!x[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (!x[j]) continue;
        const std::uint64_t w = x[i] * x[j] % p;
        for (int k = 0; k < n; ++k) sq[k] = (sq[k] + w * c[(i * n + j) * n + k]) % p;
      }
    }
    if (sq == x) out.push_back(x);
    int i = 0;
    while (i < n && ++x[i] == p) x[i++] = 0;
    if (i == n) break;
  }
  return out;
}

FinDimAlgebra quaternions(const Field& k) {
  // Basis 1, i, j, ij with i^2 = j^2 = -1.
  const int t[4][4][2] = {{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                          {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
                          {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
                          {{3, 1}, {2, 1}, {1, -1}, {0, -1}}};
  return FinDimAlgebra::from_products(
      k, 4,
      [&](int i, int j) {
        FieldVector v = zero_vector(4, k);
        v(t[i][j][0]) = Scalar(t[i][j][1], k);
        return v;
      },
      vec(k, {1, 0, 0, 0}));
}

void check_decomposition(const FinDimAlgebra& a, const std::vector<FieldVector>& es) {
  FieldVector sum = a.zero();
  for (size_t i = 0; i < es.size(); ++i) {
    sum += es[i];
    for (size_t j = 0; j < es.size(); ++j) CHECK(a.multiply(es[i], es[j]) == (i == j ? es[i] : a.zero()));
  }
  CHECK(sum == a.unit());
}

void check_radical(const FinDimAlgebra& a, const AlgebraIdeal& j) {
  CHECK(is_two_sided_ideal(a, j));
  int m = nilpotency_index(a, j);
  CHECK(m >= 1);
  CHECK(m <= a.dimension() + 1);
  QuotientAlgebra q = quotient(a, j);
  CHECK(q.algebra.dimension() + j.dimension() == a.dimension());
  if (q.algebra.dimension() > 0) CHECK(matrix_rank<Scalar>(trace_form(q.algebra)) == q.algebra.dimension());
}

}  // namespace

TEST_CASE("factorization over the rationals") {
  Field q = Field::rationals();
  auto fs = upoly::factor_squarefree(up(q, {-1, 0, 0, 0, 1}));
  REQUIRE(fs.size() == 3);
  CHECK(fs[0] == up(q, {-1, 1}));
  CHECK(fs[1] == up(q, {1, 1}));
  CHECK(fs[2] == up(q, {1, 0, 1}));
  // Irreducible over Q but reducible modulo every prime.
  CHECK(upoly::is_irreducible(up(q, {1, 0, -10, 0, 1})));
  CHECK(upoly::is_irreducible(up(q, {1, 0, 0, 0, 1})));
  CHECK(upoly::factor_squarefree(up(q, {6, 4})).size() == 1);
  CHECK_THROWS_AS(upoly::factor_squarefree(up(q, {1, 2, 1})), Error);

  // Products of distinct Eisenstein polynomials (irreducible by the criterion)
  // recover exactly their factors.
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> deg(1, 4), coef(-3, 3), cnt(2, 4);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<UPoly> parts;
    const int r = cnt(rng);
    while (static_cast<int>(parts.size()) < r) {
      const long pr = trial % 2 ? 3 : 2;
      const int d = deg(rng);
      UPoly g;
      g.push_back(Scalar(pr * (coef(rng) % 2 == 0 ? 1 : -1), q));
      for (int i = 1; i < d; ++i) g.push_back(Scalar(pr * coef(rng), q));
      g.push_back(Scalar::one(q));
      upoly::trim(g);
      bool dup = false;
      for (const auto& h : parts) dup = dup || h == g;
      if (!dup) parts.push_back(g);
    }
    UPoly f = product(parts, q);
    if (!upoly::is_squarefree(f)) continue;
    auto got = upoly::factor_squarefree(f);
    CHECK(got.size() == parts.size());
    CHECK(product(got, q) == f);
    for (const auto& g : parts) CHECK(std::find(got.begin(), got.end(), g) != got.end());
  }
}

TEST_CASE("factorization over prime fields matches brute force") {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    Field k = Field::prime(p);
    std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
    std::uniform_int_distribution<int> deg(1, 7);
    int tested = 0;
    while (tested < 30) {
      UPoly f;
      const int d = deg(rng);
      for (int i = 0; i < d; ++i) f.push_back(Scalar(static_cast<long>(coef(rng)), k));
      f.push_back(Scalar::one(k));
      if (!upoly::is_squarefree(f)) continue;
      ++tested;
      auto got = upoly::factor_squarefree(f);
      CHECK(product(got, k) == f);
      for (const auto& g : got) CHECK(brute_irreducible(g, p));
      CHECK((got.size() == 1) == brute_irreducible(f, p));
    }
  }
  // x^p - x splits into all p linear factors.
  Field f5 = Field::prime(5);
  CHECK(upoly::factor_squarefree(up(f5, {0, -1, 0, 0, 0, 1})).size() == 5);
}

TEST_CASE("radical examples") {
  Field q = Field::rationals();
  CHECK(radical(FinDimAlgebra::product_of_fields(q, 2)).dimension() == 0);

  FinDimAlgebra dual = FinDimAlgebra::truncated_polynomial(q, 2);
  AlgebraIdeal j = radical(dual);
  REQUIRE(j.dimension() == 1);
  CHECK(j.contains(vec(q, {0, 1})));
  CHECK(!j.contains(vec(q, {1, 0})));

  // Basis order E11, E12, E22.
  FinDimAlgebra t2 = FinDimAlgebra::upper_triangular(q, 2);
  AlgebraIdeal jt = radical(t2);
  REQUIRE(jt.dimension() == 1);
  CHECK(jt.contains(vec(q, {0, 1, 0})));

  CHECK_THROWS_AS(radical(FinDimAlgebra::product_of_fields(Field::prime(2), 2)), CharacteristicError);
  CHECK_THROWS_AS(radical(FinDimAlgebra::matrix_algebra(Field::prime(3), 2)), CharacteristicError);
  CHECK_NOTHROW(radical(FinDimAlgebra::matrix_algebra(Field::prime(5), 2)));
}

TEST_CASE("lift_idempotent examples") {
  Field q = Field::rationals();
  FinDimAlgebra dual = FinDimAlgebra::truncated_polynomial(q, 2);
  AlgebraIdeal j = radical(dual);
  CHECK(lift_idempotent(dual, j, vec(q, {1, 0})) == vec(q, {1, 0}));
  CHECK(lift_idempotent(dual, j, vec(q, {1, 1})) == vec(q, {1, 0}));

  FinDimAlgebra m2 = FinDimAlgebra::matrix_algebra(q, 2);
  AlgebraIdeal zero{zero_matrix(4, 0, q)};
  CHECK(lift_idempotent(m2, zero, vec(q, {1, 0, 0, 0})) == vec(q, {1, 0, 0, 0}));

  CHECK_THROWS_AS(lift_idempotent(dual, j, vec(q, {2, 0})), Error);
  AlgebraIdeal whole{FieldMatrix::Identity(2, 2).unaryExpr([&](const Scalar& s) { return s.coerce(q); })};
  CHECK_THROWS_AS(lift_idempotent(dual, whole, vec(q, {1, 0})), Error);

  // Deeper nilpotence: 1 + t in k[t]/t^4 lifts to 1.
  FinDimAlgebra t4 = FinDimAlgebra::truncated_polynomial(q, 4);
  CHECK(lift_idempotent(t4, radical(t4), vec(q, {1, 1, 1, 1})) == vec(q, {1, 0, 0, 0}));
}

TEST_CASE("primitive_decomposition and is_nc_local examples") {
  Field q = Field::rationals();
  auto one = primitive_decomposition(FinDimAlgebra::product_of_fields(q, 1));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == vec(q, {1}));

  FinDimAlgebra kk = FinDimAlgebra::product_of_fields(q, 2);
  auto two = primitive_decomposition(kk);
  REQUIRE(two.size() == 2);
  CHECK(((two[0] == vec(q, {1, 0}) && two[1] == vec(q, {0, 1})) ||
         (two[0] == vec(q, {0, 1}) && two[1] == vec(q, {1, 0}))));

  FinDimAlgebra m2 = FinDimAlgebra::matrix_algebra(q, 2);
  auto es = primitive_decomposition(m2);
  REQUIRE(es.size() == 2);
  check_decomposition(m2, es);
  for (const auto& e : es) CHECK(matrix_rank<Scalar>(m2.left_matrix(e)) == 2);  // rank-one matrices

  CHECK(is_nc_local(FinDimAlgebra::product_of_fields(q, 1)));
  CHECK(!is_nc_local(kk));
  CHECK(is_nc_local(FinDimAlgebra::truncated_polynomial(q, 2)));
}

TEST_CASE("division algebras and extension fields") {
  Field q = Field::rationals();
  CHECK_THROWS_AS(primitive_decomposition(quaternions(q)), InconclusiveError);
  FinDimAlgebra h5 = quaternions(Field::prime(5));
  auto es = primitive_decomposition(h5);
  CHECK(es.size() == 2);
  check_decomposition(h5, es);

  Field qi = Field::extension(q, {mpq_class(1), mpq_class(0), mpq_class(1)}, "i");
  FinDimAlgebra gauss = samples::polynomial_quotient(qi, up(qi, {1, 0, 1}));
  auto split = primitive_decomposition(gauss);
  CHECK(split.size() == 2);
  check_decomposition(gauss, split);
  CHECK(is_nc_local(samples::polynomial_quotient(q, up(q, {1, 0, 1}))));

  FinDimAlgebra r = restrict_scalars(gauss);
  CHECK(r.dimension() == 4);
  CHECK(extend_element(gauss, restrict_element(gauss, split[0])) == split[0]);
}

TEST_CASE("corpus postconditions over several fields") {
  std::mt19937_64 rng(2024);
  for (const Field& k : {Field::rationals(), Field::prime(5), Field::prime(7)}) {
    for (const auto& [name, a0] : samples::algebra_corpus(k)) {
      CAPTURE(name);
      CAPTURE(k.describe());
      FinDimAlgebra a = samples::change_basis(a0, samples::random_invertible(k, a0.dimension(), rng));
      AlgebraIdeal j = radical(a);
      check_radical(a, j);
      CHECK(j.dimension() == radical(a0).dimension());
      auto es = primitive_decomposition(a);
      check_decomposition(a, es);
      CHECK(es.size() == primitive_decomposition(a0).size());
    }
  }
}

TEST_CASE("idempotent existence agrees with brute force search") {
  std::mt19937_64 rng(99);
  for (std::uint64_t p : {5, 7}) {
    Field k = Field::prime(p);
    std::vector<samples::NamedAlgebra> corpus = samples::algebra_corpus(k);
    // A few dimension 5 and 6 algebras for the larger search.
    corpus.push_back({"k[t]/t^5", FinDimAlgebra::truncated_polynomial(k, 5)});
    corpus.push_back({"k^6", FinDimAlgebra::product_of_fields(k, 6)});
    corpus.push_back({"T3(k)", FinDimAlgebra::upper_triangular(k, 3)});
    corpus.push_back({"k[t]/(t^5-1)", samples::polynomial_quotient(k, up(k, {-1, 0, 0, 0, 0, 1}))});
    for (const auto& [name, a0] : corpus) {
      if (static_cast<std::uint64_t>(a0.dimension()) >= p) continue;  // outside the trace-form window
      CAPTURE(name);
      CAPTURE(p);
      FinDimAlgebra a = samples::change_basis(a0, samples::random_invertible(k, a0.dimension(), rng));
      auto brute = brute_idempotents(a);
      auto es = primitive_decomposition(a);
      // 0 and 1 are always idempotent.
      CHECK((brute.size() > 2) == (es.size() > 1));
      CHECK(is_nc_local(a) == (brute.size() == 2));
      if (a.is_commutative()) CHECK(brute.size() == (size_t{1} << es.size()));
      // Primitivity: the only idempotents of eAe are 0 and e.
      for (const auto& e : es) {
        int inside = 0;
        for (const auto& x : brute) {
          FieldVector v(a.dimension());
          for (int i = 0; i < a.dimension(); ++i) v(i) = Scalar(static_cast<long>(x[i]), k);
          if (a.multiply(a.multiply(e, v), e) == v) ++inside;
        }
        CHECK(inside == 2);
      }
    }
  }
}

TEST_CASE("every idempotent of the semisimple quotient lifts") {
  std::mt19937_64 rng(3);
  Field q = Field::rationals();
  for (const auto& [name, a0] : samples::algebra_corpus(q)) {
    CAPTURE(name);
    FinDimAlgebra a = samples::change_basis(a0, samples::random_invertible(q, a0.dimension(), rng));
    AlgebraIdeal j = radical(a);
    QuotientAlgebra s = quotient(a, j);
    auto bar = primitive_decomposition(s.algebra);
    for (int trial = 0; trial < 4; ++trial) {
      FieldVector e = s.algebra.zero();
      for (const auto& b : bar)
        if (rng() % 2) e += b;
      // Conjugate by a random unit of the quotient.
      FieldVector u = s.algebra.unit();
      for (int x = 0; x < s.algebra.dimension(); ++x) u += s.algebra.basis_element(x) * Scalar(int(rng() % 3) - 1);
      auto inv = solve_linear<Scalar>(s.algebra.left_matrix(u), s.algebra.unit());
      if (!inv || inv->kernel.cols() != 0) continue;
      e = s.algebra.multiply(s.algebra.multiply(u, e), inv->particular);
      REQUIRE(s.algebra.is_idempotent(e));
      FieldVector lifted = lift_idempotent(a, j, s.section * e);
      CHECK(a.is_idempotent(lifted));
      CHECK(s.projection * lifted == e);
    }
  }
}

TEST_CASE("structure table printing") {
  std::string t = FinDimAlgebra::truncated_polynomial(Field::rationals(), 2).table();
  CHECK(t.find("e1 * e1") == std::string::npos);
  CHECK(t.find("e0 * e1 = e1") != std::string::npos);
}
