#include <random>

#include "doctest.h"
#include "mfg/graded.hpp"

using namespace mfg;

namespace {

GradedRing ring_x(const std::string& f = "x^2") { return GradedRing(Field::rationals(), {"x"}, {1}, f); }
GradedRing ring_xy(const std::string& f) { return GradedRing(Field::rationals(), {"x", "y"}, {1, 1}, f); }

Polynomial random_poly(std::mt19937_64& rng, const GradedRing& r) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 3), count(0, 4);
  Polynomial p(Scalar::zero(r.field()), r.nvars());
  int n = count(rng);
  for (int t = 0; t < n; ++t) {
    std::vector<int> e(r.nvars());
    for (auto& x : e) x = deg(rng);
    p += Polynomial::monomial(r.nvars(), Monomial::from_exponents(e), Scalar(coef(rng), r.field()));
  }
  return p;
}

FieldMatrix fm(std::initializer_list<std::initializer_list<int>> rows) {
  FieldMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = Scalar(v, Field::rationals());
    ++i;
  }
  return m;
}

FieldVector fv(std::initializer_list<int> xs) {
  FieldVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (int x : xs) v(i++) = Scalar(x, Field::rationals());
  return v;
}

}  // namespace

TEST_CASE("scalars are exact in every supported field") {
  Field q = Field::rationals();
  CHECK(Scalar(1, 3, q) + Scalar(1, 6, q) == Scalar(1, 2, q));
  Field f7 = Field::prime(7);
  CHECK(Scalar(3, f7) * Scalar(5, f7) == Scalar(1, f7));
  CHECK(Scalar(3, f7).inverse() == Scalar(5, f7));
  CHECK(Scalar(1, 2, f7) == Scalar(4, f7));
  CHECK_THROWS_AS(Field::prime(9), Error);
  CHECK_THROWS_AS(Scalar(2, f7) + Scalar(2, q), Error);

  Field qi = Field::extension(q, {mpq_class(1), mpq_class(0), mpq_class(1)}, "i");
  Scalar i = Scalar::generator(qi);
  CHECK(i * i == Scalar(-1, qi));
  Scalar z = Scalar(2, qi) + i * Scalar(3, qi);
  CHECK(z * z.inverse() == Scalar(1, qi));
  CHECK(z.str() == "(3*i + 2)");
  CHECK_THROWS_AS(Field::extension(q, {mpq_class(-1), mpq_class(0), mpq_class(1)}, "s"), Error);
}

TEST_CASE("poly_arith examples") {
  GradedRing r = ring_x();
  Polynomial x = r.variable(0);
  CHECK(x * x == r.parse("x^2"));
  CHECK(r.potential() + Polynomial(0) == r.potential());

  GradedRing r2 = ring_xy("x^2 + y^2");
  Polynomial a = r2.parse("x+y"), b = r2.parse("x-y");
  CHECK(a * b == r2.parse("x^2 - y^2"));

  GradedRing r1 = ring_x();
  CHECK_THROWS_AS(r1.variable(0) + r2.variable(0), Error);
}

TEST_CASE("canonical polynomial text round-trips") {
  GradedRing r(Field::rationals(), {"x", "y", "z"}, {1, 1, 1}, "x^3 + y^3 + z^3");
  Polynomial p = r.parse("-1/2*z + 3*y*x^2");
  CHECK(r.format(p) == "3*x^2*y - 1/2*z");
  CHECK(r.parse(r.format(p)) == p);
  CHECK(r.format(r.parse("(x+y)^2")) == "x^2 + 2*x*y + y^2");
  CHECK_THROWS_AS(r.parse("x + w"), Error);
  CHECK_THROWS_AS(r.parse("x +"), Error);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    Polynomial q = random_poly(rng, r);
    CHECK(r.parse(r.format(q)) == q);
  }
}

TEST_CASE("polynomial ring axioms on random triples") {
  GradedRing r = ring_xy("x^2 + y^2");
  std::mt19937_64 rng(1);
  for (int t = 0; t < 120; ++t) {
    Polynomial a = random_poly(rng, r), b = random_poly(rng, r), c = random_poly(rng, r);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("solve_linear examples") {
  auto s1 = solve_linear<Scalar>(fm({{1, 0}, {0, 1}}), fv({1, 0}));
  REQUIRE(s1);
  CHECK(s1->particular == fv({1, 0}));
  CHECK(s1->kernel.cols() == 0);

  CHECK_FALSE(solve_linear<Scalar>(fm({{0}}), fv({1})));

  auto s3 = solve_linear<Scalar>(fm({{1, 1}}), fv({1}));
  REQUIRE(s3);
  CHECK(s3->particular == fv({1, 0}));
  REQUIRE(s3->kernel.cols() == 1);
  CHECK(FieldVector(s3->kernel.col(0)) == fv({-1, 1}));

  CHECK_THROWS_AS(solve_linear<Scalar>(fm({{1, 1}}), fv({1, 2})), Error);
}

TEST_CASE("solve_linear property: solutions and kernels are exact; rank-nullity") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> val(-2, 2), dim(1, 6);
  Field q = Field::rationals();
  for (int t = 0; t < 100; ++t) {
    Eigen::Index m = dim(rng), n = dim(rng);
    FieldMatrix a(m, n);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = Scalar(val(rng) * (val(rng) != 0), q);
    FieldVector b(m);
    for (Eigen::Index i = 0; i < m; ++i) b(i) = Scalar(val(rng), q);
    Eigen::Index rank = matrix_rank(a);
    auto sol = solve_linear<Scalar>(a, b);
    if (sol) {
      CHECK(FieldVector(a * sol->particular) == b);
      CHECK(sol->kernel.cols() == n - rank);
      for (Eigen::Index k = 0; k < sol->kernel.cols(); ++k)
        CHECK(FieldVector(a * sol->kernel.col(k)) == zero_vector(m, q));
    } else {
      // Inconsistent means b raises the rank.
      FieldMatrix ab(m, n + 1);
      ab << a, b;
      CHECK(matrix_rank(ab) == rank + 1);
    }
  }
}

TEST_CASE("solve_linear honours cancellation") {
  std::stop_source src;
  src.request_stop();
  CHECK_THROWS_AS(solve_linear<Scalar>(fm({{1, 1}}), fv({1}), src.get_token()), Cancelled);
}

TEST_CASE("graded_map_space examples") {
  GradedRing r = ring_x();
  auto b1 = graded_map_space({{0}}, {{0}}, 0, r);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].entries(0, 0) == Polynomial(1));
  CHECK(graded_map_space({{0}}, {{1}}, 0, r).empty());
  auto b3 = graded_map_space({{1}}, {{0}}, 0, r);
  REQUIRE(b3.size() == 1);
  CHECK(b3[0].entries(0, 0) == r.variable(0));
}

TEST_CASE("graded_map_space dimension is the sum of homogeneous piece dimensions") {
  GradedRing r(Field::rationals(), {"x", "y"}, {1, 2}, "x^4 + y^2");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> w(-1, 4), rk(0, 3);
  for (int t = 0; t < 30; ++t) {
    GradedFreeModule src, tgt;
    for (int i = rk(rng); i > 0; --i) src.weights.push_back(w(rng));
    for (int i = rk(rng); i > 0; --i) tgt.weights.push_back(w(rng));
    int shift = w(rng);
    size_t expected = 0;
    for (Eigen::Index i = 0; i < tgt.rank(); ++i)
      for (Eigen::Index j = 0; j < src.rank(); ++j)
        expected += r.basis(entry_degree(src, tgt, shift, i, j)).size();
    auto basis = graded_map_space(src, tgt, shift, r);
    CHECK(basis.size() == expected);
    for (const auto& m : basis) CHECK(m.degree_violation(r).empty());
  }
}

TEST_CASE("is_isolated_singularity examples") {
  auto a = is_isolated_singularity(ring_x("x^2"));
  CHECK(a.isolated);
  CHECK(a.dimension == 1);
  CHECK_FALSE(is_isolated_singularity(ring_xy("x^2*y")).isolated);
  auto c = is_isolated_singularity(ring_xy("x^3 + y^3"));
  CHECK(c.isolated);
  CHECK(c.dimension == 4);
  GradedRing weighted(Field::rationals(), {"x", "y"}, {3, 2}, "x^2 + y^3");
  auto e = is_isolated_singularity(weighted);
  CHECK(e.isolated);
  CHECK(e.dimension == 2);  // basis 1, y
  GradedRing bad(Field::prime(3), {"x"}, {1}, "x^3");
  CHECK_THROWS_AS(is_isolated_singularity(bad), CharacteristicError);
}

TEST_CASE("ring validation") {
  CHECK_THROWS_AS(GradedRing(Field::rationals(), {"x", "y"}, {1, 1}, "x^2 + y"), Error);
  CHECK_THROWS_AS(GradedRing(Field::rationals(), {"x"}, {1}, "1"), Error);
  CHECK_THROWS_AS(GradedRing(Field::rationals(), {"x"}, {0}, "x"), Error);
}
