#include "suite.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "mfg/periodicity.hpp"
#include "mfg/samples.hpp"
#include "tasks.hpp"

namespace mfg::cli {

namespace {

std::mt19937_64 seeded(long seed, int criterion) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(static_cast<std::uint64_t>(seed) >> 32),
                    static_cast<std::uint32_t>(criterion)};
  return std::mt19937_64(seq);
}

std::string padded(int i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

std::string power(int a) { return a == 1 ? "x" : "x^" + std::to_string(a); }

/// Writes reports into one directory and re-verifies each from disk.
struct ReportSink {
  explicit ReportSink(std::filesystem::path d) : dir(std::move(d)) {}

  std::filesystem::path dir;
  int written = 0;
  std::vector<std::string> failures;

  void write(const std::string& name, const Json& report) {
    const std::filesystem::path path = dir / (name + ".json");
    write_atomic(path, dump(report));
    ++written;
    VerifyOutcome v = verify_file(path);
    if (v.exit_code != 0) failures.push_back(name + ": " + v.first_failure);
  }
  int verified() const { return written - static_cast<int>(failures.size()); }
};

struct Tally {
  std::vector<std::string> problems;
  void note(const std::string& s) { problems.push_back(s); }
  std::string first() const { return problems.empty() ? "" : "; first problem: " + problems.front(); }
};

std::vector<samples::Setting> settings_with(const std::string& suffix) {
  std::vector<samples::Setting> out;
  for (auto& s : samples::desk_settings())
    if (s.name.size() >= suffix.size() && s.name.compare(s.name.size() - suffix.size(), suffix.size(), suffix) == 0)
      out.push_back(s);
  return out;
}

std::vector<samples::Setting> equivariant_settings() {
  std::vector<samples::Setting> out;
  for (auto& s : samples::desk_settings())
    if (s.action->order() > 1) out.push_back(s);
  return out;
}

// ---- 1: homotopy idempotents ----

CriterionResult homotopy_idempotents(long seed, const std::filesystem::path& dir) {
  auto rng = seeded(seed, 1);
  const auto settings = samples::desk_settings();
  const int n = 100;
  ReportSink sink{dir};
  Tally tally;
  int split = 0, matched = 0, non_strict = 0;
  for (int i = 0; i < n; ++i) {
    const samples::Setting& s = settings[static_cast<size_t>(i) % settings.size()];
    try {
      samples::IdempotentSample smp = samples::random_homotopy_idempotent(rng, s);
      if (!(compose(smp.e, smp.e) == smp.e)) ++non_strict;
      SplitResult r = split_homotopy_idempotent(smp.x, smp.e);
      if (auto c = check_split(smp.x, smp.e, r, false); !c) {
        tally.note(s.name + ": " + c.message);
        continue;
      }
      ++split;
      if (stable_isomorphism(r.y, smp.expected)) ++matched;
      else tally.note(s.name + ": image not isomorphic to the expected summand");
      Certificate c;
      c.add_context("base", s.action);
      c.add_object("X", "base", smp.x);
      c.add_object("Y", "base", r.y);
      certify_split(c, "X", smp.x, "Y", smp.e, r, false);
      sink.write("idempotent-" + padded(i),
                 make_report("idempotent-" + padded(i), "split-idempotent", seed,
                             {{"setting", s.name}, {"rank", smp.x.rank()}, {"image_rank", r.y.rank()}}, c));
    } catch (const std::exception& e) {
      tally.note(s.name + ": " + e.what());
    }
  }
  bool pass = split == n && matched == n && sink.verified() == n;
  std::ostringstream d;
  d << split << "/" << n << " split (" << non_strict << " with e e != e), " << matched << "/" << n << " images match, " << sink.verified() << "/" << n
    << " certificates verified" << tally.first()
    << (sink.failures.empty() ? "" : "; verify: " + sink.failures.front());
  return {1, "homotopy idempotents split", pass, d.str()};
}

// ---- 2: A_n classification ----

CriterionResult an_classification(long seed, const std::filesystem::path& dir) {
  auto rng = seeded(seed, 2);
  ReportSink sink{dir};
  Tally tally;
  int recovered = 0, trials = 0;
  bool catalog_ok = true;
  for (int n = 1; n <= 4; ++n) {
    RingPtr r = samples::unit_weight_ring({"x"}, "x^" + std::to_string(n + 1));
    ActionPtr act = GroupAction::trivial(r);
    std::vector<EquivariantMF> cat;
    for (int a = 1; a <= n; ++a) cat.push_back(samples::rank_one(act, power(a), power(n + 1 - a)));
    for (int a = 0; a < n; ++a) {
      if (is_contractible(cat[a])) catalog_ok = false, tally.note("A" + std::to_string(n) + ": contractible entry");
      KSDecomposition d = ks_decompose(cat[a]);
      if (d.summands.size() != 1 || d.summands[0].contractible)
        catalog_ok = false, tally.note("A" + std::to_string(n) + ": decomposable entry");
      for (int b = a + 1; b < n; ++b)
        if (stable_isomorphism(cat[a], cat[b])) catalog_ok = false, tally.note("A" + std::to_string(n) + ": isomorphic entries");
    }
    std::uniform_int_distribution<int> count(2, 4), pick(0, n - 1);
    for (int t = 0; t < 25; ++t, ++trials) {
      std::vector<int> want;
      std::vector<EquivariantMF> pieces;
      for (int k = count(rng); k > 0; --k) {
        want.push_back(pick(rng));
        pieces.push_back(cat[want.back()]);
      }
      samples::Conjugate cj = samples::random_conjugate(rng, direct_sum(pieces, act));
      KSDecomposition d = ks_decompose(cj.object);
      Certificate c;
      c.add_context("base", act);
      c.add_object("X", "base", cj.object);
      certify_decomposition(c, "base", "X", d, "");
      std::vector<int> got;
      bool ok = d.contractible_count() == 0;
      for (size_t i = 0; i < d.summands.size(); ++i) {
        int found = -1;
        for (int a = 0; a < n && found < 0; ++a) {
          auto iso = stable_isomorphism(d.summands[i].object, cat[a]);
          if (!iso) continue;
          found = a;
          const std::string name = "catalog" + std::to_string(a);
          if (!c.has_object(name)) c.add_object(name, "base", cat[a]);
          certify_isomorphism(c, "Y" + std::to_string(i) + "~" + name, "Y" + std::to_string(i), name, *iso);
        }
        if (found < 0) ok = false;
        got.push_back(found);
      }
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (ok && got == want) ++recovered;
      else tally.note("A" + std::to_string(n) + " trial " + std::to_string(t) + ": multiset not recovered");
      const std::string name = "A" + std::to_string(n) + "-" + padded(t);
      sink.write(name, make_report(name, "decompose", seed, {{"n", n}, {"expected", want}, {"recovered", got}}, c));
    }
  }
  bool pass = catalog_ok && recovered == trials && sink.verified() == trials;
  std::ostringstream d;
  d << "catalog " << (catalog_ok ? "ok" : "wrong") << ", " << recovered << "/" << trials << " multisets recovered, "
    << sink.verified() << "/" << trials << " certificates verified" << tally.first()
    << (sink.failures.empty() ? "" : "; verify: " + sink.failures.front());
  return {2, "A_n classification", pass, d.str()};
}

// ---- 3: averaging splitting ----

CriterionResult averaging(long seed, const std::filesystem::path& dir) {
  auto rng = seeded(seed, 3);
  ReportSink sink{dir};
  Tally tally;
  int ok = 0, total = 0;
  for (const std::string kind : {"sign", "swap"}) {
    const auto settings = settings_with("/" + kind);
    for (int i = 0; i < 50; ++i, ++total) {
      const samples::Setting& s = settings[static_cast<size_t>(i) % settings.size()];
      samples::SampleSum sum = samples::random_sum(rng, s, 1, 2);
      samples::Conjugate cj = samples::random_conjugate(rng, sum.object);
      AveragingSplitting av = averaging_splitting(cj.object);
      const bool exact = compose(av.p, av.j) == identity_morphism(cj.object);
      if (av.ok() && exact) ++ok;
      else tally.note(s.name + ": " + av.linear.message + av.chain_map.message + av.section.message);
      Certificate c;
      c.add_context("base", s.action);
      c.add_object("Y", "base", cj.object);
      c.add_object("I", "base", av.induced);
      certify_averaging(c, "Y", "I", av);
      const std::string name = kind + "-" + padded(i);
      sink.write(name, make_report(name, "induce", seed,
                                   {{"setting", s.name},
                                    {"linear", av.linear.ok},
                                    {"chain_map", av.chain_map.ok},
                                    {"section", av.section.ok}},
                                   c));
    }
  }
  // In characteristic 2 the order of Z/2 is not a unit.
  bool char2 = false;
  RingPtr r2 = samples::unit_weight_ring({"x", "y"}, "x^2 + y^2", Field::prime(2));
  EquivariantMF y2 = samples::rank_one(samples::swap_action(r2), "x + y", "x + y");
  try {
    averaging_splitting(y2);
  } catch (const CharacteristicError&) {
    char2 = true;
  }
  bool pass = ok == total && sink.verified() == total && char2;
  std::ostringstream d;
  d << ok << "/" << total << " objects satisfy linearity, chain map and p j = id; " << sink.verified() << "/" << total
    << " certificates verified; characteristic 2 " << (char2 ? "rejected" : "NOT rejected") << tally.first()
    << (sink.failures.empty() ? "" : "; verify: " + sink.failures.front());
  return {3, "averaging splitting", pass, d.str()};
}

// ---- 4: equivariant A_1 ----

CriterionResult a1_count(long seed, const std::filesystem::path& dir) {
  ReportSink sink{dir};
  RingPtr r = samples::unit_weight_ring({"x"}, "x^2");
  ActionPtr act = samples::sign_action(r);
  // Every rank-one structure (x, x) with M_s = (c0, c1), c in {+-1, +-2}.
  std::vector<EquivariantMF> valid;
  for (int c0 : {-2, -1, 1, 2})
    for (int c1 : {-2, -1, 1, 2}) {
      try {
        valid.push_back(samples::rank_one(act, "x", "x", c0, c1));
      } catch (const ValidationError&) {
      }
    }
  std::vector<EquivariantMF> classes;
  for (const auto& x : valid) {
    bool seen = false;
    for (const auto& c : classes) seen = seen || stable_isomorphism(x, c).has_value();
    if (!seen) classes.push_back(x);
  }
  bool indecomposable = true;
  for (const auto& c : classes) {
    KSDecomposition d = ks_decompose(c);
    indecomposable = indecomposable && d.summands.size() == 1 && !d.summands[0].contractible;
  }
  bool both = classes.size() == 2;
  for (size_t k = 0; k < classes.size(); ++k) {
    AveragingSplitting av = averaging_splitting(classes[k]);
    KSDecomposition d = ks_decompose(av.induced);
    Certificate c;
    c.add_context("base", act);
    c.add_object("I", "base", av.induced);
    certify_decomposition(c, "base", "I", d, "");
    std::vector<int> hits(classes.size(), 0);
    for (size_t i = 0; i < d.summands.size(); ++i)
      for (size_t m = 0; m < classes.size(); ++m) {
        auto iso = stable_isomorphism(d.summands[i].object, classes[m]);
        if (!iso) continue;
        ++hits[m];
        const std::string name = "structure" + std::to_string(m);
        if (!c.has_object(name)) c.add_object(name, "base", classes[m]);
        certify_isomorphism(c, "Y" + std::to_string(i) + "~" + name, "Y" + std::to_string(i), name, *iso);
      }
    both = both && d.noncontractible_classes().size() == 2 && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    const std::string name = "induce-forget-" + std::to_string(k);
    sink.write(name, make_report(name, "induce", seed, {{"structure", k}, {"matches", hits}}, c));
  }
  bool pass = classes.size() == 2 && valid.size() == 2 && indecomposable && both && sink.verified() == sink.written;
  std::ostringstream d;
  d << valid.size() << " valid structures in the search grid, " << classes.size() << " isomorphism classes, "
    << (indecomposable ? "indecomposable" : "DECOMPOSABLE") << ", induce(forget) contains both: " << (both ? "yes" : "no")
    << ", " << sink.verified() << "/" << sink.written << " certificates verified";
  return {4, "equivariant A_1 count", pass, d.str()};
}

// ---- 5: k^stab ----

CriterionResult kstab_suite(long seed, const std::filesystem::path& dir) {
  ReportSink sink{dir};
  Tally tally;
  int ok = 0;
  for (int n = 2; n <= 5; ++n) {
    RingPtr r = samples::unit_weight_ring({"x"}, "x^" + std::to_string(n));
    try {
      KStab k = kstab(r);
      EquivariantMF expected = samples::rank_one(GroupAction::trivial(r), "x", power(n - 1));
      PolyMatrix f = poly_identity(k.mf.rank());
      for (Eigen::Index i = 0; i < f.rows(); ++i) f(i, i) = r->potential();
      const bool exact = multiply(k.mf.a, k.mf.b) == f && multiply(k.mf.b, k.mf.a) == f;
      auto iso = stable_isomorphism(k.mf, expected);
      const bool early = k.tail.period_start >= 1 && k.tail.period_start <= 2;
      if (exact && iso && early && check_resolution(k.tail)) ++ok;
      else tally.note("x^" + std::to_string(n) + ": exact " + std::to_string(exact) + ", period " +
                      std::to_string(k.tail.period_start));
      Certificate c;
      c.add_context("base", GroupAction::trivial(r));
      c.add_object("K", "base", k.mf);
      c.add_object("expected", "base", expected);
      if (iso) certify_isomorphism(c, "K~expected", "K", "expected", *iso);
      const std::string name = "x" + std::to_string(n);
      sink.write(name, make_report(name, "kstab", seed,
                                   {{"period_start", k.tail.period_start}, {"resolution", k.tail.to_json()}}, c));
    } catch (const std::exception& e) {
      tally.note("x^" + std::to_string(n) + ": " + e.what());
    }
  }
  bool pass = ok == 4 && sink.verified() == 4;
  std::ostringstream d;
  d << ok << "/4 potentials give (x, x^(n-1)) with AB = BA = fI and period <= 2, " << sink.verified()
    << "/4 certificates verified" << tally.first();
  return {5, "k^stab for x^n", pass, d.str()};
}

// ---- 6: strictification ----

CriterionResult strictify_suite(long seed, const std::filesystem::path& dir) {
  auto rng = seeded(seed, 6);
  ReportSink sink{dir};
  Tally tally;
  const auto settings = equivariant_settings();
  int ok = 0, total = 0;
  auto record = [&](const std::string& name, const HomotopyEquivariantObject& obj, const EquivariantMF* genuine,
                    const std::string& setting) -> std::optional<Strictification> {
    ++total;
    try {
      Strictification st = strictify(obj);
      bool good = static_cast<bool>(check_strictification(obj, st));
      Certificate c;
      certify_strictification(c, obj, st);
      if (genuine) {
        auto iso = stable_isomorphism(st.z, *genuine);
        good = good && iso.has_value();
        if (iso) {
          c.add_object("genuine", "base", *genuine);
          certify_isomorphism(c, "Z~genuine", "Z", "genuine", *iso);
        }
      }
      if (good) ++ok;
      else tally.note(name + ": strictification check failed");
      sink.write(name, make_report(name, "strictify", seed, {{"setting", setting}, {"rank", st.z.rank()}}, c));
      return st;
    } catch (const std::exception& e) {
      tally.note(name + ": " + e.what());
      return std::nullopt;
    }
  };
  for (int i = 0; i < 18; ++i) {
    const samples::Setting& s = settings[static_cast<size_t>(i) % settings.size()];
    samples::CoherentSample cs = samples::random_homotopy_equivariant(rng, s);
    record("sample-" + padded(i), cs.object, &cs.genuine, s.name);
  }
  // theta_s = (1, -1) and (-1, 1) on (x, x) over x^2 with the sign action.
  RingPtr r = samples::unit_weight_ring({"x"}, "x^2");
  ActionPtr act = samples::sign_action(r);
  EquivariantMF p = samples::rank_one(GroupAction::trivial(r), "x", "x");
  std::optional<Strictification> zs[2];
  int k = 0;
  for (int sign : {1, -1}) {
    PolyMatrix a(1, 1), b(1, 1);
    a(0, 0) = r->constant(Scalar(sign));
    b(0, 0) = r->constant(Scalar(-sign));
    std::vector<MFMorphism> theta(2);
    theta[act->group().identity()] = identity_morphism(p);
    theta[1 - act->group().identity()] = {a, b};
    HomotopyEquivariantObject obj = HomotopyEquivariantObject::make(act, p, theta);
    zs[k] = record(sign > 0 ? "plus" : "minus", obj, nullptr, "x^2/sign");
    ++k;
  }
  const bool distinct = zs[0] && zs[1] && !stable_isomorphism(zs[0]->z, zs[1]->z);
  bool pass = ok == total && total == 20 && distinct && sink.verified() == total;
  std::ostringstream d;
  d << ok << "/" << total << " strictifications certified, " << sink.verified() << "/" << total
    << " certificates verified, the two signs give " << (distinct ? "non-isomorphic" : "ISOMORPHIC") << " objects"
    << tally.first() << (sink.failures.empty() ? "" : "; verify: " + sink.failures.front());
  return {6, "strictification roundtrip", pass, d.str()};
}

// ---- 7: finite-dimensional algebras ----

/// Postconditions of radical, lifting and primitive decomposition; empty when all hold.
std::string algebra_postconditions(const FinDimAlgebra& a, std::mt19937_64& rng) {
  AlgebraIdeal j = radical(a);
  if (!is_two_sided_ideal(a, j)) return "radical is not an ideal";
  if (nilpotency_index(a, j) < 0) return "radical is not nilpotent";
  QuotientAlgebra q = quotient(a, j);
  if (radical(q.algebra).dimension() != 0) return "A/J is not semisimple";
  std::vector<FieldVector> bar = primitive_decomposition(q.algebra);
  for (int trial = 0; trial < 3; ++trial) {
    FieldVector e = q.algebra.zero();
    for (const auto& b : bar)
      if (rng() % 2) e += b;
    FieldVector lifted = lift_idempotent(a, j, q.section * e);
    if (!a.is_idempotent(lifted) || q.projection * lifted != e) return "idempotent lifting failed";
  }
  std::vector<FieldVector> es = primitive_decomposition(a);
  FieldVector sum = a.zero();
  for (size_t i = 0; i < es.size(); ++i) {
    sum += es[i];
    if (!a.is_idempotent(es[i])) return "decomposition element is not idempotent";
    for (size_t k = 0; k < es.size(); ++k)
      if (k != i && a.multiply(es[i], es[k]) != a.zero()) return "decomposition is not orthogonal";
    if (!is_nc_local(corner(a, es[i]).algebra)) return "corner is not local";
  }
  if (sum != a.unit()) return "idempotents do not sum to 1";
  if (es.size() != bar.size()) return "decomposition sizes of A and A/J differ";
  return {};
}

/// Every idempotent of an algebra over GF(p), by exhaustive search.
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

/// Idempotent existence and primitivity against the exhaustive search.
std::string brute_force_agrees(const FinDimAlgebra& a) {
  const Field& k = a.field();
  auto brute = brute_idempotents(a);
  auto es = primitive_decomposition(a);
  if ((brute.size() > 2) != (es.size() > 1)) return "nontrivial idempotent existence disagrees";
  if (is_nc_local(a) != (brute.size() == 2)) return "locality disagrees";
  if (a.is_commutative() && brute.size() != (size_t{1} << es.size())) return "idempotent count disagrees";
  for (const auto& e : es) {
    int inside = 0;
    for (const auto& x : brute) {
      FieldVector v(a.dimension());
      for (int i = 0; i < a.dimension(); ++i) v(i) = Scalar(static_cast<long>(x[i]), 1, k);
      if (a.multiply(a.multiply(e, v), e) == v) ++inside;
    }
    if (inside != 2) return "a primitive idempotent has a proper idempotent below it";
  }
  return {};
}

CriterionResult findim(long seed, const std::filesystem::path& dir) {
  auto rng = seeded(seed, 7);
  Tally tally;
  Json rows = Json::array();
  int checked = 0, passed = 0;
  auto run = [&](const std::string& name, const FinDimAlgebra& a, bool brute) {
    ++checked;
    std::string why;
    try {
      why = algebra_postconditions(a, rng);
      if (why.empty() && brute) why = brute_force_agrees(a);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (why.empty()) ++passed;
    else tally.note(name + ": " + why);
    rows.push_back({{"algebra", name}, {"dimension", a.dimension()}, {"field", a.field().describe()},
                    {"brute_force", brute}, {"ok", why.empty()}});
  };
  const Field q = Field::rationals();
  for (const auto& [name, a0] : samples::algebra_corpus(q)) {
    run(name + " over QQ", samples::change_basis(a0, samples::random_invertible(q, a0.dimension(), rng)), false);
  }
  const auto settings = samples::desk_settings();
  for (int i = 0; i < 50; ++i) {
    const samples::Setting& s = settings[static_cast<size_t>(i) % settings.size()];
    samples::SampleSum sum = samples::random_sum(rng, s, 1, 3);
    samples::Conjugate cj = samples::random_conjugate(rng, sum.object);
    run("End(" + s.name + " sample " + std::to_string(i) + ")", strict_end_algebra(MorphismSpace(cj.object, cj.object)),
        false);
  }
  // Exhaustive searches over GF(7), where the radical test is valid up to dimension 6.
  const Field f7 = Field::prime(7);
  auto corpus = samples::algebra_corpus(f7);
  corpus.push_back({"k[t]/t^5", FinDimAlgebra::truncated_polynomial(f7, 5)});
  corpus.push_back({"k^6", FinDimAlgebra::product_of_fields(f7, 6)});
  corpus.push_back({"T3(k)", FinDimAlgebra::upper_triangular(f7, 3)});
  UPoly g(6, Scalar::zero(f7));
  g[0] = Scalar(-1, 1, f7);
  g[5] = Scalar::one(f7);
  corpus.push_back({"k[t]/(t^5 - 1)", samples::polynomial_quotient(f7, g)});
  for (const auto& [name, a0] : corpus) {
    if (a0.dimension() > 6) continue;
    run(name + " over GF(7)", samples::change_basis(a0, samples::random_invertible(f7, a0.dimension(), rng)), true);
  }
  int end_brute = 0;
  for (int attempt = 0; attempt < 40 && end_brute < 12; ++attempt) {
    const int n = 3 + attempt % 2;
    RingPtr r = samples::unit_weight_ring({"x"}, "x^" + std::to_string(n), f7);
    ActionPtr act = GroupAction::trivial(r);
    std::vector<EquivariantMF> pieces;
    std::uniform_int_distribution<int> pick(1, n - 1), tw(-1, 1), count(1, 2);
    for (int k = count(rng); k > 0; --k) {
      const int a = pick(rng);
      pieces.push_back(twist(samples::rank_one(act, power(a), power(n - a)), tw(rng)));
    }
    EquivariantMF x = direct_sum(pieces, act);
    FinDimAlgebra e = strict_end_algebra(MorphismSpace(x, x));
    if (e.dimension() > 6) continue;
    ++end_brute;
    run("End(x^" + std::to_string(n) + " sum " + std::to_string(attempt) + ") over GF(7)", e, true);
  }
  Json summary = {{"algebras", rows}};
  write_atomic(dir / "algebras.json", dump(summary));
  std::ostringstream d;
  d << passed << "/" << checked << " algebras satisfy the postconditions (" << end_brute
    << " GF(7) endomorphism algebras among the brute-force checks)" << tally.first();
  return {7, "finite-dimensional algebra oracles", passed == checked, d.str()};
}

// ---- 8: strict idempotents ----

CriterionResult strict_idempotents(long seed, const std::filesystem::path& dir) {
  auto rng = seeded(seed, 8);
  const auto settings = samples::desk_settings();
  const int n = 100;
  ReportSink sink{dir};
  Tally tally;
  int ok = 0;
  for (int i = 0; i < n; ++i) {
    const samples::Setting& s = settings[static_cast<size_t>(i) % settings.size()];
    try {
      samples::IdempotentSample smp = samples::random_strict_idempotent(rng, s);
      SplitResult r = split_strict_idempotent(smp.x, smp.e);
      if (compose(r.pi, r.iota) == identity_morphism(r.y) && compose(r.iota, r.pi) == smp.e) ++ok;
      else tally.note(s.name + ": identities fail");
      Certificate c;
      c.add_context("base", s.action);
      c.add_object("X", "base", smp.x);
      c.add_object("Y", "base", r.y);
      certify_split(c, "X", smp.x, "Y", smp.e, r, true);
      const std::string name = "strict-" + padded(i);
      sink.write(name, make_report(name, "split-idempotent", seed, {{"setting", s.name}, {"image_rank", r.y.rank()}}, c));
    } catch (const std::exception& e) {
      tally.note(s.name + ": " + e.what());
    }
  }
  std::ostringstream d;
  d << ok << "/" << n << " split with pi iota = id and iota pi = e exactly, " << sink.verified() << "/" << n
    << " certificates verified" << tally.first();
  return {8, "strict idempotents split", ok == n && sink.verified() == n, d.str()};
}

using Criterion = std::function<CriterionResult(long, const std::filesystem::path&)>;

}  // namespace

std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  if (!std::filesystem::exists(root)) return out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[std::filesystem::relative(e.path(), root).generic_string()] = s.str();
  }
  return out;
}

std::vector<CriterionResult> run_criteria(long seed, const std::filesystem::path& out, bool parallel) {
  const std::vector<Criterion> criteria = {homotopy_idempotents, an_classification, averaging, a1_count,
                                           kstab_suite,          strictify_suite,    findim,    strict_idempotents};
  std::vector<CriterionResult> results(criteria.size());
  auto work = [&](size_t i) {
    const std::filesystem::path dir = out / ("criterion-" + std::to_string(i + 1));
    std::filesystem::create_directories(dir);
    try {
      results[i] = criteria[i](seed, dir);
    } catch (const std::exception& e) {
      results[i] = {static_cast<int>(i + 1), "criterion " + std::to_string(i + 1), false, e.what()};
    }
  };
  if (parallel) {
    std::vector<std::jthread> pool;
    for (size_t i = 0; i < criteria.size(); ++i) pool.emplace_back(work, i);
  } else {
    for (size_t i = 0; i < criteria.size(); ++i) work(i);
  }
  Json summary = Json::array();
  for (const auto& r : results)
    summary.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
  write_atomic(out / "summary.json", dump({{"schema", "mfg.suite/1"}, {"seed", seed}, {"criteria", summary}}));
  return results;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opts, std::ostream& log) {
  auto line = [&](const CriterionResult& r) {
    log << "criterion " << r.id << " [" << (r.pass ? "PASS" : "FAIL") << "] " << r.title << ": " << r.detail
        << std::endl;
  };
  std::filesystem::remove_all(opts.out);
  std::vector<CriterionResult> results = run_criteria(opts.seed, opts.out, opts.parallel);
  for (const auto& r : results) line(r);
  if (opts.check_determinism) {
    std::filesystem::path again = opts.out;
    again += ".rerun";
    std::filesystem::remove_all(again);
    run_criteria(opts.seed, again, opts.parallel);
    auto a = read_tree(opts.out), b = read_tree(again);
    std::string diff;
    if (a.size() != b.size()) diff = std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " files";
    for (const auto& [path, bytes] : a) {
      if (!diff.empty()) break;
      auto it = b.find(path);
      if (it == b.end()) diff = path + " missing in the rerun";
      else if (it->second != bytes) diff = path + " differs";
    }
    std::filesystem::remove_all(again);
    CriterionResult det{9, "determinism", diff.empty() && !a.empty(),
                        diff.empty() ? std::to_string(a.size()) + " report files byte-identical across two runs"
                                     : "first difference: " + diff};
    results.push_back(det);
    line(det);
  }
  return results;
}

}  // namespace mfg::cli
