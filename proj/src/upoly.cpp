#include "mfg/upoly.hpp"

#include <algorithm>
#include <random>

namespace mfg::upoly {

namespace {

Field field_of(const UPoly& p) {
  for (const auto& c : p)
    if (c.typed()) return c.field();
  return Field::rationals();
}

UPoly constant(const Scalar& c) {
  UPoly p{c};
  trim(p);
  return p;
}

UPoly x_poly(const Field& k) { return {Scalar::zero(k), Scalar::one(k)}; }

UPoly powmod(UPoly a, const mpz_class& e, const UPoly& m) {
  const Field k = field_of(m);
  UPoly result = constant(Scalar::one(k));
  a = mod(a, m);
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, a, m);
  }
  return result;
}

// ---- factorization over GF(p) ----

void equal_degree(const UPoly& g, int d, std::mt19937_64& rng, std::vector<UPoly>& out) {
  const int n = degree(g);
  if (n == d) {
    out.push_back(g);
    return;
  }
  const Field k = field_of(g);
  const std::uint64_t p = k.characteristic();
  std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
  mpz_class pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
  for (;;) {
    UPoly a(n);
    for (auto& c : a) c = Scalar(mpq_class(mpz_class(std::to_string(coef(rng)))), k);
    trim(a);
    if (degree(a) < 1) continue;
    UPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      UPoly t = a, cur = a;
      for (int i = 1; i < d; ++i) {
        cur = mulmod(cur, cur, g);
        t = add(t, cur);
      }
      b = t;
    } else {
      b = sub(powmod(a, (pd - 1) / 2, g), constant(Scalar::one(k)));
    }
    UPoly h = gcd(b, g);
    const int dh = degree(h);
    if (dh > 0 && dh < n) {
      UPoly q, r;
      divmod(g, h, q, r);
      equal_degree(h, d, rng, out);
      equal_degree(monic(q), d, rng, out);
      return;
    }
  }
}

std::vector<UPoly> factor_mod_p(const UPoly& f0) {
  const Field k = field_of(f0);
  const std::uint64_t p = k.characteristic();
  std::vector<UPoly> out;
  UPoly f = monic(f0);
  std::mt19937_64 rng(0x5eed + degree(f));
  UPoly x = x_poly(k), h = x;
  mpz_class pz(std::to_string(p));
  for (int d = 1; degree(f) >= 2 * d; ++d) {
    h = powmod(h, pz, f);
    UPoly g = gcd(sub(h, x), f);
    if (degree(g) > 0) {
      equal_degree(g, d, rng, out);
      UPoly q, r;
      divmod(f, g, q, r);
      f = monic(q);
      h = mod(h, f);
    }
  }
  if (degree(f) > 0) out.push_back(f);
  return out;
}

// ---- factorization over QQ ----

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class smod(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Symmetric representative in (-m/2, m/2].
mpz_class symmetric(const mpz_class& a, const mpz_class& m) {
  mpz_class r = smod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = smod(c, m);
  ztrim(r);
  return r;
}

UPoly to_fp(const ZPoly& a, const Field& k) {
  UPoly r;
  for (const auto& c : a) r.push_back(Scalar(mpq_class(c), k));
  trim(r);
  return r;
}

ZPoly from_fp(const UPoly& a) {
  ZPoly r;
  for (const auto& c : a) r.push_back(c.rational().get_num());
  return r;
}

UPoly to_q(const ZPoly& a) {
  UPoly r;
  for (const auto& c : a) r.push_back(Scalar(mpq_class(c), Field::rationals()));
  trim(r);
  return r;
}

/// Lifts f = g h (mod p), g monic, to f = g h (mod p^k).
void hensel_lift(const ZPoly& f, ZPoly& g, ZPoly& h, const mpz_class& p, int k, const Field& fp) {
  UPoly s, t;
  UPoly one = xgcd(to_fp(g, fp), to_fp(h, fp), s, t);
  if (degree(one) != 0) throw Error("hensel_lift: factors are not coprime");
  mpz_class q = p;
  for (int j = 1; j < k; ++j) {
    mpz_class q1 = q * p;
    ZPoly gh = zmul(g, h, q1);
    ZPoly e(std::max(f.size(), gh.size()), 0);
    for (size_t i = 0; i < f.size(); ++i) e[i] += f[i];
    for (size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    for (auto& c : e) {
      c = smod(c, q1);
      c /= q;  // exact: e vanishes mod q
    }
    ztrim(e);
    UPoly c = to_fp(e, fp);
    UPoly tc = mul(t, c), quo, sigma;
    UPoly gp = to_fp(g, fp), hp = to_fp(h, fp);
    divmod(tc, gp, quo, sigma);
    UPoly dh = add(mul(s, c), mul(quo, hp));
    ZPoly dg = from_fp(sigma), dhz = from_fp(dh);
    if (g.size() < dg.size()) g.resize(dg.size(), 0);
    for (size_t i = 0; i < dg.size(); ++i) g[i] = smod(g[i] + q * dg[i], q1);
    if (h.size() < dhz.size()) h.resize(dhz.size(), 0);
    for (size_t i = 0; i < dhz.size(); ++i) h[i] = smod(h[i] + q * dhz[i], q1);
    for (auto& c2 : g) c2 = smod(c2, q1);
    for (auto& c2 : h) c2 = smod(c2, q1);
    ztrim(g);
    ztrim(h);
    q = q1;
  }
}

/// Primitive integer polynomial proportional to p.
ZPoly primitive_integer(const UPoly& p) {
  mpz_class den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  ZPoly z;
  for (const auto& c : p) z.push_back(mpq_class(c.rational() * den).get_num());
  mpz_class g = 0;
  for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 0)
    for (auto& c : z) c /= g;
  if (!z.empty() && z.back() < 0)
    for (auto& c : z) c = -c;
  return z;
}

std::vector<UPoly> factor_rational(const UPoly& f) {
  const int n = degree(f);
  if (n <= 1) return {monic(f)};
  ZPoly F = primitive_integer(f);
  const mpz_class lc = F.back();
  // Choose p not dividing lc with F mod p squarefree of full degree.
  std::uint64_t p = 2;
  Field fp;
  UPoly Fp;
  for (;;) {
    do ++p;
    while (!is_prime(p));
    if (lc % mpz_class(std::to_string(p)) == 0) continue;
    fp = Field::prime(p);
    Fp = to_fp(F, fp);
    if (degree(Fp) == n && is_squarefree(Fp)) break;
  }
  std::vector<UPoly> modp = factor_mod_p(Fp);
  if (modp.size() == 1) return {monic(f)};

  // Coefficient bound for factors, scaled by lc.
  mpz_class maxc = 0;
  for (const auto& c : F) maxc = std::max(maxc, mpz_class(abs(c)));
  mpz_class bound = abs(lc) * maxc * (n + 1);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));
  mpz_class pz(std::to_string(p)), pk = pz;
  int k = 1;
  while (pk <= bound) {
    pk *= pz;
    ++k;
  }

  // Lift all factors: F = lc * g_1 * ... * g_r mod p^k.
  std::vector<ZPoly> lifted;
  ZPoly rest = F;
  for (size_t i = 0; i + 1 < modp.size(); ++i) {
    ZPoly g = from_fp(modp[i]);
    UPoly hp = constant(Scalar(mpq_class(rest.back()), fp));
    for (size_t j = i + 1; j < modp.size(); ++j) hp = mul(hp, modp[j]);
    ZPoly h = from_fp(hp);
    hensel_lift(rest, g, h, pz, k, fp);
    lifted.push_back(g);
    rest = h;
  }
  // The last factor is rest / lc(rest), made monic mod p^k.
  {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mpz_class(smod(rest.back(), pk)).get_mpz_t(), pk.get_mpz_t());
    ZPoly g = rest;
    for (auto& c : g) c = smod(c * inv, pk);
    lifted.push_back(g);
  }

  // Recombination by subsets of increasing size.
  std::vector<UPoly> out;
  std::vector<ZPoly> todo = lifted;
  ZPoly cur = F;
  size_t s = 1;
  while (2 * s <= todo.size()) {
    bool found = false;
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      mpz_class lcc = cur.back();
      ZPoly cand{smod(lcc, pk)};
      for (size_t i : idx) cand = zmul(cand, todo[i], pk);
      for (auto& c : cand) c = symmetric(c, pk);
      ztrim(cand);
      UPoly candq = to_q(cand);
      UPoly q, r;
      divmod(to_q(cur), candq, q, r);
      if (r.empty()) {
        out.push_back(monic(candq));
        cur = primitive_integer(q);
        std::vector<ZPoly> left;
        for (size_t i = 0; i < todo.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) left.push_back(todo[i]);
        todo = left;
        found = true;
        break;
      }
      // Next subset in lex order.
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && idx[i] == todo.size() - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (degree(to_q(cur)) > 0) out.push_back(monic(to_q(cur)));
  return out;
}

}  // namespace

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly add(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Scalar(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), Scalar(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Scalar(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.empty()) throw Error("polynomial division by zero");
  r = a;
  trim(r);
  const int db = degree(b);
  if (degree(r) < db) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, Scalar(0));
  Scalar inv = b.back().inverse();
  for (int i = degree(r); i >= db; --i) {
    if (r[i].is_zero()) continue;
    Scalar c = r[i] * inv;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
  }
  trim(r);
  trim(q);
}

UPoly mod(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return r;
}

UPoly monic(const UPoly& p) {
  if (p.empty()) return p;
  Scalar inv = p.back().inverse();
  UPoly r = p;
  for (auto& c : r) c *= inv;
  return r;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    UPoly r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

UPoly xgcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
  const Field k = field_of(a.empty() ? b : a);
  UPoly r0 = a, r1 = b, s0 = constant(Scalar::one(k)), s1, t0, t1 = constant(Scalar::one(k));
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    UPoly q, r;
    divmod(r0, r1, q, r);
    UPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = s0;
    t = t0;
    return r0;
  }
  Scalar inv = r0.back().inverse();
  for (auto& c : s0) c *= inv;
  for (auto& c : t0) c *= inv;
  s = s0;
  t = t0;
  trim(s);
  trim(t);
  return monic(r0);
}

UPoly derivative(const UPoly& p) {
  UPoly r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Scalar(static_cast<long>(i)));
  trim(r);
  return r;
}

bool is_squarefree(const UPoly& p) { return degree(gcd(p, derivative(p))) == 0; }

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m) { return mod(mul(a, b), m); }

std::vector<UPoly> factor_squarefree(const UPoly& p) {
  UPoly f = p;
  trim(f);
  if (degree(f) < 1) throw Error("factor_squarefree: constant polynomial");
  const Field k = field_of(f);
  if (k.is_extension()) throw Error("factor_squarefree: only QQ and GF(p) are supported");
  if (!is_squarefree(f)) throw Error("factor_squarefree: polynomial is not squarefree");
  std::vector<UPoly> out = k.is_prime() ? factor_mod_p(f) : factor_rational(f);
  std::sort(out.begin(), out.end(), [](const UPoly& a, const UPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i].str() < b[i].str();
    return false;
  });
  return out;
}

bool is_irreducible(const UPoly& p) { return factor_squarefree(p).size() == 1; }

}  // namespace mfg::upoly
