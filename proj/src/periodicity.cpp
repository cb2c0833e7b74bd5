#include "mfg/periodicity.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace mfg {

namespace {

/// Degree pieces R_d = Q_d / f Q_{d - d_f} with standard-monomial representatives.
class Pieces {
 public:
  explicit Pieces(const GradedRing& r) : r_(r) {}

  struct Piece {
    std::vector<Monomial> q;
    std::unordered_map<std::uint64_t, Eigen::Index> index;
    std::optional<QuotientSpace<Scalar>> quot;
    std::vector<Monomial> reps;
    long dim() const { return static_cast<long>(reps.size()); }
  };

  const Piece& at(int d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    Piece p;
    const Field& k = r_.field();
    if (d >= 0) p.q = r_.basis(d);
    for (size_t i = 0; i < p.q.size(); ++i) p.index[p.q[i].bits()] = static_cast<Eigen::Index>(i);
    const Eigen::Index n = static_cast<Eigen::Index>(p.q.size());
    std::vector<Monomial> lower = d - r_.potential_degree() >= 0 ? r_.basis(d - r_.potential_degree())
                                                                 : std::vector<Monomial>{};
    FieldMatrix sub = zero_matrix(n, static_cast<Eigen::Index>(lower.size()), k);
    for (size_t j = 0; j < lower.size(); ++j) {
      Polynomial g = r_.potential() * Polynomial::monomial(r_.nvars(), lower[j], Scalar::one(k));
      for (const auto& [m, c] : g.terms()) sub(p.index.at(m.bits()), static_cast<Eigen::Index>(j)) = c;
    }
    FieldMatrix id = zero_matrix(n, n, k);
    for (Eigen::Index i = 0; i < n; ++i) id(i, i) = Scalar::one(k);
    p.quot.emplace(sub, id);
    for (auto i : p.quot->representatives()) p.reps.push_back(p.q[i]);
    return cache_.emplace(d, std::move(p)).first->second;
  }

  /// R-coordinates of a homogeneous polynomial of degree d.
  FieldVector coords(const Polynomial& poly, int d) {
    const Piece& p = at(d);
    const Field& k = r_.field();
    FieldVector v = zero_vector(static_cast<Eigen::Index>(p.q.size()), k);
    for (const auto& [m, c] : poly.terms()) {
      auto it = p.index.find(m.bits());
      if (it == p.index.end() || r_.degree(Polynomial::monomial(r_.nvars(), m, Scalar::one(k))) != d)
        throw Error("expected a homogeneous polynomial of degree " + std::to_string(d) + ", got " + r_.format(poly));
      v(it->second) = c;
    }
    return *p.quot->coordinates(v);
  }

  Polynomial decode(const FieldVector& v, Eigen::Index offset, int d) {
    const Piece& p = at(d);
    const Field& k = r_.field();
    Polynomial out(Scalar::zero(k), r_.nvars());
    for (size_t i = 0; i < p.reps.size(); ++i) {
      const Scalar& c = v(offset + static_cast<Eigen::Index>(i));
      if (!c.is_zero()) out += Polynomial::monomial(r_.nvars(), p.reps[i], c);
    }
    return out;
  }

  /// Coordinates of a column of the free module sum_i R(-w_i) in degree d.
  FieldVector encode(const PolyMatrix& col, const std::vector<int>& w, int d) {
    std::vector<FieldVector> parts;
    Eigen::Index total = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      parts.push_back(coords(col(static_cast<Eigen::Index>(i), 0), d - w[i]));
      total += parts.back().size();
    }
    FieldVector v(total);
    Eigen::Index off = 0;
    for (const auto& p : parts) {
      if (p.size()) v.segment(off, p.size()) = p;
      off += p.size();
    }
    return v;
  }

  PolyMatrix decode_column(const FieldVector& v, const std::vector<int>& w, int d) {
    PolyMatrix col(static_cast<Eigen::Index>(w.size()), 1);
    Eigen::Index off = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      col(static_cast<Eigen::Index>(i), 0) = decode(v, off, d - w[i]);
      off += at(d - w[i]).dim();
    }
    return col;
  }

  long free_dim(const std::vector<int>& w, int d) {
    long n = 0;
    for (int wi : w) n += at(d - wi).dim();
    return n;
  }

  /// Matrix of phi: sum_j R(-src_j) -> sum_i R(-tgt_i) in degree d.
  FieldMatrix map_matrix(const PolyMatrix& phi, const std::vector<int>& tgt, const std::vector<int>& src, int d) {
    const Field& k = r_.field();
    std::vector<FieldVector> cols;
    for (size_t j = 0; j < src.size(); ++j)
      for (const Monomial& m : at(d - src[j]).reps) {
        Polynomial mono = Polynomial::monomial(r_.nvars(), m, Scalar::one(k));
        PolyMatrix c = phi.col(static_cast<Eigen::Index>(j));
        for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, 0) = c(i, 0) * mono;
        cols.push_back(encode(c, tgt, d));
      }
    FieldMatrix out = zero_matrix(free_dim(tgt, d), static_cast<Eigen::Index>(cols.size()), k);
    for (size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = cols[c];
    return out;
  }

  const GradedRing& ring() const { return r_; }

 private:
  const GradedRing& r_;
  std::map<int, Piece> cache_;
};

struct Generated {
  std::vector<PolyMatrix> gens;  // columns
  std::vector<int> degrees;
  std::vector<long> dims;        // span of the generated submodule per degree
};

/// Minimal generators of the submodule of sum_i R(-w_i) spanned by the
/// candidates, degree by degree: those not in m times the lower part.
Generated generate(Pieces& pc, const std::vector<int>& w, int lo, int hi,
                   const std::function<std::vector<PolyMatrix>(int)>& candidates, std::stop_token stop) {
  const GradedRing& r = pc.ring();
  const Field& k = r.field();
  Generated out;
  std::map<int, std::vector<PolyMatrix>> basis_at;
  for (int d = lo; d <= hi; ++d) {
    if (stop.stop_requested()) throw Cancelled();
    std::vector<PolyMatrix> pool;
    for (int v = 0; v < r.nvars(); ++v) {
      auto it = basis_at.find(d - r.weights()[v]);
      if (it == basis_at.end()) continue;
      for (const auto& col : it->second) {
        PolyMatrix c = col;
        for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, 0) = c(i, 0) * r.variable(v);
        pool.push_back(c);
      }
    }
    const size_t lower = pool.size();
    for (auto& c : candidates(d)) pool.push_back(std::move(c));
    const Eigen::Index dim = pc.free_dim(w, d);
    if (pool.empty() || dim == 0) {
      out.dims.push_back(0);
      continue;
    }
    FieldMatrix m = zero_matrix(dim, static_cast<Eigen::Index>(pool.size()), k);
    for (size_t c = 0; c < pool.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = pc.encode(pool[c], w, d);
    Eliminator<Scalar> elim(m, stop);
    auto& basis = basis_at[d];
    for (auto p : elim.pivot_columns()) {
      basis.push_back(pool[p]);
      if (static_cast<size_t>(p) >= lower) {
        out.gens.push_back(pool[p]);
        out.degrees.push_back(d);
      }
    }
    out.dims.push_back(elim.rank());
  }
  return out;
}

PolyMatrix assemble(const std::vector<PolyMatrix>& cols, Eigen::Index rows) {
  PolyMatrix m = poly_zero(rows, static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j].col(0);
  return m;
}

std::pair<int, int> range(const std::vector<int>& w) {
  return {*std::min_element(w.begin(), w.end()), *std::max_element(w.begin(), w.end())};
}

Json ints(const std::vector<long>& v) {
  Json j = Json::array();
  for (long x : v) j.push_back(x);
  return j;
}

Json ints(const std::vector<int>& v) {
  Json j = Json::array();
  for (int x : v) j.push_back(x);
  return j;
}

}  // namespace

GradedRModule GradedRModule::make(RingPtr ring, std::vector<int> generators, std::vector<int> relations,
                                  PolyMatrix presentation) {
  const GradedRing& r = *ring;
  if (presentation.rows() != static_cast<Eigen::Index>(generators.size()) ||
      presentation.cols() != static_cast<Eigen::Index>(relations.size()))
    throw ValidationError("presentation shape does not match the generator and relation degrees");
  GradedMatrix gm{{relations}, {generators}, 0, presentation};
  if (auto v = gm.degree_violation(r); !v.empty()) throw ValidationError("presentation: " + v);
  GradedRModule m{std::move(ring), std::move(generators), std::move(relations), std::move(presentation), {}};
  if (!m.generators.empty()) {
    auto [lo, hi] = range(m.generators);
    if (!m.relations.empty()) hi = std::max(hi, range(m.relations).second);
    m.hilbert = hilbert_function(m, lo, hi + r.potential_degree());
  }
  return m;
}

GradedRModule GradedRModule::residue_field(RingPtr ring) {
  const GradedRing& r = *ring;
  PolyMatrix p(1, r.nvars());
  for (int i = 0; i < r.nvars(); ++i) p(0, i) = r.variable(i);
  return make(std::move(ring), {0}, r.weights(), p);
}

GradedRModule GradedRModule::free(RingPtr ring, std::vector<int> weights) {
  const Eigen::Index n = static_cast<Eigen::Index>(weights.size());
  return make(std::move(ring), std::move(weights), {}, poly_zero(n, 0));
}

long ring_hilbert(const GradedRing& r, int d) {
  Pieces pc(r);
  return pc.at(d).dim();
}

std::map<int, long> hilbert_function(const GradedRModule& m, int lo, int hi) {
  Pieces pc(*m.ring);
  int start = lo;
  for (int w : m.generators) start = std::min(start, w);
  for (int w : m.relations) start = std::min(start, w);
  Generated g = generate(
      pc, m.generators, start, hi,
      [&](int d) {
        std::vector<PolyMatrix> c;
        for (size_t j = 0; j < m.relations.size(); ++j)
          if (m.relations[j] == d) c.push_back(m.presentation.col(static_cast<Eigen::Index>(j)));
        return c;
      },
      {});
  std::map<int, long> out;
  for (int d = lo; d <= hi; ++d) out[d] = pc.free_dim(m.generators, d) - g.dims[d - start];
  return out;
}

SyzygyStep syzygy_step(const GradedRModule& m, int degree_bound, std::stop_token stop) {
  const GradedRing& r = *m.ring;
  Pieces pc(r);
  SyzygyStep out;
  out.target = m.generators;
  const Eigen::Index rows = static_cast<Eigen::Index>(m.generators.size());
  if (m.relations.empty()) {
    out.connecting = poly_zero(rows, 0);
    out.syzygy = GradedRModule::make(m.ring, {}, {}, poly_zero(0, 0));
    return out;
  }
  if (degree_bound < r.potential_degree())
    throw DegreeBoundError("degree_bound " + std::to_string(degree_bound) + " is below deg f = " +
                           std::to_string(r.potential_degree()) + "; increase degree_bound");
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < m.presentation.cols(); ++j)
      if (m.relations[j] == m.generators[i] && !m.presentation(i, j).is_zero())
        throw ValidationError("presentation is not minimal: unit entry at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");

  // Minimal subset of the given relations.
  auto [rlo, rhi] = range(m.relations);
  Generated rel = generate(
      pc, m.generators, rlo, rhi,
      [&](int d) {
        std::vector<PolyMatrix> c;
        for (size_t j = 0; j < m.relations.size(); ++j)
          if (m.relations[j] == d) c.push_back(m.presentation.col(static_cast<Eigen::Index>(j)));
        return c;
      },
      stop);
  out.connecting = assemble(rel.gens, rows);
  out.source = rel.degrees;

  // Generators of the kernel of the connecting map.
  auto [lo, hi0] = range(out.source);
  const int hi = hi0 + degree_bound;
  out.window_lo = lo;
  out.window_hi = hi;
  Generated ker = generate(
      pc, out.source, lo, hi,
      [&](int d) {
        FieldMatrix mat = pc.map_matrix(out.connecting, out.target, out.source, d);
        std::vector<PolyMatrix> c;
        if (mat.cols() == 0) {
          out.kernel_dims.push_back(0);
          return c;
        }
        FieldMatrix kb = kernel_basis<Scalar>(mat, stop);
        out.kernel_dims.push_back(kb.cols());
        for (Eigen::Index j = 0; j < kb.cols(); ++j) c.push_back(pc.decode_column(kb.col(j), out.source, d));
        return c;
      },
      stop);
  out.generated_dims = ker.dims;
  if (out.generated_dims != out.kernel_dims) throw Error("syzygy_step: kernel not spanned (internal error)");
  for (int d : ker.degrees)
    if (d > hi - r.potential_degree())
      throw DegreeBoundError("syzygy generator found in degree " + std::to_string(d) + " near the top of the window [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]; increase degree_bound");
  out.syzygy = GradedRModule::make(m.ring, out.source, ker.degrees, assemble(ker.gens, static_cast<Eigen::Index>(out.source.size())));
  return out;
}

std::optional<PolyMatrix> complete_factorization(const GradedRing& r, const PolyMatrix& a,
                                                 const std::vector<int>& w0, const std::vector<int>& w1) {
  if (a.rows() == 0 || a.rows() != a.cols()) return std::nullopt;
  const int df = r.potential_degree();
  GradedFreeModule p0{w0}, p1{w1};
  MapCoordinates unknown(p0, p1, df, r), eqs(p0, p0, df, r);
  const Field& k = r.field();
  FieldMatrix sys = zero_matrix(eqs.dimension(), unknown.dimension(), k);
  for (Eigen::Index c = 0; c < unknown.dimension(); ++c) {
    FieldVector col = zero_vector(eqs.dimension(), k);
    eqs.encode(multiply(a, unknown.basis_matrix(c)), col, 0);
    sys.col(c) = col;
  }
  PolyMatrix target = poly_identity(a.rows());
  for (Eigen::Index i = 0; i < target.rows(); ++i) target(i, i) = r.potential();
  FieldVector rhs = zero_vector(eqs.dimension(), k);
  eqs.encode(target, rhs, 0);
  auto sol = solve_linear<Scalar>(sys, rhs);
  if (!sol) return std::nullopt;
  PolyMatrix b = unknown.decode(sol->particular, 0);
  if (multiply(a, b) != target || multiply(b, a) != target) return std::nullopt;
  return b;
}

ResolutionTail resolve_periodic(const GradedRModule& m, int max_steps, int degree_bound, std::stop_token stop) {
  ResolutionTail t;
  t.ring = m.ring;
  if (m.is_free()) return t;
  GradedRModule cur = m;
  for (int s = 1;; ++s) {
    // steps[i] carries d_{i+1} and a module presented by d_{i+2}.
    while (static_cast<int>(t.steps.size()) < s + 1) {
      if (cur.is_free()) throw PeriodicityError("resolution is finite; the module has no periodic tail");
      if (static_cast<int>(t.steps.size()) >= max_steps)
        throw PeriodicityError("no periodicity detected within " + std::to_string(max_steps) + " steps");
      t.steps.push_back(syzygy_step(cur, degree_bound, stop));
      cur = t.steps.back().syzygy;
    }
    const SyzygyStep& st = t.steps[s - 1];
    auto b = complete_factorization(*m.ring, st.connecting, st.target, st.source);
    if (!b) continue;
    t.period_start = s;
    t.a = st.connecting;
    t.b = *b;
    t.exact_repeat = t.steps[s].syzygy.presentation == st.connecting;
    return t;
  }
}

CheckReport check_resolution(const ResolutionTail& t) {
  if (!t.ring) return CheckReport::fail("resolution has no ring");
  const GradedRing& r = *t.ring;
  Pieces pc(r);
  // The matrices d_1 .. d_{N+1} with their weights.
  std::vector<PolyMatrix> d;
  std::vector<std::vector<int>> src, tgt;
  for (const auto& st : t.steps) {
    d.push_back(st.connecting);
    src.push_back(st.source);
    tgt.push_back(st.target);
    if (st.kernel_dims != st.generated_dims)
      return CheckReport::fail("step " + std::to_string(d.size()) + ": kernel and image dimensions differ");
  }
  if (!t.steps.empty()) {
    const auto& last = t.steps.back().syzygy;
    d.push_back(last.presentation);
    src.push_back(last.relations);
    tgt.push_back(last.generators);
  }
  for (size_t i = 0; i + 1 < d.size(); ++i) {
    PolyMatrix prod = multiply(d[i], d[i + 1]);
    for (Eigen::Index a = 0; a < prod.rows(); ++a)
      for (Eigen::Index b = 0; b < prod.cols(); ++b) {
        const FieldVector v = pc.coords(prod(a, b), src[i + 1][b] - tgt[i][a]);
        for (Eigen::Index k = 0; k < v.size(); ++k)
          if (!v(k).is_zero())
            return CheckReport::fail("d_" + std::to_string(i + 1) + " d_" + std::to_string(i + 2) +
                                     " is nonzero over R at entry (" + std::to_string(a) + ", " + std::to_string(b) +
                                     ")");
      }
  }
  if (t.period_start > 0) {
    const int s = t.period_start;
    if (!(t.a == d[s - 1])) return CheckReport::fail("stored lift differs from d_s");
    PolyMatrix fi = poly_identity(t.a.rows());
    for (Eigen::Index i = 0; i < fi.rows(); ++i) fi(i, i) = r.potential();
    if (multiply(t.a, t.b) != fi || multiply(t.b, t.a) != fi) return CheckReport::fail("AB = BA = f I fails");
  }
  return CheckReport::pass();
}

EquivariantMF extract_factorization(const ResolutionTail& t, int step) {
  if (t.period_start == 0) throw PeriodicityError("resolution has no periodic tail");
  const int known = static_cast<int>(t.steps.size()) + 1;
  if (step < t.period_start || step > known)
    throw Error("extract_factorization: step " + std::to_string(step) + " outside the computed tail");
  const bool last = step == known;
  const GradedRModule& top = t.steps.back().syzygy;
  const PolyMatrix& d = last ? top.presentation : t.steps[step - 1].connecting;
  const std::vector<int>& w0 = last ? top.generators : t.steps[step - 1].target;
  const std::vector<int>& w1 = last ? top.relations : t.steps[step - 1].source;
  auto b = complete_factorization(*t.ring, d, w0, w1);
  if (!b) throw PeriodicityError("d_" + std::to_string(step) + " does not lift to a matrix factorization");
  return EquivariantMF::make(GroupAction::trivial(t.ring), w0, w1, d, *b);
}

KStab kstab(const RingPtr& ring, int max_steps, std::optional<int> degree_bound, std::stop_token stop) {
  const int bound = degree_bound.value_or(2 * ring->potential_degree());
  KStab out;
  out.tail = resolve_periodic(GradedRModule::residue_field(ring), max_steps, bound, stop);
  out.mf = extract_factorization(out.tail, out.tail.period_start);
  return out;
}

Json ResolutionTail::to_json() const {
  const GradedRing& r = *ring;
  Json j;
  j["schema"] = "mfg.resolution/1";
  j["ring"] = ring_to_json(r);
  j["period_start"] = period_start;
  j["exact_repeat"] = exact_repeat;
  Json st = Json::array();
  for (size_t i = 0; i < steps.size(); ++i) {
    const SyzygyStep& s = steps[i];
    Json e;
    e["step"] = i + 1;
    e["source"] = ints(s.source);
    e["target"] = ints(s.target);
    e["matrix"] = matrix_to_json(r, s.connecting);
    e["window"] = {s.window_lo, s.window_hi};
    e["kernel_dims"] = ints(s.kernel_dims);
    e["generated_dims"] = ints(s.generated_dims);
    e["hilbert"] = Json::object();
    for (const auto& [d, h] : s.syzygy.hilbert) e["hilbert"][std::to_string(d)] = h;
    st.push_back(e);
  }
  j["steps"] = st;
  if (period_start > 0) j["factorization"] = {{"A", matrix_to_json(r, a)}, {"B", matrix_to_json(r, b)}};
  return j;
}

}  // namespace mfg
