#include "mfg/graded.hpp"

#include <algorithm>
#include <sstream>

namespace mfg {

GradedRing::GradedRing(Field field, std::vector<std::string> variables, std::vector<int> weights,
                       Polynomial potential)
    : field_(std::move(field)),
      variables_(std::move(variables)),
      weights_(std::move(weights)),
      potential_(std::move(potential)) {
  if (variables_.size() != weights_.size()) throw Error("one weight per variable required");
  if (nvars() > kMaxVariables) throw Error("at most 8 variables are supported");
  for (int w : weights_)
    if (w <= 0) throw Error("variable weights must be positive");
  for (size_t i = 0; i < variables_.size(); ++i)
    for (size_t j = i + 1; j < variables_.size(); ++j)
      if (variables_[i] == variables_[j]) throw Error("duplicate variable name " + variables_[i]);
  potential_ = potential_.with_nvars(nvars()).map_coefficients(field_);
  if (potential_.is_zero()) throw Error("potential must be nonzero");
  if (!potential_.is_homogeneous(weights_)) throw Error("potential is not weighted-homogeneous");
  potential_degree_ = potential_.weighted_degree(weights_);
  if (potential_degree_ < 1) throw Error("potential must lie in the irrelevant ideal");
}

GradedRing::GradedRing(Field field, std::vector<std::string> variables, std::vector<int> weights,
                       const std::string& potential)
    : GradedRing(field, variables, weights, parse_polynomial(potential, variables, field)) {}

Polynomial GradedRing::parse(const std::string& text) const {
  return parse_polynomial(text, variables_, field_);
}

std::string GradedRing::format(const Polynomial& p) const {
  return format_polynomial(p, variables_, weights_);
}

GradedRing GradedRing::with_field(const Field& f) const {
  return GradedRing(f, variables_, weights_, potential_.map_coefficients(f));
}

bool operator==(const GradedRing& a, const GradedRing& b) {
  return a.field_ == b.field_ && a.variables_ == b.variables_ && a.weights_ == b.weights_ &&
         a.potential_ == b.potential_;
}

GradedFreeModule GradedFreeModule::twisted(int j) const {
  GradedFreeModule m = *this;
  for (int& w : m.weights) w += j;
  return m;
}

GradedFreeModule direct_sum(const GradedFreeModule& a, const GradedFreeModule& b) {
  GradedFreeModule m = a;
  m.weights.insert(m.weights.end(), b.weights.begin(), b.weights.end());
  return m;
}

std::string GradedMatrix::degree_violation(const GradedRing& ring) const {
  if (entries.rows() != target.rank() || entries.cols() != source.rank()) {
    std::ostringstream os;
    os << "matrix is " << entries.rows() << "x" << entries.cols() << " but modules have ranks "
       << target.rank() << " <- " << source.rank();
    return os.str();
  }
  for (Eigen::Index i = 0; i < entries.rows(); ++i)
    for (Eigen::Index j = 0; j < entries.cols(); ++j) {
      const Polynomial& p = entries(i, j);
      if (p.is_zero()) continue;
      int want = entry_degree(source, target, shift, i, j);
      if (!p.is_homogeneous(ring.weights()) || ring.degree(p) != want) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << ring.format(p) << " should be homogeneous of degree "
           << want;
        return os.str();
      }
    }
  return {};
}

GradedMatrix GradedMatrix::compose(const GradedMatrix& inner) const {
  if (!(inner.target == source)) throw Error("compose: module mismatch");
  return GradedMatrix{inner.source, target, shift + inner.shift, multiply(entries, inner.entries)};
}

MapCoordinates::MapCoordinates(const GradedFreeModule& src, const GradedFreeModule& tgt, int shift,
                               const GradedRing& ring)
    : nvars_(ring.nvars()), field_(ring.field()), rows_(tgt.rank()), cols_(src.rank()) {
  entry_first_.assign(rows_, std::vector<Eigen::Index>(cols_, 0));
  entry_monos_.assign(rows_, std::vector<std::vector<Monomial>>(cols_));
  for (Eigen::Index i = 0; i < rows_; ++i)
    for (Eigen::Index j = 0; j < cols_; ++j) {
      entry_first_[i][j] = static_cast<Eigen::Index>(slots_.size());
      auto monos = ring.basis(entry_degree(src, tgt, shift, i, j));
      for (const auto& m : monos) slots_.push_back({i, j, m});
      std::sort(monos.begin(), monos.end());
      entry_monos_[i][j] = std::move(monos);
    }
}

void MapCoordinates::encode(const PolyMatrix& m, FieldVector& v, Eigen::Index offset) const {
  if (m.rows() != rows_ || m.cols() != cols_) throw Error("MapCoordinates: shape mismatch");
  for (Eigen::Index i = 0; i < rows_; ++i)
    for (Eigen::Index j = 0; j < cols_; ++j) {
      const auto& monos = entry_monos_[i][j];
      for (const auto& [mono, c] : m(i, j).terms()) {
        auto it = std::lower_bound(monos.begin(), monos.end(), mono);
        if (it == monos.end() || *it != mono) throw Error("MapCoordinates: entry has illegal degree");
        // Slots of an entry appear in canonical order; locate by search.
        Eigen::Index base = entry_first_[i][j];
        Eigen::Index k = base;
        while (slots_[k].mono != mono) ++k;
        v(offset + k) = c;
      }
    }
}

PolyMatrix MapCoordinates::decode(const FieldVector& v, Eigen::Index offset) const {
  PolyMatrix m = poly_zero(rows_, cols_);
  for (size_t k = 0; k < slots_.size(); ++k) {
    const Scalar& c = v(offset + static_cast<Eigen::Index>(k));
    if (c.is_zero()) continue;
    const Slot& s = slots_[k];
    m(s.row, s.col) += Polynomial::monomial(nvars_, s.mono, c.coerce(field_));
  }
  return m;
}

PolyMatrix MapCoordinates::basis_matrix(Eigen::Index k) const {
  PolyMatrix m = poly_zero(rows_, cols_);
  const Slot& s = slots_[k];
  m(s.row, s.col) = Polynomial::monomial(nvars_, s.mono, Scalar::one(field_));
  return m;
}

std::vector<GradedMatrix> graded_map_space(const GradedFreeModule& src, const GradedFreeModule& tgt,
                                           int shift, const GradedRing& ring) {
  MapCoordinates coords(src, tgt, shift, ring);
  std::vector<GradedMatrix> out;
  out.reserve(coords.dimension());
  for (Eigen::Index k = 0; k < coords.dimension(); ++k)
    out.push_back(GradedMatrix{src, tgt, shift, coords.basis_matrix(k)});
  return out;
}

FieldVector encode_homogeneous(const Polynomial& p, const std::vector<Monomial>& basis,
                               const Field& f) {
  FieldVector v = zero_vector(static_cast<Eigen::Index>(basis.size()), f);
  for (const auto& [m, c] : p.terms()) {
    auto it = std::find(basis.begin(), basis.end(), m);
    if (it == basis.end()) throw Error("polynomial is not in the given homogeneous piece");
    v(it - basis.begin()) = c;
  }
  return v;
}

SingularityReport is_isolated_singularity(const GradedRing& ring) {
  const Polynomial& f = ring.potential();
  const Field& k = ring.field();
  const int n = ring.nvars();
  if (k.characteristic() != 0) {
    bool all_divisible = true;
    for (const auto& [m, c] : f.terms())
      for (int i = 0; i < n; ++i)
        if (m.exponent(i) % static_cast<long>(k.characteristic()) != 0) all_divisible = false;
    if (all_divisible)
      throw CharacteristicError("characteristic divides every exponent of f; all partial derivatives "
                                "vanish and the Jacobian criterion is unreliable");
  }
  std::vector<Polynomial> gens{f};
  for (int i = 0; i < n; ++i) {
    Polynomial d = f.derivative(i);
    if (!d.is_zero()) gens.push_back(d);
  }
  const int wmax = *std::max_element(ring.weights().begin(), ring.weights().end());
  // Generous window: an m-primary ideal generated in degrees <= d_f has a
  // zero quotient well before n * d_f * wmax.
  const int window = n * ring.potential_degree() * wmax + wmax;
  SingularityReport rep;
  rep.checked_up_to_degree = window;
  long total = 0;
  int zero_run = 0;
  for (int d = 0; d <= window; ++d) {
    auto basis = ring.basis(d);
    const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
    std::vector<FieldVector> span;
    for (const auto& g : gens) {
      int e = d - ring.degree(g);
      if (e < 0) continue;
      for (const auto& m : ring.basis(e))
        span.push_back(encode_homogeneous(Polynomial::monomial(n, m, Scalar::one(k)) * g, basis, k));
    }
    Eigen::Index rank = 0;
    if (!span.empty() && dim > 0) {
      FieldMatrix a(dim, static_cast<Eigen::Index>(span.size()));
      for (size_t c = 0; c < span.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = span[c];
      rank = matrix_rank(a);
    }
    long quotient = dim - rank;
    total += quotient;
    zero_run = quotient == 0 ? zero_run + 1 : 0;
    // wmax consecutive zero degrees force every higher degree to vanish.
    if (zero_run >= wmax) {
      rep.isolated = true;
      rep.dimension = total;
      return rep;
    }
  }
  return rep;
}

}  // namespace mfg
