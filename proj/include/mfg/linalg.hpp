#pragma once

#include <Eigen/Core>
#include <optional>
#include <stop_token>
#include <vector>

#include "mfg/field.hpp"

namespace mfg {

/// Thrown when a caller requests cancellation through a stop_token.
class Cancelled : public Error {
 public:
  Cancelled() : Error("computation cancelled") {}
};

inline bool exact_zero(const Scalar& s) { return s.is_zero(); }

template <typename T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using DenseVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

/// Gauss-Jordan elimination of a matrix that remembers its row operations,
/// so further right-hand sides can be pushed through in O(rows * rank).
template <typename T>
class Eliminator {
 public:
  explicit Eliminator(DenseMatrix<T> m, std::stop_token stop = {}) : reduced_(std::move(m)) {
    const Eigen::Index rows = reduced_.rows(), cols = reduced_.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
      if (stop.stop_requested()) throw Cancelled();
      Eigen::Index piv = -1;
      for (Eigen::Index i = r; i < rows; ++i)
        if (!exact_zero(reduced_(i, c))) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      Step step;
      step.swap_with = piv;
      if (piv != r) reduced_.row(piv).swap(reduced_.row(r));
      step.inv = T(1) / reduced_(r, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (!exact_zero(reduced_(r, j))) reduced_(r, j) *= step.inv;
      for (Eigen::Index i = 0; i < rows; ++i) {
        if (i == r || exact_zero(reduced_(i, c))) continue;
        T factor = reduced_(i, c);
        step.eliminate.emplace_back(i, factor);
        for (Eigen::Index j = c; j < cols; ++j)
          if (!exact_zero(reduced_(r, j))) reduced_(i, j) -= factor * reduced_(r, j);
      }
      steps_.push_back(std::move(step));
      pivots_.push_back(c);
      ++r;
    }
  }

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots_.size()); }
  const std::vector<Eigen::Index>& pivot_columns() const { return pivots_; }
  const DenseMatrix<T>& reduced() const { return reduced_; }

  /// Applies the recorded row operations to v.
  DenseVector<T> transform(DenseVector<T> v) const {
    for (size_t k = 0; k < steps_.size(); ++k) {
      const Step& s = steps_[k];
      const Eigen::Index r = static_cast<Eigen::Index>(k);
      if (s.swap_with != r) std::swap(v(s.swap_with), v(r));
      if (exact_zero(v(r))) continue;
      v(r) *= s.inv;
      for (const auto& [i, factor] : s.eliminate) v(i) -= factor * v(r);
    }
    return v;
  }

  /// True when transform(v) lies in the span of the matrix columns.
  bool in_span(const DenseVector<T>& transformed) const {
    for (Eigen::Index i = rank(); i < transformed.size(); ++i)
      if (!exact_zero(transformed(i))) return false;
    return true;
  }

  /// Basis of the null space, one column per free column.
  DenseMatrix<T> kernel() const {
    const Eigen::Index cols = reduced_.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<Eigen::Index> free;
    for (Eigen::Index c = 0; c < cols; ++c)
      if (!is_pivot[c]) free.push_back(c);
    DenseMatrix<T> k = DenseMatrix<T>::Constant(cols, static_cast<Eigen::Index>(free.size()), T(0));
    for (size_t f = 0; f < free.size(); ++f) {
      k(free[f], f) = T(1);
      for (size_t p = 0; p < pivots_.size(); ++p) k(pivots_[p], f) = -reduced_(p, free[f]);
    }
    return k;
  }

 private:
  struct Step {
    Eigen::Index swap_with = 0;
    T inv;
    std::vector<std::pair<Eigen::Index, T>> eliminate;
  };
  DenseMatrix<T> reduced_;
  std::vector<Step> steps_;
  std::vector<Eigen::Index> pivots_;
};

template <typename T>
struct LinearSolution {
  DenseVector<T> particular;
  DenseMatrix<T> kernel;  // columns
};

/// Solves A x = b exactly. Returns nullopt when the system is inconsistent.
template <typename T>
std::optional<LinearSolution<T>> solve_linear(const DenseMatrix<T>& a, const DenseVector<T>& b,
                                              std::stop_token stop = {}) {
  if (a.rows() != b.size()) throw Error("solve_linear: dimension mismatch");
  Eliminator<T> elim(a, stop);
  DenseVector<T> w = elim.transform(b);
  if (!elim.in_span(w)) return std::nullopt;
  LinearSolution<T> sol;
  sol.particular = DenseVector<T>::Constant(a.cols(), T(0));
  const auto& piv = elim.pivot_columns();
  for (size_t i = 0; i < piv.size(); ++i) sol.particular(piv[i]) = w(static_cast<Eigen::Index>(i));
  sol.kernel = elim.kernel();
  return sol;
}

template <typename T>
DenseMatrix<T> kernel_basis(const DenseMatrix<T>& a, std::stop_token stop = {}) {
  return Eliminator<T>(a, stop).kernel();
}

template <typename T>
Eigen::Index matrix_rank(const DenseMatrix<T>& a) {
  return Eliminator<T>(a).rank();
}

/// Quotient of span(ambient) by span(sub), both given as column sets in a
/// common coordinate space. Chooses representative ambient columns for a basis
/// of the quotient and reports class coordinates of arbitrary vectors.
template <typename T>
class QuotientSpace {
 public:
  QuotientSpace(const DenseMatrix<T>& sub, const DenseMatrix<T>& ambient, std::stop_token stop = {})
      : sub_cols_(sub.cols()), elim_(concat(sub, ambient), stop) {
    const auto& piv = elim_.pivot_columns();
    for (size_t i = 0; i < piv.size(); ++i) {
      if (piv[i] < sub_cols_) {
        ++sub_rank_;
      } else {
        reps_.push_back(piv[i] - sub_cols_);
        rep_rows_.push_back(static_cast<Eigen::Index>(i));
      }
    }
  }

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(reps_.size()); }
  Eigen::Index sub_dimension() const { return sub_rank_; }
  /// Indices (into the ambient column set) of the chosen representatives.
  const std::vector<Eigen::Index>& representatives() const { return reps_; }

  /// Class coordinates of v; nullopt when v is not in span(sub, ambient).
  std::optional<DenseVector<T>> coordinates(const DenseVector<T>& v) const {
    DenseVector<T> w = elim_.transform(v);
    if (!elim_.in_span(w)) return std::nullopt;
    DenseVector<T> c(dimension());
    for (Eigen::Index k = 0; k < dimension(); ++k) c(k) = w(rep_rows_[k]);
    return c;
  }

  /// True if v lies in span(sub).
  bool in_sub(const DenseVector<T>& v) const {
    auto c = coordinates(v);
    if (!c) return false;
    for (Eigen::Index k = 0; k < c->size(); ++k)
      if (!exact_zero((*c)(k))) return false;
    return true;
  }

 private:
  static DenseMatrix<T> concat(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() > 0 && b.cols() > 0 && a.rows() != b.rows())
      throw Error("QuotientSpace: dimension mismatch");
    const Eigen::Index rows = a.cols() > 0 ? a.rows() : b.rows();
    DenseMatrix<T> m(rows, a.cols() + b.cols());
    if (a.cols() > 0) m.leftCols(a.cols()) = a;
    if (b.cols() > 0) m.rightCols(b.cols()) = b;
    return m;
  }
  Eigen::Index sub_cols_;
  Eliminator<T> elim_;
  Eigen::Index sub_rank_ = 0;
  std::vector<Eigen::Index> reps_;
  std::vector<Eigen::Index> rep_rows_;
};

}  // namespace mfg
