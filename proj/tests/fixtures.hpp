#pragma once

#include <random>

#include "mfg/mf.hpp"

namespace fixtures {

using namespace mfg;

inline RingPtr ring(std::vector<std::string> vars, const std::string& f, Field k = Field::rationals()) {
  std::vector<int> w(vars.size(), 1);
  return std::make_shared<GradedRing>(k, vars, w, f);
}

inline ActionPtr trivial(const RingPtr& r) { return GroupAction::trivial(r); }

/// Z/2 acting by x_i -> -x_i.
inline ActionPtr sign(const RingPtr& r) {
  std::vector<Polynomial> id, neg;
  for (int i = 0; i < r->nvars(); ++i) {
    id.push_back(r->variable(i));
    neg.push_back(-r->variable(i));
  }
  return std::make_shared<GroupAction>(r, FiniteGroup::cyclic(2), std::vector{id, neg});
}

/// Z/2 swapping the two variables.
inline ActionPtr swap(const RingPtr& r) {
  std::vector<Polynomial> id{r->variable(0), r->variable(1)}, sw{r->variable(1), r->variable(0)};
  return std::make_shared<GroupAction>(r, FiniteGroup::cyclic(2), std::vector{id, sw});
}

inline PolyMatrix mat(const GradedRing& r, std::initializer_list<std::initializer_list<const char*>> rows) {
  PolyMatrix m(static_cast<Eigen::Index>(rows.size()),
               rows.size() ? static_cast<Eigen::Index>(rows.begin()->size()) : 0);
  Eigen::Index i = 0;
  for (auto row : rows) {
    Eigen::Index j = 0;
    for (const char* s : row) m(i, j++) = r.parse(s);
    ++i;
  }
  return m;
}

inline PolyMatrix scalar_mat(const GradedRing& r, int c) {
  PolyMatrix m(1, 1);
  m(0, 0) = r.constant(c);
  return m;
}

/// Rank-one object (a, b) with P0 = [0], P1 = [deg a]; every M_g = I.
inline EquivariantMF rank_one(const ActionPtr& act, const char* a, const char* b) {
  const GradedRing& r = act->ring();
  Polynomial pa = r.parse(a);
  return EquivariantMF::make(act, {0}, {r.degree(pa)}, mat(r, {{a}}), mat(r, {{b}}));
}

/// Rank-one object with the Z/2 action M_s = (e0, e1).
inline EquivariantMF rank_one_z2(const ActionPtr& act, const char* a, const char* b, int e0, int e1) {
  const GradedRing& r = act->ring();
  Polynomial pa = r.parse(a);
  return EquivariantMF::make(act, {0}, {r.degree(pa)}, mat(r, {{a}}), mat(r, {{b}}),
                             {scalar_mat(r, 1), scalar_mat(r, e0)}, {scalar_mat(r, 1), scalar_mat(r, e1)});
}

inline bool same_class(const StableHomSpace& s, const MFMorphism& u, const MFMorphism& v) {
  return s.is_null_homotopic(u - v);
}

}  // namespace fixtures
