#pragma once

#include <map>
#include <optional>
#include <stop_token>
#include <vector>

#include "mfg/mf.hpp"
#include "mfg/serialize.hpp"

namespace mfg {

/// The degree window ran out before the generators of a syzygy stabilized.
class DegreeBoundError : public Error {
 public:
  using Error::Error;
};

/// No periodic tail was found within the allowed number of steps.
class PeriodicityError : public Error {
 public:
  using Error::Error;
};

/// Graded module coker(F1 -> F0) over R = Q/(f). Column j of `presentation`
/// is a relation of degree relations[j]; generator i has degree generators[i].
struct GradedRModule {
  RingPtr ring;
  std::vector<int> generators;
  std::vector<int> relations;
  PolyMatrix presentation;
  std::map<int, long> hilbert;  // dim_k M_d on the window used to build it

  /// Validates degrees; throws ValidationError on illegal entries.
  static GradedRModule make(RingPtr ring, std::vector<int> generators, std::vector<int> relations,
                            PolyMatrix presentation);
  /// The residue field k = R / (x_1, ..., x_n).
  static GradedRModule residue_field(RingPtr ring);
  /// The free module sum_i R(-w_i).
  static GradedRModule free(RingPtr ring, std::vector<int> weights);

  bool is_free() const { return relations.empty(); }
};

/// dim_k of the degree-d part of coker(presentation) for lo <= d <= hi.
std::map<int, long> hilbert_function(const GradedRModule& m, int lo, int hi);
/// dim_k of R_d.
long ring_hilbert(const GradedRing& r, int d);

/// The relation module of M: its generators are the (minimal) relations of M
/// and its relations the minimal generators of their syzygies, computed in
/// degrees up to max(relations) + degree_bound. `connecting` is the minimal
/// presentation matrix of M itself.
struct SyzygyStep {
  GradedRModule syzygy;
  PolyMatrix connecting;                // F1 -> F0
  std::vector<int> source, target;      // weights of F1, F0
  int window_lo = 0, window_hi = 0;
  std::vector<long> kernel_dims;        // dim ker(connecting)_d on the window
  std::vector<long> generated_dims;     // dim of the span of the new relations
};
/// Throws DegreeBoundError when degree_bound < d_f or a new generator appears
/// in the top d_f degrees of the window, ValidationError if M's presentation
/// has unit entries.
SyzygyStep syzygy_step(const GradedRModule& m, int degree_bound, std::stop_token stop = {});

/// d_1, d_2, ... of the minimal resolution of M with d_i: F_i -> F_{i-1}.
/// period_start is the first s for which d_s lifts to a matrix factorization
/// (A, B) of f; then d_{s+1} = B mod f, d_{s+2} = A mod f up to basis, and
/// the resolution is 2-periodic from s on.
struct ResolutionTail {
  RingPtr ring;
  std::vector<SyzygyStep> steps;  // steps[i] carries d_{i+1}
  int period_start = 0;           // 0 when M is free (empty tail)
  bool exact_repeat = false;      // d_{s+2} equals d_s entrywise
  PolyMatrix a, b;                // lift at period_start

  const PolyMatrix& d(int i) const { return steps.at(i - 1).connecting; }
  Json to_json() const;
};
/// B with A B = f I when the lift A of d is square and such B exists.
std::optional<PolyMatrix> complete_factorization(const GradedRing& r, const PolyMatrix& a,
                                                 const std::vector<int>& w0, const std::vector<int>& w1);
/// Throws PeriodicityError if no periodic tail appears within max_steps.
ResolutionTail resolve_periodic(const GradedRModule& m, int max_steps, int degree_bound, std::stop_token stop = {});
/// Checks d_i d_{i+1} = 0 over R, the recorded exactness data and the lift.
CheckReport check_resolution(const ResolutionTail& t);

/// Matrix factorization (A, B) extracted at a step between period_start and
/// steps.size() + 1 with P0 = F_{step-1}, P1 = F_step.
EquivariantMF extract_factorization(const ResolutionTail& t, int step);

struct KStab {
  EquivariantMF mf;
  ResolutionTail tail;
};
/// Default degree bound: 2 d_f.
KStab kstab(const RingPtr& ring, int max_steps = 8, std::optional<int> degree_bound = std::nullopt,
            std::stop_token stop = {});

}  // namespace mfg
