#pragma once

#include <json.hpp>

#include "mfg/mf.hpp"

namespace mfg {

using Json = nlohmann::ordered_json;

/// Raised for structurally malformed JSON input.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// "QQ", "GF(p)" or {"base": ..., "generator": "i", "minpoly": "i^2 + 1"}.
Json field_to_json(const Field& k);
Field field_from_json(const Json& j);

/// {"field", "variables", "weights", "f"}.
Json ring_to_json(const GradedRing& r);
RingPtr ring_from_json(const Json& j);

/// {"elements", "table" (labels), "action": {label: {variable: polynomial}}}.
/// A missing or null group means the trivial group.
Json group_to_json(const GroupAction& a);
ActionPtr group_from_json(const Json& j, const RingPtr& ring);

Json matrix_to_json(const GradedRing& r, const PolyMatrix& m);
/// `rows` and `cols` give the expected shape (needed for empty matrices).
PolyMatrix matrix_from_json(const GradedRing& r, const Json& j, Eigen::Index rows, Eigen::Index cols);

/// {"P0", "P1", "A", "B", "action": {label: {"M0", "M1"}}}. The action block
/// may be omitted, meaning every M_g = I. Parsing validates the object.
Json mf_to_json(const EquivariantMF& x);
EquivariantMF mf_from_json(const Json& j, const ActionPtr& action);

Json morphism_to_json(const GradedRing& r, const MFMorphism& u);
MFMorphism morphism_from_json(const GradedRing& r, const Json& j, const EquivariantMF& x,
                              const EquivariantMF& y);
Json homotopy_to_json(const GradedRing& r, const Homotopy& h);
Homotopy homotopy_from_json(const GradedRing& r, const Json& j, const EquivariantMF& x,
                            const EquivariantMF& y);

}  // namespace mfg
