#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mfg/functors.hpp"
#include "mfg/serialize.hpp"

namespace mfg::cli {

inline constexpr const char* kReportSchema = "mfg.report/1";

/// A composite g1 g2 ... gk of named morphisms, applied right to left.
/// "id:X" names the identity of object X.
using Term = std::vector<std::string>;
/// A sum of composites; the empty sum is the zero map.
using Terms = std::vector<Term>;

/// Self-contained certificate: the rings and groups, the objects and maps a
/// report talks about, and the identities it claims between them. Everything
/// is stored as explicit matrices except pullbacks and action matrices, which
/// the verifier recomputes from the named data.
class Certificate {
 public:
  void add_context(const std::string& name, const ActionPtr& action);

  /// Stored with the context's group when x is equivariant, plain otherwise.
  void add_object(const std::string& name, const std::string& context, const EquivariantMF& x);
  /// P^g for a plain object P.
  void add_pullback_object(const std::string& name, const std::string& of, const std::string& element);
  /// Underlying plain object of an equivariant one.
  void add_forget_object(const std::string& name, const std::string& of);

  void add_morphism(const std::string& name, const std::string& source, const std::string& target,
                    const MFMorphism& u);
  /// sigma_g(u): P^g -> Q^g for u: P -> Q.
  void add_pullback_morphism(const std::string& name, const std::string& of, const std::string& element);
  /// M_g of an equivariant object Z as a map forget(Z)^g -> forget(Z).
  void add_action_morphism(const std::string& name, const std::string& object, const std::string& element);

  /// lhs = rhs exactly. Source and target are only needed when both sides are empty.
  void claim_equal(const std::string& id, Terms lhs, Terms rhs, const std::string& source = "",
                   const std::string& target = "");
  /// lhs - rhs = dH + Hd.
  void claim_homotopic(const std::string& id, Terms lhs, Terms rhs, const Homotopy& h);
  /// id_X = dH + Hd.
  void claim_contractible(const std::string& id, const std::string& object, const Homotopy& h);
  /// target = base change of source along variable images (target context).
  void claim_base_change(const std::string& id, const std::string& source, const std::string& target,
                         const std::vector<std::string>& images);

  bool has_object(const std::string& name) const { return contexts_of_.count(name) > 0; }
  Json to_json() const;

 private:
  const GradedRing& ring_of(const std::string& object) const;

  std::map<std::string, ActionPtr> contexts_;
  std::map<std::string, std::string> contexts_of_;  // object -> context
  Json contexts_json_ = Json::object();
  Json objects_ = Json::object();
  Json morphisms_ = Json::object();
  Json claims_ = Json::array();
  std::map<std::string, std::string> morphism_source_;
};

/// Result of re-checking a report.
struct VerifyOutcome {
  int exit_code = 0;  // 0 all certificates hold, 1 a certificate failed, 2 schema mismatch
  std::vector<std::string> lines;
  std::string first_failure;
};

/// Re-runs only exact-equality and homotopy-witness checks on the certificate
/// of a report; nothing is recomputed by search.
VerifyOutcome verify_report(const Json& report);
VerifyOutcome verify_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& text);
std::string dump(const Json& j);

}  // namespace mfg::cli
