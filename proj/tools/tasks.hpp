#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "certificate.hpp"

namespace mfg::cli {

inline constexpr const char* kConfigSchema = "mfg.config/1";

/// Exit codes of the command line front end.
enum ExitCode : int { kOk = 0, kComputationFailed = 1, kParseFailed = 2, kValidationFailed = 3 };

/// Malformed config text or structure.
class ConfigParseError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::optional<long> seed;
  std::optional<int> degree_bound, max_steps;
  std::filesystem::path out = "reports";
  bool parallel = false;
};

/// Ring, optional group, named objects and named tasks. Objects are
/// equivariant for the config group unless marked "equivariant": false.
struct ProblemConfig {
  Json raw;
  RingPtr ring;
  ActionPtr action;
  std::vector<std::string> object_names;  // in file order
  std::map<std::string, EquivariantMF> objects;
  Json tasks = Json::object();
  long seed = 0;

  /// Throws ConfigParseError for unreadable or malformed input and
  /// ValidationError when the data parses but violates an invariant.
  static ProblemConfig load(const std::filesystem::path& path);
  static ProblemConfig from_json(const Json& j);

  const EquivariantMF& object(const std::string& name) const;
  /// Task arguments; a name that is not in the tasks block but names an
  /// operation runs that operation with default arguments.
  Json task(const std::string& name) const;
};

/// Operation names accepted in the "op" field of a task.
const std::vector<std::string>& operations();

/// Executes one task and returns its report.
Json run_task(const ProblemConfig& config, const std::string& name, const Options& opts);

/// Report envelope: schema id, task, operation, seed, result and certificate.
Json make_report(const std::string& task, const std::string& op, long seed, Json result, const Certificate& cert);

// Certificate fragments shared by the tasks and the acceptance suite. Objects
// named as endpoints must already be in the certificate unless stated.

/// forward: x -> y and backward: y -> x with exact or homotopy inverse claims.
void certify_isomorphism(Certificate& c, const std::string& prefix, const std::string& x, const std::string& y,
                         const Isomorphism& iso);
/// Adds the summands (prefix + "Y" + i) with projections, inclusions, the
/// decomposition identities, representative isomorphisms and contractions.
/// Returns the summand list for the report.
Json certify_decomposition(Certificate& c, const std::string& context, const std::string& x, const KSDecomposition& d,
                           const std::string& prefix);
/// Morphisms e, pi, iota and the splitting identities (exact when strict).
void certify_split(Certificate& c, const std::string& x, const EquivariantMF& xo, const std::string& y,
                   const MFMorphism& e, const SplitResult& s, bool strict);
/// p: induced -> y, j: y -> induced and p j = id.
void certify_averaging(Certificate& c, const std::string& y, const std::string& induced, const AveragingSplitting& av);
/// Context "base", the coherent data of obj (objects P, P^g, morphisms
/// theta_g), the strict object Z and the comparison claims.
void certify_strictification(Certificate& c, const HomotopyEquivariantObject& obj, const Strictification& s);

/// Command implementations: parse, run, write reports, print a summary.
int run_command(const std::filesystem::path& config, const std::vector<std::string>& tasks, const Options& opts,
                std::ostream& out, std::ostream& err);
int verify_command(const std::filesystem::path& report, std::ostream& out, std::ostream& err);

}  // namespace mfg::cli
