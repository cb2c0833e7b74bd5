#include "tasks.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <functional>
#include <thread>

#include "mfg/periodicity.hpp"

namespace mfg::cli {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string name_arg(const Json& args, const char* key) {
  const Json& v = need(args, key);
  if (!v.is_string()) throw ConfigParseError(std::string("task argument '") + key + "' must be a name");
  return v.get<std::string>();
}

std::vector<std::string> name_list(const Json& args, const char* key) {
  std::vector<std::string> out;
  if (!args.contains(key)) return out;
  const Json& v = args.at(key);
  if (!v.is_array()) throw ConfigParseError(std::string("task argument '") + key + "' must be an array of names");
  for (const Json& s : v) {
    if (!s.is_string()) throw ConfigParseError(std::string("task argument '") + key + "' must be an array of names");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::optional<int> int_arg(const Json& args, const char* key) {
  if (!args.contains(key)) return std::nullopt;
  if (!args.at(key).is_number_integer()) throw ConfigParseError(std::string("task argument '") + key + "' must be an integer");
  return args.at(key).get<int>();
}

std::string idx(const std::string& base, size_t i) { return base + std::to_string(i); }

/// Certificate name of a config object, kept apart from generated names.
std::string cname(const std::string& n) { return "config." + n; }

Json weights_json(const EquivariantMF& x) { return {{"P0", x.p0.weights}, {"P1", x.p1.weights}}; }

/// For each non-contractible class, the named candidates it is isomorphic to
/// in the homotopy category, certified.
/// A config object offered for matching, under its certificate name.
struct Candidate {
  std::string config_name, cert_name;
  const EquivariantMF* object;
};

Json match_classes(Certificate& c, const std::string& context, const KSDecomposition& d, const std::string& prefix,
                   const std::vector<Candidate>& candidates) {
  Json classes = Json::array();
  for (size_t k = 0; k < d.classes.size(); ++k) {
    const KSClass& cl = d.classes[k];
    const std::string rep = idx(prefix + "Y", static_cast<size_t>(cl.representative));
    Json matches = Json::array();
    if (!cl.contractible) {
      for (const auto& [config_name, name, obj] : candidates) {
        if (obj->order() != d.summands[cl.representative].object.order()) continue;
        auto iso = stable_isomorphism(d.summands[cl.representative].object, *obj);
        if (!iso) continue;
        if (!c.has_object(name)) c.add_object(name, context, *obj);
        certify_isomorphism(c, rep + "~" + name, rep, name, *iso);
        matches.push_back(config_name);
      }
    }
    classes.push_back({{"representative", rep},
                       {"multiplicity", cl.multiplicity},
                       {"contractible", cl.contractible},
                       {"isomorphic_to", matches}});
  }
  return classes;
}

std::vector<Candidate> candidates_of(const ProblemConfig& cfg, const std::vector<std::string>& names) {
  std::vector<Candidate> out;
  for (const auto& n : names) out.push_back({n, cname(n), &cfg.object(n)});
  return out;
}

Json decomposition_result(const Json& summands, const Json& classes) {
  Json indecomposables = Json::array();
  for (const Json& cl : classes)
    if (!cl["contractible"].get<bool>()) indecomposables.push_back(cl);
  return {{"summands", summands}, {"classes", classes}, {"indecomposables", indecomposables}};
}

MFMorphism morphism_arg(const ProblemConfig& cfg, const Json& j, const EquivariantMF& x, const EquivariantMF& y) {
  try {
    return morphism_from_json(*cfg.ring, j, x, y);
  } catch (const SchemaError& e) {
    throw ConfigParseError(e.what());
  }
}

// ---- operations ----

struct TaskContext {
  const ProblemConfig& cfg;
  const Json& args;
  const Options& opts;
  Certificate cert;
  Json result = Json::object();
};

void op_validate(TaskContext& t) {
  const ProblemConfig& cfg = t.cfg;
  std::vector<std::string> names = name_list(t.args, "objects");
  if (names.empty()) names = cfg.object_names;
  SingularityReport sing = is_isolated_singularity(*cfg.ring);
  t.result["ring"] = {{"potential_degree", cfg.ring->potential_degree()},
                      {"isolated_singularity", sing.isolated},
                      {"milnor_number", sing.dimension},
                      {"checked_up_to_degree", sing.checked_up_to_degree}};
  t.result["group_order"] = cfg.action->order();
  Json objs = Json::array();
  t.cert.add_context("base", cfg.action);
  for (const auto& n : names) {
    const EquivariantMF& x = cfg.object(n);
    CheckReport r = validate_mf(x);
    if (!r) throw ValidationError("object " + n + ": " + r.message);
    t.cert.add_object(cname(n), "base", x);
    objs.push_back({{"name", n}, {"rank", x.rank()}, {"weights", weights_json(x)}, {"equivariant", x.order() > 1}, {"valid", true}});
  }
  t.result["objects"] = objs;
}

void op_decompose(TaskContext& t) {
  const ProblemConfig& cfg = t.cfg;
  const std::string name = t.args.contains("object") ? name_arg(t.args, "object") : cfg.object_names.at(0);
  const EquivariantMF& x = cfg.object(name);
  t.cert.add_context("base", cfg.action);
  t.cert.add_object(cname(name), "base", x);
  KSDecomposition d = ks_decompose(x);
  if (auto r = check_ks_decomposition(x, d); !r) throw Error("decomposition failed its own check: " + r.message);
  std::vector<std::string> others;
  for (const auto& n : cfg.object_names)
    if (n != name) others.push_back(n);
  if (t.args.contains("compare")) others = name_list(t.args, "compare");
  Json summands = certify_decomposition(t.cert, "base", cname(name), d, "");
  Json classes = match_classes(t.cert, "base", d, "", candidates_of(cfg, others));
  t.result = decomposition_result(summands, classes);
  t.result["object"] = name;
}

void op_split_idempotent(TaskContext& t) {
  const ProblemConfig& cfg = t.cfg;
  const std::string name = name_arg(t.args, "object");
  const EquivariantMF& x = cfg.object(name);
  const std::string mode = t.args.contains("mode") ? t.args.at("mode").get<std::string>() : "homotopy";
  if (mode != "strict" && mode != "homotopy") throw ConfigParseError("mode must be 'strict' or 'homotopy'");
  MFMorphism e = morphism_arg(cfg, need(t.args, "idempotent"), x, x);
  if (auto r = check_morphism(x, x, e); !r) throw ValidationError("idempotent: " + r.message);
  SplitResult s = mode == "strict" ? split_strict_idempotent(x, e) : split_homotopy_idempotent(x, e);
  t.cert.add_context("base", cfg.action);
  t.cert.add_object(cname(name), "base", x);
  t.cert.add_object("Y", "base", s.y);
  certify_split(t.cert, cname(name), x, "Y", e, s, mode == "strict");
  t.result = {{"object", name}, {"mode", mode}, {"image", "Y"}, {"rank", s.y.rank()}, {"weights", weights_json(s.y)}};
}

void op_stable_hom(TaskContext& t) {
  const ProblemConfig& cfg = t.cfg;
  const std::string src = t.args.contains("source") ? name_arg(t.args, "source") : cfg.object_names.at(0);
  const std::string tgt = t.args.contains("target") ? name_arg(t.args, "target") : src;
  const EquivariantMF& x = cfg.object(src);
  const EquivariantMF& y = cfg.object(tgt);
  StableHomSpace s(x, y);
  t.cert.add_context("base", cfg.action);
  t.cert.add_object(cname(src), "base", x);
  if (tgt != src) t.cert.add_object(cname(tgt), "base", y);
  Json reps = Json::array();
  for (size_t i = 0; i < s.representatives().size(); ++i) {
    t.cert.add_morphism(idx("rep", i), cname(src), cname(tgt), s.representatives()[i]);
    reps.push_back(idx("rep", i));
  }
  t.result = {{"source", src},
              {"target", tgt},
              {"dimension", s.dimension()},
              {"cycles_dimension", s.cycles_dimension()},
              {"boundaries_dimension", s.boundaries_dimension()},
              {"representatives", reps}};
}

void op_kstab(TaskContext& t) {
  const ProblemConfig& cfg = t.cfg;
  int max_steps = t.opts.max_steps.value_or(int_arg(t.args, "max_steps").value_or(8));
  std::optional<int> bound = t.opts.degree_bound ? t.opts.degree_bound : int_arg(t.args, "degree_bound");
  KStab k = kstab(cfg.ring, max_steps, bound);
  if (auto r = check_resolution(k.tail); !r) throw Error("resolution failed its own check: " + r.message);
  auto plain = GroupAction::trivial(cfg.ring);
  t.cert.add_context("base", plain);
  t.cert.add_object("K", "base", k.mf);
  t.result = {{"object", "K"},
              {"rank", k.mf.rank()},
              {"weights", weights_json(k.mf)},
              {"A", matrix_to_json(*cfg.ring, k.mf.a)},
              {"B", matrix_to_json(*cfg.ring, k.mf.b)},
              {"period_start", k.tail.period_start},
              {"exact_repeat", k.tail.exact_repeat},
              {"resolution", k.tail.to_json()}};
  if (t.args.contains("expected")) {
    const std::string name = name_arg(t.args, "expected");
    EquivariantMF expected = forget(cfg.object(name));
    auto iso = stable_isomorphism(k.mf, expected);
    t.result["expected"] = name;
    t.result["isomorphic_to_expected"] = iso.has_value();
    if (!iso) throw Error("k^stab is not isomorphic to " + name);
    t.cert.add_object(cname(name), "base", expected);
    certify_isomorphism(t.cert, "K~" + name, "K", cname(name), *iso);
  }
}

void op_induce(TaskContext& t) {
  const ProblemConfig& cfg = t.cfg;
  const std::string name = t.args.contains("object") ? name_arg(t.args, "object") : cfg.object_names.at(0);
  const EquivariantMF& y = cfg.object(name);
  AveragingSplitting av = averaging_splitting(y);
  if (!av.ok()) throw Error("averaging splitting failed: " + av.linear.message + av.chain_map.message + av.section.message);
  t.cert.add_context("base", cfg.action);
  t.cert.add_object(cname(name), "base", y);
  t.cert.add_object("I", "base", av.induced);
  certify_averaging(t.cert, cname(name), "I", av);
  KSDecomposition d = ks_decompose(av.induced);
  std::vector<std::string> names = t.args.contains("compare") ? name_list(t.args, "compare") : cfg.object_names;
  std::erase_if(names, [&](const std::string& n) { return cfg.object(n).order() != y.order(); });
  Json summands = certify_decomposition(t.cert, "base", "I", d, "I.");
  Json classes = match_classes(t.cert, "base", d, "I.", candidates_of(cfg, names));
  t.result = {{"object", name},
              {"induced", "I"},
              {"rank", av.induced.rank()},
              {"averaging", {{"linear", av.linear.ok}, {"chain_map", av.chain_map.ok}, {"section", av.section.ok}}},
              {"decomposition", decomposition_result(summands, classes)}};
}

void op_strictify(TaskContext& t) {
  const ProblemConfig& cfg = t.cfg;
  const FiniteGroup& grp = cfg.action->group();
  const std::string name = name_arg(t.args, "object");
  const EquivariantMF p = forget(cfg.object(name));
  const Json& tj = need(t.args, "theta");
  std::vector<MFMorphism> theta;
  for (int g = 0; g < grp.order(); ++g) {
    EquivariantMF pg = pullback(p, *cfg.action, g);
    if (!tj.contains(grp.label(g))) {
      if (g != grp.identity()) throw ConfigParseError("theta missing for element '" + grp.label(g) + "'");
      theta.push_back(identity_morphism(p));
      continue;
    }
    theta.push_back(morphism_arg(cfg, tj.at(grp.label(g)), pg, p));
  }
  HomotopyEquivariantObject obj = HomotopyEquivariantObject::make(cfg.action, p, theta);
  Strictification s = strictify(obj);
  if (auto r = check_strictification(obj, s); !r) throw Error("strictification failed its own check: " + r.message);

  Certificate& c = t.cert;
  certify_strictification(c, obj, s);

  Json compare = Json::array();
  for (const auto& n : name_list(t.args, "compare")) {
    const EquivariantMF& y = cfg.object(n);
    auto iso = stable_isomorphism(s.z, y);
    if (iso) {
      c.add_object(cname(n), "base", y);
      certify_isomorphism(c, "Z~" + n, "Z", cname(n), *iso);
    }
    compare.push_back({{"object", n}, {"isomorphic", iso.has_value()}});
  }
  t.result = {{"object", name}, {"strictification", "Z"}, {"rank", s.z.rank()}, {"weights", weights_json(s.z)},
              {"compare", compare}};
}

void op_base_change(TaskContext& t) {
  const ProblemConfig& cfg = t.cfg;
  const std::string name = t.args.contains("object") ? name_arg(t.args, "object") : cfg.object_names.at(0);
  const EquivariantMF& x = cfg.object(name);
  std::optional<RingHom> phi;
  if (t.args.contains("extension")) {
    std::optional<Field> k;
    try {
      k = field_from_json(t.args.at("extension"));
    } catch (const SchemaError& e) {
      throw ConfigParseError(e.what());
    }
    phi.emplace(RingHom::field_extension(cfg.action, *k));
  } else {
    const Json& target = need(t.args, "target");
    RingPtr r;
    ActionPtr act;
    std::vector<Polynomial> images;
    try {
      r = ring_from_json(need(target, "ring"));
      act = group_from_json(target.contains("group") ? target.at("group") : Json(), r);
      for (const Json& s : need(target, "images")) images.push_back(r->parse(s.get<std::string>()));
    } catch (const SchemaError& e) {
      throw ConfigParseError(e.what());
    }
    if (cfg.action->is_trivial() && !target.contains("group")) act = GroupAction::trivial(r);
    phi.emplace(cfg.action, act, images);
  }
  const GradedRing& tr = phi->target()->ring();
  EquivariantMF bx = base_change(*phi, x);
  EndHomologyComparison cmp = compare_end_homology(*phi, x);
  t.cert.add_context("source", phi->source());
  t.cert.add_context("target", phi->target());
  t.cert.add_object(cname(name), "source", x);
  t.cert.add_object("image", "target", bx);
  std::vector<std::string> images;
  for (const auto& p : phi->images()) images.push_back(tr.format(p));
  t.cert.claim_base_change("base_change", cname(name), "image", images);
  const char* kinds[] = {"identity", "field_extension", "substitution"};
  t.result = {{"object", name},
              {"image", "image"},
              {"kind", kinds[static_cast<int>(phi->kind())]},
              {"images", images},
              {"end_homology", cmp.to_json()}};
}

using Operation = std::function<void(TaskContext&)>;

const std::map<std::string, Operation>& operation_table() {
  static const std::map<std::string, Operation> table = {
      {"validate", op_validate},   {"decompose", op_decompose}, {"split-idempotent", op_split_idempotent},
      {"stable-hom", op_stable_hom}, {"kstab", op_kstab},       {"induce", op_induce},
      {"strictify", op_strictify}, {"base-change", op_base_change}};
  return table;
}

void check_references(const ProblemConfig& cfg) {
  for (const auto& [tname, args] : cfg.tasks.items()) {
    if (!args.is_object()) throw ConfigParseError("task '" + tname + "' must be an object");
    const std::string op = args.contains("op") ? args.at("op").get<std::string>() : tname;
    if (!operation_table().count(op)) throw ConfigParseError("task '" + tname + "': unknown operation '" + op + "'");
    for (const char* key : {"object", "source", "target", "expected"})
      if (args.contains(key) && args.at(key).is_string()) cfg.object(args.at(key).get<std::string>());
    for (const char* key : {"compare", "objects"})
      for (const auto& n : name_list(args, key)) cfg.object(n);
  }
}

}  // namespace

Json make_report(const std::string& task, const std::string& op, long seed, Json result, const Certificate& cert) {
  Json report;
  report["schema"] = kReportSchema;
  report["task"] = task;
  report["op"] = op;
  report["seed"] = seed;
  report["result"] = std::move(result);
  report["certificate"] = cert.to_json();
  return report;
}

/// forward: x -> y and backward: y -> x, mutually inverse exactly or up to the stored witnesses.
void certify_isomorphism(Certificate& c, const std::string& prefix, const std::string& x, const std::string& y,
                         const Isomorphism& iso) {
  const std::string f = prefix + ".forward", b = prefix + ".backward";
  c.add_morphism(f, x, y, iso.forward);
  c.add_morphism(b, y, x, iso.backward);
  if (iso.backward_forward) c.claim_homotopic(prefix + ".backward_forward", {{b, f}}, {{"id:" + x}}, *iso.backward_forward);
  else c.claim_equal(prefix + ".backward_forward", {{b, f}}, {{"id:" + x}});
  if (iso.forward_backward) c.claim_homotopic(prefix + ".forward_backward", {{f, b}}, {{"id:" + y}}, *iso.forward_backward);
  else c.claim_equal(prefix + ".forward_backward", {{f, b}}, {{"id:" + y}});
}

/// Summands, projections and inclusions with the decomposition identities,
/// representative isomorphisms and contractions.
Json certify_decomposition(Certificate& c, const std::string& context, const std::string& x, const KSDecomposition& d,
                           const std::string& prefix) {
  const size_t n = d.summands.size();
  Terms total;
  Json summands = Json::array();
  for (size_t i = 0; i < n; ++i) {
    const KSSummand& s = d.summands[i];
    const std::string y = idx(prefix + "Y", i), pi = idx(prefix + "pi", i), iota = idx(prefix + "iota", i);
    c.add_object(y, context, s.object);
    c.add_morphism(pi, x, y, s.projection);
    c.add_morphism(iota, y, x, s.inclusion);
    total.push_back({iota, pi});
    if (s.contractible) {
      auto h = contraction(s.object);
      if (!h) throw Error("summand flagged contractible has no contraction");
      c.claim_contractible(y + ".contractible", y, *h);
    }
    summands.push_back({{"object", y},
                        {"rank", s.object.rank()},
                        {"weights", weights_json(s.object)},
                        {"contractible", s.contractible},
                        {"class", s.class_index}});
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const std::string id = prefix + "pi" + std::to_string(i) + "_iota" + std::to_string(j);
      if (i == j) c.claim_equal(id, {{idx(prefix + "pi", i), idx(prefix + "iota", j)}}, {{"id:" + idx(prefix + "Y", i)}});
      else c.claim_equal(id, {{idx(prefix + "pi", i), idx(prefix + "iota", j)}}, {}, idx(prefix + "Y", j), idx(prefix + "Y", i));
    }
  c.claim_equal(prefix + "sum_iota_pi", total, {{"id:" + x}}, x, x);
  for (size_t i = 0; i < n; ++i) {
    const KSSummand& s = d.summands[i];
    const size_t rep = static_cast<size_t>(d.classes.at(s.class_index).representative);
    if (rep == i) continue;
    const std::string y = idx(prefix + "Y", i), r = idx(prefix + "Y", rep);
    c.add_morphism(y + ".to_rep", y, r, s.to_representative);
    c.add_morphism(y + ".from_rep", r, y, s.from_representative);
    c.claim_equal(y + ".rep_inverse_left", {{y + ".from_rep", y + ".to_rep"}}, {{"id:" + y}});
    c.claim_equal(y + ".rep_inverse_right", {{y + ".to_rep", y + ".from_rep"}}, {{"id:" + r}});
  }
  return summands;
}

void certify_split(Certificate& c, const std::string& x, const EquivariantMF& xo, const std::string& y,
                   const MFMorphism& e, const SplitResult& s, bool strict) {
  c.add_morphism("e", x, x, e);
  c.add_morphism("pi", x, y, s.pi);
  c.add_morphism("iota", y, x, s.iota);
  if (strict) {
    c.claim_equal("e_idempotent", {{"e", "e"}}, {{"e"}});
    c.claim_equal("pi_iota", {{"pi", "iota"}}, {{"id:" + y}});
    c.claim_equal("iota_pi", {{"iota", "pi"}}, {{"e"}});
    return;
  }
  if (!s.section_witness || !s.idempotent_witness) throw Error("homotopy splitting carries no witnesses");
  auto w = homotopy_witness(xo, xo, compose(e, e), e);
  if (!w) throw ValidationError("e e is not homotopic to e");
  c.claim_homotopic("e_idempotent", {{"e", "e"}}, {{"e"}}, *w);
  c.claim_homotopic("pi_iota", {{"pi", "iota"}}, {{"id:" + y}}, *s.section_witness);
  c.claim_homotopic("iota_pi", {{"iota", "pi"}}, {{"e"}}, *s.idempotent_witness);
}

void certify_averaging(Certificate& c, const std::string& y, const std::string& induced, const AveragingSplitting& av) {
  c.add_morphism("p", induced, y, av.p);
  c.add_morphism("j", y, induced, av.j);
  c.claim_equal("p_j", {{"p", "j"}}, {{"id:" + y}});
}

void certify_strictification(Certificate& c, const HomotopyEquivariantObject& obj, const Strictification& s) {
  const FiniteGroup& grp = obj.action->group();
  const std::vector<MFMorphism>& theta = obj.theta;
  c.add_context("base", obj.action);
  c.add_object("P", "base", obj.p);
  c.add_object("Z", "base", s.z);
  c.add_forget_object("Zf", "Z");
  for (int g = 0; g < grp.order(); ++g) {
    const std::string l = grp.label(g);
    c.add_pullback_object("P^" + l, "P", l);
    c.add_pullback_object("Zf^" + l, "Zf", l);
    c.add_morphism("theta_" + l, "P^" + l, "P", theta[g]);
    c.add_action_morphism("M_" + l, "Z", l);
  }
  c.add_morphism("forward", "Zf", "P", s.comparison.forward);
  c.add_morphism("backward", "P", "Zf", s.comparison.backward);
  c.claim_homotopic("theta_unit", {{"theta_" + grp.label(grp.identity())}}, {{"id:P"}}, obj.unit_witness);
  for (int g = 0; g < grp.order(); ++g)
    for (int h = 0; h < grp.order(); ++h) {
      const std::string lg = grp.label(g), lh = grp.label(h), lgh = grp.label(grp.multiply(g, h));
      const std::string pb = "sigma_" + lg + "(theta_" + lh + ")";
      c.add_pullback_morphism(pb, "theta_" + lh, lg);
      c.claim_homotopic("theta_cocycle_" + lg + "_" + lh, {{"theta_" + lg, pb}}, {{"theta_" + lgh}},
                        obj.cocycle_witness[g][h]);
    }
  c.claim_homotopic("backward_forward", {{"backward", "forward"}}, {{"id:Zf"}}, s.comparison.backward_forward);
  c.claim_homotopic("forward_backward", {{"forward", "backward"}}, {{"id:P"}}, s.comparison.forward_backward);
  for (int g = 0; g < grp.order(); ++g) {
    const std::string l = grp.label(g);
    c.add_pullback_morphism("sigma_" + l + "(forward)", "forward", l);
    c.claim_homotopic("compatibility_" + l, {{"forward", "M_" + l}}, {{"theta_" + l, "sigma_" + l + "(forward)"}},
                      s.comparison.compatibility[g]);
  }
}

const std::vector<std::string>& operations() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : operation_table()) n.push_back(k);
    return n;
  }();
  return names;
}

ProblemConfig ProblemConfig::from_json(const Json& j) {
  ProblemConfig c;
  c.raw = j;
  try {
    if (!j.is_object()) throw ConfigParseError("config must be a JSON object");
    if (j.contains("schema") && j.at("schema") != kConfigSchema)
      throw ConfigParseError(std::string("expected schema '") + kConfigSchema + "'");
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_integer()) throw ConfigParseError("seed must be an integer");
      c.seed = j.at("seed").get<long>();
    }
    c.ring = ring_from_json(need(j, "ring"));
    c.action = group_from_json(j.contains("group") ? j.at("group") : Json(), c.ring);
    auto plain = GroupAction::trivial(c.ring);
    if (j.contains("objects")) {
      if (!j.at("objects").is_object()) throw ConfigParseError("objects must be an object of named factorizations");
      for (const auto& [name, o] : j.at("objects").items()) {
        const bool equivariant = !o.contains("equivariant") || o.at("equivariant").get<bool>();
        try {
          c.objects.emplace(name, mf_from_json(o, equivariant ? c.action : plain));
        } catch (const ValidationError& e) {
          throw ValidationError("object " + name + ": " + e.what());
        }
        c.object_names.push_back(name);
      }
    }
    if (j.contains("tasks")) c.tasks = j.at("tasks");
    check_references(c);
  } catch (const SchemaError& e) {
    throw ConfigParseError(e.what());
  } catch (const ParseError& e) {
    throw ConfigParseError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParseError(e.what());
  } catch (const ConfigParseError&) {
    throw;
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    // Rings and groups that parse but violate their axioms.
    throw ValidationError(e.what());
  }
  return c;
}

ProblemConfig ProblemConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigParseError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

const EquivariantMF& ProblemConfig::object(const std::string& name) const {
  auto it = objects.find(name);
  if (it == objects.end()) throw ValidationError("unknown object '" + name + "'");
  return it->second;
}

Json ProblemConfig::task(const std::string& name) const {
  if (tasks.contains(name)) return tasks.at(name);
  if (operation_table().count(name)) return Json::object();
  throw ValidationError("unknown task '" + name + "'");
}

Json run_task(const ProblemConfig& config, const std::string& name, const Options& opts) {
  Json args = config.task(name);
  const std::string op = args.contains("op") ? args.at("op").get<std::string>() : name;
  auto it = operation_table().find(op);
  if (it == operation_table().end()) throw ConfigParseError("unknown operation '" + op + "'");
  TaskContext t{config, args, opts, {}, Json::object()};
  try {
    it->second(t);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParseError(e.what());
  }
  return make_report(name, op, opts.seed.value_or(config.seed), t.result, t.cert);
}

namespace {

int exit_code_of(const std::exception_ptr& e, std::string& message) {
  try {
    std::rethrow_exception(e);
  } catch (const ConfigParseError& x) {
    message = x.what();
    return kParseFailed;
  } catch (const SchemaError& x) {
    message = x.what();
    return kParseFailed;
  } catch (const ParseError& x) {
    message = x.what();
    return kParseFailed;
  } catch (const ValidationError& x) {
    message = x.what();
    return kValidationFailed;
  } catch (const std::exception& x) {
    message = x.what();
    return kComputationFailed;
  }
}

}  // namespace

int run_command(const std::filesystem::path& config, const std::vector<std::string>& tasks, const Options& opts,
                std::ostream& out, std::ostream& err) {
  ProblemConfig cfg;
  try {
    cfg = ProblemConfig::load(config);
    for (const auto& t : tasks) cfg.task(t);
  } catch (...) {
    std::string msg;
    int code = exit_code_of(std::current_exception(), msg);
    err << "error: " << msg << "\n";
    return code;
  }

  std::vector<Json> reports(tasks.size());
  std::vector<std::exception_ptr> failures(tasks.size());
  auto work = [&](size_t i) {
    try {
      reports[i] = run_task(cfg, tasks[i], opts);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  if (opts.parallel) {
    std::vector<std::jthread> pool;
    for (size_t i = 0; i < tasks.size(); ++i) pool.emplace_back(work, i);
  } else {
    for (size_t i = 0; i < tasks.size(); ++i) work(i);
  }

  int code = kOk;
  for (size_t i = 0; i < tasks.size(); ++i) {
    if (failures[i]) {
      std::string msg;
      int c = exit_code_of(failures[i], msg);
      err << tasks[i] << ": error: " << msg << "\n";
      if (code == kOk) code = c;
      continue;
    }
    const std::filesystem::path path = opts.out / (tasks[i] + ".json");
    write_atomic(path, dump(reports[i]));
    out << tasks[i] << ": " << reports[i]["op"].get<std::string>() << " ok, "
        << reports[i]["certificate"]["claims"].size() << " claims -> " << path.string() << "\n";
  }
  return code;
}

int verify_command(const std::filesystem::path& report, std::ostream& out, std::ostream& err) {
  VerifyOutcome v = verify_file(report);
  for (const auto& l : v.lines) (v.exit_code == 2 ? err : out) << l << "\n";
  if (v.exit_code == 1) err << "first violated identity: " << v.first_failure << "\n";
  return v.exit_code;
}

}  // namespace mfg::cli
