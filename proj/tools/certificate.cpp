#include "certificate.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace mfg::cli {

namespace {

Json terms_json(const Terms& t) {
  Json out = Json::array();
  for (const Term& term : t) out.push_back(Json(term));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

/// Failure of a certificate identity (as opposed to a malformed report).
struct Violation {
  std::string message;
};

std::string first_difference(const PolyMatrix& a, const PolyMatrix& b, const char* name) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::string(name) + " shapes differ";
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j))
        return std::string(name) + " differs at (" + std::to_string(i) + "," + std::to_string(j) + ")";
  return {};
}

class Verifier {
 public:
  explicit Verifier(const Json& cert) {
    for (const auto& [name, c] : field(cert, "contexts").items()) {
      RingPtr r = ring_from_json(field(c, "ring"));
      Context ctx;
      ctx.action = group_from_json(c.contains("group") ? c.at("group") : Json(), r);
      ctx.plain = GroupAction::trivial(r);
      contexts_.emplace(name, std::move(ctx));
    }
    for (const auto& [name, o] : field(cert, "objects").items()) load_object(name, o);
    for (const auto& [name, m] : field(cert, "morphisms").items()) load_morphism(name, m);
  }

  /// Each claim yields nullopt on success or the violated identity.
  std::optional<std::string> check(const Json& claim) const {
    const std::string kind = text(claim, "kind");
    try {
      if (kind == "equal") {
        Map lhs = evaluate(field(claim, "lhs"), claim), rhs = evaluate(field(claim, "rhs"), claim);
        same_endpoints(lhs, rhs);
        std::string d = first_difference(lhs.u.u0, rhs.u.u0, "U0");
        if (d.empty()) d = first_difference(lhs.u.u1, rhs.u.u1, "U1");
        if (!d.empty()) return "lhs != rhs: " + d;
        return std::nullopt;
      }
      if (kind == "homotopic") {
        Map lhs = evaluate(field(claim, "lhs"), claim), rhs = evaluate(field(claim, "rhs"), claim);
        same_endpoints(lhs, rhs);
        Homotopy h = homotopy_from_json(lhs.source.ring(), field(claim, "witness"), lhs.source, lhs.target);
        if (auto r = check_homotopy(lhs.source, lhs.target, lhs.u, rhs.u, h); !r) return r.message;
        return std::nullopt;
      }
      if (kind == "contractible") {
        const EquivariantMF& x = object(text(claim, "object")).x;
        Homotopy h = homotopy_from_json(x.ring(), field(claim, "witness"), x, x);
        if (auto r = check_homotopy(x, x, identity_morphism(x), zero_morphism(x, x), h); !r) return r.message;
        return std::nullopt;
      }
      if (kind == "base_change") {
        const Object& src = object(text(claim, "source"));
        const Object& tgt = object(text(claim, "target"));
        const Context& tc = contexts_.at(tgt.context);
        std::vector<Polynomial> images;
        for (const Json& s : field(claim, "images")) images.push_back(tc.action->ring().parse(s.get<std::string>()));
        RingHom phi(contexts_.at(src.context).action, tc.action, images);
        if (!(base_change(phi, src.x) == tgt.x)) return "target is not the base change of the source";
        return std::nullopt;
      }
    } catch (const Violation& v) {
      return v.message;
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      return std::string(e.what());
    }
    throw SchemaError("unknown claim kind '" + kind + "'");
  }

 private:
  struct Context {
    ActionPtr action, plain;
  };
  struct Object {
    EquivariantMF x;
    std::string context;
  };
  struct Map {
    EquivariantMF source, target;
    MFMorphism u;
    std::string context;
  };

  const Object& object(const std::string& name) const {
    auto it = objects_.find(name);
    if (it == objects_.end()) throw SchemaError("unknown object '" + name + "'");
    return it->second;
  }
  const Map& morphism(const std::string& name) const {
    auto it = morphisms_.find(name);
    if (it == morphisms_.end()) throw SchemaError("unknown morphism '" + name + "'");
    return it->second;
  }
  const Context& context(const std::string& name) const {
    auto it = contexts_.find(name);
    if (it == contexts_.end()) throw SchemaError("unknown context '" + name + "'");
    return it->second;
  }

  void load_object(const std::string& name, const Json& o) {
    Object obj;
    try {
      if (o.contains("pullback")) {
        const Json& pb = o.at("pullback");
        const Object& of = object(text(pb, "of"));
        const GroupAction& act = *context(of.context).action;
        obj = {pullback(of.x, act, act.group().index(text(pb, "element"))), of.context};
      } else if (o.contains("forget")) {
        const Object& of = object(o.at("forget").get<std::string>());
        obj = {forget(of.x), of.context};
      } else {
        const std::string ctx = text(o, "context");
        const Context& c = context(ctx);
        const bool equivariant = o.contains("equivariant") && o.at("equivariant").get<bool>();
        obj = {mf_from_json(field(o, "mf"), equivariant ? c.action : c.plain), ctx};
      }
    } catch (const ValidationError& e) {
      throw Violation{"object " + name + ": " + e.what()};
    }
    objects_.emplace(name, std::move(obj));
  }

  void load_morphism(const std::string& name, const Json& m) {
    Map map;
    if (m.contains("pullback")) {
      const Json& pb = m.at("pullback");
      const Map& of = morphism(text(pb, "of"));
      const GroupAction& act = *context(of.context).action;
      const int g = act.group().index(text(pb, "element"));
      map = {pullback(of.source, act, g), pullback(of.target, act, g), pullback(of.u, act, g), of.context};
    } else if (m.contains("action")) {
      const Json& a = m.at("action");
      const Object& z = object(text(a, "object"));
      const GroupAction& act = *context(z.context).action;
      const int g = act.group().index(text(a, "element"));
      if (z.x.order() != act.order()) throw SchemaError("action of a plain object in morphism '" + name + "'");
      EquivariantMF plain = forget(z.x);
      map = {pullback(plain, act, g), plain, {z.x.m0[g], z.x.m1[g]}, z.context};
    } else {
      const Object& s = object(text(m, "source"));
      const Object& t = object(text(m, "target"));
      map = {s.x, t.x, morphism_from_json(s.x.ring(), m, s.x, t.x), s.context};
    }
    if (auto r = check_morphism(map.source, map.target, map.u); !r)
      throw Violation{"morphism " + name + ": " + r.message};
    morphisms_.emplace(name, std::move(map));
  }

  Map evaluate_term(const Json& term) const {
    if (!term.is_array() || term.empty()) throw SchemaError("a composite must be a non-empty array of names");
    std::optional<Map> acc;
    for (auto it = term.rbegin(); it != term.rend(); ++it) {
      const std::string name = it->get<std::string>();
      Map step;
      if (name.rfind("id:", 0) == 0) {
        const Object& o = object(name.substr(3));
        step = {o.x, o.x, identity_morphism(o.x), o.context};
      } else {
        step = morphism(name);
      }
      if (!acc) {
        acc = std::move(step);
        continue;
      }
      if (!(acc->target == step.source)) throw Violation{"composite " + term.dump() + " does not compose at " + name};
      acc = Map{acc->source, step.target, compose(step.u, acc->u), acc->context};
    }
    return *acc;
  }

  Map evaluate(const Json& terms, const Json& claim) const {
    if (!terms.is_array()) throw SchemaError("claim sides must be arrays of composites");
    std::optional<Map> sum;
    for (const Json& t : terms) {
      Map m = evaluate_term(t);
      if (!sum) {
        sum = std::move(m);
        continue;
      }
      same_endpoints(*sum, m);
      sum->u = sum->u + m.u;
    }
    if (sum) return *sum;
    if (!claim.contains("source") || !claim.contains("target")) return {};
    const Object& s = object(text(claim, "source"));
    const Object& t = object(text(claim, "target"));
    return {s.x, t.x, zero_morphism(s.x, t.x), s.context};
  }

  static void same_endpoints(Map& a, Map& b) {
    // An empty side without explicit endpoints is the zero map between the other side's objects.
    if (a.source.action == nullptr) a = {b.source, b.target, zero_morphism(b.source, b.target), b.context};
    if (b.source.action == nullptr) b = {a.source, a.target, zero_morphism(a.source, a.target), a.context};
    if (!(a.source == b.source) || !(a.target == b.target)) throw Violation{"the two sides have different endpoints"};
  }

  std::map<std::string, Context> contexts_;
  std::map<std::string, Object> objects_;
  std::map<std::string, Map> morphisms_;
};

}  // namespace

void Certificate::add_context(const std::string& name, const ActionPtr& action) {
  contexts_[name] = action;
  Json c;
  c["ring"] = ring_to_json(action->ring());
  if (!action->is_trivial()) c["group"] = group_to_json(*action);
  contexts_json_[name] = c;
}

const GradedRing& Certificate::ring_of(const std::string& object) const {
  return contexts_.at(contexts_of_.at(object))->ring();
}

void Certificate::add_object(const std::string& name, const std::string& context, const EquivariantMF& x) {
  Json o;
  o["context"] = context;
  o["equivariant"] = x.order() > 1;
  o["mf"] = mf_to_json(x);
  objects_[name] = o;
  contexts_of_[name] = context;
}

void Certificate::add_pullback_object(const std::string& name, const std::string& of, const std::string& element) {
  objects_[name] = {{"pullback", {{"of", of}, {"element", element}}}};
  contexts_of_[name] = contexts_of_.at(of);
}

void Certificate::add_forget_object(const std::string& name, const std::string& of) {
  objects_[name] = {{"forget", of}};
  contexts_of_[name] = contexts_of_.at(of);
}

void Certificate::add_morphism(const std::string& name, const std::string& source, const std::string& target,
                               const MFMorphism& u) {
  Json m = morphism_to_json(ring_of(source), u);
  Json out;
  out["source"] = source;
  out["target"] = target;
  out["U0"] = m["U0"];
  out["U1"] = m["U1"];
  morphisms_[name] = out;
  morphism_source_[name] = source;
}

void Certificate::add_pullback_morphism(const std::string& name, const std::string& of, const std::string& element) {
  morphisms_[name] = {{"pullback", {{"of", of}, {"element", element}}}};
  morphism_source_[name] = morphism_source_.at(of);
}

void Certificate::add_action_morphism(const std::string& name, const std::string& object, const std::string& element) {
  morphisms_[name] = {{"action", {{"object", object}, {"element", element}}}};
  morphism_source_[name] = object;
}

void Certificate::claim_equal(const std::string& id, Terms lhs, Terms rhs, const std::string& source,
                              const std::string& target) {
  Json c;
  c["id"] = id;
  c["kind"] = "equal";
  c["lhs"] = terms_json(lhs);
  c["rhs"] = terms_json(rhs);
  if (!source.empty()) c["source"] = source;
  if (!target.empty()) c["target"] = target;
  claims_.push_back(c);
}

void Certificate::claim_homotopic(const std::string& id, Terms lhs, Terms rhs, const Homotopy& h) {
  const std::string& any = lhs.empty() ? rhs.at(0).back() : lhs.at(0).back();
  const std::string src = any.rfind("id:", 0) == 0 ? any.substr(3) : morphism_source_.at(any);
  Json c;
  c["id"] = id;
  c["kind"] = "homotopic";
  c["lhs"] = terms_json(lhs);
  c["rhs"] = terms_json(rhs);
  c["witness"] = homotopy_to_json(ring_of(src), h);
  claims_.push_back(c);
}

void Certificate::claim_contractible(const std::string& id, const std::string& object, const Homotopy& h) {
  Json c;
  c["id"] = id;
  c["kind"] = "contractible";
  c["object"] = object;
  c["witness"] = homotopy_to_json(ring_of(object), h);
  claims_.push_back(c);
}

void Certificate::claim_base_change(const std::string& id, const std::string& source, const std::string& target,
                                    const std::vector<std::string>& images) {
  Json c;
  c["id"] = id;
  c["kind"] = "base_change";
  c["source"] = source;
  c["target"] = target;
  c["images"] = images;
  claims_.push_back(c);
}

Json Certificate::to_json() const {
  Json j;
  j["contexts"] = contexts_json_;
  j["objects"] = objects_;
  j["morphisms"] = morphisms_;
  j["claims"] = claims_;
  return j;
}

VerifyOutcome verify_report(const Json& report) {
  VerifyOutcome out;
  auto fail = [&](const std::string& what) {
    out.lines.push_back("FAIL " + what);
    if (out.first_failure.empty()) out.first_failure = what;
    out.exit_code = 1;
  };
  try {
    if (!report.is_object() || !report.contains("schema") || report.at("schema") != kReportSchema)
      throw SchemaError(std::string("expected schema '") + kReportSchema + "'");
    const Json& cert = field(report, "certificate");
    std::optional<Verifier> v;
    try {
      v.emplace(cert);
    } catch (const Violation& e) {
      fail(e.message);
      return out;
    }
    const Json& claims = field(cert, "claims");
    for (const Json& c : claims) {
      const std::string id = text(c, "id");
      if (auto bad = v->check(c)) fail("claim " + id + ": " + *bad);
      else out.lines.push_back("ok   claim " + id);
    }
    out.lines.push_back(std::to_string(claims.size()) + " claims checked");
  } catch (const SchemaError& e) {
    out = {2, {std::string("schema error: ") + e.what()}, e.what()};
  } catch (const nlohmann::json::exception& e) {
    out = {2, {std::string("schema error: ") + e.what()}, e.what()};
  } catch (const ParseError& e) {
    out = {2, {std::string("schema error: ") + e.what()}, e.what()};
  } catch (const Error& e) {
    // Rings, groups and objects that fail their structural checks.
    out.exit_code = 1;
    out.lines.push_back(std::string("FAIL ") + e.what());
    out.first_failure = e.what();
  }
  return out;
}

VerifyOutcome verify_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return {2, {"cannot read " + path.string()}, "cannot read " + path.string()};
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    return {2, {std::string("malformed JSON: ") + e.what()}, e.what()};
  }
  return verify_report(j);
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mfg::cli
