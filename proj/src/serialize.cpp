#include "mfg/serialize.hpp"

namespace mfg {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw SchemaError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(as_int(v, what));
  return out;
}

}  // namespace

Json field_to_json(const Field& k) {
  if (!k.is_extension()) return k.describe();
  std::vector<std::string> names{k.generator()};
  Polynomial mu(Scalar::zero(k.base()), 1);
  for (size_t i = 0; i < k.minpoly().size(); ++i)
    mu += Polynomial::monomial(1, Monomial::variable(0, static_cast<int>(i)), Scalar(k.minpoly()[i], k.base()));
  Json j;
  j["base"] = field_to_json(k.base());
  j["generator"] = k.generator();
  j["minpoly"] = format_polynomial(mu, names, {1});
  return j;
}

Field field_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "QQ") return Field::rationals();
    if (s.size() > 4 && s.rfind("GF(", 0) == 0 && s.back() == ')') {
      std::string digits = s.substr(3, s.size() - 4);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw SchemaError("bad prime in field '" + s + "'");
      return Field::prime(std::stoull(digits));
    }
    throw SchemaError("unknown field '" + s + "' (expected QQ, GF(p) or an extension object)");
  }
  Field base = field_from_json(member(j, "base"));
  std::string gen = as_string(member(j, "generator"), "generator");
  Polynomial mu = parse_polynomial(as_string(member(j, "minpoly"), "minpoly"), {gen}, base);
  int deg = mu.weighted_degree({1});
  std::vector<mpq_class> coeffs(std::max(deg + 1, 0));
  for (const auto& [m, c] : mu.terms()) coeffs[m.exponent(0)] = c.rational();
  return Field::extension(base, coeffs, gen);
}

Json ring_to_json(const GradedRing& r) {
  Json j;
  j["field"] = field_to_json(r.field());
  j["variables"] = r.variables();
  j["weights"] = r.weights();
  j["f"] = r.format(r.potential());
  return j;
}

RingPtr ring_from_json(const Json& j) {
  Field k = field_from_json(j.contains("field") ? j.at("field") : Json("QQ"));
  const Json& vars = member(j, "variables");
  if (!vars.is_array()) throw SchemaError("variables must be an array of names");
  std::vector<std::string> names;
  for (const auto& v : vars) names.push_back(as_string(v, "variable name"));
  std::vector<int> weights = j.contains("weights") ? int_list(j.at("weights"), "weights")
                                                   : std::vector<int>(names.size(), 1);
  return std::make_shared<GradedRing>(k, names, weights, as_string(member(j, "f"), "f"));
}

Json group_to_json(const GroupAction& a) {
  const FiniteGroup& g = a.group();
  Json j;
  j["elements"] = g.labels();
  Json table = Json::array();
  for (int x = 0; x < g.order(); ++x) {
    Json row = Json::array();
    for (int y = 0; y < g.order(); ++y) row.push_back(g.label(g.multiply(x, y)));
    table.push_back(row);
  }
  j["table"] = table;
  Json act = Json::object();
  for (int x = 0; x < g.order(); ++x) {
    Json images = Json::object();
    for (int i = 0; i < a.ring().nvars(); ++i) images[a.ring().variables()[i]] = a.ring().format(a.images(x)[i]);
    act[g.label(x)] = images;
  }
  j["action"] = act;
  return j;
}

ActionPtr group_from_json(const Json& j, const RingPtr& ring) {
  if (j.is_null()) return GroupAction::trivial(ring);
  const Json& el = member(j, "elements");
  if (!el.is_array()) throw SchemaError("elements must be an array of labels");
  std::vector<std::string> labels;
  for (const auto& e : el) labels.push_back(as_string(e, "group element"));
  auto find = [&](const std::string& s) {
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == s) return static_cast<int>(i);
    throw SchemaError("unknown group element '" + s + "'");
  };
  const Json& tj = member(j, "table");
  if (!tj.is_array() || tj.size() != labels.size()) throw SchemaError("table must have one row per element");
  std::vector<std::vector<int>> table;
  for (const auto& row : tj) {
    if (!row.is_array() || row.size() != labels.size()) throw SchemaError("table rows must have one entry per element");
    std::vector<int> r;
    for (const auto& v : row) r.push_back(find(as_string(v, "table entry")));
    table.push_back(r);
  }
  FiniteGroup group(labels, table);
  const Json& aj = member(j, "action");
  std::vector<std::vector<Polynomial>> images(labels.size());
  for (size_t g = 0; g < labels.size(); ++g) {
    const Json* per = aj.contains(labels[g]) ? &aj.at(labels[g]) : nullptr;
    for (int i = 0; i < ring->nvars(); ++i) {
      const std::string& v = ring->variables()[i];
      // Variables not listed are fixed; only the identity may be omitted entirely.
      if (per && per->contains(v))
        images[g].push_back(ring->parse(as_string(per->at(v), "variable image")));
      else if (per || static_cast<int>(g) == group.identity())
        images[g].push_back(ring->variable(i));
      else
        throw SchemaError("action missing for element '" + labels[g] + "'");
    }
  }
  return std::make_shared<GroupAction>(ring, group, images);
}

Json matrix_to_json(const GradedRing& r, const PolyMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(r.format(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

PolyMatrix matrix_from_json(const GradedRing& r, const Json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw SchemaError("matrix must have " + std::to_string(rows) + " rows");
  PolyMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw SchemaError("matrix rows must have " + std::to_string(cols) + " entries");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<size_t>(c)];
      if (e.is_number_integer())
        m(i, c) = r.constant(Scalar(e.get<long>()));
      else
        m(i, c) = r.parse(as_string(e, "matrix entry"));
    }
  }
  return m;
}

Json mf_to_json(const EquivariantMF& x) {
  const GradedRing& r = x.ring();
  Json j;
  j["P0"] = x.p0.weights;
  j["P1"] = x.p1.weights;
  j["A"] = matrix_to_json(r, x.a);
  j["B"] = matrix_to_json(r, x.b);
  if (x.order() > 1) {
    Json act = Json::object();
    const FiniteGroup& g = x.action->group();
    for (int e = 0; e < g.order(); ++e) {
      Json per;
      per["M0"] = matrix_to_json(r, x.m0[e]);
      per["M1"] = matrix_to_json(r, x.m1[e]);
      act[g.label(e)] = per;
    }
    j["action"] = act;
  }
  return j;
}

EquivariantMF mf_from_json(const Json& j, const ActionPtr& action) {
  const GradedRing& r = action->ring();
  std::vector<int> w0 = int_list(member(j, "P0"), "P0"), w1 = int_list(member(j, "P1"), "P1");
  const auto n0 = static_cast<Eigen::Index>(w0.size()), n1 = static_cast<Eigen::Index>(w1.size());
  PolyMatrix a = matrix_from_json(r, member(j, "A"), n0, n1);
  PolyMatrix b = matrix_from_json(r, member(j, "B"), n1, n0);
  if (!j.contains("action") || j.at("action").is_null()) return EquivariantMF::make(action, w0, w1, a, b);
  const Json& act = j.at("action");
  const FiniteGroup& g = action->group();
  std::vector<PolyMatrix> m0, m1;
  for (int e = 0; e < g.order(); ++e) {
    if (!act.contains(g.label(e))) {
      if (e != g.identity()) throw SchemaError("action matrices missing for element '" + g.label(e) + "'");
      m0.push_back(poly_identity(n0));
      m1.push_back(poly_identity(n1));
      continue;
    }
    const Json& per = act.at(g.label(e));
    m0.push_back(matrix_from_json(r, member(per, "M0"), n0, n0));
    m1.push_back(matrix_from_json(r, member(per, "M1"), n1, n1));
  }
  return EquivariantMF::make(action, w0, w1, a, b, m0, m1);
}

Json morphism_to_json(const GradedRing& r, const MFMorphism& u) {
  Json j;
  j["U0"] = matrix_to_json(r, u.u0);
  j["U1"] = matrix_to_json(r, u.u1);
  return j;
}

MFMorphism morphism_from_json(const GradedRing& r, const Json& j, const EquivariantMF& x,
                              const EquivariantMF& y) {
  return {matrix_from_json(r, member(j, "U0"), y.p0.rank(), x.p0.rank()),
          matrix_from_json(r, member(j, "U1"), y.p1.rank(), x.p1.rank())};
}

Json homotopy_to_json(const GradedRing& r, const Homotopy& h) {
  Json j;
  j["H0"] = matrix_to_json(r, h.h0);
  j["H1"] = matrix_to_json(r, h.h1);
  return j;
}

Homotopy homotopy_from_json(const GradedRing& r, const Json& j, const EquivariantMF& x,
                            const EquivariantMF& y) {
  return {matrix_from_json(r, member(j, "H0"), y.p1.rank(), x.p0.rank()),
          matrix_from_json(r, member(j, "H1"), y.p0.rank(), x.p1.rank())};
}

}  // namespace mfg
