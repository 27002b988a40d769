#ifndef CONFCALC_IO_HPP
#define CONFCALC_IO_HPP

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "confcalc/configuration.hpp"
#include "confcalc/error.hpp"
#include "confcalc/improve.hpp"
#include "confcalc/poset.hpp"
#include "confcalc/quiver.hpp"
#include "confcalc/subobject.hpp"

namespace confcalc {
namespace io {

using nlohmann::json;

// ---------------------------------------------------------------------
// Subset keys: JSON-encoded sorted label lists, e.g. ["v1","v2"].
// ---------------------------------------------------------------------

inline std::string subset_key(Mask m, const FinitePoset& p) {
  json a = json::array();
  for (const auto& s : mask_labels(m, p)) a.push_back(s);
  return a.dump();
}

inline std::string pair_key(Mask j, Mask k, const FinitePoset& p) {
  json a = json::array();
  a.push_back(json::parse(subset_key(j, p)));
  a.push_back(json::parse(subset_key(k, p)));
  return a.dump();
}

inline Mask parse_subset(const json& labels, const FinitePoset& p) {
  if (!labels.is_array()) fail(Errc::ParseError, "subset must be a list");
  Mask m = 0;
  for (const auto& s : labels)
    m |= Mask(1) << p.index_of(s.get<std::string>());
  return m;
}

inline Mask parse_subset_key(const std::string& key, const FinitePoset& p) {
  return parse_subset(json::parse(key), p);
}

inline std::pair<Mask, Mask> parse_pair_key(const std::string& key,
                                            const FinitePoset& p) {
  json a = json::parse(key);
  if (!a.is_array() || a.size() != 2)
    fail(Errc::ParseError, "pair key must hold two subsets");
  return {parse_subset(a[0], p), parse_subset(a[1], p)};
}

// ---------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix parse_matrix(const json& j, FieldSpec field, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    fail(Errc::ParseError, "matrix needs " + std::to_string(rows) + " rows");
  Matrix m(field, rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[size_t(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(Errc::ParseError, "matrix row needs " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c)
      m.set(r, c, field.reduce(row[size_t(c)].get<long long>()));
  }
  return m;
}

// ---------------------------------------------------------------------
// Posets
// ---------------------------------------------------------------------

inline FinitePoset parse_poset(const json& j) {
  if (!j.contains("elements") || !j.contains("relations"))
    fail(Errc::ParseError, "poset needs elements and relations");
  std::vector<std::string> elements;
  for (const auto& e : j.at("elements")) elements.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> relations;
  for (const auto& r : j.at("relations")) {
    if (!r.is_array() || r.size() != 2)
      fail(Errc::ParseError, "relation must be a 2-element list");
    relations.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
  }
  return FinitePoset::from_relations(std::move(elements), relations);
}

inline json poset_to_json(const FinitePoset& p) {
  json j;
  j["kind"] = "poset";
  j["elements"] = p.elements();
  json rel = json::array();
  for (const auto& [a, b] : p.relation_pairs()) rel.push_back(json::array({a, b}));
  j["relations"] = std::move(rel);
  return j;
}

// ---------------------------------------------------------------------
// Quivers and representations
// ---------------------------------------------------------------------

inline QuiverPtr parse_quiver(const json& j) {
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
  std::vector<Arrow> arrows;
  for (const auto& a : j.at("arrows")) {
    if (!a.is_array() || a.size() != 3)
      fail(Errc::ParseError, "arrow must be [name, from, to]");
    arrows.push_back({a[0].get<std::string>(), a[1].get<std::string>(),
                      a[2].get<std::string>()});
  }
  std::vector<Relation> relations;
  if (j.contains("relations"))
    for (const auto& rel : j.at("relations")) {
      Relation r;
      for (const auto& term : rel) {
        if (!term.is_array() || term.size() != 2)
          fail(Errc::ParseError, "relation term must be [coeff, path]");
        PathTerm t;
        t.coeff = term[0].get<long long>();
        for (const auto& name : term[1]) t.path.push_back(name.get<std::string>());
        r.push_back(std::move(t));
      }
      relations.push_back(std::move(r));
    }
  return std::make_shared<Quiver>(std::move(vertices), std::move(arrows),
                                  std::move(relations));
}

inline json quiver_to_json(const Quiver& q) {
  json j;
  j["kind"] = "quiver";
  j["vertices"] = q.vertices();
  json arrows = json::array();
  for (const auto& a : q.arrows())
    arrows.push_back(json::array({a.name, a.from, a.to}));
  j["arrows"] = std::move(arrows);
  json rels = json::array();
  for (const auto& rel : q.relations()) {
    json r = json::array();
    for (const auto& term : rel)
      r.push_back(json::array({term.coeff, term.path}));
    rels.push_back(std::move(r));
  }
  j["relations"] = std::move(rels);
  return j;
}

inline FieldSpec parse_field(const json& j) {
  return FieldSpec(j.at("p").get<std::uint32_t>());
}

/// Parses the dims/mats body of a rep given its quiver and field.
inline Rep parse_rep_body(const json& j, QuiverPtr quiver, FieldSpec field) {
  std::vector<int> dims(quiver->vertices().size(), 0);
  for (const auto& [v, d] : j.at("dims").items())
    dims[size_t(quiver->vertex_index(v))] = d.get<int>();
  std::vector<Matrix> mats;
  const json& jm = j.at("mats");
  for (const auto& a : quiver->arrows()) {
    int re = dims[size_t(quiver->vertex_index(a.to))];
    int rb = dims[size_t(quiver->vertex_index(a.from))];
    if (!jm.contains(a.name)) {
      if (re == 0 || rb == 0) {
        mats.emplace_back(field, re, rb);
        continue;
      }
      fail(Errc::ParseError, "missing matrix for arrow " + a.name);
    }
    mats.push_back(parse_matrix(jm.at(a.name), field, re, rb));
  }
  return Rep(std::move(quiver), field, std::move(dims), std::move(mats));
}

inline Rep parse_rep(const json& j, std::optional<FieldSpec> default_field = {}) {
  QuiverPtr quiver = parse_quiver(j.at("quiver"));
  FieldSpec field = j.contains("field") ? parse_field(j.at("field"))
                    : default_field     ? *default_field
                                        : (fail(Errc::ParseError,
                                                "rep needs a field"),
                                           FieldSpec(2));
  return parse_rep_body(j, std::move(quiver), field);
}

inline json rep_body_to_json(const Rep& r) {
  json j;
  json dims;
  for (size_t v = 0; v < r.dims().size(); ++v)
    dims[r.quiver()->vertices()[v]] = r.dim(int(v));
  j["dims"] = std::move(dims);
  json mats;
  for (size_t a = 0; a < r.quiver()->arrows().size(); ++a)
    mats[r.quiver()->arrows()[a].name] = matrix_to_json(r.mat(int(a)));
  j["mats"] = std::move(mats);
  return j;
}

inline json rep_to_json(const Rep& r) {
  json j = rep_body_to_json(r);
  j["kind"] = "rep";
  j["quiver"] = quiver_to_json(*r.quiver());
  j["field"] = {{"p", r.field().modulus()}};
  return j;
}

inline std::vector<Matrix> parse_vertex_mats(const json& jm, const Rep& source,
                                             const Rep& target) {
  const Quiver& q = *source.quiver();
  std::vector<Matrix> mats;
  for (size_t v = 0; v < q.vertices().size(); ++v) {
    int rows = target.dim(int(v)), cols = source.dim(int(v));
    const std::string& name = q.vertices()[v];
    if (!jm.contains(name)) {
      if (rows == 0 || cols == 0) {
        mats.emplace_back(source.field(), rows, cols);
        continue;
      }
      fail(Errc::ParseError, "missing matrix for vertex " + name);
    }
    mats.push_back(parse_matrix(jm.at(name), source.field(), rows, cols));
  }
  return mats;
}

inline RepMor parse_morphism(const json& j,
                             std::optional<FieldSpec> default_field = {}) {
  Rep source = parse_rep(j.at("source"), default_field);
  Rep target = parse_rep(j.at("target"), default_field);
  return RepMor(source, target, parse_vertex_mats(j.at("mats"), source, target));
}

inline json morphism_mats_to_json(const RepMor& m) {
  json mats;
  const Quiver& q = *m.source().quiver();
  for (size_t v = 0; v < q.vertices().size(); ++v)
    mats[q.vertices()[v]] = matrix_to_json(m.mat(int(v)));
  return mats;
}

inline json morphism_to_json(const RepMor& m) {
  json j;
  j["kind"] = "morphism";
  j["source"] = rep_to_json(m.source());
  j["target"] = rep_to_json(m.target());
  j["mats"] = morphism_mats_to_json(m);
  return j;
}

// ---------------------------------------------------------------------
// Subobjects and families
// ---------------------------------------------------------------------

inline json subobject_to_json(const SubobjectCF& s) {
  json bases;
  const Quiver& q = *s.ambient.quiver();
  for (size_t v = 0; v < q.vertices().size(); ++v)
    bases[q.vertices()[v]] = matrix_to_json(s.bases[v]);
  return bases;
}

inline SubobjectCF parse_subobject(const json& j, const Rep& ambient) {
  const Quiver& q = *ambient.quiver();
  std::vector<Matrix> spans;
  for (size_t v = 0; v < q.vertices().size(); ++v) {
    const std::string& name = q.vertices()[v];
    int rows = ambient.dim(int(v));
    if (!j.contains(name)) {
      spans.emplace_back(ambient.field(), rows, 0);
      continue;
    }
    const json& cols = j.at(name);
    int nc = cols.empty() ? 0 : static_cast<int>(cols[0].size());
    spans.push_back(parse_matrix(cols, ambient.field(), rows, nc));
  }
  return make_subobject(ambient, spans);
}

inline json family_to_json(const SubobjectFamily& fam) {
  json j;
  j["kind"] = "family";
  j["ambient"] = rep_to_json(fam.ambient);
  j["poset"] = poset_to_json(fam.poset);
  json table;
  for (const auto& [m, s] : fam.table)
    table[subset_key(m, fam.poset)] = subobject_to_json(s);
  j["table"] = std::move(table);
  return j;
}

inline SubobjectFamily parse_family(const json& j,
                                    std::optional<FieldSpec> default_field = {}) {
  Rep ambient = parse_rep(j.at("ambient"), default_field);
  FinitePoset poset = parse_poset(j.at("poset"));
  SubobjectFamily fam{ambient, poset, {}};
  for (const auto& [key, body] : j.at("table").items())
    fam.table.emplace(parse_subset_key(key, poset), parse_subobject(body, ambient));
  return fam;
}

// ---------------------------------------------------------------------
// Configurations
// ---------------------------------------------------------------------

inline json configuration_to_json(const Configuration& c) {
  json j;
  j["kind"] = "configuration";
  j["poset"] = poset_to_json(c.poset);
  j["quiver"] = quiver_to_json(*c.quiver);
  j["field"] = {{"p", c.field.modulus()}};
  // Deduplicate objects into named defs; keys follow first use over the
  // ascending f-set order, so output is deterministic.
  std::vector<Rep> defs;
  json objects;
  for (const auto& [m, r] : c.objects) {
    size_t idx = 0;
    for (; idx < defs.size(); ++idx)
      if (defs[idx] == r) break;
    if (idx == defs.size()) defs.push_back(r);
    objects[subset_key(m, c.poset)] = "r" + std::to_string(idx);
  }
  json jdefs;
  for (size_t i = 0; i < defs.size(); ++i)
    jdefs["r" + std::to_string(i)] = rep_body_to_json(defs[i]);
  j["defs"] = std::move(jdefs);
  j["objects"] = std::move(objects);
  json iotas, pis;
  for (const auto& [jk, m] : c.iotas)
    iotas[pair_key(jk.first, jk.second, c.poset)] = morphism_mats_to_json(m);
  for (const auto& [jk, m] : c.pis)
    pis[pair_key(jk.first, jk.second, c.poset)] = morphism_mats_to_json(m);
  j["iotas"] = std::move(iotas);
  j["pis"] = std::move(pis);
  return j;
}

inline Configuration parse_configuration(
    const json& j, std::optional<FieldSpec> default_field = {}) {
  FinitePoset poset = parse_poset(j.at("poset"));
  QuiverPtr quiver = parse_quiver(j.at("quiver"));
  FieldSpec field = j.contains("field") ? parse_field(j.at("field"))
                    : default_field     ? *default_field
                                        : (fail(Errc::ParseError,
                                                "configuration needs a field"),
                                           FieldSpec(2));
  std::map<std::string, Rep> defs;
  if (j.contains("defs"))
    for (const auto& [name, body] : j.at("defs").items())
      defs.emplace(name, parse_rep_body(body, quiver, field));
  Configuration c{poset, quiver, field, {}, {}, {}};
  for (const auto& [key, val] : j.at("objects").items()) {
    Mask m = parse_subset_key(key, poset);
    if (val.is_string()) {
      auto it = defs.find(val.get<std::string>());
      if (it == defs.end())
        fail(Errc::ParseError, "undefined object " + val.get<std::string>());
      c.objects.emplace(m, it->second);
    } else {
      c.objects.emplace(m, parse_rep_body(val, quiver, field));
    }
  }
  auto parse_map = [&](const json& src,
                       std::map<std::pair<Mask, Mask>, RepMor>& dst) {
    for (const auto& [key, val] : src.items()) {
      auto [a, b] = parse_pair_key(key, poset);
      const json& mats = val.contains("mats") ? val.at("mats") : val;
      dst.emplace(std::make_pair(a, b),
                  RepMor(c.sigma(a), c.sigma(b),
                         parse_vertex_mats(mats, c.sigma(a), c.sigma(b))));
    }
  };
  parse_map(j.at("iotas"), c.iotas);
  parse_map(j.at("pis"), c.pis);
  // Totality of the three tables; axiom checking is validate_config's job.
  for (Mask m : poset.fsets()) c.sigma(m);
  for (auto [a, b] : poset.g_pairs()) c.iota(a, b);
  for (auto [a, b] : poset.h_pairs()) c.pi(a, b);
  return c;
}

inline json config_morphism_mats_to_json(const ConfigMorphism& m) {
  json alphas;
  for (const auto& [mask, comp] : m.alphas)
    alphas[subset_key(mask, m.source.poset)] = morphism_mats_to_json(comp);
  return alphas;
}

/// Parses morphism components between two given configurations.
inline ConfigMorphism parse_config_morphism(const json& j,
                                            const Configuration& source,
                                            const Configuration& target) {
  ConfigMorphism m{source, target, {}};
  const json& alphas = j.contains("alphas") ? j.at("alphas") : j;
  for (const auto& [key, val] : alphas.items()) {
    Mask mask = parse_subset_key(key, source.poset);
    const json& mats = val.contains("mats") ? val.at("mats") : val;
    m.alphas.emplace(mask,
                     RepMor(source.sigma(mask), target.sigma(mask),
                            parse_vertex_mats(mats, source.sigma(mask),
                                              target.sigma(mask))));
  }
  return m;
}

inline GluingSpec parse_gluing(const json& j) {
  FinitePoset sub = parse_poset(j.at("sub_poset"));
  FinitePoset ambient = parse_poset(j.at("ambient_poset"));
  Mask l = parse_subset(j.at("glue_fset"), ambient);
  std::map<std::string, std::string> psi;
  for (const auto& [k, v] : j.at("psi").items()) psi[k] = v.get<std::string>();
  return {std::move(sub), std::move(ambient), l, std::move(psi)};
}

inline json violations_to_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json e;
    e["axiom"] = v.axiom;
    e["sets"] = v.sets;
    e["detail"] = v.detail;
    out.push_back(std::move(e));
  }
  return out;
}

inline json improvement_to_json(const ImprovementStep& step,
                                const FinitePoset& source_poset) {
  json j;
  j["kind"] = "improvement";
  j["pair"] = json::array({source_poset.label(step.pair.first),
                           source_poset.label(step.pair.second)});
  j["parameter"] = step.parameter;
  j["result"] = configuration_to_json(step.result);
  return j;
}

// ---------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

inline std::string dump_report(const json& j) { return j.dump(1) + "\n"; }

}  // namespace io
}  // namespace confcalc

#endif  // CONFCALC_IO_HPP
