// confcalc command line front end: parse JSON documents describing
// posets, quiver representations, and configurations, dispatch one
// operation, and emit a deterministic JSON report.
//
// Exit codes: 0 success (semantic "no" answers included), 1 axiom
// violations in otherwise well-formed input, 2 parse or I/O errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "confcalc/confcalc.hpp"
#include "confcalc/io.hpp"

using namespace confcalc;
using nlohmann::json;

namespace {

struct Options {
  std::optional<std::uint32_t> field;
  std::string out_path;
  long long max_enum = 10000;
};

/// Raised for anything that goes wrong while reading or validating input
/// documents, as opposed to semantic failures of the operation itself.
struct ParseFailure {
  std::string message;
};

template <typename F>
auto parse_phase(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw ParseFailure{e.what()};
  } catch (const json::exception& e) {
    throw ParseFailure{e.what()};
  }
}

std::optional<FieldSpec> default_field(const Options& opt) {
  if (opt.field) return FieldSpec(*opt.field);
  return std::nullopt;
}

int emit(const Options& opt, const json& report, int code = 0) {
  std::string text = io::dump_report(report);
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path);
    if (!out) fail(Errc::ParseError, "cannot write " + opt.out_path);
    out << text;
  }
  return code;
}

json expect_kind(const json& doc, const std::string& kind,
                 const std::string& path) {
  if (!doc.is_object() || !doc.contains("kind") || doc.at("kind") != kind)
    fail(Errc::ParseError, path + ": expected a \"" + kind + "\" document");
  return doc;
}

Configuration load_config(const std::string& path, const Options& opt) {
  return parse_phase([&] {
    return io::parse_configuration(
        expect_kind(io::load_json(path), "configuration", path),
        default_field(opt));
  });
}

json subsets_to_json(const std::vector<Mask>& masks, const FinitePoset& p) {
  json out = json::array();
  for (Mask m : masks) out.push_back(json::parse(io::subset_key(m, p)));
  return out;
}

int cmd_poset(const Options& opt, const std::string& path) {
  FinitePoset p = parse_phase(
      [&] { return io::parse_poset(expect_kind(io::load_json(path), "poset", path)); });
  json report;
  report["kind"] = "poset_report";
  report["elements"] = p.elements();
  report["ssets"] = subsets_to_json(p.ssets(), p);
  report["qsets"] = subsets_to_json(p.qsets(), p);
  report["fsets"] = subsets_to_json(p.fsets(), p);
  json covers = json::array();
  for (auto [i, j] : p.covering_pairs())
    covers.push_back(json::array({p.label(i), p.label(j)}));
  report["covering_pairs"] = std::move(covers);
  if (p.size() <= 10)
    report["linear_extensions"] = p.count_linear_extensions();
  else
    report["linear_extensions"] = nullptr;
  return emit(opt, report);
}

int cmd_rep(const Options& opt, const std::string& path) {
  Rep r = parse_phase([&] {
    return io::parse_rep(expect_kind(io::load_json(path), "rep", path),
                         default_field(opt));
  });
  json report;
  report["kind"] = "rep_report";
  report["valid"] = true;
  report["nilpotent"] = is_nilpotent(r);
  json dims;
  for (size_t v = 0; v < r.dims().size(); ++v)
    dims[r.quiver()->vertices()[v]] = r.dim(int(v));
  report["dimension_vector"] = std::move(dims);
  return emit(opt, report);
}

int cmd_hom(const Options& opt, const std::string& xpath, const std::string& ypath) {
  Rep x = parse_phase([&] {
    return io::parse_rep(expect_kind(io::load_json(xpath), "rep", xpath),
                         default_field(opt));
  });
  Rep y = parse_phase([&] {
    return io::parse_rep(expect_kind(io::load_json(ypath), "rep", ypath),
                         default_field(opt));
  });
  auto basis = hom_space(x, y);
  json report;
  report["kind"] = "hom_report";
  report["dimension"] = basis.size();
  json jb = json::array();
  for (const auto& m : basis) jb.push_back(io::morphism_mats_to_json(m));
  report["basis"] = std::move(jb);
  return emit(opt, report);
}

int cmd_jh(const Options& opt, const std::string& path) {
  Rep x = parse_phase([&] {
    return io::parse_rep(expect_kind(io::load_json(path), "rep", path),
                         default_field(opt));
  });
  auto jh = jh_poset(x);
  json report;
  report["kind"] = "jh_report";
  report["elements"] = jh.poset.elements();
  json leq = json::array();
  for (const auto& [a, b] : jh.poset.relation_pairs())
    leq.push_back(json::array({a, b}));
  report["leq"] = std::move(leq);
  json table;
  for (const auto& [m, s] : jh.sset_table)
    table[io::subset_key(m, jh.poset)] = io::subobject_to_json(s);
  report["sset_table"] = std::move(table);
  report["linear_extensions"] = jh.poset.count_linear_extensions();
  return emit(opt, report);
}

int cmd_build(const Options& opt, const std::string& path) {
  SubobjectFamily fam = parse_phase([&] {
    return io::parse_family(expect_kind(io::load_json(path), "family", path),
                            default_field(opt));
  });
  return emit(opt, io::configuration_to_json(build_from_subobjects(fam)));
}

int cmd_validate(const Options& opt, const std::string& path) {
  Configuration c = load_config(path, opt);
  auto violations = validate_config(c);
  if (violations.empty()) return emit(opt, json("valid"));
  json report;
  report["kind"] = "violations";
  report["violations"] = io::violations_to_json(violations);
  return emit(opt, report, 1);
}

int cmd_extract(const Options& opt, const std::string& path) {
  return emit(opt,
              io::family_to_json(extract_subobjects(load_config(path, opt))));
}

int cmd_sub(const Options& opt, const std::string& path, const std::string& subset) {
  Configuration c = load_config(path, opt);
  Mask m = 0;
  std::string token;
  std::istringstream in(subset);
  while (std::getline(in, token, ','))
    if (!token.empty()) m |= Mask(1) << c.poset.index_of(token);
  return emit(opt, io::configuration_to_json(subconfiguration(c, m)));
}

int cmd_quot(const Options& opt, const std::string& cpath, const std::string& mpath) {
  Configuration c = load_config(cpath, opt);
  auto [target, phi] = parse_phase([&] {
    json spec = expect_kind(io::load_json(mpath), "quotient_map", mpath);
    FinitePoset t = io::parse_poset(spec.at("target"));
    std::map<std::string, std::string> ph;
    for (const auto& [k, v] : spec.at("phi").items()) ph[k] = v.get<std::string>();
    return std::make_pair(std::move(t), std::move(ph));
  });
  return emit(opt, io::configuration_to_json(quotient_configuration(c, target, phi)));
}

int cmd_substitute(const Options& opt, const std::string& outer_path,
                   const std::string& inner_path, const std::string& spec_path,
                   const std::string& alpha_path) {
  Configuration outer = load_config(outer_path, opt);
  Configuration inner = load_config(inner_path, opt);
  GluingSpec spec = parse_phase([&] {
    return io::parse_gluing(
        expect_kind(io::load_json(spec_path), "gluing", spec_path));
  });
  std::optional<ConfigMorphism> alpha;
  if (!alpha_path.empty()) {
    Configuration outer_sub = subconfiguration(outer, spec.glue_fset);
    Configuration inner_quot = quotient_configuration(
        inner, spec.ambient_poset.restrict(spec.glue_fset), spec.psi);
    alpha = parse_phase([&] {
      return io::parse_config_morphism(
          expect_kind(io::load_json(alpha_path), "config_morphism", alpha_path),
          outer_sub, inner_quot);
    });
  }
  auto res = substitute(outer, inner, spec, alpha);
  json report;
  report["kind"] = "substitution_report";
  report["result"] = io::configuration_to_json(res.result);
  report["sub_witness"] = io::config_morphism_mats_to_json(res.sub_witness);
  report["quot_witness"] = io::config_morphism_mats_to_json(res.quot_witness);
  return emit(opt, report);
}

int cmd_split(const Options& opt, const std::string& path, const std::string& i,
              const std::string& j) {
  Configuration c = load_config(path, opt);
  auto rep = split_pair_test(c, c.poset.index_of(i), c.poset.index_of(j));
  json report;
  report["kind"] = "split_report";
  report["split"] = rep.split;
  if (rep.retraction)
    report["retraction"] = io::morphism_mats_to_json(*rep.retraction);
  return emit(opt, report);
}

std::vector<std::uint32_t> parse_parameter(const std::string& text,
                                           const Configuration& c) {
  std::vector<std::uint32_t> param;
  if (text.empty()) return param;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ','))
    param.push_back(c.field.reduce(std::stoll(token)));
  return param;
}

int cmd_improve(const Options& opt, const std::string& path, const std::string& i,
                const std::string& j, const std::string& param_text) {
  Configuration c = load_config(path, opt);
  int ii = c.poset.index_of(i), jj = c.poset.index_of(j);
  std::vector<std::uint32_t> param = parse_parameter(param_text, c);
  if (param_text.empty()) {
    size_t dim =
        hom_space(c.sigma(Mask(1) << jj), c.sigma(Mask(1) << ii)).size();
    param.assign(dim, 0);
  }
  SplitReport sr = split_pair_test(c, ii, jj);
  if (!sr.split) {
    json report;
    report["kind"] = "split_report";
    report["split"] = false;
    return emit(opt, report);  // a result, not a failure
  }
  ImprovementStep step = one_step_improve(c, ii, jj, param);
  return emit(opt, io::improvement_to_json(step, c.poset));
}

int cmd_enumerate(const Options& opt, const std::string& path,
                  const std::string& i, const std::string& j) {
  Configuration c = load_config(path, opt);
  auto steps = enumerate_improvements(c, c.poset.index_of(i),
                                      c.poset.index_of(j), opt.max_enum);
  json report;
  report["kind"] = "enumeration_report";
  report["count"] = steps.size();
  json list = json::array();
  for (const auto& s : steps) list.push_back(io::improvement_to_json(s, c.poset));
  report["improvements"] = std::move(list);
  return emit(opt, report);
}

int cmd_best(const Options& opt, const std::string& path) {
  Configuration c = load_config(path, opt);
  auto res = best_search(c);
  json report;
  report["kind"] = "best_report";
  report["best"] = io::configuration_to_json(res.best);
  json trail = json::array();
  const Configuration* cur = &c;
  for (const auto& step : res.trail) {
    trail.push_back(io::improvement_to_json(step, cur->poset));
    cur = &step.result;
  }
  report["trail"] = std::move(trail);
  report["steps"] = res.trail.size();
  return emit(opt, report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"configuration calculus for quiver representations over F_p"};
  app.require_subcommand(1);
  Options opt;
  std::uint32_t field_value = 0;
  app.add_option("--field", field_value, "default field modulus p");
  app.add_option("--out", opt.out_path, "write the report to a file");
  app.add_option("--max-enum", opt.max_enum, "improvement enumeration cap");
  long long seed = 0;
  app.add_option("--seed", seed,
                 "reserved; all operations are deterministic");

  std::string a, b, c, d;
  auto* p_poset = app.add_subcommand("poset", "poset combinatorics report");
  p_poset->add_option("file", a)->required();
  auto* p_rep = app.add_subcommand("rep", "validate a representation");
  p_rep->add_option("file", a)->required();
  auto* p_hom = app.add_subcommand("hom", "basis of Hom(X, Y)");
  p_hom->add_option("x", a)->required();
  p_hom->add_option("y", b)->required();
  auto* p_jh = app.add_subcommand("jh", "Jordan-Holder poset and subobjects");
  p_jh->add_option("file", a)->required();
  auto* p_build = app.add_subcommand("build", "configuration from a family");
  p_build->add_option("family", a)->required();
  auto* p_validate = app.add_subcommand("validate", "check configuration axioms");
  p_validate->add_option("config", a)->required();
  auto* p_extract = app.add_subcommand("extract", "subobject family of a configuration");
  p_extract->add_option("config", a)->required();
  auto* p_sub = app.add_subcommand("sub", "subconfiguration on an f-set");
  p_sub->add_option("config", a)->required();
  p_sub->add_option("subset", b, "comma-separated labels")->required();
  auto* p_quot = app.add_subcommand("quot", "quotient configuration");
  p_quot->add_option("config", a)->required();
  p_quot->add_option("map", b)->required();
  auto* p_subst = app.add_subcommand("substitute", "glue configurations");
  p_subst->add_option("outer", a)->required();
  p_subst->add_option("inner", b)->required();
  p_subst->add_option("spec", c)->required();
  p_subst->add_option("alpha", d);
  auto* p_split = app.add_subcommand("split", "split test at a covering pair");
  p_split->add_option("config", a)->required();
  p_split->add_option("i", b)->required();
  p_split->add_option("j", c)->required();
  auto* p_improve = app.add_subcommand("improve", "one-step improvement");
  p_improve->add_option("config", a)->required();
  p_improve->add_option("i", b)->required();
  p_improve->add_option("j", c)->required();
  p_improve->add_option("param", d, "comma-separated Hom coefficients");
  auto* p_enum = app.add_subcommand("enumerate", "all improvements at a pair");
  p_enum->add_option("config", a)->required();
  p_enum->add_option("i", b)->required();
  p_enum->add_option("j", c)->required();
  auto* p_best = app.add_subcommand("best", "greedy search for a best configuration");
  p_best->add_option("config", a)->required();

  CLI11_PARSE(app, argc, argv);
  if (field_value != 0) opt.field = field_value;

  try {
    if (p_poset->parsed()) return cmd_poset(opt, a);
    if (p_rep->parsed()) return cmd_rep(opt, a);
    if (p_hom->parsed()) return cmd_hom(opt, a, b);
    if (p_jh->parsed()) return cmd_jh(opt, a);
    if (p_build->parsed()) return cmd_build(opt, a);
    if (p_validate->parsed()) return cmd_validate(opt, a);
    if (p_extract->parsed()) return cmd_extract(opt, a);
    if (p_sub->parsed()) return cmd_sub(opt, a, b);
    if (p_quot->parsed()) return cmd_quot(opt, a, b);
    if (p_subst->parsed()) return cmd_substitute(opt, a, b, c, d);
    if (p_split->parsed()) return cmd_split(opt, a, b, c);
    if (p_improve->parsed()) return cmd_improve(opt, a, b, c, d);
    if (p_enum->parsed()) return cmd_enumerate(opt, a, b, c);
    if (p_best->parsed()) return cmd_best(opt, a);
  } catch (const ParseFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::ParseError ? 2 : 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
