#ifndef CONFCALC_CONFIGURATION_HPP
#define CONFCALC_CONFIGURATION_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confcalc/error.hpp"
#include "confcalc/poset.hpp"
#include "confcalc/quiver.hpp"
#include "confcalc/subobject.hpp"

namespace confcalc {

/// An (I, <=)-configuration: objects on f-sets, injections on G-pairs,
/// surjections on H-pairs, subject to the exactness and compatibility
/// axioms checked by validate_config.  Immutable once built.
struct Configuration {
  FinitePoset poset;
  QuiverPtr quiver;
  FieldSpec field;
  std::map<Mask, Rep> objects;
  std::map<std::pair<Mask, Mask>, RepMor> iotas;
  std::map<std::pair<Mask, Mask>, RepMor> pis;

  const Rep& sigma(Mask j) const {
    auto it = objects.find(j);
    if (it == objects.end())
      fail(Errc::MissingEntry, "sigma" + mask_to_string(j, poset));
    return it->second;
  }

  const RepMor& iota(Mask j, Mask k) const {
    auto it = iotas.find({j, k});
    if (it == iotas.end())
      fail(Errc::MissingEntry, "iota(" + mask_to_string(j, poset) + "," +
                                   mask_to_string(k, poset) + ")");
    return it->second;
  }

  const RepMor& pi(Mask j, Mask k) const {
    auto it = pis.find({j, k});
    if (it == pis.end())
      fail(Errc::MissingEntry, "pi(" + mask_to_string(j, poset) + "," +
                                   mask_to_string(k, poset) + ")");
    return it->second;
  }

  bool operator==(const Configuration& o) const {
    return poset == o.poset && same_quiver(quiver, o.quiver) &&
           field == o.field && objects == o.objects && iotas == o.iotas &&
           pis == o.pis;
  }
  bool operator!=(const Configuration& o) const { return !(*this == o); }
};

struct Violation {
  std::string axiom;
  std::vector<std::string> sets;  // offending subsets, rendered as {a,b}
  std::string detail;
};

/// Full axiom check.  Empty result means valid; entries name the failing
/// axiom and the offending sets.  Missing table entries throw.
inline std::vector<Violation> validate_config(const Configuration& c) {
  std::vector<Violation> out;
  const FinitePoset& p = c.poset;
  auto fs = p.fsets();
  auto gp = p.g_pairs();
  auto hp = p.h_pairs();
  auto name = [&](Mask m) { return mask_to_string(m, p); };

  for (Mask j : fs) c.sigma(j);
  for (auto [j, k] : gp) c.iota(j, k);
  for (auto [j, k] : hp) c.pi(j, k);
  for (const auto& [j, r] : c.objects) {
    if (!p.is_fset(j))
      out.push_back({"structure", {name(j)}, "object key is not an f-set"});
    if (!same_quiver(r.quiver(), c.quiver) || r.field() != c.field)
      out.push_back({"structure", {name(j)}, "object in a different category"});
  }
  for (const auto& [jk, m] : c.iotas)
    if (!p.is_g_pair(jk.first, jk.second))
      out.push_back({"structure", {name(jk.first), name(jk.second)},
                     "iota key is not a G-pair"});
  for (const auto& [jk, m] : c.pis)
    if (!p.is_h_pair(jk.first, jk.second))
      out.push_back({"structure", {name(jk.first), name(jk.second)},
                     "pi key is not an H-pair"});
  if (!out.empty()) return out;

  if (!c.sigma(0).is_zero())
    out.push_back({"(i)", {name(0)}, "sigma(empty) is not the zero object"});
  for (auto [j, k] : gp) {
    const RepMor& m = c.iota(j, k);
    if (m.source() != c.sigma(j) || m.target() != c.sigma(k))
      out.push_back({"(ii)", {name(j), name(k)}, "iota endpoints disagree"});
    else if (!is_injective(m))
      out.push_back({"(ii)", {name(j), name(k)}, "iota is not injective"});
    else if (j == k && m != RepMor::identity(c.sigma(j)))
      out.push_back({"(ii)", {name(j)}, "iota(J,J) is not the identity"});
  }
  for (auto [j, k] : hp) {
    const RepMor& m = c.pi(j, k);
    if (m.source() != c.sigma(j) || m.target() != c.sigma(k))
      out.push_back({"(iii)", {name(j), name(k)}, "pi endpoints disagree"});
    else if (!is_surjective(m))
      out.push_back({"(iii)", {name(j), name(k)}, "pi is not surjective"});
    else if (j == k && m != RepMor::identity(c.sigma(j)))
      out.push_back({"(iii)", {name(j)}, "pi(J,J) is not the identity"});
  }
  if (!out.empty()) return out;

  // (A): 0 -> sigma(J) -> sigma(K) -> sigma(K \ J) -> 0 exact.
  for (auto [j, k] : gp) {
    Mask l = k & ~j;
    if (!compose(c.pi(k, l), c.iota(j, k)).is_zero())
      out.push_back({"(A)", {name(j), name(k)}, "pi o iota is nonzero"});
    for (size_t v = 0; v < c.sigma(k).dims().size(); ++v)
      if (c.sigma(k).dim(int(v)) !=
          c.sigma(j).dim(int(v)) + c.sigma(l).dim(int(v))) {
        out.push_back({"(A)", {name(j), name(k)}, "dimensions do not add up"});
        break;
      }
  }
  // (B), (C): composition triangles; (D): the mixed square.
  std::map<Mask, std::vector<Mask>> gsucc, hsucc;
  for (auto [j, k] : gp) gsucc[j].push_back(k);
  for (auto [j, k] : hp) hsucc[j].push_back(k);
  for (auto [j, k] : gp)
    for (Mask l : gsucc[k])
      if (c.iota(j, l) != compose(c.iota(k, l), c.iota(j, k)))
        out.push_back({"(B)", {name(j), name(k), name(l)}, "iota triangle fails"});
  for (auto [j, k] : hp)
    for (Mask l : hsucc[k])
      if (c.pi(j, l) != compose(c.pi(k, l), c.pi(j, k)))
        out.push_back({"(C)", {name(j), name(k), name(l)}, "pi triangle fails"});
  for (auto [j, k] : gp)
    for (Mask l : hsucc[k]) {
      Mask jl = j & l;
      if (compose(c.pi(k, l), c.iota(j, k)) !=
          compose(c.iota(jl, l), c.pi(j, jl)))
        out.push_back({"(D)", {name(j), name(k), name(l)}, "mixed square fails"});
    }
  return out;
}

/// Morphism of configurations on a shared poset: one component per f-set
/// commuting with every iota and pi.
struct ConfigMorphism {
  Configuration source, target;
  std::map<Mask, RepMor> alphas;

  const RepMor& at(Mask j) const {
    auto it = alphas.find(j);
    if (it == alphas.end())
      fail(Errc::MissingEntry, "alpha" + mask_to_string(j, source.poset));
    return it->second;
  }
};

inline std::vector<Violation> check_config_morphism(const ConfigMorphism& m) {
  std::vector<Violation> out;
  if (m.source.poset != m.target.poset)
    fail(Errc::PosetMismatch, "morphism between different posets");
  const FinitePoset& p = m.source.poset;
  auto name = [&](Mask x) { return mask_to_string(x, p); };
  for (Mask j : p.fsets()) {
    const RepMor& a = m.at(j);
    if (a.source() != m.source.sigma(j) || a.target() != m.target.sigma(j))
      out.push_back({"endpoints", {name(j)}, "component endpoints disagree"});
  }
  if (!out.empty()) return out;
  for (auto [j, k] : p.g_pairs())
    if (compose(m.at(k), m.source.iota(j, k)) !=
        compose(m.target.iota(j, k), m.at(j)))
      out.push_back({"iota square", {name(j), name(k)}, "fails"});
  for (auto [j, k] : p.h_pairs())
    if (compose(m.at(k), m.source.pi(j, k)) !=
        compose(m.target.pi(j, k), m.at(j)))
      out.push_back({"pi square", {name(j), name(k)}, "fails"});
  return out;
}

inline bool is_isomorphism(const ConfigMorphism& m) {
  if (!check_config_morphism(m).empty()) return false;
  for (const auto& [j, a] : m.alphas)
    if (!is_invertible(a)) return false;
  return true;
}

inline ConfigMorphism identity_config_morphism(const Configuration& c) {
  std::map<Mask, RepMor> alphas;
  for (const auto& [j, r] : c.objects) alphas.emplace(j, RepMor::identity(r));
  return {c, c, std::move(alphas)};
}

/// The family {S^J : J an s-set} of subobjects of a fixed ambient.
struct SubobjectFamily {
  Rep ambient;
  FinitePoset poset;
  std::map<Mask, SubobjectCF> table;

  const SubobjectCF& at(Mask j) const {
    auto it = table.find(j);
    if (it == table.end())
      fail(Errc::MissingEntry, "S^" + mask_to_string(j, poset));
    return it->second;
  }

  bool operator==(const SubobjectFamily& o) const {
    return ambient == o.ambient && poset == o.poset && table == o.table;
  }
};

/// Checks the lattice axioms: S^0 = 0, S^I = ambient, meets and joins
/// match intersections and unions of s-sets.
inline void verify_family(const SubobjectFamily& fam) {
  auto ss = fam.poset.ssets();
  if (fam.table.size() != ss.size())
    fail(Errc::PosetMismatch, "family table does not index the s-sets");
  for (Mask j : ss) {
    const SubobjectCF& s = fam.at(j);
    if (s.ambient != fam.ambient)
      fail(Errc::AmbientMismatch, "family entry " + mask_to_string(j, fam.poset));
  }
  if (fam.at(0) != zero_subobject(fam.ambient))
    fail(Errc::FamilyAxiomViolation, "S^{} is not the zero subobject");
  if (fam.at(fam.poset.full_mask()) != full_subobject(fam.ambient))
    fail(Errc::FamilyAxiomViolation, "S^I is not the whole object");
  for (Mask a : ss)
    for (Mask b : ss) {
      if (b < a) continue;
      auto [meet, join] = sub_meet_join(fam.at(a), fam.at(b));
      if (meet != fam.at(a & b) || join != fam.at(a | b))
        fail(Errc::FamilyAxiomViolation,
             mask_to_string(a, fam.poset) + ", " + mask_to_string(b, fam.poset));
    }
}

namespace detail {

/// Largest s-set J' with J' disjoint from L and no element above any of
/// L; then K' = J' u L is the largest s-set K' with (K', L) an H-pair.
inline Mask jprime(const FinitePoset& p, Mask l) {
  Mask above = 0;
  for (int e : mask_elements(l)) above |= p.up_set(e);
  return p.full_mask() & ~l & ~above;
}

}  // namespace detail

/// The constructive existence theorem: builds a configuration whose
/// iota(J, I) represent the given subobjects S^J.  All choices are
/// canonical, so the output is reproducible bit for bit.
inline Configuration build_from_subobjects(const SubobjectFamily& fam) {
  if (fam.poset.size() > 10)
    fail(Errc::TooLarge, "configurations need |I| <= 10");
  verify_family(fam);
  const FinitePoset& p = fam.poset;
  const Rep& x = fam.ambient;
  Configuration c{p, x.quiver(), x.field(), {}, {}, {}};

  // Step 1: objects and inclusions on s-sets.
  auto ss = p.ssets();
  std::map<Mask, RepMor> incl;  // sigma(J) -> X
  for (Mask j : ss) {
    auto [rep, in] = subobject_as_rep(fam.at(j));
    c.objects.emplace(j, std::move(rep));
    incl.emplace(j, std::move(in));
  }
  for (Mask j : ss)
    for (Mask k : ss) {
      if ((j & ~k) != 0) continue;
      std::vector<Matrix> mats;
      for (size_t v = 0; v < x.dims().size(); ++v)
        mats.push_back(
            solve_unique(fam.at(k).bases[v], fam.at(j).bases[v]));
      c.iotas.emplace(std::make_pair(j, k),
                      RepMor(c.sigma(j), c.sigma(k), std::move(mats)));
    }

  // Step 3: objects on remaining f-sets as concrete cokernels, and the
  // canonical surjection pi(K'(L), L).
  auto fs = p.fsets();
  std::map<Mask, Mask> kprime;
  for (Mask l : fs) {
    Mask jp = detail::jprime(p, l);
    Mask kp = jp | l;
    kprime[l] = kp;
    if (p.is_sset(l)) {
      // sigma(K') splits as sigma(J') + sigma(L); pi is the projection
      // killing iota(J', K') with pi o iota(L, K') = id.
      std::vector<Matrix> mats;
      const RepMor& ia = c.iota(jp, kp);
      const RepMor& ib = c.iota(l, kp);
      for (size_t v = 0; v < x.dims().size(); ++v) {
        Matrix joint = hstack(ia.mat(int(v)), ib.mat(int(v)));
        auto inv = inverse(joint);
        if (!inv)
          fail(Errc::FamilyAxiomViolation,
               "split projection at " + mask_to_string(l, p));
        std::vector<int> bottom;
        for (int r = ia.mat(int(v)).cols(); r < joint.cols(); ++r)
          bottom.push_back(r);
        mats.push_back(inv->take_rows(bottom));
      }
      c.pis.emplace(std::make_pair(kp, l),
                    RepMor(c.sigma(kp), c.sigma(l), std::move(mats)));
    } else {
      CokernelResult ck = cokernel(c.iota(jp, kp));
      c.objects.emplace(l, ck.rep);
      c.pis.emplace(std::make_pair(kp, l), ck.proj);
    }
  }

  // H-pairs with an s-set source: pi(C, L) = pi(K'(L), L) o iota(C, K').
  auto hp = p.h_pairs();
  for (auto [cs, l] : hp) {
    if (!p.is_sset(cs) || c.pis.count({cs, l})) continue;
    c.pis.emplace(std::make_pair(cs, l),
                  compose(c.pi(kprime[l], l), c.iota(cs, kprime[l])));
  }

  // Step 4: the remaining iota(J, K) and pi(K, K \ J) for G-pairs whose
  // larger set is not an s-set, by unique factorization through the
  // bracketing s-sets A' c B' c C'.
  for (auto [j, k] : p.g_pairs()) {
    if (p.is_sset(k)) continue;  // then J is an s-set too; done in Step 1
    Mask ap = detail::jprime(p, k);
    Mask bp = ap | j;
    Mask cp = ap | k;
    const RepMor& pi_bj = c.pi(bp, j);
    const RepMor rhs = compose(c.pi(cp, k), c.iota(bp, cp));
    std::vector<Matrix> mats;
    for (size_t v = 0; v < x.dims().size(); ++v)
      mats.push_back(solve_right_unique(pi_bj.mat(int(v)), rhs.mat(int(v))));
    c.iotas.emplace(std::make_pair(j, k),
                    RepMor(c.sigma(j), c.sigma(k), std::move(mats)));
    Mask m = k & ~j;
    if (!c.pis.count({k, m})) {
      const RepMor& pi_ck = c.pi(cp, k);
      const RepMor& pi_cm = c.pi(cp, m);
      std::vector<Matrix> pmats;
      for (size_t v = 0; v < x.dims().size(); ++v)
        pmats.push_back(
            solve_right_unique(pi_ck.mat(int(v)), pi_cm.mat(int(v))));
      c.pis.emplace(std::make_pair(k, m),
                    RepMor(c.sigma(k), c.sigma(m), std::move(pmats)));
    }
  }
  return c;
}

/// Configuration of a filtration 0 = A_0 c A_1 c ... c A_n = X on the
/// chain poset {1, ..., n}; repetitions give zero factors.
inline Configuration build_from_filtration(const Rep& x,
                                           const std::vector<SubobjectCF>& chain) {
  if (chain.empty() || chain.front() != zero_subobject(x) ||
      chain.back() != full_subobject(x))
    fail(Errc::NotAChain, "filtration must run from 0 to X");
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i].ambient != x || chain[i + 1].ambient != x)
      fail(Errc::AmbientMismatch, "filtration entry not inside X");
    if (!subobject_contains(chain[i + 1], chain[i]))
      fail(Errc::NotAChain, "entry " + std::to_string(i) +
                                " is not contained in its successor");
  }
  int n = static_cast<int>(chain.size()) - 1;
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  for (int i = 1; i < n; ++i)
    rel.emplace_back(std::to_string(i), std::to_string(i + 1));
  FinitePoset p = FinitePoset::from_relations(labels, rel);
  SubobjectFamily fam{x, p, {}};
  Mask m = 0;
  fam.table.emplace(0, chain[0]);
  for (int i = 1; i <= n; ++i) {
    m |= Mask(1) << p.index_of(std::to_string(i));
    fam.table.emplace(m, chain[size_t(i)]);
  }
  return build_from_subobjects(fam);
}

/// Converse direction: read off the subobject family from a
/// configuration.  The result is verified against the lattice axioms.
inline SubobjectFamily extract_subobjects(const Configuration& c) {
  Mask full = c.poset.full_mask();
  SubobjectFamily fam{c.sigma(full), c.poset, {}};
  for (Mask j : c.poset.ssets())
    fam.table.emplace(j, image_subobject(c.iota(j, full)));
  verify_family(fam);
  return fam;
}

/// Classes kappa(i) = [sigma({i})] in K(A) = Z^{Q_0}; additivity over
/// every f-set is checked.
inline std::map<std::string, std::vector<int>> kappa(const Configuration& c) {
  std::map<std::string, std::vector<int>> out;
  for (int e = 0; e < c.poset.size(); ++e)
    out[c.poset.label(e)] = c.sigma(Mask(1) << e).dims();
  for (Mask j : c.poset.fsets()) {
    std::vector<int> sum(c.quiver->vertices().size(), 0);
    for (int e : mask_elements(j))
      for (size_t v = 0; v < sum.size(); ++v)
        sum[v] += out[c.poset.label(e)][v];
    if (sum != c.sigma(j).dims())
      fail(Errc::InvalidConfiguration,
           "class additivity fails on " + mask_to_string(j, c.poset));
  }
  return out;
}

/// Restriction to an f-set J: a (J, <=)-configuration sharing the data.
inline Configuration subconfiguration(const Configuration& c, Mask j) {
  if (!c.poset.is_fset(j))
    fail(Errc::NotAnFSet, mask_to_string(j, c.poset));
  FinitePoset sub = c.poset.restrict(j);
  Configuration out{sub, c.quiver, c.field, {}, {}, {}};
  for (Mask m : sub.fsets())
    out.objects.emplace(m, c.sigma(translate_mask(m, sub, c.poset)));
  for (auto [a, b] : sub.g_pairs())
    out.iotas.emplace(std::make_pair(a, b),
                      c.iota(translate_mask(a, sub, c.poset),
                             translate_mask(b, sub, c.poset)));
  for (auto [a, b] : sub.h_pairs())
    out.pis.emplace(std::make_pair(a, b),
                    c.pi(translate_mask(a, sub, c.poset),
                         translate_mask(b, sub, c.poset)));
  return out;
}

/// Quotient configuration along a surjective monotone phi : I -> K,
/// given as a label map.
inline Configuration quotient_configuration(
    const Configuration& c, const FinitePoset& target,
    const std::map<std::string, std::string>& phi) {
  std::vector<Mask> preimage(size_t(target.size()), 0);
  Mask hit = 0;
  for (int i = 0; i < c.poset.size(); ++i) {
    auto it = phi.find(c.poset.label(i));
    if (it == phi.end())
      fail(Errc::NotSurjective, "phi undefined on " + c.poset.label(i));
    int k = target.index_of(it->second);
    preimage[size_t(k)] |= Mask(1) << i;
    hit |= Mask(1) << k;
  }
  if (hit != target.full_mask()) fail(Errc::NotSurjective, "phi misses elements");
  for (int i = 0; i < c.poset.size(); ++i)
    for (int j = 0; j < c.poset.size(); ++j)
      if (c.poset.leq(i, j) &&
          !target.leq(target.index_of(phi.at(c.poset.label(i))),
                      target.index_of(phi.at(c.poset.label(j)))))
        fail(Errc::NotMonotone,
             c.poset.label(i) + " <= " + c.poset.label(j) + " not preserved");
  auto pull = [&](Mask a) {
    Mask m = 0;
    for (int e : mask_elements(a)) m |= preimage[size_t(e)];
    return m;
  };
  Configuration out{target, c.quiver, c.field, {}, {}, {}};
  for (Mask a : target.fsets()) {
    Mask pa = pull(a);
    if (!c.poset.is_fset(pa))
      fail(Errc::InvalidConfiguration, "pullback of an f-set is not an f-set");
    out.objects.emplace(a, c.sigma(pa));
  }
  for (auto [a, b] : target.g_pairs())
    out.iotas.emplace(std::make_pair(a, b), c.iota(pull(a), pull(b)));
  for (auto [a, b] : target.h_pairs())
    out.pis.emplace(std::make_pair(a, b), c.pi(pull(a), pull(b)));
  return out;
}

/// Transport a configuration along per-f-set isomorphisms gamma(M):
/// sigma(M) -> sigma'(M); entries without a gamma keep their object.
inline Configuration retwist(const Configuration& c,
                             const std::map<Mask, RepMor>& gamma) {
  auto comp = [&](Mask m) -> RepMor {
    auto it = gamma.find(m);
    if (it == gamma.end()) return RepMor::identity(c.sigma(m));
    if (it->second.source() != c.sigma(m) || !is_invertible(it->second))
      fail(Errc::InvalidConfiguration,
           "retwist component at " + mask_to_string(m, c.poset));
    return it->second;
  };
  Configuration out{c.poset, c.quiver, c.field, {}, {}, {}};
  for (const auto& [m, r] : c.objects) out.objects.emplace(m, comp(m).target());
  for (const auto& [jk, m] : c.iotas)
    out.iotas.emplace(
        jk, compose(comp(jk.second), compose(m, inverse(comp(jk.first)))));
  for (const auto& [jk, m] : c.pis)
    out.pis.emplace(
        jk, compose(comp(jk.second), compose(m, inverse(comp(jk.first)))));
  return out;
}

/// The canonical isomorphism between two configurations induced by an
/// ambient identification h : sigma_1(I) -> sigma_2(I) matching the
/// subobject families.  Components on s-sets factor h through the
/// inclusions; the rest factor through the canonical surjections.
inline ConfigMorphism canonical_config_iso(const Configuration& c1,
                                           const Configuration& c2,
                                           const RepMor& h) {
  if (c1.poset != c2.poset) fail(Errc::PosetMismatch, "canonical iso");
  const FinitePoset& p = c1.poset;
  Mask full = p.full_mask();
  if (h.source() != c1.sigma(full) || h.target() != c2.sigma(full) ||
      !is_invertible(h))
    fail(Errc::InvalidConfiguration, "ambient identification is not an iso");
  std::map<Mask, RepMor> alphas;
  for (Mask b : p.ssets()) {
    const RepMor& i1 = c1.iota(b, full);
    const RepMor& i2 = c2.iota(b, full);
    RepMor lhs = compose(h, i1);
    std::vector<Matrix> mats;
    for (size_t v = 0; v < lhs.mats().size(); ++v) {
      auto m = solve(i2.mat(int(v)), lhs.mat(int(v)));
      if (!m)
        fail(Errc::InvalidConfiguration,
             "subobjects do not correspond at " + mask_to_string(b, p));
      mats.push_back(*m);
    }
    alphas.emplace(b, RepMor(c1.sigma(b), c2.sigma(b), std::move(mats)));
  }
  for (Mask m : p.fsets()) {
    if (alphas.count(m)) continue;
    Mask kp = detail::jprime(p, m) | m;
    const RepMor& p1 = c1.pi(kp, m);
    RepMor rhs = compose(c2.pi(kp, m), alphas.at(kp));
    std::vector<Matrix> mats;
    for (size_t v = 0; v < rhs.mats().size(); ++v)
      mats.push_back(solve_right_unique(p1.mat(int(v)), rhs.mat(int(v))));
    alphas.emplace(m, RepMor(c1.sigma(m), c2.sigma(m), std::move(mats)));
  }
  ConfigMorphism iso{c1, c2, std::move(alphas)};
  if (!is_isomorphism(iso))
    fail(Errc::InvalidConfiguration, "canonical map failed to be an isomorphism");
  return iso;
}

struct SubstitutionResult {
  Configuration result;        // on the glued poset (I, <=)
  ConfigMorphism sub_witness;  // result's (J, <~)-subconfiguration -> inner
  ConfigMorphism quot_witness;  // result's (K, <|)-quotient -> outer
};

/// Gluing theorem: substitutes the inner (J, <~)-configuration into the
/// slot L of the outer (K, <|)-configuration.  alpha identifies outer's
/// (L)-subconfiguration with inner's psi-quotient; omit it when the two
/// agree literally.
inline SubstitutionResult substitute(const Configuration& outer,
                                     const Configuration& inner,
                                     const GluingSpec& spec,
                                     const std::optional<ConfigMorphism>& alpha =
                                         std::nullopt) {
  if (inner.poset != spec.sub_poset || outer.poset != spec.ambient_poset)
    fail(Errc::PosetMismatch, "configurations do not match the gluing spec");
  if (!same_quiver(outer.quiver, inner.quiver))
    fail(Errc::QuiverMismatch, "substitute across quivers");
  if (outer.field != inner.field) fail(Errc::FieldMismatch, "substitute");
  GluedPoset glued = glue_posets(spec);
  const FinitePoset& pi_ = glued.poset;   // (I, <=)
  const FinitePoset& pk = outer.poset;    // (K, <|)
  const FinitePoset& pj = inner.poset;    // (J, <~)
  Mask lmask = spec.glue_fset;

  FinitePoset pl = pk.restrict(lmask);
  Configuration outer_sub = subconfiguration(outer, lmask);
  Configuration inner_quot = quotient_configuration(inner, pl, spec.psi);

  // Re-twist the outer configuration so that its L-subconfiguration
  // literally equals inner's psi-quotient.
  Configuration dot = outer;
  std::map<Mask, RepMor> beta;  // keyed by K-masks inside L
  bool twisted = false;
  if (alpha) {
    if (alpha->source != outer_sub || alpha->target != inner_quot)
      fail(Errc::GluingMismatch, "alpha endpoints are not the L-restrictions");
    if (!is_isomorphism(*alpha))
      fail(Errc::GluingMismatch, "alpha is not an isomorphism");
    for (const auto& [ml, comp] : alpha->alphas)
      beta.emplace(translate_mask(ml, pl, pk), comp);
    dot = retwist(outer, beta);
    twisted = true;
  } else if (outer_sub != inner_quot) {
    fail(Errc::GluingMismatch,
         "L-restrictions disagree and no identification was given");
  }
  if (subconfiguration(dot, lmask) != inner_quot)
    fail(Errc::GluingMismatch, "re-twisted outer does not restrict to inner");

  // Index bookkeeping between the three posets.
  Mask jmask_i = 0;  // J inside I
  for (const auto& s : pj.elements()) jmask_i |= Mask(1) << pi_.index_of(s);
  std::vector<int> phi_idx(size_t(pi_.size()));  // I index -> K index
  for (int i = 0; i < pi_.size(); ++i)
    phi_idx[size_t(i)] = pk.index_of(glued.phi.at(pi_.label(i)));

  auto pull_k = [&](Mask km) {  // phi^{-1} : K-masks to I-masks
    Mask m = 0;
    for (int i = 0; i < pi_.size(); ++i)
      if (km >> phi_idx[size_t(i)] & 1u) m |= Mask(1) << i;
    return m;
  };
  auto to_j = [&](Mask im) { return translate_mask(im & jmask_i, pi_, pj); };

  Mask kfull = pk.full_mask();
  const Rep& x = dot.sigma(kfull);

  // Steps 1-2 of the gluing construction: one subobject of X per s-set.
  SubobjectFamily fam{x, pi_, {}};
  for (Mask b : pi_.ssets()) {
    Mask pmask = 0, rmask = 0;
    for (int k = 0; k < pk.size(); ++k) {
      bool all_in = true, some_below = false;
      for (int i = 0; i < pi_.size(); ++i) {
        if (pk.leq(phi_idx[size_t(i)], k) && !(b >> i & 1u)) all_in = false;
        if ((b >> i & 1u) && pk.leq(k, phi_idx[size_t(i)])) some_below = true;
      }
      if (all_in) pmask |= Mask(1) << k;
      if (some_below) rmask |= Mask(1) << k;
    }
    Mask cmask = pull_k(rmask);
    RepMor to_x = dot.iota(rmask, kfull);
    if (b == cmask) {
      fam.table.emplace(b, image_subobject(to_x));
      continue;
    }
    Mask amask = pull_k(pmask);
    Mask d = to_j(amask), e = to_j(b), f = to_j(cmask);
    // sigma(B) = ker( pi'(F\D, F\E) o pi~(R, R\P) ), embedded via R.
    RepMor m = compose(inner.pi(f & ~d, f & ~e), dot.pi(rmask, rmask & ~pmask));
    KernelResult ker = kernel(m);
    fam.table.emplace(b, image_subobject(compose(to_x, ker.incl)));
  }
  Configuration result = build_from_subobjects(fam);

  // Witnesses.  The ambient of the result is literally X, so the
  // canonical isomorphism starts from the identity.
  Configuration r_quot = quotient_configuration(result, pk, glued.phi);
  ConfigMorphism omega = canonical_config_iso(r_quot, dot, RepMor::identity(x));
  ConfigMorphism quot_witness{r_quot, outer, {}};
  for (const auto& [a, comp] : omega.alphas) {
    auto it = beta.find(a);
    if (twisted && it != beta.end())
      quot_witness.alphas.emplace(a, compose(inverse(it->second), comp));
    else
      quot_witness.alphas.emplace(a, comp);
  }

  Configuration r_sub = subconfiguration(result, jmask_i);
  RepMor h_sub = omega.at(lmask);
  ConfigMorphism sub_witness = canonical_config_iso(r_sub, inner, h_sub);
  return {std::move(result), std::move(sub_witness), std::move(quot_witness)};
}

}  // namespace confcalc

#endif  // CONFCALC_CONFIGURATION_HPP
