#ifndef CONFCALC_POSET_HPP
#define CONFCALC_POSET_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "confcalc/error.hpp"

namespace confcalc {

/// Subset of poset elements as a bitmask over element positions.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

inline std::vector<int> mask_elements(Mask m) {
  std::vector<int> v;
  for (int i = 0; m >> i; ++i)
    if (m >> i & 1u) v.push_back(i);
  return v;
}

struct DominationReport {
  bool dominates = false;
  int steps = 0;
  std::vector<std::pair<int, int>> witness_pairs;  // i <| j but not i <= j
};

/// Finite partial order on at most 16 labelled elements.  Labels are
/// arbitrary strings; element positions follow the sorted label order.
/// Instances are immutable and all operations are pure.
class FinitePoset {
 public:
  static constexpr int kMaxElements = 16;

  /// Builds the reflexive-transitive closure of the given relation pairs
  /// and checks it is antisymmetric.
  static FinitePoset from_relations(
      std::vector<std::string> elements,
      const std::vector<std::pair<std::string, std::string>>& relations) {
    std::sort(elements.begin(), elements.end());
    for (size_t i = 1; i < elements.size(); ++i)
      if (elements[i] == elements[i - 1])
        fail(Errc::DuplicateElement, elements[i]);
    if (static_cast<int>(elements.size()) > kMaxElements)
      fail(Errc::TooLarge, "more than 16 elements");
    int n = static_cast<int>(elements.size());
    std::vector<Mask> up(n, 0);
    for (int i = 0; i < n; ++i) up[i] = Mask(1) << i;
    auto index = [&](const std::string& s) {
      auto it = std::lower_bound(elements.begin(), elements.end(), s);
      if (it == elements.end() || *it != s) fail(Errc::UnknownElement, s);
      return static_cast<int>(it - elements.begin());
    };
    for (const auto& [a, b] : relations) up[index(a)] |= Mask(1) << index(b);
    // Transitive closure: propagate successor masks to a fixed point.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        Mask acc = up[i];
        for (int j : mask_elements(up[i])) acc |= up[j];
        if (acc != up[i]) {
          up[i] = acc;
          changed = true;
        }
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j : mask_elements(up[i]))
        if (j != i && (up[j] >> i & 1u))
          fail(Errc::AntisymmetryViolation,
               elements[i] + " <= " + elements[j] + " <= " + elements[i]);
    return FinitePoset(std::move(elements), std::move(up));
  }

  static FinitePoset discrete(std::vector<std::string> elements) {
    return from_relations(std::move(elements), {});
  }

  /// Chain in the listed order: elements[0] <= elements[1] <= ...
  static FinitePoset chain(const std::vector<std::string>& elements) {
    std::vector<std::pair<std::string, std::string>> rel;
    for (size_t i = 0; i + 1 < elements.size(); ++i)
      rel.emplace_back(elements[i], elements[i + 1]);
    return from_relations(elements, rel);
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& elements() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }

  int index_of(const std::string& s) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), s);
    if (it == labels_.end() || *it != s) fail(Errc::UnknownElement, s);
    return static_cast<int>(it - labels_.begin());
  }

  bool leq(int i, int j) const { return up_[i] >> j & 1u; }
  Mask up_set(int i) const { return up_[i]; }    // {j : i <= j}
  Mask down_set(int j) const { return down_[j]; }  // {i : i <= j}
  Mask full_mask() const { return size() == 0 ? 0 : (Mask(1) << size()) - 1; }

  bool is_sset(Mask j) const {
    for (int e : mask_elements(j))
      if ((down_[e] & ~j) != 0) return false;
    return true;
  }

  bool is_qset(Mask j) const {
    for (int e : mask_elements(j))
      if ((up_[e] & ~j) != 0) return false;
    return true;
  }

  bool is_fset(Mask j) const {
    Mask rest = full_mask() & ~j;
    for (int e : mask_elements(rest))
      if ((down_[e] & j) != 0 && (up_[e] & j) != 0) return false;
    return true;
  }

  std::vector<Mask> ssets() const { return subsets_where(&FinitePoset::is_sset); }
  std::vector<Mask> qsets() const { return subsets_where(&FinitePoset::is_qset); }
  std::vector<Mask> fsets() const { return subsets_where(&FinitePoset::is_fset); }

  /// (J, K) in G: f-sets with J subset of K and no k in K \ J below any
  /// j in J.  Such pairs carry the injective morphisms of a configuration.
  bool is_g_pair(Mask j, Mask k) const {
    if ((j & ~k) != 0 || !is_fset(j) || !is_fset(k)) return false;
    for (int e : mask_elements(k & ~j))
      if ((up_[e] & j) != 0) return false;
    return true;
  }

  /// (J, K) in H: f-sets with K subset of J and no element of J \ K above
  /// any k in K.  Such pairs carry the surjective morphisms.
  bool is_h_pair(Mask j, Mask k) const {
    if ((k & ~j) != 0 || !is_fset(j) || !is_fset(k)) return false;
    for (int e : mask_elements(j & ~k))
      if ((down_[e] & k) != 0) return false;
    return true;
  }

  std::vector<std::pair<Mask, Mask>> g_pairs() const {
    std::vector<std::pair<Mask, Mask>> out;
    auto fs = fsets();
    for (Mask j : fs)
      for (Mask k : fs)
        if (is_g_pair(j, k)) out.emplace_back(j, k);
    return out;
  }

  std::vector<std::pair<Mask, Mask>> h_pairs() const {
    std::vector<std::pair<Mask, Mask>> out;
    auto fs = fsets();
    for (Mask j : fs)
      for (Mask k : fs)
        if (is_h_pair(j, k)) out.emplace_back(j, k);
    return out;
  }

  /// Covering pairs (i, j): i != j, i <= j, nothing strictly between.
  std::vector<std::pair<int, int>> covering_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j) {
        if (i == j || !leq(i, j)) continue;
        Mask between = up_[i] & down_[j] & ~(Mask(1) << i) & ~(Mask(1) << j);
        if (between == 0) out.emplace_back(i, j);
      }
    return out;
  }

  /// Drops exactly the relation pair (i, j); valid only for covering
  /// pairs, where the result is again a partial order one step finer.
  FinitePoset remove_covering_pair(int i, int j) const {
    auto cps = covering_pairs();
    if (std::find(cps.begin(), cps.end(), std::make_pair(i, j)) == cps.end())
      fail(Errc::NotCoveringPair, label(i) + " -> " + label(j));
    std::vector<Mask> up = up_;
    up[i] &= ~(Mask(1) << j);
    return FinitePoset(labels_, std::move(up));
  }

  /// Induced subposet on the elements of the mask.
  FinitePoset restrict(Mask m) const {
    std::vector<std::string> labels;
    std::vector<int> old_idx = mask_elements(m);
    for (int e : old_idx) labels.push_back(labels_[e]);
    std::vector<Mask> up(old_idx.size(), 0);
    for (size_t a = 0; a < old_idx.size(); ++a)
      for (size_t b = 0; b < old_idx.size(); ++b)
        if (leq(old_idx[a], old_idx[b])) up[a] |= Mask(1) << b;
    return FinitePoset(std::move(labels), std::move(up));
  }

  bool is_total_order() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (!leq(i, j) && !leq(j, i)) return false;
    return true;
  }

  /// Exact count of total orders containing this order, |I| <= 10.
  long long count_linear_extensions() const {
    if (size() > 10) fail(Errc::TooLarge, "linear extension count needs |I| <= 10");
    std::vector<long long> memo(size_t(1) << size(), 0);
    memo[0] = 1;
    for (Mask m = 1; m <= full_mask(); ++m) {
      if (!is_sset(m)) continue;
      long long total = 0;
      for (int e : mask_elements(m)) {
        Mask prev = m & ~(Mask(1) << e);
        if (is_sset(prev) && (up_[e] & m & ~(Mask(1) << e)) == 0)
          total += memo[prev];
      }
      memo[m] = total;
    }
    return memo[full_mask()];
  }

  bool operator==(const FinitePoset& o) const {
    return labels_ == o.labels_ && up_ == o.up_;
  }
  bool operator!=(const FinitePoset& o) const { return !(*this == o); }

  /// All relation pairs (label, label) with i <= j, reflexive included,
  /// in lexicographic position order.
  std::vector<std::pair<std::string, std::string>> relation_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (leq(i, j)) out.emplace_back(labels_[i], labels_[j]);
    return out;
  }

 private:
  FinitePoset(std::vector<std::string> labels, std::vector<Mask> up)
      : labels_(std::move(labels)), up_(std::move(up)) {
    down_.assign(labels_.size(), 0);
    for (size_t i = 0; i < labels_.size(); ++i)
      for (int j : mask_elements(up_[i])) down_[j] |= Mask(1) << i;
  }

  std::vector<Mask> subsets_where(bool (FinitePoset::*pred)(Mask) const) const {
    std::vector<Mask> out;
    for (Mask m = 0;; ++m) {
      if ((this->*pred)(m)) out.push_back(m);
      if (m == full_mask()) break;
    }
    return out;
  }

  std::vector<std::string> labels_;
  std::vector<Mask> up_, down_;
};

/// Validating constructor mirroring the poset file format.
inline FinitePoset validate_poset(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& relations) {
  return FinitePoset::from_relations(std::move(elements), relations);
}

/// Does coarse dominate fine, i.e. i <=_fine j implies i <=_coarse j?
/// Steps count the extra comparable pairs of the coarser order.
inline DominationReport domination(const FinitePoset& fine,
                                   const FinitePoset& coarse) {
  if (fine.elements() != coarse.elements())
    fail(Errc::ElementMismatch, "posets on different element sets");
  DominationReport rep;
  rep.dominates = true;
  for (int i = 0; i < fine.size(); ++i)
    for (int j = 0; j < fine.size(); ++j) {
      if (fine.leq(i, j) && !coarse.leq(i, j)) rep.dominates = false;
      if (coarse.leq(i, j) && !fine.leq(i, j)) rep.witness_pairs.emplace_back(i, j);
    }
  rep.steps = static_cast<int>(rep.witness_pairs.size());
  return rep;
}

/// Chain of partial orders from coarse down to fine, consecutive entries
/// differing by one covering-pair removal.  Deterministic: each step
/// removes the lexicographically least removable pair staying above fine.
inline std::vector<FinitePoset> interpolate(const FinitePoset& fine,
                                            const FinitePoset& coarse) {
  DominationReport rep = domination(fine, coarse);
  if (!rep.dominates) fail(Errc::NotDominating, "coarse does not dominate fine");
  std::vector<FinitePoset> chain{coarse};
  FinitePoset cur = coarse;
  while (cur != fine) {
    bool removed = false;
    for (auto [i, j] : cur.covering_pairs()) {
      if (fine.leq(i, j)) continue;
      cur = cur.remove_covering_pair(i, j);
      chain.push_back(cur);
      removed = true;
      break;
    }
    if (!removed)
      fail(Errc::NotDominating, "no removable covering pair; orders inconsistent");
  }
  return chain;
}

/// Gluing data: a poset (J, <~) substituted into the slot L of (K, <|)
/// along a surjective monotone psi : J -> L.
struct GluingSpec {
  FinitePoset sub_poset;      // (J, <~)
  FinitePoset ambient_poset;  // (K, <|)
  Mask glue_fset;             // L as a subset of K
  std::map<std::string, std::string> psi;  // J label -> L label
};

struct GluedPoset {
  FinitePoset poset;                       // (I, <=) with I = J u (K \ L)
  std::map<std::string, std::string> phi;  // I label -> K label
};

/// Builds the glued order on I = J u (K \ L) by the four-case rule and
/// verifies all structural invariants of the gluing.
inline GluedPoset glue_posets(const GluingSpec& spec) {
  const FinitePoset& pj = spec.sub_poset;
  const FinitePoset& pk = spec.ambient_poset;
  Mask lmask = spec.glue_fset;
  if ((lmask & ~pk.full_mask()) != 0 || !pk.is_fset(lmask))
    fail(Errc::InvalidGluing, "L is not an f-set of the ambient poset");
  // psi must be a surjective monotone map J -> L.
  Mask hit = 0;
  for (int a = 0; a < pj.size(); ++a) {
    auto it = spec.psi.find(pj.label(a));
    if (it == spec.psi.end())
      fail(Errc::InvalidGluing, "psi undefined on " + pj.label(a));
    int l = pk.index_of(it->second);
    if (!(lmask >> l & 1u))
      fail(Errc::InvalidGluing, "psi value " + it->second + " outside L");
    hit |= Mask(1) << l;
  }
  if (hit != lmask) fail(Errc::InvalidGluing, "psi is not surjective onto L");
  for (int a = 0; a < pj.size(); ++a)
    for (int b = 0; b < pj.size(); ++b)
      if (pj.leq(a, b) &&
          !pk.leq(pk.index_of(spec.psi.at(pj.label(a))),
                  pk.index_of(spec.psi.at(pj.label(b)))))
        fail(Errc::InvalidGluing, "psi is not monotone");

  std::vector<std::string> labels = pj.elements();
  for (int k = 0; k < pk.size(); ++k)
    if (!(lmask >> k & 1u)) labels.push_back(pk.label(k));
  {
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1])
        fail(Errc::InvalidGluing, "J and K \\ L share label " + sorted[i]);
  }

  // phi: J part goes through psi, the K \ L part is the identity.
  std::map<std::string, std::string> phi;
  for (int a = 0; a < pj.size(); ++a) phi[pj.label(a)] = spec.psi.at(pj.label(a));
  for (int k = 0; k < pk.size(); ++k)
    if (!(lmask >> k & 1u)) phi[pk.label(k)] = pk.label(k);

  auto in_j = [&](const std::string& s) {
    auto it = std::lower_bound(pj.elements().begin(), pj.elements().end(), s);
    return it != pj.elements().end() && *it == s;
  };
  auto rel_leq = [&](const std::string& a, const std::string& b) {
    bool aj = in_j(a), bj = in_j(b);
    if (aj && bj) return pj.leq(pj.index_of(a), pj.index_of(b));
    int ka = pk.index_of(phi.at(a)), kb = pk.index_of(phi.at(b));
    return pk.leq(ka, kb);
  };
  std::vector<std::pair<std::string, std::string>> rel;
  for (const auto& a : labels)
    for (const auto& b : labels)
      if (rel_leq(a, b)) rel.emplace_back(a, b);

  FinitePoset glued = [&] {
    try {
      return FinitePoset::from_relations(labels, rel);
    } catch (const Error& e) {
      fail(Errc::InvalidGluing, std::string("glued relation: ") + e.what());
    }
  }();
  // The four-case relation must already be closed; a closure that added
  // pairs would mean the inputs violated the gluing hypotheses.
  for (const auto& a : labels)
    for (const auto& b : labels)
      if (glued.leq(glued.index_of(a), glued.index_of(b)) != rel_leq(a, b))
        fail(Errc::InvalidGluing, "glued relation is not transitive as given");

  Mask jmask = 0;
  for (const auto& s : pj.elements()) jmask |= Mask(1) << glued.index_of(s);
  if (!glued.is_fset(jmask)) fail(Errc::InvalidGluing, "J is not an f-set of I");
  if (glued.restrict(jmask) != pj)
    fail(Errc::InvalidGluing, "glued order does not restrict to (J, <~)");
  for (const auto& a : labels)
    for (const auto& b : labels)
      if (glued.leq(glued.index_of(a), glued.index_of(b)) &&
          !pk.leq(pk.index_of(phi.at(a)), pk.index_of(phi.at(b))))
        fail(Errc::InvalidGluing, "phi is not monotone");
  return {std::move(glued), std::move(phi)};
}

/// Translates a subset between posets sharing (some) labels.
inline Mask translate_mask(Mask m, const FinitePoset& from, const FinitePoset& to) {
  Mask out = 0;
  for (int e : mask_elements(m)) out |= Mask(1) << to.index_of(from.label(e));
  return out;
}

inline std::vector<std::string> mask_labels(Mask m, const FinitePoset& p) {
  std::vector<std::string> out;
  for (int e : mask_elements(m)) out.push_back(p.label(e));
  return out;
}

inline std::string mask_to_string(Mask m, const FinitePoset& p) {
  std::string s = "{";
  bool first = true;
  for (int e : mask_elements(m)) {
    if (!first) s += ",";
    s += p.label(e);
    first = false;
  }
  return s + "}";
}

}  // namespace confcalc

#endif  // CONFCALC_POSET_HPP
