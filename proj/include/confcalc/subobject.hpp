#ifndef CONFCALC_SUBOBJECT_HPP
#define CONFCALC_SUBOBJECT_HPP

#include <string>
#include <utility>
#include <vector>

#include "confcalc/error.hpp"
#include "confcalc/poset.hpp"
#include "confcalc/quiver.hpp"

namespace confcalc {

/// Canonical-form subobject of a fixed representation: per-vertex column
/// bases in canonical (column-reduced) form, closed under the arrow
/// action.  Canonicity makes subobject equality literal matrix equality.
struct SubobjectCF {
  Rep ambient;
  std::vector<Matrix> bases;  // one per vertex, canonical

  int dim(int v) const { return bases[v].cols(); }
  int total_dim() const {
    int t = 0;
    for (const auto& b : bases) t += b.cols();
    return t;
  }

  bool operator==(const SubobjectCF& o) const {
    return ambient == o.ambient && bases == o.bases;
  }
  bool operator!=(const SubobjectCF& o) const { return !(*this == o); }
};

/// Canonicalizes the given per-vertex spans and checks closure under the
/// arrow action.
inline SubobjectCF make_subobject(const Rep& ambient,
                                  const std::vector<Matrix>& spans) {
  const Quiver& q = *ambient.quiver();
  if (spans.size() != ambient.dims().size())
    fail(Errc::InvalidSubobject, "span table size");
  std::vector<Matrix> bases;
  for (size_t v = 0; v < spans.size(); ++v) {
    if (spans[v].rows() != ambient.dim(int(v)) ||
        spans[v].field() != ambient.field())
      fail(Errc::InvalidSubobject,
           "span at vertex " + q.vertices()[v] + " has wrong ambient");
    bases.push_back(column_space_basis(spans[v]));
  }
  for (size_t a = 0; a < q.arrows().size(); ++a) {
    int b = q.vertex_index(q.arrows()[a].from);
    int e = q.vertex_index(q.arrows()[a].to);
    Matrix mapped = ambient.mat(int(a)) * bases[b];
    if (!solve(bases[e], mapped))
      fail(Errc::InvalidSubobject,
           "not closed under arrow " + q.arrows()[a].name);
  }
  return {ambient, std::move(bases)};
}

inline SubobjectCF zero_subobject(const Rep& ambient) {
  std::vector<Matrix> spans;
  for (size_t v = 0; v < ambient.dims().size(); ++v)
    spans.emplace_back(ambient.field(), ambient.dim(int(v)), 0);
  return make_subobject(ambient, spans);
}

inline SubobjectCF full_subobject(const Rep& ambient) {
  std::vector<Matrix> spans;
  for (size_t v = 0; v < ambient.dims().size(); ++v)
    spans.push_back(Matrix::identity(ambient.field(), ambient.dim(int(v))));
  return make_subobject(ambient, spans);
}

/// Canonical image of a morphism as a subobject of its target.
inline SubobjectCF image_subobject(const RepMor& f) {
  return make_subobject(f.target(), f.mats());
}

/// The subobject as a representation in its own right, with its
/// inclusion into the ambient.
inline std::pair<Rep, RepMor> subobject_as_rep(const SubobjectCF& s) {
  const Rep& x = s.ambient;
  const Quiver& q = *x.quiver();
  std::vector<int> dims;
  for (const auto& b : s.bases) dims.push_back(b.cols());
  std::vector<Matrix> mats;
  for (size_t a = 0; a < q.arrows().size(); ++a) {
    int b = q.vertex_index(q.arrows()[a].from);
    int e = q.vertex_index(q.arrows()[a].to);
    mats.push_back(solve_unique(s.bases[e], x.mat(int(a)) * s.bases[b]));
  }
  Rep rep(x.quiver(), x.field(), std::move(dims), std::move(mats));
  RepMor incl(rep, x, s.bases);
  return {std::move(rep), std::move(incl)};
}

inline bool subobject_contains(const SubobjectCF& big, const SubobjectCF& small) {
  if (big.ambient != small.ambient)
    fail(Errc::AmbientMismatch, "containment across different ambients");
  for (size_t v = 0; v < big.bases.size(); ++v)
    if (!solve(big.bases[v], small.bases[v])) return false;
  return true;
}

/// Per-vertex meet and join; closure under arrows is inherited from the
/// inputs, outputs canonical.
inline std::pair<SubobjectCF, SubobjectCF> sub_meet_join(const SubobjectCF& s,
                                                         const SubobjectCF& t) {
  if (s.ambient != t.ambient)
    fail(Errc::AmbientMismatch, "meet/join across different ambients");
  std::vector<Matrix> meet, join;
  for (size_t v = 0; v < s.bases.size(); ++v) {
    auto [m, j] = subspace_meet_join(s.bases[v], t.bases[v]);
    meet.push_back(std::move(m));
    join.push_back(std::move(j));
  }
  return {make_subobject(s.ambient, meet), make_subobject(s.ambient, join)};
}

inline void require_multiplicity_free_nilpotent(const Rep& x) {
  for (size_t v = 0; v < x.dims().size(); ++v)
    if (x.dim(int(v)) > 1)
      fail(Errc::NotMultiplicityFree,
           "dimension " + std::to_string(x.dim(int(v))) + " at vertex " +
               x.quiver()->vertices()[v]);
  if (!is_nilpotent(x)) fail(Errc::NotNilpotent, "representation has a nonzero cycle");
}

/// All subrepresentations of a multiplicity-free nilpotent rep.  These
/// are exactly the vertex-support subsets of supp(X) closed under the
/// nonzero arrows, listed by ascending support bitmask.
inline std::vector<SubobjectCF> enumerate_subobjects(const Rep& x) {
  require_multiplicity_free_nilpotent(x);
  const Quiver& q = *x.quiver();
  int nv = static_cast<int>(q.vertices().size());
  Mask supp = 0;
  for (int v = 0; v < nv; ++v)
    if (x.dim(v) == 1) supp |= Mask(1) << v;
  std::vector<std::pair<int, int>> nonzero_arrows;  // (from, to) vertex indices
  for (size_t a = 0; a < q.arrows().size(); ++a)
    if (!x.mat(int(a)).is_zero())
      nonzero_arrows.emplace_back(q.vertex_index(q.arrows()[a].from),
                                  q.vertex_index(q.arrows()[a].to));
  std::vector<SubobjectCF> out;
  for (Mask m = 0;; ++m) {
    if ((m & ~supp) == 0) {
      bool closed = true;
      for (auto [b, e] : nonzero_arrows)
        if ((m >> b & 1u) && !(m >> e & 1u)) {
          closed = false;
          break;
        }
      if (closed) {
        std::vector<Matrix> spans;
        for (int v = 0; v < nv; ++v)
          spans.push_back((m >> v & 1u)
                              ? Matrix::identity(x.field(), 1)
                              : Matrix(x.field(), x.dim(v), 0));
        out.push_back(make_subobject(x, spans));
      }
    }
    if (m == supp || nv == 0) break;
  }
  return out;
}

inline Mask support_of(const SubobjectCF& s) {
  Mask m = 0;
  for (size_t v = 0; v < s.bases.size(); ++v)
    if (s.bases[v].cols() > 0) m |= Mask(1) << int(v);
  return m;
}

struct JhResult {
  FinitePoset poset;                     // on the support labels of X
  std::vector<std::pair<Mask, SubobjectCF>> sset_table;  // poset mask -> subobject
  const SubobjectCF& at(Mask m) const {
    for (const auto& [k, s] : sset_table)
      if (k == m) return s;
    fail(Errc::MissingEntry, "s-set not in table");
  }
};

/// The Jordan-Holder poset: i <= j iff every subobject support containing
/// j contains i.  The table realizes the bijection between s-sets and
/// subobjects.
inline JhResult jh_poset(const Rep& x) {
  const Quiver& q = *x.quiver();
  std::vector<SubobjectCF> subs = enumerate_subobjects(x);
  std::vector<int> supp_vertices;
  for (size_t v = 0; v < q.vertices().size(); ++v)
    if (x.dim(int(v)) == 1) supp_vertices.push_back(int(v));
  std::vector<std::string> labels;
  for (int v : supp_vertices) labels.push_back(q.vertices()[v]);
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i : supp_vertices)
    for (int j : supp_vertices) {
      bool below = true;
      for (const auto& s : subs) {
        Mask m = support_of(s);
        if ((m >> j & 1u) && !(m >> i & 1u)) {
          below = false;
          break;
        }
      }
      if (below) rel.emplace_back(q.vertices()[i], q.vertices()[j]);
    }
  FinitePoset poset = FinitePoset::from_relations(labels, rel);
  std::vector<std::pair<Mask, SubobjectCF>> table;
  for (Mask pm : poset.ssets()) {
    Mask vm = 0;  // translate poset mask to quiver-vertex mask
    for (int e : mask_elements(pm))
      vm |= Mask(1) << q.vertex_index(poset.label(e));
    bool found = false;
    for (const auto& s : subs)
      if (support_of(s) == vm) {
        table.emplace_back(pm, s);
        found = true;
        break;
      }
    if (!found)
      fail(Errc::InvalidConfiguration,
           "s-set without matching subobject; Jordan-Holder bijection broken");
  }
  return {std::move(poset), std::move(table)};
}

/// The unique composition series realizing a total order, when the order
/// extends the Jordan-Holder poset.
inline std::vector<SubobjectCF> composition_series(const Rep& x,
                                                   const FinitePoset& total) {
  JhResult jh = jh_poset(x);
  if (total.elements() != jh.poset.elements())
    fail(Errc::ElementMismatch, "order is not on supp(X)");
  if (!total.is_total_order())
    fail(Errc::IncompatibleOrder, "order is not total");
  if (!domination(jh.poset, total).dominates)
    fail(Errc::IncompatibleOrder, "order does not extend the Jordan-Holder poset");
  // Elements in increasing total order.
  std::vector<int> order(size_t(total.size()));
  for (int e = 0; e < total.size(); ++e) {
    int rank = popcount(total.down_set(e)) - 1;
    order[size_t(rank)] = e;
  }
  std::vector<SubobjectCF> chain;
  Mask m = 0;
  chain.push_back(jh.at(0));
  for (int e : order) {
    m |= Mask(1) << e;
    chain.push_back(jh.at(m));
  }
  return chain;
}

}  // namespace confcalc

#endif  // CONFCALC_SUBOBJECT_HPP
