#ifndef CONFCALC_IMPROVE_HPP
#define CONFCALC_IMPROVE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confcalc/configuration.hpp"
#include "confcalc/error.hpp"
#include "confcalc/poset.hpp"
#include "confcalc/quiver.hpp"

namespace confcalc {

struct SplitReport {
  bool split = false;
  std::optional<RepMor> retraction;  // canonical, present iff split
};

namespace detail {

inline void require_covering_pair(const Configuration& c, int i, int j) {
  auto cps = c.poset.covering_pairs();
  if (std::find(cps.begin(), cps.end(), std::make_pair(i, j)) == cps.end())
    fail(Errc::NotCoveringPair,
         c.poset.label(i) + " -> " + c.poset.label(j));
}

}  // namespace detail

/// Splitness of 0 -> sigma({i}) -> sigma({i,j}) -> sigma({j}) -> 0 at a
/// covering pair, decided by solving for a retraction.
inline SplitReport split_pair_test(const Configuration& c, int i, int j) {
  detail::require_covering_pair(c, i, j);
  Mask mi = Mask(1) << i;
  Mask mij = mi | Mask(1) << j;
  auto r = retraction(c.iota(mi, mij));
  if (!r) return {false, std::nullopt};
  return {true, std::move(r)};
}

/// Best means no covering pair splits.
inline bool is_best(const Configuration& c) {
  for (auto [i, j] : c.poset.covering_pairs())
    if (split_pair_test(c, i, j).split) return false;
  return true;
}

struct ImprovementStep {
  std::pair<int, int> pair;              // covering pair removed
  std::vector<std::uint32_t> parameter;  // coefficients over the Hom basis
  Configuration result;                  // on the one-step-finer poset
};

/// One-step improvement at a split covering pair.  The two-element
/// improved configuration (base retraction shifted by the Hom parameter)
/// is substituted back into c; the output is re-twisted so its quotient
/// along the identity reproduces c entry for entry.
inline ImprovementStep one_step_improve(const Configuration& c, int i, int j,
                                        const std::vector<std::uint32_t>& parameter) {
  SplitReport rep = split_pair_test(c, i, j);
  if (!rep.split)
    fail(Errc::NotSplit, c.poset.label(i) + " -> " + c.poset.label(j));
  Mask mi = Mask(1) << i, mj = Mask(1) << j;
  Mask mij = mi | mj;
  const Rep& si = c.sigma(mi);
  const Rep& sj = c.sigma(mj);
  const Rep& sij = c.sigma(mij);
  std::vector<RepMor> hom = hom_space(sj, si);
  if (parameter.size() != hom.size())
    fail(Errc::BadParameterLength, std::to_string(parameter.size()) + " of " +
                                       std::to_string(hom.size()));
  RepMor f = hom_combination(sj, si, hom, parameter);
  const RepMor& incl_i = c.iota(mi, mij);
  const RepMor& proj_j = c.pi(mij, mj);
  // pi'(K,{i}) = r0 - f o pi(K,{j}); the section s is the unique solution
  // of s o pi(K,{j}) = id - iota o r0, and iota'({j},K) = s + iota o f.
  RepMor pi_i = *rep.retraction - compose(f, proj_j);
  RepMor defect = RepMor::identity(sij) - compose(incl_i, *rep.retraction);
  std::vector<Matrix> smats;
  for (size_t v = 0; v < defect.mats().size(); ++v)
    smats.push_back(solve_right_unique(proj_j.mat(int(v)), defect.mat(int(v))));
  RepMor section(sj, sij, std::move(smats));
  RepMor iota_j = section + compose(incl_i, f);

  // The improved two-element configuration on the discrete order.
  FinitePoset discrete =
      FinitePoset::discrete({c.poset.label(i), c.poset.label(j)});
  int di = discrete.index_of(c.poset.label(i));
  int dj = discrete.index_of(c.poset.label(j));
  Mask ni = Mask(1) << di, nj = Mask(1) << dj;
  Rep zero = Rep::zero(c.quiver, c.field);
  Configuration inner{discrete, c.quiver, c.field, {}, {}, {}};
  inner.objects = {{0, zero}, {ni, si}, {nj, sj}, {ni | nj, sij}};
  inner.iotas = {{{0, 0}, RepMor::identity(zero)},
                 {{0, ni}, RepMor::zero(zero, si)},
                 {{0, nj}, RepMor::zero(zero, sj)},
                 {{0, ni | nj}, RepMor::zero(zero, sij)},
                 {{ni, ni}, RepMor::identity(si)},
                 {{nj, nj}, RepMor::identity(sj)},
                 {{ni | nj, ni | nj}, RepMor::identity(sij)},
                 {{ni, ni | nj}, incl_i},
                 {{nj, ni | nj}, iota_j}};
  inner.pis = {{{0, 0}, RepMor::identity(zero)},
               {{ni, 0}, RepMor::zero(si, zero)},
               {{nj, 0}, RepMor::zero(sj, zero)},
               {{ni | nj, 0}, RepMor::zero(sij, zero)},
               {{ni, ni}, RepMor::identity(si)},
               {{nj, nj}, RepMor::identity(sj)},
               {{ni | nj, ni | nj}, RepMor::identity(sij)},
               {{ni | nj, ni}, pi_i},
               {{ni | nj, nj}, proj_j}};

  GluingSpec spec{discrete, c.poset, mij,
                  {{c.poset.label(i), c.poset.label(i)},
                   {c.poset.label(j), c.poset.label(j)}}};
  SubstitutionResult sub = substitute(c, inner, spec);

  // Transport along the quotient witness: the coarser part of the result
  // then agrees with c literally, not just up to isomorphism.
  std::map<Mask, RepMor> gamma;
  for (const auto& [a, comp] : sub.quot_witness.alphas) gamma.emplace(a, comp);
  Configuration improved = retwist(sub.result, gamma);

  std::map<std::string, std::string> id_phi;
  for (const auto& s : c.poset.elements()) id_phi[s] = s;
  if (quotient_configuration(improved, c.poset, id_phi) != c)
    fail(Errc::InvalidConfiguration,
         "improvement does not quotient back to its input");
  return {{i, j}, parameter, std::move(improved)};
}

/// All one-step improvements at a covering pair: empty when the pair is
/// not split, otherwise one step per element of Hom(sigma({j}),
/// sigma({i})), in lexicographic coefficient order.
inline std::vector<ImprovementStep> enumerate_improvements(
    const Configuration& c, int i, int j, long long max_enum = 10000) {
  detail::require_covering_pair(c, i, j);
  if (!split_pair_test(c, i, j).split) return {};
  Mask mi = Mask(1) << i, mj = Mask(1) << j;
  size_t dim = hom_space(c.sigma(mj), c.sigma(mi)).size();
  long long count = 1;
  for (size_t d = 0; d < dim; ++d) {
    count *= c.field.modulus();
    if (count > max_enum)
      fail(Errc::TooMany, "p^dim = " + std::to_string(count) + " exceeds cap " +
                              std::to_string(max_enum));
  }
  std::vector<ImprovementStep> out;
  std::vector<std::uint32_t> coeffs(dim, 0);
  for (long long it = 0; it < count; ++it) {
    out.push_back(one_step_improve(c, i, j, coeffs));
    for (size_t d = dim; d-- > 0;) {
      if (++coeffs[d] < c.field.modulus()) break;
      coeffs[d] = 0;
    }
  }
  return out;
}

struct BestSearchResult {
  Configuration best;
  std::vector<ImprovementStep> trail;
};

/// Greedy improvement to a best configuration: repeatedly remove the
/// lexicographically least splittable covering pair with the zero
/// parameter.  Terminates since each step strictly shrinks the order.
inline BestSearchResult best_search(const Configuration& c) {
  Configuration cur = c;
  std::vector<ImprovementStep> trail;
  for (;;) {
    bool advanced = false;
    for (auto [i, j] : cur.poset.covering_pairs()) {
      SplitReport rep = split_pair_test(cur, i, j);
      if (!rep.split) continue;
      size_t dim = hom_space(cur.sigma(Mask(1) << j), cur.sigma(Mask(1) << i)).size();
      ImprovementStep step =
          one_step_improve(cur, i, j, std::vector<std::uint32_t>(dim, 0));
      cur = step.result;
      trail.push_back(std::move(step));
      advanced = true;
      break;
    }
    if (!advanced) return {std::move(cur), std::move(trail)};
  }
}

}  // namespace confcalc

#endif  // CONFCALC_IMPROVE_HPP
