#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace confcalc;
using testutil::Rng;

namespace {

FinitePoset chain123() {
  return FinitePoset::from_relations({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
}

FinitePoset vee() {  // 1 <= 3, 2 <= 3
  return FinitePoset::from_relations({"1", "2", "3"}, {{"1", "3"}, {"2", "3"}});
}

Mask lift(const FinitePoset& p, std::initializer_list<const char*> labels) {
  Mask m = 0;
  for (const char* s : labels) m |= Mask(1) << p.index_of(s);
  return m;
}

}  // namespace

TEST_CASE("validate_poset closure and errors") {
  SECTION("two-element chain") {
    FinitePoset p = validate_poset({"1", "2"}, {{"1", "2"}});
    CHECK(p.leq(p.index_of("1"), p.index_of("2")));
    CHECK_FALSE(p.leq(p.index_of("2"), p.index_of("1")));
  }
  SECTION("discrete poset") {
    FinitePoset p = validate_poset({"1", "2"}, {});
    CHECK_FALSE(p.leq(0, 1));
    CHECK(p.leq(0, 0));
  }
  SECTION("2-cycle is rejected") {
    CHECK_THROWS_MATCHES(
        validate_poset({"1", "2"}, {{"1", "2"}, {"2", "1"}}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.code() == Errc::AntisymmetryViolation;
        }));
  }
  SECTION("unknown label") {
    CHECK_THROWS_MATCHES(validate_poset({"1"}, {{"1", "9"}}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::UnknownElement;
                         }));
  }
  SECTION("closure is taken") {
    FinitePoset p = validate_poset({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
    CHECK(p.leq(p.index_of("1"), p.index_of("3")));
  }
}

TEST_CASE("s-, q-, f-set enumeration") {
  SECTION("discrete two elements: all subsets are s-sets") {
    FinitePoset p = validate_poset({"1", "2"}, {});
    CHECK(p.ssets().size() == 4);
  }
  SECTION("chain s-sets are prefixes") {
    FinitePoset p = chain123();
    std::vector<Mask> expect = {0, lift(p, {"1"}), lift(p, {"1", "2"}),
                                p.full_mask()};
    std::sort(expect.begin(), expect.end());
    CHECK(p.ssets() == expect);
  }
  SECTION("vee s-sets") {
    FinitePoset p = vee();
    CHECK(p.ssets().size() == 5);
    CHECK(p.is_sset(lift(p, {"1", "2"})));
    CHECK_FALSE(p.is_sset(lift(p, {"3"})));
  }
  SECTION("chain q-sets are suffixes") {
    FinitePoset p = chain123();
    std::vector<Mask> expect = {0, lift(p, {"3"}), lift(p, {"2", "3"}),
                                p.full_mask()};
    std::sort(expect.begin(), expect.end());
    CHECK(p.qsets() == expect);
  }
  SECTION("chain f-sets are the seven intervals") {
    FinitePoset p = chain123();
    CHECK(p.fsets().size() == 7);
    CHECK_FALSE(p.is_fset(lift(p, {"1", "3"})));
  }
  SECTION("discrete f-sets are everything") {
    FinitePoset p = validate_poset({"1", "2", "3", "4"}, {});
    CHECK(p.fsets().size() == 16);
  }
}

TEST_CASE("G- and H-pairs on the chain") {
  FinitePoset p = chain123();
  CHECK(p.is_g_pair(lift(p, {"1"}), lift(p, {"1", "2"})));
  CHECK_FALSE(p.is_g_pair(lift(p, {"2"}), lift(p, {"1", "2"})));
  for (Mask j : p.fsets()) {
    CHECK(p.is_g_pair(j, j));
    CHECK(p.is_h_pair(j, j));
  }
}

TEST_CASE("domination") {
  FinitePoset disc = validate_poset({"1", "2"}, {});
  FinitePoset chain = validate_poset({"1", "2"}, {{"1", "2"}});
  SECTION("discrete is dominated by the chain, one step") {
    auto rep = domination(disc, chain);
    CHECK(rep.dominates);
    CHECK(rep.steps == 1);
  }
  SECTION("identity domination") {
    auto rep = domination(chain, chain);
    CHECK(rep.dominates);
    CHECK(rep.steps == 0);
  }
  SECTION("reversed chain does not dominate") {
    FinitePoset rev = validate_poset({"1", "2"}, {{"2", "1"}});
    CHECK_FALSE(domination(chain, rev).dominates);
  }
  SECTION("different element sets") {
    FinitePoset other = validate_poset({"1", "3"}, {});
    CHECK_THROWS_AS(domination(disc, other), Error);
  }
}

TEST_CASE("covering pairs and removal") {
  FinitePoset p = chain123();
  int i1 = p.index_of("1"), i2 = p.index_of("2"), i3 = p.index_of("3");
  SECTION("chain covers") {
    CHECK(p.covering_pairs() ==
          std::vector<std::pair<int, int>>{{i1, i2}, {i2, i3}});
  }
  SECTION("discrete has none") {
    CHECK(validate_poset({"1", "2"}, {}).covering_pairs().empty());
  }
  SECTION("removal of a covering pair") {
    FinitePoset q = p.remove_covering_pair(i1, i2);
    CHECK_FALSE(q.leq(i1, i2));
    CHECK(q.leq(i1, i3));
    CHECK(q.leq(i2, i3));
    CHECK(domination(q, p).steps == 1);
  }
  SECTION("non-covering pair is rejected") {
    CHECK_THROWS_MATCHES(p.remove_covering_pair(i1, i3), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::NotCoveringPair;
                         }));
  }
}

TEST_CASE("interpolation between dominated orders") {
  FinitePoset fine = validate_poset({"1", "2", "3"}, {});
  FinitePoset coarse = chain123();
  SECTION("chain to discrete") {
    auto chain = interpolate(fine, coarse);
    REQUIRE(chain.size() == 4);
    CHECK(chain.front() == coarse);
    CHECK(chain.back() == fine);
    for (size_t k = 0; k + 1 < chain.size(); ++k)
      CHECK(domination(chain[k + 1], chain[k]).steps == 1);
  }
  SECTION("zero steps") {
    auto chain = interpolate(coarse, coarse);
    CHECK(chain == std::vector<FinitePoset>{coarse});
  }
  SECTION("one step") {
    FinitePoset mid = coarse.remove_covering_pair(coarse.index_of("1"),
                                                  coarse.index_of("2"));
    auto chain = interpolate(mid, coarse);
    CHECK(chain == std::vector<FinitePoset>{coarse, mid});
  }
  SECTION("not dominating") {
    CHECK_THROWS_AS(interpolate(coarse, fine), Error);
  }
}

TEST_CASE("linear extension counts") {
  CHECK(chain123().count_linear_extensions() == 1);
  CHECK(validate_poset({"1", "2", "3"}, {}).count_linear_extensions() == 6);
  CHECK(vee().count_linear_extensions() == 2);
}

TEST_CASE("poset gluing") {
  SECTION("two points into the bottom of a chain") {
    GluingSpec spec{validate_poset({"a", "b"}, {}),
                    validate_poset({"l", "2"}, {{"l", "2"}}),
                    0,  // set below
                    {{"a", "l"}, {"b", "l"}}};
    spec.glue_fset = Mask(1) << spec.ambient_poset.index_of("l");
    GluedPoset g = glue_posets(spec);
    CHECK(g.poset.elements() == std::vector<std::string>{"2", "a", "b"});
    int a = g.poset.index_of("a"), b = g.poset.index_of("b"),
        two = g.poset.index_of("2");
    CHECK(g.poset.leq(a, two));
    CHECK(g.poset.leq(b, two));
    CHECK_FALSE(g.poset.leq(a, b));
    CHECK_FALSE(g.poset.leq(b, a));
    CHECK(g.phi.at("a") == "l");
    CHECK(g.phi.at("2") == "2");
  }
  SECTION("gluing over the whole of K is a relabelling") {
    FinitePoset k = chain123();
    GluingSpec spec{validate_poset({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}}),
                    k,
                    k.full_mask(),
                    {{"x", "1"}, {"y", "2"}, {"z", "3"}}};
    GluedPoset g = glue_posets(spec);
    CHECK(g.poset == spec.sub_poset);
  }
  SECTION("singleton glue matches the direct four-case substitution order") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      FinitePoset pj = testutil::random_poset(rng, testutil::rand_int(rng, 1, 3));
      // Ambient on disjoint labels x, y, z with l = x as the slot.
      FinitePoset pk = [&] {
        auto base = testutil::random_poset(rng, testutil::rand_int(rng, 1, 3));
        std::vector<std::string> labels;
        for (const auto& s : base.elements()) labels.push_back("k" + s);
        std::vector<std::pair<std::string, std::string>> rel;
        for (auto [s, t] : base.relation_pairs()) rel.emplace_back("k" + s, "k" + t);
        return FinitePoset::from_relations(labels, rel);
      }();
      int l = testutil::rand_int(rng, 0, pk.size() - 1);
      GluingSpec spec{pj, pk, Mask(1) << l, {}};
      for (const auto& s : pj.elements()) spec.psi[s] = pk.label(l);
      GluedPoset g = glue_posets(spec);
      // Direct evaluation of the singleton substitution order.
      for (const auto& sa : g.poset.elements())
        for (const auto& sb : g.poset.elements()) {
          bool aj = std::find(pj.elements().begin(), pj.elements().end(), sa) !=
                    pj.elements().end();
          bool bj = std::find(pj.elements().begin(), pj.elements().end(), sb) !=
                    pj.elements().end();
          bool expect;
          if (aj && bj)
            expect = pj.leq(pj.index_of(sa), pj.index_of(sb));
          else if (!aj && !bj)
            expect = pk.leq(pk.index_of(sa), pk.index_of(sb));
          else if (aj)
            expect = pk.leq(l, pk.index_of(sb));
          else
            expect = pk.leq(pk.index_of(sa), l);
          CHECK(g.poset.leq(g.poset.index_of(sa), g.poset.index_of(sb)) == expect);
        }
    }
  }
  SECTION("invalid gluing: psi not surjective") {
    FinitePoset pk = validate_poset({"l", "m"}, {});
    GluingSpec spec{validate_poset({"a"}, {}), pk,
                    pk.full_mask(), {{"a", "l"}}};
    CHECK_THROWS_MATCHES(glue_posets(spec), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::InvalidGluing;
                         }));
  }
}

TEST_CASE("random poset properties") {
  Rng rng(20240503);
  for (int trial = 0; trial < 200; ++trial) {
    FinitePoset p = testutil::random_poset(rng, testutil::rand_int(rng, 1, 6));
    auto ss = p.ssets();
    auto fs = p.fsets();

    // s-sets form a topology containing {} and I.
    CHECK(p.is_sset(0));
    CHECK(p.is_sset(p.full_mask()));
    for (Mask a : ss)
      for (Mask b : ss) {
        CHECK(p.is_sset(a & b));
        CHECK(p.is_sset(a | b));
      }

    // J s-set iff complement q-set, over every subset.
    for (Mask m = 0;; ++m) {
      CHECK(p.is_sset(m) == p.is_qset(p.full_mask() & ~m));
      if (m == p.full_mask()) break;
    }

    // Every f-set is K \ J for s-sets J c K (constructive route).
    for (Mask f : fs) {
      Mask k = 0;
      for (int e : mask_elements(f)) k |= p.down_set(e);
      Mask j = k & ~f;
      CHECK(p.is_sset(k));
      CHECK(p.is_sset(j));
      CHECK((k & ~j) == f);
    }

    // f-sets are meet-closed.
    for (Mask a : fs)
      for (Mask b : fs) CHECK(p.is_fset(a & b));

    // Order recovery from s-sets.
    for (int i = 0; i < p.size(); ++i)
      for (int j = 0; j < p.size(); ++j) {
        bool in_all = true;
        for (Mask s : ss)
          if ((s >> j & 1u) && !(s >> i & 1u)) in_all = false;
        CHECK(p.leq(i, j) == in_all);
      }
  }
}

TEST_CASE("G/H pair properties, exhaustive on small random posets") {
  Rng rng(20240504);
  for (int trial = 0; trial < 60; ++trial) {
    FinitePoset p = testutil::random_poset(rng, testutil::rand_int(rng, 1, 5));
    auto fs = p.fsets();
    for (Mask j : fs)
      for (Mask k : fs) {
        // (a) G-pair iff complement H-pair, over contained pairs.
        if ((j & ~k) == 0)
          CHECK(p.is_g_pair(j, k) == p.is_h_pair(k, k & ~j));
        for (Mask l : fs) {
          if (p.is_g_pair(j, k) && p.is_g_pair(k, l))  // (b)
            CHECK(p.is_g_pair(j, l));
          if (p.is_h_pair(j, k) && p.is_h_pair(k, l))  // (c)
            CHECK(p.is_h_pair(j, l));
          if (p.is_g_pair(j, k) && p.is_h_pair(k, l)) {  // (d)
            CHECK(p.is_h_pair(j, j & l));
            CHECK(p.is_g_pair(j & l, l));
          }
        }
      }
  }
}

TEST_CASE("coarsening shrinks the f-set and pair collections") {
  Rng rng(20240505);
  for (int trial = 0; trial < 50; ++trial) {
    FinitePoset coarse = testutil::random_poset(rng, testutil::rand_int(rng, 2, 5));
    auto cps = coarse.covering_pairs();
    if (cps.empty()) continue;
    auto [i, j] = cps[size_t(testutil::rand_int(rng, 0, int(cps.size()) - 1))];
    FinitePoset fine = coarse.remove_covering_pair(i, j);
    for (Mask m = 0;; ++m) {
      if (coarse.is_fset(m)) CHECK(fine.is_fset(m));
      if (m == coarse.full_mask()) break;
    }
    for (auto [a, b] : coarse.g_pairs()) CHECK(fine.is_g_pair(a, b));
    for (auto [a, b] : coarse.h_pairs()) CHECK(fine.is_h_pair(a, b));
  }
}
