#include <catch2/catch_amalgamated.hpp>

#include "confcalc/io.hpp"
#include "testutil.hpp"

using namespace confcalc;
using nlohmann::json;
using testutil::A2Fixtures;

TEST_CASE("poset documents") {
  json doc = json::parse(
      R"({"kind":"poset","elements":["1","2","3"],
          "relations":[["1","2"],["2","3"]]})");
  FinitePoset p = io::parse_poset(doc);
  CHECK(p.leq(p.index_of("1"), p.index_of("3")));
  SECTION("emit and reparse gives the same poset") {
    CHECK(io::parse_poset(io::poset_to_json(p)) == p);
  }
  SECTION("a 2-cycle fails with the antisymmetry invariant") {
    json bad = json::parse(
        R"({"kind":"poset","elements":["1","2"],
            "relations":[["1","2"],["2","1"]]})");
    CHECK_THROWS_MATCHES(io::parse_poset(bad), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::AntisymmetryViolation;
                         }));
  }
}

TEST_CASE("rep documents") {
  json doc = json::parse(
      R"({"kind":"rep",
          "quiver":{"vertices":["v1","v2"],"arrows":[["a","v1","v2"]],
                    "relations":[]},
          "field":{"p":2},
          "dims":{"v1":1,"v2":1},
          "mats":{"a":[[1]]}})");
  Rep r = io::parse_rep(doc);
  A2Fixtures fx;
  CHECK(r == fx.x_ind);
  SECTION("round trip") {
    CHECK(io::parse_rep(io::rep_to_json(r)) == r);
  }
  SECTION("morphism round trip") {
    RepMor incl(fx.s2, fx.x_ind,
                {Matrix(fx.f2, 1, 0), Matrix::identity(fx.f2, 1)});
    CHECK(io::parse_morphism(io::morphism_to_json(incl)) == incl);
  }
}

TEST_CASE("configuration documents") {
  A2Fixtures fx;
  Configuration c = testutil::a2_chain_config(fx.x_ind);
  json doc = io::configuration_to_json(c);
  SECTION("round trip is exact") {
    Configuration back = io::parse_configuration(doc);
    CHECK(back == c);
  }
  SECTION("emission is deterministic") {
    CHECK(io::dump_report(doc) ==
          io::dump_report(io::configuration_to_json(
              io::parse_configuration(doc))));
  }
  SECTION("missing pi entry is reported") {
    json broken = doc;
    broken["pis"].erase(broken["pis"].begin());
    CHECK_THROWS_MATCHES(io::parse_configuration(broken), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::MissingEntry;
                         }));
  }
}

TEST_CASE("family documents") {
  A2Fixtures fx;
  Configuration c = testutil::a2_chain_config(fx.x_ind);
  SubobjectFamily fam = extract_subobjects(c);
  json doc = io::family_to_json(fam);
  SubobjectFamily back = io::parse_family(doc);
  CHECK(back == fam);
  CHECK(build_from_subobjects(back) == c);
}

TEST_CASE("subset keys are canonical") {
  FinitePoset p = FinitePoset::discrete({"v1", "v2"});
  CHECK(io::subset_key(0, p) == "[]");
  CHECK(io::subset_key(p.full_mask(), p) == "[\"v1\",\"v2\"]");
  CHECK(io::parse_subset_key("[\"v2\"]", p) ==
        Mask(1) << p.index_of("v2"));
}

TEST_CASE("random configurations survive the document round trip") {
  testutil::Rng rng(20240901);
  for (int trial = 0; trial < 10; ++trial) {
    auto rc = testutil::random_config(rng, trial % 2 ? 2 : 3, 3, 4);
    json doc = io::configuration_to_json(rc.config);
    CHECK(io::parse_configuration(doc) == rc.config);
  }
}
