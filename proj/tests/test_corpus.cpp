#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dynes/corpus.hpp"

using namespace dynes;

#ifndef DYNES_CORPUS_DIR
#define DYNES_CORPUS_DIR "corpus"
#endif

TEST_CASE("the corpus catalog is complete and loads by name") {
  std::vector<std::string> expected = {
      "sigma_xi",  "xi_sigma",   "beta_gamma", "gamma_xi",
      "gamma_sigma", "rho_sigma", "rho_gamma",  "lemma1_delta",
      "lemma1_delta_prime", "lemma6_des", "fig2_ebes"};
  CHECK(corpus().size() == expected.size());
  for (const auto& name : expected) {
    const ExampleEntry& e = load_example(name);
    CHECK(e.name == name);
    CHECK(!e.provenance.empty());
    CHECK(!e.facts.empty());
  }
  CHECK_THROWS_AS(load_example("nope"), DynesError);
}

TEST_CASE("every corpus entry validates and every expected fact holds") {
  for (const auto& e : corpus()) {
    Structure s = e.structure();
    CHECK_MESSAGE(validate(s).ok, e.name);
    for (std::size_t i = 0; i < e.facts.size(); ++i)
      CHECK_MESSAGE(check_fact(s, e.facts[i]),
                    e.name << " fact #" << i << " failed");
  }
}

TEST_CASE("shipped corpus files are byte-identical to the embedded catalog") {
  for (const auto& e : corpus()) {
    std::ifstream in(std::string(DYNES_CORPUS_DIR) + "/" + e.name + ".est");
    REQUIRE_MESSAGE(in.good(), e.name << ".est missing on disk");
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK_MESSAGE(buf.str() == e.text, e.name << ".est drifted from catalog");
  }
}

TEST_CASE("catalog structures match their quoted relations") {
  {
    const Ebes x = std::get<Ebes>(load_example("xi_sigma").structure());
    CHECK(x.disabling == std::set<Disabling>{{0, 1}});  // e ~> f
    CHECK(x.bundles.empty());
  }
  {
    const Ges g = std::get<Ges>(load_example("gamma_sigma").structure());
    // b adds the self-cause a -> a
    CHECK(g.adds == std::set<Modifier>{{0, 1, 0}});
    CHECK(g.causes.empty());
    CHECK(g.conflict.empty());
  }
  {
    const Rces r = std::get<Rces>(load_example("rho_sigma").structure());
    CHECK(r.enablings.size() == 4);
    CHECK(r.enablings.count(Enabling{bit(1), bit(0) | bit(1)}) == 1);
  }
  {
    const Dces d = std::get<Dces>(load_example("lemma1_delta").structure());
    CHECK(d.drops == std::set<Modifier>{{2, 1, 3}});  // drop [c -> d] by b
    CHECK(d.adds == std::set<Modifier>{{2, 0, 3}});   // add  [c -> d] by a
    CHECK(d.causes.empty());
    CHECK(d.conflict.empty());
  }
  {
    const Des d = std::get<Des>(load_example("lemma6_des").structure());
    CHECK(d.bundles.size() == 6);
    for (const auto& b : d.bundles) {
      CHECK(d.alphabet.name(b.target) == "e");
      CHECK(popcount(b.members) == 2);
    }
  }
}
