#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynes/corpus.hpp"
#include "dynes/equiv.hpp"
#include "dynes/generators.hpp"
#include "dynes/translate.hpp"

using namespace dynes;

namespace {

Structure ex(const std::string& name) { return load_example(name).structure(); }

}  // namespace

TEST_CASE("every structure is equivalent to itself under every kind") {
  for (const auto& e : corpus()) {
    Structure s = e.structure();
    for (auto kind : {EquivKind::trace(), EquivKind::config(), EquivKind::transition()})
      CHECK(equivalent(s, s, kind).equal);
    if (family_of(s) == Family::Dces)
      CHECK(equivalent(s, s, EquivKind::state()).equal);
  }
}

TEST_CASE("the order-sensitive DCES pair: transition-equal, state-unequal") {
  Structure delta = ex("lemma1_delta");
  Structure prime = ex("lemma1_delta_prime");
  CHECK(equivalent(delta, prime, EquivKind::transition()).equal);
  CHECK(equivalent(delta, prime, EquivKind::config()).equal);
  Verdict v = equivalent(delta, prime, EquivKind::state());
  CHECK(!v.equal);
  REQUIRE(v.witness.has_value());
  CHECK(witness_distinguishes(delta, prime, *v.witness));
}

TEST_CASE("a SES and its bundle translation are trace-equivalent") {
  Structure s = ex("sigma_xi");
  Structure d{ses_to_des(std::get<Ses>(s))};
  CHECK(equivalent(s, d, EquivKind::trace()).equal);
  CHECK(equivalent(s, d, EquivKind::config()).equal);
}

TEST_CASE("alphabet and kind preconditions") {
  Structure s = ex("sigma_xi");     // events a b c
  Structure t = ex("xi_sigma");     // events e f
  CHECK_THROWS_AS(equivalent(s, t, EquivKind::trace()), DynesError);
  CHECK_THROWS_AS(equivalent(ex("lemma1_delta"), ex("rho_gamma"),
                             EquivKind::state()),
                  DynesError);
}

TEST_CASE("witnesses are minimal and re-check against both structures") {
  Rng rng(77);
  int unequal_seen = 0;
  for (int i = 0; i < 150; ++i) {
    int n = 2 + rng.pick(3);
    Structure a{random_ses(rng, n)};
    Structure b{(i % 2) ? mutate_ses(rng, std::get<Ses>(a)) : random_ses(rng, n)};
    for (auto kind : {EquivKind::trace(), EquivKind::config(), EquivKind::transition()}) {
      Verdict v = equivalent(a, b, kind);
      if (v.equal) continue;
      ++unequal_seen;
      REQUIRE(v.witness.has_value());
      CHECK_MESSAGE(witness_distinguishes(a, b, *v.witness),
                    serialize(a) << " vs " << serialize(b));
      if (kind.tag == EquivKind::Trace) {
        // no shorter trace distinguishes the two structures
        const auto& w = std::get<Trace>(v.witness->item);
        auto ta = traces(a).seqs, tb = traces(b).seqs;
        std::set<Trace> sa(ta.begin(), ta.end()), sb(tb.begin(), tb.end());
        for (const Trace& t : sa)
          if (t.size() < w.size()) CHECK(sb.count(t));
        for (const Trace& t : sb)
          if (t.size() < w.size()) CHECK(sa.count(t));
      }
    }
  }
  CHECK(unequal_seen > 50);
}

TEST_CASE("state equality implies transition equality implies configuration equality") {
  Rng rng(78);
  for (int i = 0; i < 120; ++i) {
    int n = 2 + rng.pick(3);
    Dces a = random_ssdc(rng, n);
    Dces b = (i % 3 == 0) ? a : random_ssdc(rng, n);
    Structure sa{a}, sb{b};
    bool st = equivalent(sa, sb, EquivKind::state()).equal;
    bool tr = equivalent(sa, sb, EquivKind::transition()).equal;
    bool cf = equivalent(sa, sb, EquivKind::config()).equal;
    if (st) CHECK(tr);
    if (tr) CHECK(cf);
  }
}

TEST_CASE("poset equivalence works across different alphabets") {
  // a DES and its cause-dropping translation have different alphabets but
  // identical early poset families
  Rng rng(79);
  for (int i = 0; i < 60; ++i) {
    Des d = random_des(rng, 2 + rng.pick(3));
    Structure left{d}, right{des_to_ses(d)};
    CHECK(equivalent(left, right, EquivKind::poset(PosetMode::Early)).equal);
  }
}

TEST_CASE("equivalence kinds parse from names") {
  CHECK(equiv_kind_from_name("trace")->tag == EquivKind::Trace);
  CHECK(equiv_kind_from_name("state")->tag == EquivKind::State);
  CHECK(equiv_kind_from_name("poset")->mode == PosetMode::Early);
  CHECK(equiv_kind_from_name("poset:late")->mode == PosetMode::Late);
  CHECK(equiv_kind_from_name("poset:precedence")->mode == PosetMode::Precedence);
  CHECK(!equiv_kind_from_name("poset:bogus").has_value());
  CHECK(!equiv_kind_from_name("bogus").has_value());
}
