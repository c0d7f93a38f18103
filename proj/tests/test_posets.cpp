#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynes/corpus.hpp"
#include "dynes/generators.hpp"
#include "dynes/posets.hpp"
#include "dynes/translate.hpp"

using namespace dynes;

namespace {

Structure ex(const std::string& name) { return load_example(name).structure(); }

bool family_subset(const PosetFamily& a, const PosetFamily& b) {
  for (const auto& p : a)
    if (!b.count(p)) return false;
  return true;
}

Poset make_poset(std::vector<std::string> events,
                 std::vector<std::pair<int, int>> lt) {
  Poset p;
  p.events = std::move(events);
  p.below.assign(p.events.size(), 0);
  for (std::size_t i = 0; i < p.events.size(); ++i) p.below[i] |= bit((int)i);
  for (auto [x, y] : lt) p.below[y] |= bit(x);
  // close transitively
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < p.events.size(); ++i) {
      EventSet acc = p.below[i];
      for_each_event(p.below[i], [&](EventId j) { acc |= p.below[j]; });
      if (acc != p.below[i]) { p.below[i] = acc; changed = true; }
    }
  }
  return p;
}

}  // namespace

TEST_CASE("poset of the empty trace is the empty poset") {
  PosetFamily f = posets_of_trace(ex("sigma_xi"), {}, PosetMode::Early);
  REQUIRE(f.size() == 1);
  CHECK(f.begin()->events.empty());
}

TEST_CASE("precedence posets of the disabling counterexample") {
  Structure s = ex("xi_sigma");
  PosetFamily f = posets(s, PosetMode::Precedence);
  // configurations are {}, {e}, {f}, {e,f}; in the last one e precedes f
  CHECK(f.count(make_poset({}, {})));
  CHECK(f.count(make_poset({"e"}, {})));
  CHECK(f.count(make_poset({"f"}, {})));
  CHECK(f.count(make_poset({"e", "f"}, {{0, 1}})));
  CHECK(f.size() == 4);
}

TEST_CASE("per-trace families nest: late and early inside minimal inside bsat inside liberal") {
  Rng rng(112);
  for (int i = 0; i < 120; ++i) {
    Des d = random_des(rng, 2 + rng.pick(3));
    Structure s{d};
    for (const Trace& t : traces(s).seqs) {
      auto late = posets_of_trace(s, t, PosetMode::Late);
      auto early = posets_of_trace(s, t, PosetMode::Early);
      auto minimal = posets_of_trace(s, t, PosetMode::Minimal);
      auto bsat = posets_of_trace(s, t, PosetMode::Bsat);
      auto liberal = posets_of_trace(s, t, PosetMode::Liberal);
      CHECK(family_subset(late, minimal));
      CHECK(family_subset(early, minimal));
      CHECK(family_subset(minimal, bsat));
      CHECK(family_subset(bsat, liberal));
    }
  }
}

TEST_CASE("SES trace families nest: late and early inside minimal inside liberal") {
  Rng rng(113);
  for (int i = 0; i < 120; ++i) {
    Ses sx = random_ses(rng, 2 + rng.pick(3));
    Structure s{sx};
    for (const Trace& t : traces(s).seqs) {
      auto late = posets_of_trace(s, t, PosetMode::Late);
      auto early = posets_of_trace(s, t, PosetMode::Early);
      auto minimal = posets_of_trace(s, t, PosetMode::Minimal);
      auto liberal = posets_of_trace(s, t, PosetMode::Liberal);
      CHECK(family_subset(late, minimal));
      CHECK(family_subset(early, minimal));
      CHECK(family_subset(minimal, liberal));
    }
  }
}

TEST_CASE("the early cause set satisfies the enabling condition") {
  Rng rng(114);
  for (int i = 0; i < 120; ++i) {
    Ses sx = random_ses(rng, 2 + rng.pick(3));
    SemView v = make_view(sx);
    Structure s{sx};
    for (const Trace& t : traces(s).seqs) {
      std::vector<int> pos(v.n, -1);
      for (std::size_t k = 0; k < t.size(); ++k) pos[t[k]] = (int)k;
      EventSet prior = 0;
      for (std::size_t k = 0; k < t.size(); ++k) {
        detail::TraceCauseContext c{&v, t[k], prior, &pos};
        EventSet u = detail::early_cause(c);
        CHECK((v.ic[t[k]] & ~dc_set(v, u, t[k]) & ~u) == 0);
        CHECK((u & ~prior) == 0);
        prior |= bit(t[k]);
      }
    }
  }
}

TEST_CASE("mode/family legality") {
  CHECK_THROWS_AS(posets(ex("gamma_sigma"), PosetMode::Early), DynesError);
  CHECK_THROWS_AS(posets(ex("rho_sigma"), PosetMode::Liberal), DynesError);
  CHECK_THROWS_AS(posets(ex("sigma_xi"), PosetMode::Bsat), DynesError);
  CHECK_THROWS_AS(posets(ex("sigma_xi"), PosetMode::Precedence), DynesError);
  CHECK_THROWS_AS(posets(ex("lemma1_delta"), PosetMode::Precedence), DynesError);
  CHECK_NOTHROW(posets(ex("lemma1_delta_prime"), PosetMode::Precedence));
  CHECK_NOTHROW(posets(ex("beta_gamma"), PosetMode::Precedence));
  CHECK_NOTHROW(posets(ex("lemma6_des"), PosetMode::Bsat));
}

TEST_CASE("precedence closures are partial orders") {
  Rng rng(115);
  for (int i = 0; i < 120; ++i) {
    int n = 2 + rng.pick(3);
    if (i % 2) {
      Ebes x = random_ebes(rng, n);
      CHECK_NOTHROW(posets(Structure{x}, PosetMode::Precedence));
    } else {
      Dces d = random_ebdc(rng, n);
      for (EventSet config : configurations(Structure{d}, ConfigMode::Step)) {
        auto below = ebdc_leq(d, config);
        for_each_event(config, [&](EventId a) {
          for_each_event(config, [&](EventId b) {
            if (a != b)
              CHECK(!(contains(below[a], b) && contains(below[b], a)));
          });
          CHECK(contains(below[a], a));
          for_each_event(below[a], [&](EventId c) {
            CHECK((below[c] & ~below[a]) == 0);  // transitivity
          });
        });
      }
    }
  }
}

TEST_CASE("bundle-satisfaction posets come from per-bundle choices") {
  // two bundles over distinct members force two-element causes; liberal also
  // admits their union with extras
  Des d;
  d.alphabet = Alphabet({"a", "b", "e"});
  d.bundles.insert(Bundle{bit(0), 2});
  d.bundles.insert(Bundle{bit(1), 2});
  Structure s{d};
  Trace t{0, 1, 2};
  auto bsat = posets_of_trace(s, t, PosetMode::Bsat);
  REQUIRE(bsat.size() == 1);
  CHECK(bsat.count(make_poset({"a", "b", "e"}, {{0, 2}, {1, 2}})));
  auto minimal = posets_of_trace(s, t, PosetMode::Minimal);
  CHECK(minimal == bsat);
}

TEST_CASE("late keeps the latest minimal cause set") {
  // e is enabled by a or b; in the trace a.b.e the late cause is {b}
  Des d;
  d.alphabet = Alphabet({"a", "b", "e"});
  d.bundles.insert(Bundle{bit(0) | bit(1), 2});
  Structure s{d};
  Trace t{0, 1, 2};
  auto late = posets_of_trace(s, t, PosetMode::Late);
  REQUIRE(late.size() == 1);
  CHECK(late.count(make_poset({"a", "b", "e"}, {{1, 2}})));
  auto early = posets_of_trace(s, t, PosetMode::Early);
  REQUIRE(early.size() == 1);
  CHECK(early.count(make_poset({"a", "b", "e"}, {{0, 2}})));
  auto minimal = posets_of_trace(s, t, PosetMode::Minimal);
  CHECK(minimal.size() == 2);
}
