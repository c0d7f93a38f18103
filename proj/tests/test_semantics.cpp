#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynes/corpus.hpp"
#include "dynes/generators.hpp"
#include "dynes/semantics.hpp"
#include "dynes/translate.hpp"
#include "oracles.hpp"

using namespace dynes;

namespace {

Structure ex(const std::string& name) { return load_example(name).structure(); }

EventId idx(const Structure& s, const std::string& name) {
  EventId e = alphabet_of(s).index_of(name);
  REQUIRE(e >= 0);
  return e;
}

EventSet named(const Structure& s, std::initializer_list<const char*> names) {
  EventSet out = 0;
  for (const char* n : names) out |= bit(idx(s, n));
  return out;
}

std::set<Trace> trace_set(const Structure& s) {
  auto t = traces(s).seqs;
  return {t.begin(), t.end()};
}

}  // namespace

TEST_CASE("initial causes") {
  Structure s = ex("sigma_xi");
  CHECK(initial_causes(s, idx(s, "b")) == named(s, {"a"}));
  CHECK(initial_causes(s, idx(s, "a")) == 0);
  CHECK_THROWS_AS(initial_causes(ex("lemma6_des"), 0), DynesError);
  // the cause-dropping translation gives e one fresh initial cause per bundle
  Ses translated = des_to_ses(std::get<Des>(ex("lemma6_des")));
  Structure ts{translated};
  CHECK(popcount(initial_causes(ts, idx(ts, "e"))) == 6);
}

TEST_CASE("dropped causes") {
  Structure s = ex("sigma_xi");
  CHECK(dropped_causes(s, named(s, {"c"}), idx(s, "b")) == named(s, {"a"}));
  CHECK(dropped_causes(s, 0, idx(s, "b")) == 0);
  CHECK(dropped_causes(ex("gamma_sigma"), bit(0), 1) == 0);  // GES has no drops
  CHECK_THROWS_AS(dropped_causes(ex("xi_sigma"), 0, 0), DynesError);
}

TEST_CASE("added causes honor the effectiveness filter") {
  Structure g = ex("gamma_sigma");
  CHECK(added_causes(g, named(g, {"b"}), idx(g, "a")) == named(g, {"a"}));
  CHECK(added_causes(g, 0, idx(g, "a")) == 0);
  Ges degenerate;
  degenerate.alphabet = Alphabet({"c", "t"});
  degenerate.adds.insert(Modifier{0, 0, 1});  // adder equals the cause
  Structure ds{degenerate};
  CHECK(added_causes(ds, bit(0), 1) == 0);
}

TEST_CASE("trace sets of the corpus counterexamples") {
  CHECK(trace_set(ex("sigma_xi")).size() == 11);
  CHECK(trace_set(ex("xi_sigma")) ==
        std::set<Trace>{{}, {0}, {1}, {0, 1}});
  CHECK(trace_set(ex("gamma_sigma")) ==
        std::set<Trace>{{}, {0}, {1}, {0, 1}});
  Structure gx = ex("gamma_xi");
  auto ts = trace_set(gx);
  EventId a = idx(gx, "a"), b = idx(gx, "b"), c = idx(gx, "c");
  CHECK(ts.count({a}));
  CHECK(ts.count({c}));
  CHECK(ts.count({c, a}));
  CHECK(ts.count({b, a, c}));
  CHECK(!ts.count({a, c}));
}

TEST_CASE("traces agree with the brute-force oracle on the corpus") {
  for (const auto& e : corpus()) {
    Structure s = e.structure();
    auto lib = trace_set(s);
    auto naive = oracle::naive_traces(s);
    CHECK_MESSAGE(std::set<oracle::Seq>(lib.begin(), lib.end()) == naive, e.name);
  }
}

TEST_CASE("traces agree with the brute-force oracle on random structures") {
  Rng rng(31337);
  for (int i = 0; i < 150; ++i) {
    int n = 1 + rng.pick(4);
    Structure s = [&]() -> Structure {
      switch (rng.pick(6)) {
        case 0: return Structure{random_ses(rng, n)};
        case 1: return Structure{random_ges(rng, n)};
        case 2: return Structure{random_des(rng, n)};
        case 3: return Structure{random_bes(rng, n)};
        case 4: return Structure{random_ebes(rng, n)};
        default: return Structure{random_ssdc(rng, n)};
      }
    }();
    auto lib = trace_set(s);
    CHECK_MESSAGE(std::set<oracle::Seq>(lib.begin(), lib.end()) ==
                      oracle::naive_traces(s),
                  serialize(s));
  }
}

TEST_CASE("every prefix of a trace is a trace") {
  Rng rng(555);
  for (int i = 0; i < 80; ++i) {
    int n = 1 + rng.pick(4);
    Structure s = (i % 2) ? Structure{random_ses(rng, n)}
                          : Structure{random_ebes(rng, n)};
    auto ts = trace_set(s);
    for (const Trace& t : ts) {
      Trace prefix = t;
      while (!prefix.empty()) {
        prefix.pop_back();
        CHECK(ts.count(prefix));
      }
    }
  }
}

TEST_CASE("trace emission order is depth-first and duplicate-free") {
  Structure s = ex("sigma_xi");
  auto seqs = traces(s).seqs;
  CHECK(std::is_sorted(seqs.begin(), seqs.end()));
  CHECK(std::adjacent_find(seqs.begin(), seqs.end()) == seqs.end());
}

TEST_CASE("trace and step configurations coincide for SES and GES") {
  Rng rng(4242);
  for (int i = 0; i < 200; ++i) {
    int n = 1 + rng.pick(5);
    Structure s = (i % 2) ? Structure{random_ses(rng, n)}
                          : Structure{random_ges(rng, n)};
    CHECK_MESSAGE(configurations(s, ConfigMode::Trace) ==
                      configurations(s, ConfigMode::Step),
                  serialize(s));
  }
}

TEST_CASE("configuration examples") {
  CHECK(configurations(ex("beta_gamma"), ConfigMode::Trace) ==
        std::set<EventSet>{0, bit(0), bit(1), bit(0) | bit(2), bit(1) | bit(2)});
  CHECK(configurations(ex("rho_sigma"), ConfigMode::Step) ==
        std::set<EventSet>{0, bit(0), bit(1), bit(0) | bit(1)});
}

TEST_CASE("a conflict-free unconstrained SES steps across the whole lattice") {
  Ses s;
  s.alphabet = Alphabet({"e", "f"});
  TransitionGraph g = transition_graph(Structure{s});
  CHECK(g.nodes.size() == 4);
  std::size_t expected_edges = 0;
  for (EventSet x : g.nodes)
    for (EventSet y : g.nodes)
      if ((x & ~y) == 0) ++expected_edges;
  CHECK(g.edges.size() == expected_edges);
}

TEST_CASE("rho_sigma transition edges") {
  Structure s = ex("rho_sigma");
  TransitionGraph g = transition_graph(s);
  EventSet e = named(s, {"e"}), f = named(s, {"f"}), ef = named(s, {"e", "f"});
  CHECK(g.edges.count({f, ef}));
  CHECK(!g.edges.count({e, ef}));
}

TEST_CASE("rho_gamma misses exactly the late two-event entries into the top") {
  Structure s = ex("rho_gamma");
  TransitionGraph g = transition_graph(s);
  EventSet ab = named(s, {"a", "b"}), abc = named(s, {"a", "b", "c"});
  CHECK(!g.edges.count({ab, abc}));
  CHECK(g.edges.count({named(s, {"c"}), abc}));
  CHECK(g.nodes.size() == 8);
}

TEST_CASE("SES steps interpolate") {
  Rng rng(808);
  for (int i = 0; i < 120; ++i) {
    int n = 1 + rng.pick(4);
    Structure s = (i % 2) ? Structure{random_ses(rng, n)}
                          : Structure{random_ges(rng, n)};
    TransitionGraph g = transition_graph(s);
    for (const auto& [x, y] : g.edges) {
      EventSet grow = y & ~x;
      EventSet sub = grow;
      while (true) {
        EventSet xp = x | sub;
        EventSet rest = grow & ~sub;
        EventSet t = rest;
        while (true) {
          CHECK(g.edges.count({xp, xp | t}));
          if (t == 0) break;
          t = (t - 1) & rest;
        }
        if (sub == 0) break;
        sub = (sub - 1) & grow;
      }
    }
  }
}

TEST_CASE("SES steps are exactly trace extensions by cause-independent events") {
  Rng rng(909);
  for (int i = 0; i < 60; ++i) {
    int n = 1 + rng.pick(4);
    Ses s = random_ses(rng, n);
    Structure st{s};
    SemView v = make_view(s);
    TransitionGraph g = transition_graph(st);
    auto ts = traces(st).seqs;
    auto configs = configurations(st, ConfigMode::Trace);
    for (EventSet x : configs)
      for (EventSet y : configs) {
        if (x & ~y) continue;
        bool indep = true;
        for_each_event(y & ~x, [&](EventId e) {
          EventSet missing = v.ic[e] & ~x;
          for_each_event(missing, [&](EventId c) {
            if (!(v.drops_at(c, e) & x)) indep = false;
          });
        });
        // some trace reaches x and extends to y
        bool witnessed = false;
        for (const Trace& t : ts) {
          EventSet carrier = 0;
          for (EventId e : t) carrier |= bit(e);
          if (carrier != y) continue;
          EventSet prefix = 0;
          std::size_t k = 0;
          for (; k < t.size() && popcount(prefix) < popcount(x); ++k)
            prefix |= bit(t[k]);
          if (prefix == x) { witnessed = true; break; }
        }
        bool step = g.edges.count({x, y}) != 0;
        CHECK(step == (indep && witnessed));
      }
  }
}
