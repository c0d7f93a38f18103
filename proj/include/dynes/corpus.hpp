#pragma once

#include "dynes/equiv.hpp"
#include "dynes/parse.hpp"
#include "dynes/semantics.hpp"

namespace dynes {

// A machine-checkable fact about a corpus structure. Traces are encoded as
// dot-separated event names ("" is the empty trace), configurations as
// comma-separated name lists ("" is the empty set).
struct Fact {
  enum Kind {
    ValidatesOk,
    TracesExactly,
    TraceIn,
    TraceNotIn,
    ConfigsExactly,      // trace-based
    StepConfigsExactly,  // step-based
    ConfigIn,
    StepPresent,  // transition-graph edge present
    StepAbsent,
    Ssdc,
    NotSsdc,
    Ebdc
  } kind;
  std::vector<std::string> items;
};

struct ExampleEntry {
  std::string name;
  std::string text;  // structure file contents, byte-identical to corpus/
  std::string provenance;
  std::vector<Fact> facts;

  Structure structure() const { return parse_structure(text); }
};

namespace corpus_detail {

inline Trace parse_trace(const Alphabet& al, const std::string& s) {
  Trace t;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find('.', i);
    if (j == std::string::npos) j = s.size();
    std::string name = s.substr(i, j - i);
    EventId e = al.index_of(name);
    if (e < 0) throw DynesError("corpus fact: unknown event '" + name + "'");
    t.push_back(e);
    i = j + 1;
  }
  return t;
}

inline EventSet parse_set(const Alphabet& al, const std::string& s) {
  EventSet out = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    std::string name = s.substr(i, j - i);
    EventId e = al.index_of(name);
    if (e < 0) throw DynesError("corpus fact: unknown event '" + name + "'");
    out |= bit(e);
    i = j + 1;
  }
  return out;
}

}  // namespace corpus_detail

inline bool check_fact(const Structure& s, const Fact& f) {
  const Alphabet& al = alphabet_of(s);
  using corpus_detail::parse_set;
  using corpus_detail::parse_trace;
  switch (f.kind) {
    case Fact::ValidatesOk:
      return validate(s).ok;
    case Fact::TracesExactly: {
      std::set<Trace> want;
      for (const auto& item : f.items) want.insert(parse_trace(al, item));
      auto got = traces(s).seqs;
      return want == std::set<Trace>(got.begin(), got.end());
    }
    case Fact::TraceIn:
    case Fact::TraceNotIn: {
      auto got = traces(s).seqs;
      std::set<Trace> have(got.begin(), got.end());
      for (const auto& item : f.items) {
        bool in = have.count(parse_trace(al, item)) != 0;
        if (in != (f.kind == Fact::TraceIn)) return false;
      }
      return true;
    }
    case Fact::ConfigsExactly:
    case Fact::StepConfigsExactly: {
      std::set<EventSet> want;
      for (const auto& item : f.items) want.insert(parse_set(al, item));
      auto got = configurations(s, f.kind == Fact::ConfigsExactly
                                       ? ConfigMode::Trace
                                       : ConfigMode::Step);
      return want == got;
    }
    case Fact::ConfigIn: {
      auto got = configurations(s, ConfigMode::Step);
      for (const auto& item : f.items)
        if (!got.count(parse_set(al, item))) return false;
      return true;
    }
    case Fact::StepPresent:
    case Fact::StepAbsent: {
      auto g = transition_graph(s);
      std::pair<EventSet, EventSet> edge{parse_set(al, f.items.at(0)),
                                         parse_set(al, f.items.at(1))};
      return (g.edges.count(edge) != 0) == (f.kind == Fact::StepPresent);
    }
    case Fact::Ssdc:
      return classify_dces(std::get<Dces>(s)).is_ssdc;
    case Fact::NotSsdc:
      return !classify_dces(std::get<Dces>(s)).is_ssdc;
    case Fact::Ebdc:
      return classify_dces(std::get<Dces>(s)).is_ebdc;
  }
  return false;
}

inline const std::vector<ExampleEntry>& corpus() {
  static const std::vector<ExampleEntry> entries = [] {
    std::vector<ExampleEntry> v;

    v.push_back({"sigma_xi",
                 "# sigma_xi: c may discharge the causal dependency of b on a,\n"
                 "# so b needs a first unless c already happened. No pure\n"
                 "# disabling-based system has the same traces.\n"
                 "structure sigma_xi : SES\n"
                 "events a b c\n"
                 "cause a -> b\n"
                 "drop [a -> b] by c\n",
                 "separates cause dropping from event disabling",
                 {{Fact::ValidatesOk, {}},
                  {Fact::TracesExactly,
                   {"", "a", "c", "a.b", "a.c", "c.a", "c.b", "a.b.c", "a.c.b",
                    "c.a.b", "c.b.a"}}}});

    v.push_back({"xi_sigma",
                 "# xi_sigma: f may occur after e but never before it. No\n"
                 "# cause-dropping system over {e,f} has the same traces.\n"
                 "structure xi_sigma : EBES\n"
                 "events e f\n"
                 "disabling e ~> f\n",
                 "separates event disabling from cause dropping",
                 {{Fact::ValidatesOk, {}},
                  {Fact::TracesExactly, {"", "e", "f", "e.f"}}}});

    v.push_back({"beta_gamma",
                 "# beta_gamma: c is enabled by a or b, which exclude each\n"
                 "# other. No cause-adding system reaches the same\n"
                 "# configurations.\n"
                 "structure beta_gamma : BES\n"
                 "events a b c\n"
                 "conflict a # b\n"
                 "bundle {a, b} -> c\n",
                 "separates bundles from growing causality",
                 {{Fact::ValidatesOk, {}},
                  {Fact::ConfigsExactly, {"", "a", "b", "a,c", "b,c"}}}});

    v.push_back({"gamma_xi",
                 "# gamma_xi: a imposes the cause b on c; c is free until a\n"
                 "# occurs. No disabling-based system has the same traces.\n"
                 "structure gamma_xi : GES\n"
                 "events a b c\n"
                 "add [b -> c] by a\n",
                 "separates growing causality from disabling",
                 {{Fact::ValidatesOk, {}},
                  {Fact::TraceIn, {"a", "c", "c.a", "b.a.c"}},
                  {Fact::TraceNotIn, {"a.c"}}}});

    v.push_back({"gamma_sigma",
                 "# gamma_sigma: b imposes a self-cause on a, so a is\n"
                 "# impossible after b. No cause-dropping system has the\n"
                 "# same traces.\n"
                 "structure gamma_sigma : GES\n"
                 "events a b\n"
                 "add [a -> a] by b\n",
                 "separates growing causality from shrinking causality",
                 {{Fact::ValidatesOk, {}},
                  {Fact::TracesExactly, {"", "a", "b", "a.b"}}}});

    v.push_back({"rho_sigma",
                 "# rho_sigma: e and f can each start, and {f} enables the\n"
                 "# full configuration, but {e} does not. The {} |- {} entry\n"
                 "# gives the step rule its reflexive base case.\n"
                 "structure rho_sigma : RCES\n"
                 "events e f\n"
                 "enable {} |- {}\n"
                 "enable {} |- {e}\n"
                 "enable {} |- {f}\n"
                 "enable {f} |- {e, f}\n",
                 "resolvable-conflict behavior beyond cause dropping",
                 {{Fact::ValidatesOk, {}},
                  {Fact::StepConfigsExactly, {"", "e", "f", "e,f"}},
                  {Fact::StepPresent, {"f", "e,f"}},
                  {Fact::StepAbsent, {"e", "e,f"}}}});

    v.push_back({"rho_gamma",
                 "# rho_gamma: reconstructed enabling relation. Any relation\n"
                 "# set here must keep the checked facts below: the six\n"
                 "# one- and two-event configurations and {a,b,c} are all\n"
                 "# reachable, and {a,b} cannot step to {a,b,c}.\n"
                 "structure rho_gamma : RCES\n"
                 "events a b c\n"
                 "enable {} |- {}\n"
                 "enable {} |- {a}\n"
                 "enable {} |- {b}\n"
                 "enable {} |- {c}\n"
                 "enable {} |- {a, b}\n"
                 "enable {} |- {a, c}\n"
                 "enable {} |- {b, c}\n"
                 "enable {c} |- {a, b, c}\n",
                 "reconstructed resolvable-conflict counterexample",
                 {{Fact::ValidatesOk, {}},
                  {Fact::ConfigIn, {"a", "b", "c", "a,c", "b,c", "a,b", "a,b,c"}},
                  {Fact::StepAbsent, {"a,b", "a,b,c"}}}});

    v.push_back({"lemma1_delta",
                 "# lemma1_delta: a imposes the cause c on d and b removes\n"
                 "# it again, so whether d can fire at {a,b} depends on the\n"
                 "# order in which a and b occurred.\n"
                 "structure lemma1_delta : DCES\n"
                 "events a b c d\n"
                 "drop [c -> d] by b\n"
                 "add [c -> d] by a\n",
                 "order of modifiers matters: configurations hide state",
                 {{Fact::ValidatesOk, {}}, {Fact::NotSsdc, {}}}});

    v.push_back({"lemma1_delta_prime",
                 "# lemma1_delta_prime: four unconstrained events.\n"
                 "structure lemma1_delta_prime : DCES\n"
                 "events a b c d\n",
                 "free companion of lemma1_delta",
                 {{Fact::ValidatesOk, {}},
                  {Fact::Ssdc, {}},
                  {Fact::Ebdc, {}}}});

    v.push_back({"lemma6_des",
                 "# lemma6_des: e needs at least three of a,b,c,d first\n"
                 "# (every two-element subset is a bundle). More bundles\n"
                 "# than events defeat same-alphabet cause-dropping\n"
                 "# encodings.\n"
                 "structure lemma6_des : DES\n"
                 "events a b c d e\n"
                 "bundle {a, b} -> e\n"
                 "bundle {a, c} -> e\n"
                 "bundle {a, d} -> e\n"
                 "bundle {b, c} -> e\n"
                 "bundle {b, d} -> e\n"
                 "bundle {c, d} -> e\n",
                 "bundle system with no same-alphabet cause-dropping match",
                 {{Fact::ValidatesOk, {}},
                  {Fact::TraceNotIn, {"e", "a.e", "a.b.e"}},
                  {Fact::TraceIn, {"a.b.c.e", "a.b.d.e", "b.c.d.e"}}}});

    v.push_back({"fig2_ebes",
                 "# fig2_ebes: a and b exclude each other, c needs a or b,\n"
                 "# a needs c, and d may occur after c but never before it.\n"
                 "# The direction of the c/d disabling is reconstructed; the\n"
                 "# checked oracle is precedence-poset equality with the\n"
                 "# cause-dropping translation of this structure.\n"
                 "structure fig2_ebes : EBES\n"
                 "events a b c d\n"
                 "disabling a ~> b\n"
                 "disabling b ~> a\n"
                 "disabling c ~> d\n"
                 "bundle {a, b} -> c\n"
                 "bundle {c} -> a\n",
                 "worked translation example with poset oracle",
                 {{Fact::ValidatesOk, {}},
                  {Fact::ConfigsExactly, {"", "b", "d", "b,c", "b,d", "b,c,d"}}}});

    return v;
  }();
  return entries;
}

inline const ExampleEntry& load_example(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw DynesError("unknown corpus example '" + name + "'");
}

}  // namespace dynes
