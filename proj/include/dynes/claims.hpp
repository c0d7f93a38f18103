#pragma once

#include <functional>
#include <sstream>

#include "dynes/corpus.hpp"
#include "dynes/enumerate.hpp"
#include "dynes/generators.hpp"
#include "dynes/translate.hpp"

namespace dynes {

struct ClaimResult {
  std::string id;
  bool pass = false;
  std::string evidence;
};

namespace claims_detail {

inline Structure corpus_structure(const std::string& name) {
  return load_example(name).structure();
}

inline std::set<std::set<std::string>> config_names(const Structure& s, ConfigMode m) {
  const Alphabet& al = alphabet_of(s);
  std::set<std::set<std::string>> out;
  for (EventSet c : configurations(s, m)) {
    std::set<std::string> names;
    for_each_event(c, [&](EventId e) { names.insert(al.name(e)); });
    out.insert(names);
  }
  return out;
}

inline std::string outcome_text(const SearchOutcome& o) {
  switch (o.status) {
    case SearchOutcome::Status::Found: return "Found";
    case SearchOutcome::Status::ExhaustedNone: return "ExhaustedNone";
    case SearchOutcome::Status::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

// Confirms on random samples that structures excluded by a pruning filter
// fail the target match; `make_excluded` must return a structure violating
// exactly the filter under test.
inline bool filter_sound(const std::function<Structure(Rng&)>& make_excluded,
                         const Structure& target, EquivKind kind,
                         std::uint64_t seed, int samples = 120) {
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Structure s = make_excluded(rng);
    if (equivalent(s, target, kind).equal) return false;
  }
  return true;
}

// Degenerate add/drop triples (modifier equal to cause or target) must not
// change any semantics; that justifies skipping them during searches.
inline bool degenerate_modifiers_invisible(std::uint64_t seed, int samples = 80) {
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    int n = 2 + rng.pick(3);
    Ges g = random_ges(rng, n, /*degenerate_adds=*/true);
    Ges stripped = g;
    for (auto it = stripped.adds.begin(); it != stripped.adds.end();)
      it = (it->modifier == it->cause || it->modifier == it->target)
               ? stripped.adds.erase(it)
               : std::next(it);
    if (traces(Structure{g}) != traces(Structure{stripped})) return false;
    if (transition_graph(Structure{g}) != transition_graph(Structure{stripped}))
      return false;

    Dces d = random_ssdc(rng, n);
    Dces extra = d;
    for (int k = 0; k < n; ++k) {
      EventId c = rng.pick(n), t = rng.pick(n);
      EventId m = rng.chance(0.5) ? c : t;
      if (d.causes.count({c, t})) {
        extra.drops.insert({c, m, t});
      } else {
        extra.adds.insert({c, m, t});
        extra.drops.insert({c, m, t});  // addable pair, so the drop is well-formed
      }
    }
    if (!validate(extra).ok) continue;
    if (transition_graph(Structure{d}) != transition_graph(Structure{extra}))
      return false;
    StateGraph sd = dces_state_graph(d), se = dces_state_graph(extra);
    if (detail::state_nodes(sd) != detail::state_nodes(se)) return false;
    if (detail::state_edges(sd) != detail::state_edges(se)) return false;
  }
  return true;
}

inline Alphabet named_alphabet(std::initializer_list<const char*> names) {
  std::vector<std::string> v;
  for (const char* n : names) v.emplace_back(n);
  return Alphabet(v);
}

}  // namespace claims_detail

// ---------------------------------------------------------------------------
// Claim implementations

inline ClaimResult run_claim(const std::string& id);

inline const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = {
      "lem1",  "lem6",  "thm3-ses-side", "thm3-ebes-side", "lem9",
      "lem11", "lem12", "lem13",         "lem15",          "lem22",
      "lem28", "thm2-roundtrip", "thm11", "thm12", "thm13", "thm14",
      "lem16", "lem21", "lem26", "lem27"};
  return ids;
}

namespace claims_detail {

inline ClaimResult claim_lem1() {
  Structure delta_s = corpus_structure("lemma1_delta");
  Structure prime_s = corpus_structure("lemma1_delta_prime");
  const Dces& delta = std::get<Dces>(delta_s);
  const Alphabet& al = delta.alphabet;
  EventId a = al.index_of("a"), b = al.index_of("b"), d = al.index_of("d");

  bool trans_equal = equivalent(delta_s, prime_s, EquivKind::transition()).equal;
  Verdict state_v = equivalent(delta_s, prime_s, EquivKind::state());

  SemView view = make_view(delta);
  DcesState root = dces_initial_state(view);
  auto fire = [&](const DcesState& st, EventId e) {
    auto next = dces_fire(view, st, bit(e));
    if (!next) throw DynesError("lem1: expected step missing");
    return *next;
  };
  DcesState after_ab = fire(fire(root, a), b);
  DcesState after_ba = fire(fire(root, b), a);
  bool ab_has_d = dces_fire(view, after_ab, bit(d)).has_value();
  bool ba_has_d = dces_fire(view, after_ba, bit(d)).has_value();
  bool ba_need = after_ba.need[d] != 0;

  bool pass = trans_equal && !state_v.equal && ab_has_d && !ba_has_d && ba_need;
  std::ostringstream ev;
  ev << "transition-equal=" << (trans_equal ? "yes" : "no")
     << ", state-equal=" << (state_v.equal ? "yes" : "no");
  if (state_v.witness) ev << " (witness: " << state_v.witness->text << ")";
  ev << ", d-step after a.b=" << (ab_has_d ? "present" : "missing")
     << ", after b.a=" << (ba_has_d ? "present" : "absent");
  return {"lem1", pass, ev.str()};
}

inline ClaimResult claim_lem6() {
  Structure target = corpus_structure("lemma6_des");
  Alphabet al = alphabet_of(target);
  EventId e = al.index_of("e");

  SearchSpec spec;
  spec.family = Family::Ses;
  spec.alphabet = al;
  spec.conflict_slots = std::vector<ConflictPair>{};
  std::vector<CausePair> slots;
  for (EventId c = 0; c < al.size(); ++c)
    if (c != e) slots.push_back({c, e});
  spec.cause_slots = slots;
  spec.constraint_ids = {"conflict-empty", "causes-into-e-only", "no-self-cause-e"};
  spec.max_structures = 2'000'000;
  spec.max_seconds = 60.0;

  bool sound_conflict = filter_sound(
      [&](Rng& rng) {
        Ses s = random_ses(rng, 5);
        EventId x = rng.pick(5), y = rng.pick(5);
        while (y == x) y = rng.pick(5);
        s.conflict.insert(ConflictPair(x, y));
        return Structure{s};
      },
      target, EquivKind::trace(), 0xb001);
  bool sound_targets = filter_sound(
      [&](Rng& rng) {
        Ses s = random_ses(rng, 5);
        EventId t = rng.pick(4);  // one of a..d
        EventId c = rng.pick(5);
        s.causes.insert(CausePair{c, t});
        return Structure{s};
      },
      target, EquivKind::trace(), 0xb002);
  bool sound_self = filter_sound(
      [&](Rng& rng) {
        Ses s = random_ses(rng, 5);
        s.causes.insert(CausePair{e, e});
        return Structure{s};
      },
      target, EquivKind::trace(), 0xb003);

  SearchOutcome out = find_match(spec, target, EquivKind::trace());
  bool pass = sound_conflict && sound_targets && sound_self &&
              out.status == SearchOutcome::Status::ExhaustedNone;
  std::ostringstream ev;
  ev << outcome_text(out) << " after " << out.explored
     << " structures; filters sound: conflict-empty="
     << (sound_conflict ? "yes" : "no")
     << ", causes-into-e-only=" << (sound_targets ? "yes" : "no")
     << ", no-self-cause-e=" << (sound_self ? "yes" : "no");
  return {"lem6", pass, ev.str()};
}

inline ClaimResult exhaustive_claim(const std::string& id, Family family,
                                    const Alphabet& al, const std::string& target_name,
                                    EquivKind kind) {
  Structure target = corpus_structure(target_name);
  SearchSpec spec;
  spec.family = family;
  spec.alphabet = al;
  SearchOutcome out = find_match(spec, target, kind);
  bool pass = out.status == SearchOutcome::Status::ExhaustedNone;
  std::ostringstream ev;
  ev << outcome_text(out) << " after " << out.explored << " "
     << family_name(family) << " structures vs " << target_name;
  return {id, pass, ev.str()};
}

inline ClaimResult claim_lem11() {
  Structure target = corpus_structure("beta_gamma");
  Alphabet al = alphabet_of(target);
  EventId a = al.index_of("a"), b = al.index_of("b"), c = al.index_of("c");

  SearchSpec spec;
  spec.family = Family::Ges;
  spec.alphabet = al;
  spec.conflict_slots = std::vector<ConflictPair>{ConflictPair(a, b)};
  spec.cause_slots = std::vector<CausePair>{{a, c}, {b, c}};
  spec.effective_modifiers_only = true;
  spec.constraint_ids = {"conflict-within-ab", "causes-into-c-from-ab",
                         "effective-modifiers-only"};

  bool sound_conflict = filter_sound(
      [&](Rng& rng) {
        Ges g = random_ges(rng, 3);
        g.conflict.insert(ConflictPair(rng.chance(0.5) ? a : b, c));
        return Structure{g};
      },
      target, EquivKind::config(), 0xc001);
  bool sound_causes = filter_sound(
      [&](Rng& rng) {
        Ges g = random_ges(rng, 3);
        g.causes.insert(CausePair{rng.pick(3), rng.chance(0.5) ? a : b});
        return Structure{g};
      },
      target, EquivKind::config(), 0xc002);
  bool sound_degenerate = degenerate_modifiers_invisible(0xc003);

  SearchOutcome out = find_match(spec, target, EquivKind::config());
  bool pass = sound_conflict && sound_causes && sound_degenerate &&
              out.status == SearchOutcome::Status::ExhaustedNone;
  std::ostringstream ev;
  ev << outcome_text(out) << " after " << out.explored
     << " GES structures vs beta_gamma configurations; filters sound: "
     << (sound_conflict && sound_causes && sound_degenerate ? "all" : "NOT ALL");
  return {"lem11", pass, ev.str()};
}

inline ClaimResult pruned_vs_rho_gamma(const std::string& id, Family family) {
  Structure target = corpus_structure("rho_gamma");
  Alphabet al = alphabet_of(target);

  SearchSpec spec;
  spec.family = family;
  spec.alphabet = al;
  spec.conflict_slots = std::vector<ConflictPair>{};
  spec.cause_slots = std::vector<CausePair>{};
  spec.effective_modifiers_only = true;
  spec.constraint_ids = {"conflict-empty", "no-initial-causes",
                         "effective-modifiers-only"};

  bool sound_conflict = filter_sound(
      [&](Rng& rng) {
        if (family == Family::Ges) {
          Ges g = random_ges(rng, 3);
          EventId x = rng.pick(3), y = rng.pick(3);
          while (y == x) y = rng.pick(3);
          g.conflict.insert(ConflictPair(x, y));
          return Structure{g};
        }
        Dces d = random_ssdc(rng, 3);
        EventId x = rng.pick(3), y = rng.pick(3);
        while (y == x) y = rng.pick(3);
        d.conflict.insert(ConflictPair(x, y));
        return Structure{d};
      },
      target, EquivKind::transition(), 0xd001);
  bool sound_causes = filter_sound(
      [&](Rng& rng) {
        if (family == Family::Ges) {
          Ges g = random_ges(rng, 3);
          g.causes.insert(CausePair{rng.pick(3), rng.pick(3)});
          return Structure{g};
        }
        Dces d = random_ssdc(rng, 3);
        d.causes.insert(CausePair{rng.pick(3), rng.pick(3)});
        return Structure{d};
      },
      target, EquivKind::transition(), 0xd002);
  bool sound_degenerate = degenerate_modifiers_invisible(0xd003);

  SearchOutcome out = find_match(spec, target, EquivKind::transition());
  bool pass = sound_conflict && sound_causes && sound_degenerate &&
              out.status == SearchOutcome::Status::ExhaustedNone;
  std::ostringstream ev;
  ev << outcome_text(out) << " after " << out.explored << " "
     << family_name(family)
     << " structures vs rho_gamma transitions; filters sound: "
     << (sound_conflict && sound_causes && sound_degenerate ? "all" : "NOT ALL");
  return {id, pass, ev.str()};
}

inline ClaimResult claim_lem28() {
  Structure sigma = corpus_structure("sigma_xi");
  Structure target = Structure{embed(sigma)};
  SearchSpec spec;
  spec.family = Family::Ebes;
  spec.alphabet = alphabet_of(target);
  SearchOutcome out = find_match(spec, target, EquivKind::config());
  bool pass = out.status == SearchOutcome::Status::ExhaustedNone;
  std::ostringstream ev;
  ev << outcome_text(out) << " after " << out.explored
     << " EBES structures vs configurations of the sigma_xi embedding";
  return {"lem28", pass, ev.str()};
}

inline ClaimResult claim_thm2() {
  Rng rng(0x7172);
  int equal_pairs = 0;
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.pick(3);
    Ses s1 = random_ses(rng, n);
    Ses s2 = (i % 3 == 0) ? mutate_ses(rng, s1) : random_ses(rng, n);
    Structure a{s1}, b{s2};
    bool t = equivalent(a, b, EquivKind::trace()).equal;
    bool p = equivalent(a, b, EquivKind::poset(PosetMode::Early)).equal;
    bool g = equivalent(a, b, EquivKind::transition()).equal;
    if (t != p || t != g) {
      std::ostringstream ev;
      ev << "verdicts diverged on pair " << i << ": trace=" << t << " poset=" << p
         << " transition=" << g << "; left=" << serialize(a);
      return {"thm2-roundtrip", false, ev.str()};
    }
    if (t) ++equal_pairs;
  }
  std::ostringstream ev;
  ev << "200 SES pairs: trace/early-poset/transition verdicts coincide ("
     << equal_pairs << " equal pairs exercised)";
  return {"thm2-roundtrip", true, ev.str()};
}

inline ClaimResult translation_poset_claim(const std::string& id, PosetMode mode,
                                           std::uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.pick(3);
    if (i % 2 == 0) {
      Ses s = random_encodable_ses(rng, n);
      Des d = ses_to_des(s);
      if (posets(Structure{s}, mode) != posets(Structure{d}, mode))
        return {id, false, "poset family changed by ses_to_des on sample " +
                               std::to_string(i) + ": " + serialize(Structure{s})};
    } else {
      Des d = random_des(rng, n);
      Ses s = des_to_ses(d);
      if (posets(Structure{d}, mode) != posets(Structure{s}, mode))
        return {id, false, "poset family changed by des_to_ses on sample " +
                               std::to_string(i) + ": " + serialize(Structure{d})};
    }
  }
  return {id, true,
          std::string("200 translations preserve ") + poset_mode_name(mode) +
              " poset families (both directions)"};
}

inline ClaimResult claim_thm13() {
  std::uint64_t seed = 0x1300;
  for (PosetMode mode : {PosetMode::Liberal, PosetMode::Minimal, PosetMode::Late}) {
    ClaimResult r = translation_poset_claim("thm13", mode, seed++);
    if (!r.pass) return r;
  }
  return {"thm13", true,
          "200 translations preserve liberal, minimal and late poset families "
          "(both directions each)"};
}

inline ClaimResult claim_thm14() {
  Rng rng(0x1414);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.pick(3);
    Dces d = (i % 2 == 0) ? random_ebdc(rng, n)
                          : ebes_to_dces(random_ebes(rng, n));
    if (!classify_dces(d).is_ebdc)
      return {"thm14", false, "generator produced a non-EBDC"};
    SemView v = make_view(d);
    StateGraph g = dces_state_graph(v);
    std::map<EventSet, std::size_t> by_config;
    for (std::size_t k = 0; k < g.states.size(); ++k) {
      if (by_config.count(g.states[k].config))
        return {"thm14", false, "EBDC with two states at one configuration"};
      by_config[g.states[k].config] = k;
    }
    for (const auto& [ca, ia] : by_config)
      for (const auto& [cb, ib] : by_config) {
        if (ca & ~cb) continue;  // need ca <= cb
        bool edge = g.edges.count({ia, ib}) != 0;
        auto leq = ebdc_leq(d, cb);
        bool cond = true;
        for_each_event(cb, [&](EventId e) {
          if ((leq[e] & ~bit(e)) & ~ca) cond = false;
        });
        if (edge != cond)
          return {"thm14", false,
                  "step/poset characterization failed on sample " +
                      std::to_string(i) + ": " + serialize(Structure{d})};
      }
  }
  return {"thm14", true,
          "200 EBDCs: a step exists between reachable states iff every "
          "strictly-below event already fired"};
}

inline ClaimResult claim_lem16() {
  Rng rng(0x1616);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.pick(4);
    Dces d = random_ssdc(rng, n);
    SemView v = make_view(d);
    StateGraph g = dces_state_graph(v);
    for (const auto& st : g.states) {
      auto cs = causal_state_closed_form(d, st.config);
      for (EventId e = 0; e < v.n; ++e) {
        if (contains(st.config, e)) continue;
        if (cs[e] != st.need[e])
          return {"lem16", false,
                  "closed form diverged from state graph on sample " +
                      std::to_string(i) + ": " + serialize(Structure{d})};
      }
    }
  }
  return {"lem16", true,
          "200 SSDCs: closed-form causal state equals the state-graph state "
          "at every reachable configuration"};
}

inline ClaimResult claim_lem21() {
  Rng rng(0x2121);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.pick(4);
    Structure source = (i % 2 == 0) ? Structure{random_ses(rng, n)}
                                    : Structure{random_ges(rng, n)};
    Structure emb{embed(source)};
    if (!classify_dces(std::get<Dces>(emb)).is_ssdc)
      return {"lem21", false, "embedding is not an SSDC"};
    if (!equivalent(emb, source, EquivKind::transition()).equal)
      return {"lem21", false, "embedding not transition-equivalent on sample " +
                                  std::to_string(i) + ": " + serialize(source)};
  }
  return {"lem21", true,
          "200 SES/GES embeddings are transition-equivalent to their sources"};
}

inline ClaimResult claim_lem26() {
  Rng rng(0x2626);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.pick(3);
    Ebes x = random_ebes(rng, n);
    Dces d = ebes_to_dces(x);
    if (config_names(Structure{x}, ConfigMode::Trace) !=
        config_names(Structure{d}, ConfigMode::Step))
      return {"lem26", false, "configurations changed on sample " +
                                  std::to_string(i) + ": " + serialize(Structure{x})};
  }
  Ebes fig2 = std::get<Ebes>(corpus_structure("fig2_ebes"));
  if (config_names(Structure{fig2}, ConfigMode::Trace) !=
      config_names(Structure{ebes_to_dces(fig2)}, ConfigMode::Step))
    return {"lem26", false, "configurations changed on fig2_ebes"};
  return {"lem26", true,
          "200 random EBESs plus fig2_ebes keep their configurations under "
          "ebes_to_dces"};
}

inline ClaimResult claim_lem27() {
  Rng rng(0x2727);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + rng.pick(3);
    Ebes x = random_ebes(rng, n);
    Dces d = ebes_to_dces(x);
    if (posets(Structure{x}, PosetMode::Precedence) !=
        posets(Structure{d}, PosetMode::Precedence))
      return {"lem27", false, "precedence posets changed on sample " +
                                  std::to_string(i) + ": " + serialize(Structure{x})};
  }
  for (const char* name : {"fig2_ebes", "xi_sigma"}) {
    Ebes x = std::get<Ebes>(corpus_structure(name));
    if (posets(Structure{x}, PosetMode::Precedence) !=
        posets(Structure{ebes_to_dces(x)}, PosetMode::Precedence))
      return {"lem27", false, std::string("precedence posets changed on ") + name};
  }
  return {"lem27", true,
          "200 random EBESs plus fig2_ebes and xi_sigma keep their precedence "
          "posets under ebes_to_dces"};
}

}  // namespace claims_detail

inline ClaimResult run_claim(const std::string& id) {
  using namespace claims_detail;
  if (id == "lem1") return claim_lem1();
  if (id == "lem6") return claim_lem6();
  if (id == "thm3-ses-side")
    return exhaustive_claim("thm3-ses-side", Family::Ses,
                            named_alphabet({"e", "f"}), "xi_sigma",
                            EquivKind::trace());
  if (id == "thm3-ebes-side")
    return exhaustive_claim("thm3-ebes-side", Family::Ebes,
                            named_alphabet({"a", "b", "c"}), "sigma_xi",
                            EquivKind::trace());
  if (id == "lem9")
    return exhaustive_claim("lem9", Family::Ses, named_alphabet({"e", "f"}),
                            "rho_sigma", EquivKind::transition());
  if (id == "lem11") return claim_lem11();
  if (id == "lem12")
    return exhaustive_claim("lem12", Family::Ebes, named_alphabet({"a", "b", "c"}),
                            "gamma_xi", EquivKind::trace());
  if (id == "lem13")
    return exhaustive_claim("lem13", Family::Ses, named_alphabet({"a", "b"}),
                            "gamma_sigma", EquivKind::trace());
  if (id == "lem15") return pruned_vs_rho_gamma("lem15", Family::Ges);
  if (id == "lem22") return pruned_vs_rho_gamma("lem22", Family::Dces);
  if (id == "lem28") return claim_lem28();
  if (id == "thm2-roundtrip") return claim_thm2();
  if (id == "thm11") return translation_poset_claim("thm11", PosetMode::Early, 0x1100);
  if (id == "thm12") return translation_poset_claim("thm12", PosetMode::Early, 0x1200);
  if (id == "thm13") return claim_thm13();
  if (id == "thm14") return claim_thm14();
  if (id == "lem16") return claim_lem16();
  if (id == "lem21") return claim_lem21();
  if (id == "lem26") return claim_lem26();
  if (id == "lem27") return claim_lem27();
  throw DynesError("unknown claim id '" + id + "'");
}

inline std::vector<ClaimResult> verify_claims(const std::vector<std::string>& ids) {
  std::vector<ClaimResult> out;
  for (const auto& id : ids) out.push_back(run_claim(id));
  return out;
}

}  // namespace dynes
