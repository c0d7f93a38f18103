#pragma once

#include "dynes/semantics.hpp"

namespace dynes {

struct FreshNamePolicy {
  std::string prefix = "_x";
};

namespace detail {

// Bundles enumerated lexicographically by (target name, sorted member names);
// the i-th bundle gets the i-th fresh event.
inline std::vector<Bundle> enumerate_bundles(const Alphabet& al,
                                             const std::set<Bundle>& bundles) {
  std::vector<Bundle> out(bundles.begin(), bundles.end());
  auto member_names = [&](EventSet s) {
    std::vector<std::string> names;
    for_each_event(s, [&](EventId e) { names.push_back(al.name(e)); });
    return names;
  };
  std::sort(out.begin(), out.end(), [&](const Bundle& a, const Bundle& b) {
    if (al.name(a.target) != al.name(b.target))
      return al.name(a.target) < al.name(b.target);
    return member_names(a.members) < member_names(b.members);
  });
  return out;
}

struct AlphabetExtension {
  Alphabet extended;
  std::vector<EventId> remap;   // old index -> new index
  std::vector<EventId> fresh;   // new indices of the fresh events, in order
};

inline AlphabetExtension extend_alphabet(const Alphabet& base, std::size_t count,
                                         const FreshNamePolicy& policy) {
  std::string prefix = policy.prefix;
  std::vector<std::string> fresh_names;
  while (true) {
    fresh_names.clear();
    bool clash = false;
    for (std::size_t i = 0; i < count; ++i) {
      std::string n = prefix + std::to_string(i + 1);
      if (base.index_of(n) >= 0) clash = true;
      fresh_names.push_back(n);
    }
    if (!clash) break;
    prefix += "_";
  }
  std::vector<std::string> all = base.names();
  all.insert(all.end(), fresh_names.begin(), fresh_names.end());
  AlphabetExtension ext;
  ext.extended = Alphabet(all);
  ext.remap.resize(base.size());
  for (EventId e = 0; e < base.size(); ++e)
    ext.remap[e] = ext.extended.index_of(base.name(e));
  for (const auto& n : fresh_names) ext.fresh.push_back(ext.extended.index_of(n));
  return ext;
}

inline EventSet remap_set(const std::vector<EventId>& remap, EventSet s) {
  EventSet out = 0;
  for_each_event(s, [&](EventId e) { out |= bit(remap[e]); });
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SES/GES -> RCES via the step relation: X |- Z for every step X -> Y and
// every Z <= Y. Materializes the full enabling relation, so the input is
// size-limited.

inline Rces to_rces(const Structure& s) {
  Family fam = family_of(s);
  if (fam != Family::Ses && fam != Family::Ges)
    throw DynesError("to_rces expects a SES or GES");
  const Alphabet& al = alphabet_of(s);
  if (al.size() > 6)
    throw DynesError("to_rces: enabling relation is exponential; limited to 6 events");
  TransitionGraph g = transition_graph(s);
  // premises: steps only grow (by construction) and interpolate
  for (const auto& [x, y] : g.edges) {
    EventSet grow = y & ~x;
    EventSet sdown = grow;
    while (true) {
      EventSet xp = x | sdown;
      EventSet rest = grow & ~sdown;
      EventSet tdown = rest;
      while (true) {
        if (!g.edges.count({xp, xp | tdown}))
          throw DynesError("to_rces: step relation does not interpolate");
        if (tdown == 0) break;
        tdown = (tdown - 1) & rest;
      }
      if (sdown == 0) break;
      sdown = (sdown - 1) & grow;
    }
  }
  Rces out;
  out.name = name_of(s);
  out.alphabet = al;
  for (const auto& [x, y] : g.edges) {
    EventSet z = y;
    while (true) {
      out.enablings.insert(Enabling{x, z});
      if (z == 0) break;
      z = (z - 1) & y;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SES -> DES: one bundle per initial cause, collecting the cause and its
// droppers. The target itself never carries information as a bundle member
// (it cannot precede itself), so it is removed; a self-cause without foreign
// droppers marks an impossible event, which no same-alphabet bundle set can
// express, and is rejected.

inline EventSet droppers_of_ses(const Ses& s, EventId cause, EventId target) {
  EventSet out = 0;
  for (const auto& m : s.drops)
    if (m.cause == cause && m.target == target) out |= bit(m.modifier);
  return out;
}

inline Des ses_to_des(const Ses& s) {
  Des out;
  out.name = s.name;
  out.alphabet = s.alphabet;
  out.conflict = s.conflict;
  for (const auto& p : s.causes) {
    EventSet members =
        (bit(p.cause) | droppers_of_ses(s, p.cause, p.target)) & ~bit(p.target);
    if (members == 0)
      throw DynesError("ses_to_des: event '" + s.alphabet.name(p.target) +
                       "' is impossible (undroppable self-cause) and has no "
                       "bundle encoding over the same events");
    out.bundles.insert(Bundle{members, p.target});
  }
  return out;
}

// ---------------------------------------------------------------------------
// DES -> SES: a fresh impossible event per bundle becomes the initial cause
// of the bundle target, dropped by every bundle member.

inline Ses des_to_ses(const Des& d, const FreshNamePolicy& policy = {}) {
  auto ordered = detail::enumerate_bundles(d.alphabet, d.bundles);
  auto ext = detail::extend_alphabet(d.alphabet, ordered.size(), policy);
  Ses out;
  out.name = d.name;
  out.alphabet = ext.extended;
  for (const auto& p : d.conflict)
    out.conflict.insert(ConflictPair(ext.remap[p.a], ext.remap[p.b]));
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    EventId x = ext.fresh[i];
    EventId target = ext.remap[ordered[i].target];
    out.causes.insert(CausePair{x, target});
    out.causes.insert(CausePair{x, x});
    for_each_event(ordered[i].members, [&](EventId m) {
      out.drops.insert(Modifier{x, ext.remap[m], target});
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// SES/GES -> DCES embedding. Add triples of a GES whose causal pair is
// already initial are redundant (the initial cause imposes the same
// requirement) and are not carried over; the embedding must satisfy the DCES
// well-formedness rule that added causes are not initial.

inline Dces embed(const Structure& s) {
  Family fam = family_of(s);
  Dces out;
  if (fam == Family::Ses) {
    const Ses& v = std::get<Ses>(s);
    out.name = v.name;
    out.alphabet = v.alphabet;
    out.conflict = v.conflict;
    out.causes = v.causes;
    out.drops = v.drops;
  } else if (fam == Family::Ges) {
    const Ges& v = std::get<Ges>(s);
    out.name = v.name;
    out.alphabet = v.alphabet;
    out.conflict = v.conflict;
    out.causes = v.causes;
    for (const auto& a : v.adds)
      if (!v.causes.count({a.cause, a.target})) out.adds.insert(a);
  } else {
    throw DynesError("embed expects a SES or GES");
  }
  return out;
}

// ---------------------------------------------------------------------------
// EBES -> DCES. Bundles translate as in des_to_ses; mutual disabling becomes
// conflict, one-way disabling a self-cause added by the disabler; each fresh
// event conflicts with the members of its bundle.

inline Dces ebes_to_dces(const Ebes& x, const FreshNamePolicy& policy = {}) {
  auto ordered = detail::enumerate_bundles(x.alphabet, x.bundles);
  auto ext = detail::extend_alphabet(x.alphabet, ordered.size(), policy);
  Dces out;
  out.name = x.name;
  out.alphabet = ext.extended;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    EventId fresh = ext.fresh[i];
    EventId target = ext.remap[ordered[i].target];
    out.causes.insert(CausePair{fresh, target});
    out.causes.insert(CausePair{fresh, fresh});
    for_each_event(ordered[i].members, [&](EventId m) {
      out.drops.insert(Modifier{fresh, ext.remap[m], target});
      out.conflict.insert(ConflictPair(fresh, ext.remap[m]));
    });
  }
  for (const auto& d : x.disabling) {
    if (d.a == d.b) continue;  // a self-disabling never constrains a trace
    if (x.disabling.count({d.b, d.a}))
      out.conflict.insert(ConflictPair(ext.remap[d.a], ext.remap[d.b]));
    else
      out.adds.insert(Modifier{ext.remap[d.a], ext.remap[d.b], ext.remap[d.a]});
  }
  return out;
}

}  // namespace dynes
