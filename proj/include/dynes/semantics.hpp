#pragma once

#include <map>
#include <set>

#include "dynes/structures.hpp"

namespace dynes {

// ---------------------------------------------------------------------------
// SemView: per-structure lookup tables the semantic functions run on.
//
// adders holds only effective modifier triples (modifier distinct from cause
// and target); triples violating that filter never influence any semantic
// function, see SEMANTICS.md. droppers is kept unfiltered: a dropper equal to
// its cause or target is harmless in every rule because the pair leaves the
// pending domain as soon as that event fires.

struct SemView {
  Family family{};
  int n = 0;
  std::vector<EventSet> conflict;       // symmetric closure, per event
  std::vector<EventSet> blocked_prior;  // e blocked if history meets this
  std::vector<EventSet> ic;             // per target
  std::vector<EventSet> droppers;       // [cause * n + target]
  std::vector<EventSet> adders;         // [cause * n + target], effective only
  std::vector<std::vector<EventSet>> bundles_of;  // per target
  std::vector<Enabling> enablings;

  EventSet drops_at(EventId cause, EventId target) const {
    return droppers[static_cast<std::size_t>(cause) * n + target];
  }
  EventSet adds_at(EventId cause, EventId target) const {
    return adders[static_cast<std::size_t>(cause) * n + target];
  }
};

namespace detail {

inline void init_view(SemView& v, Family f, int n) {
  v.family = f;
  v.n = n;
  v.conflict.assign(n, 0);
  v.blocked_prior.assign(n, 0);
  v.ic.assign(n, 0);
  v.droppers.assign(static_cast<std::size_t>(n) * n, 0);
  v.adders.assign(static_cast<std::size_t>(n) * n, 0);
  v.bundles_of.assign(n, {});
}

inline void view_conflict(SemView& v, const std::set<ConflictPair>& conflict) {
  for (const auto& p : conflict) {
    v.conflict[p.a] |= bit(p.b);
    v.conflict[p.b] |= bit(p.a);
  }
  for (int e = 0; e < v.n; ++e) v.blocked_prior[e] = v.conflict[e];
}

inline void view_causes(SemView& v, const std::set<CausePair>& causes) {
  for (const auto& p : causes) v.ic[p.target] |= bit(p.cause);
}

inline void view_drops(SemView& v, const std::set<Modifier>& drops) {
  for (const auto& m : drops)
    v.droppers[static_cast<std::size_t>(m.cause) * v.n + m.target] |= bit(m.modifier);
}

inline void view_adds(SemView& v, const std::set<Modifier>& adds) {
  for (const auto& m : adds)
    if (m.modifier != m.cause && m.modifier != m.target)
      v.adders[static_cast<std::size_t>(m.cause) * v.n + m.target] |= bit(m.modifier);
}

inline void view_bundles(SemView& v, const std::set<Bundle>& bundles) {
  for (const auto& b : bundles) v.bundles_of[b.target].push_back(b.members);
}

}  // namespace detail

inline SemView make_view(const Ses& s) {
  SemView v;
  detail::init_view(v, Family::Ses, s.alphabet.size());
  detail::view_conflict(v, s.conflict);
  detail::view_causes(v, s.causes);
  detail::view_drops(v, s.drops);
  return v;
}

inline SemView make_view(const Ges& s) {
  SemView v;
  detail::init_view(v, Family::Ges, s.alphabet.size());
  detail::view_conflict(v, s.conflict);
  detail::view_causes(v, s.causes);
  detail::view_adds(v, s.adds);
  return v;
}

inline SemView make_view(const Dces& s) {
  SemView v;
  detail::init_view(v, Family::Dces, s.alphabet.size());
  detail::view_conflict(v, s.conflict);
  detail::view_causes(v, s.causes);
  detail::view_drops(v, s.drops);
  detail::view_adds(v, s.adds);
  return v;
}

inline SemView make_view(const Des& s) {
  SemView v;
  detail::init_view(v, Family::Des, s.alphabet.size());
  detail::view_conflict(v, s.conflict);
  detail::view_bundles(v, s.bundles);
  return v;
}

inline SemView make_view(const Bes& s) {
  SemView v;
  detail::init_view(v, Family::Bes, s.alphabet.size());
  detail::view_conflict(v, s.conflict);
  detail::view_bundles(v, s.bundles);
  return v;
}

inline SemView make_view(const Ebes& s) {
  SemView v;
  detail::init_view(v, Family::Ebes, s.alphabet.size());
  detail::view_bundles(v, s.bundles);
  // a ~> b: b can never precede a, so b in the history blocks a.
  for (const auto& d : s.disabling) v.blocked_prior[d.a] |= bit(d.b);
  return v;
}

inline SemView make_view(const Rces& s) {
  SemView v;
  detail::init_view(v, Family::Rces, s.alphabet.size());
  v.enablings.assign(s.enablings.begin(), s.enablings.end());
  return v;
}

inline SemView make_view(const Structure& s) {
  return std::visit([](const auto& v) { return make_view(v); }, s);
}

// ---------------------------------------------------------------------------
// Derived cause sets: ic(e), dc(H,e), ac(H,e).

inline EventSet dc_set(const SemView& v, EventSet history, EventId target) {
  EventSet out = 0;
  for (EventId c = 0; c < v.n; ++c)
    if (v.drops_at(c, target) & history) out |= bit(c);
  return out;
}

inline EventSet ac_set(const SemView& v, EventSet history, EventId target) {
  EventSet out = 0;
  for (EventId c = 0; c < v.n; ++c)
    if (v.adds_at(c, target) & history) out |= bit(c);
  return out;
}

namespace detail {

inline bool has_cause_relation(Family f) {
  return f == Family::Ses || f == Family::Ges || f == Family::Dces;
}

}  // namespace detail

inline EventSet initial_causes(const Structure& s, EventId e) {
  if (!detail::has_cause_relation(family_of(s)))
    throw DynesError("initial_causes: family " +
                     std::string(family_name(family_of(s))) +
                     " has no cause relation");
  return make_view(s).ic[e];
}

inline EventSet dropped_causes(const Structure& s, EventSet history, EventId e) {
  if (!detail::has_cause_relation(family_of(s)))
    throw DynesError("dropped_causes: family " +
                     std::string(family_name(family_of(s))) +
                     " has no cause relation");
  return dc_set(make_view(s), history, e);
}

inline EventSet added_causes(const Structure& s, EventSet history, EventId e) {
  if (!detail::has_cause_relation(family_of(s)))
    throw DynesError("added_causes: family " +
                     std::string(family_name(family_of(s))) +
                     " has no cause relation");
  return ac_set(make_view(s), history, e);
}

// ---------------------------------------------------------------------------
// RCES step relation: X -> Y iff X <= Y and every Z between X and Y has some
// W <= X with W |- Z.

inline bool rces_z_enabled(const SemView& v, EventSet x, EventSet z) {
  for (const auto& en : v.enablings)
    if ((en.lhs & ~x) == 0 && en.rhs == z) return true;
  return false;
}

inline bool rces_step(const SemView& v, EventSet x, EventSet y) {
  if (x & ~y) return false;
  EventSet extra = y & ~x;
  // enumerate all Z = x | t, t subset of extra
  EventSet t = extra;
  while (true) {
    if (!rces_z_enabled(v, x, x | t)) return false;
    if (t == 0) break;
    t = (t - 1) & extra;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Trace-extension predicate. For every family except DCES the possibility of
// appending e to a trace depends only on the set of events already fired.

inline bool can_extend(const SemView& v, EventSet history, EventId e) {
  if (contains(history, e)) return false;
  if (v.blocked_prior[e] & history) return false;
  switch (v.family) {
    case Family::Ses: {
      EventSet missing = v.ic[e] & ~history;
      bool ok = true;
      for_each_event(missing, [&](EventId c) {
        if (!(v.drops_at(c, e) & history)) ok = false;
      });
      return ok;
    }
    case Family::Ges: {
      if (v.ic[e] & ~history) return false;
      return (ac_set(v, history, e) & ~history) == 0;
    }
    case Family::Des:
    case Family::Bes:
    case Family::Ebes: {
      for (EventSet members : v.bundles_of[e])
        if (!(members & history)) return false;
      return true;
    }
    case Family::Rces:
      return rces_step(v, history, history | bit(e));
    case Family::Dces:
      throw DynesError("can_extend: DCES extension is state-dependent");
  }
  return false;
}

// ---------------------------------------------------------------------------
// DCES state machine.

struct DcesState {
  EventSet config = 0;
  std::vector<EventSet> need;  // outstanding causes per event; 0 once fired
  friend auto operator<=>(const DcesState&, const DcesState&) = default;
};

inline DcesState dces_initial_state(const SemView& v) {
  DcesState st;
  st.config = 0;
  st.need.assign(v.ic.begin(), v.ic.end());
  return st;
}

// Fires the event set `fired` from `st`. Returns the successor state, or
// nothing when some transition condition is violated.
inline std::optional<DcesState> dces_fire(const SemView& v, const DcesState& st,
                                          EventSet fired) {
  if (fired & st.config) return std::nullopt;
  EventSet next_config = st.config | fired;
  bool ok = true;
  for_each_event(fired, [&](EventId e) {
    if (v.conflict[e] & next_config) ok = false;  // conflict-free target
    if (st.need[e] != 0) ok = false;              // outstanding causes gone
  });
  if (!ok) return std::nullopt;
  // no target may fire together with an adder of a cause outside the source
  for_each_event(fired, [&](EventId t) {
    for (EventId c = 0; c < v.n && ok; ++c)
      if ((v.adds_at(c, t) & fired) && !contains(st.config, c)) ok = false;
  });
  if (!ok) return std::nullopt;
  DcesState out;
  out.config = next_config;
  out.need.assign(v.n, 0);
  for (EventId e = 0; e < v.n && ok; ++e) {
    if (contains(next_config, e)) continue;
    EventSet added = 0, dropped = 0;
    for (EventId c = 0; c < v.n; ++c) {
      if (v.adds_at(c, e) & fired) added |= bit(c);
      if (v.drops_at(c, e) & fired) dropped |= bit(c);
    }
    // a cause both added and dropped in one step has no consistent update
    if (added & dropped & ~next_config) { ok = false; break; }
    out.need[e] = ((st.need[e] | added) & ~(dropped | next_config));
  }
  if (!ok) return std::nullopt;
  return out;
}

struct StateGraph {
  std::vector<DcesState> states;  // discovery (BFS) order; root at index 0
  std::set<std::pair<std::size_t, std::size_t>> edges;
};

inline StateGraph dces_state_graph(const SemView& v) {
  StateGraph g;
  std::map<DcesState, std::size_t> index;
  DcesState root = dces_initial_state(v);
  g.states.push_back(root);
  index[root] = 0;
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t si = frontier.back();
    frontier.pop_back();
    DcesState st = g.states[si];
    EventSet rest = full_set(v.n) & ~st.config;
    // all firing sets, including the empty one (reflexive step)
    EventSet fired = rest;
    while (true) {
      if (auto succ = dces_fire(v, st, fired)) {
        auto [it, fresh] = index.try_emplace(*succ, g.states.size());
        if (fresh) {
          g.states.push_back(*succ);
          frontier.push_back(it->second);
        }
        g.edges.insert({si, it->second});
      }
      if (fired == 0) break;
      fired = (fired - 1) & rest;
    }
  }
  return g;
}

inline StateGraph dces_state_graph(const Dces& d) {
  return dces_state_graph(make_view(d));
}

// Closed form for the causal state of an SSDC at a reachable configuration.
inline std::vector<EventSet> causal_state_closed_form(const Dces& d, EventSet config);

// ---------------------------------------------------------------------------
// Traces. Emitted in depth-first order, i.e. lexicographically with every
// prefix before its extensions; the result is prefix-closed by construction.

using Trace = std::vector<EventId>;

struct TraceSet {
  std::vector<Trace> seqs;
  friend bool operator==(const TraceSet&, const TraceSet&) = default;
};

namespace detail {

inline void trace_dfs(const SemView& v, EventSet history, Trace& cur,
                      std::vector<Trace>& out) {
  out.push_back(cur);
  for (EventId e = 0; e < v.n; ++e) {
    if (can_extend(v, history, e)) {
      cur.push_back(e);
      trace_dfs(v, history | bit(e), cur, out);
      cur.pop_back();
    }
  }
}

inline void dces_trace_dfs(const SemView& v, const DcesState& st, Trace& cur,
                           std::vector<Trace>& out) {
  out.push_back(cur);
  for (EventId e = 0; e < v.n; ++e) {
    if (contains(st.config, e)) continue;
    if (auto succ = dces_fire(v, st, bit(e))) {
      cur.push_back(e);
      dces_trace_dfs(v, *succ, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace detail

inline TraceSet traces(const SemView& v) {
  TraceSet ts;
  Trace cur;
  if (v.family == Family::Dces)
    detail::dces_trace_dfs(v, dces_initial_state(v), cur, ts.seqs);
  else
    detail::trace_dfs(v, 0, cur, ts.seqs);
  return ts;
}

inline TraceSet traces(const Structure& s) { return traces(make_view(s)); }

// ---------------------------------------------------------------------------
// Configurations.

enum class ConfigMode { Trace, Step };

inline std::set<EventSet> trace_configurations(const SemView& v) {
  std::set<EventSet> seen;
  if (v.family == Family::Dces) {
    for (const auto& t : traces(v).seqs) {
      EventSet h = 0;
      for (EventId e : t) h |= bit(e);
      seen.insert(h);
    }
    return seen;
  }
  std::vector<EventSet> frontier{0};
  seen.insert(0);
  while (!frontier.empty()) {
    EventSet h = frontier.back();
    frontier.pop_back();
    for (EventId e = 0; e < v.n; ++e)
      if (can_extend(v, h, e) && seen.insert(h | bit(e)).second)
        frontier.push_back(h | bit(e));
  }
  return seen;
}

struct TransitionGraph {
  std::set<EventSet> nodes;
  std::set<std::pair<EventSet, EventSet>> edges;
  friend bool operator==(const TransitionGraph&, const TransitionGraph&) = default;
};

// Multi-event step relation of SES and GES structures.
inline bool ses_ges_step(const SemView& v, EventSet x, EventSet y) {
  if (x & ~y) return false;
  EventSet fired = y & ~x;
  bool ok = true;
  for_each_event(fired, [&](EventId e) {
    if (v.conflict[e] & y) ok = false;
  });
  if (!ok) return false;
  if (v.family == Family::Ses) {
    for_each_event(fired, [&](EventId e) {
      for_each_event(v.ic[e] & ~x, [&](EventId c) {
        if (!(v.drops_at(c, e) & x)) ok = false;
      });
    });
    return ok;
  }
  for_each_event(fired, [&](EventId e) {
    if (v.ic[e] & ~x) ok = false;
    if (ac_set(v, x, e) & ~x) ok = false;
  });
  if (!ok) return false;
  // no event fires together with an adder of one of its still-missing causes
  for_each_event(fired, [&](EventId t) {
    for (EventId c = 0; c < v.n && ok; ++c)
      if ((v.adds_at(c, t) & fired) && !contains(x, c)) ok = false;
  });
  return ok;
}

inline TransitionGraph transition_graph(const SemView& v) {
  TransitionGraph g;
  switch (v.family) {
    case Family::Ses:
    case Family::Ges: {
      g.nodes.insert(0);
      std::vector<EventSet> frontier{0};
      while (!frontier.empty()) {
        EventSet x = frontier.back();
        frontier.pop_back();
        EventSet rest = full_set(v.n) & ~x;
        EventSet s = rest;
        while (true) {
          if (ses_ges_step(v, x, x | s)) {
            g.edges.insert({x, x | s});
            if (g.nodes.insert(x | s).second) frontier.push_back(x | s);
          }
          if (s == 0) break;
          s = (s - 1) & rest;
        }
      }
      return g;
    }
    case Family::Rces: {
      g.nodes.insert(0);
      std::vector<EventSet> frontier{0};
      while (!frontier.empty()) {
        EventSet x = frontier.back();
        frontier.pop_back();
        EventSet rest = full_set(v.n) & ~x;
        EventSet s = rest;
        while (true) {
          if (rces_step(v, x, x | s)) {
            g.edges.insert({x, x | s});
            if (g.nodes.insert(x | s).second) frontier.push_back(x | s);
          }
          if (s == 0) break;
          s = (s - 1) & rest;
        }
      }
      return g;
    }
    case Family::Des:
    case Family::Bes:
    case Family::Ebes: {
      // these families step by single-event extensions of their traces
      g.nodes.insert(0);
      std::vector<EventSet> frontier{0};
      while (!frontier.empty()) {
        EventSet x = frontier.back();
        frontier.pop_back();
        for (EventId e = 0; e < v.n; ++e)
          if (can_extend(v, x, e)) {
            g.edges.insert({x, x | bit(e)});
            if (g.nodes.insert(x | bit(e)).second) frontier.push_back(x | bit(e));
          }
      }
      return g;
    }
    case Family::Dces: {
      StateGraph sg = dces_state_graph(v);
      for (const auto& st : sg.states) g.nodes.insert(st.config);
      for (const auto& [a, b] : sg.edges)
        g.edges.insert({sg.states[a].config, sg.states[b].config});
      return g;
    }
  }
  return g;
}

inline TransitionGraph transition_graph(const Structure& s) {
  return transition_graph(make_view(s));
}

inline std::set<EventSet> configurations(const SemView& v, ConfigMode mode) {
  if (mode == ConfigMode::Trace) return trace_configurations(v);
  switch (v.family) {
    case Family::Des:
    case Family::Bes:
    case Family::Ebes:
      // step semantics of the bundle families is the single-event extension
      // closure of their traces
      return trace_configurations(v);
    default:
      return transition_graph(v).nodes;
  }
}

inline std::set<EventSet> configurations(const Structure& s, ConfigMode mode) {
  return configurations(make_view(s), mode);
}

// ---------------------------------------------------------------------------

inline std::vector<EventSet> causal_state_closed_form(const Dces& d, EventSet config) {
  SubclassFlags flags = classify_dces(d);
  if (!flags.is_ssdc)
    throw DynesError("causal_state_closed_form: structure is not an SSDC");
  SemView v = make_view(d);
  auto reachable = transition_graph(v).nodes;
  if (!reachable.count(config))
    throw DynesError("causal_state_closed_form: unreachable configuration");
  std::vector<EventSet> cs(v.n, 0);
  for (EventId e = 0; e < v.n; ++e) {
    if (contains(config, e)) continue;
    cs[e] = (v.ic[e] | ac_set(v, config, e)) & ~(dc_set(v, config, e) | config);
  }
  return cs;
}

}  // namespace dynes
