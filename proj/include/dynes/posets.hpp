#pragma once

#include "dynes/semantics.hpp"

namespace dynes {

enum class PosetMode { Early, Liberal, Bsat, Minimal, Late, Precedence };

inline const char* poset_mode_name(PosetMode m) {
  switch (m) {
    case PosetMode::Early: return "early";
    case PosetMode::Liberal: return "liberal";
    case PosetMode::Bsat: return "bsat";
    case PosetMode::Minimal: return "minimal";
    case PosetMode::Late: return "late";
    case PosetMode::Precedence: return "precedence";
  }
  return "?";
}

inline std::optional<PosetMode> poset_mode_from_name(const std::string& s) {
  for (PosetMode m : {PosetMode::Early, PosetMode::Liberal, PosetMode::Bsat,
                      PosetMode::Minimal, PosetMode::Late, PosetMode::Precedence})
    if (s == poset_mode_name(m)) return m;
  return std::nullopt;
}

// A finite partial order, canonicalized by event names so posets of
// structures over different alphabets compare meaningfully (translations grow
// the alphabet by impossible fresh events that never reach any carrier).
struct Poset {
  std::vector<std::string> events;  // sorted carrier
  std::vector<EventSet> below;      // below[i] = {j | events[j] <= events[i]}
  friend auto operator<=>(const Poset&, const Poset&) = default;
};

using PosetFamily = std::set<Poset>;

namespace detail {

// Builds the reflexive-transitive closure of the given strict edges over
// `carrier` (global event indices) and converts to name-canonical form.
inline Poset close_poset(const Alphabet& al, EventSet carrier,
                         const std::vector<std::pair<EventId, EventId>>& edges) {
  std::vector<EventId> members;
  for_each_event(carrier, [&](EventId e) { members.push_back(e); });
  std::vector<int> local(al.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);

  std::size_t k = members.size();
  std::vector<EventSet> below(k, 0);
  for (std::size_t i = 0; i < k; ++i) below[i] |= EventSet{1} << i;
  for (const auto& [u, v] : edges) {
    if (!contains(carrier, u) || !contains(carrier, v)) continue;
    below[local[v]] |= EventSet{1} << local[u];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      EventSet acc = below[i];
      for_each_event(below[i], [&](EventId j) { acc |= below[j]; });
      if (acc != below[i]) { below[i] = acc; changed = true; }
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (contains(below[i], static_cast<EventId>(j)) &&
          contains(below[j], static_cast<EventId>(i)))
        throw DynesError("poset: antisymmetry violated between " +
                         al.name(members[i]) + " and " + al.name(members[j]));

  Poset p;
  for (EventId e : members) p.events.push_back(al.name(e));
  p.below = std::move(below);
  return p;
}

struct TraceCauseContext {
  const SemView* view;
  EventId target;
  EventSet prior;                  // events before the target's position
  const std::vector<int>* pos;     // trace position per event
};

inline bool ses_cause_ok(const SemView& v, EventId e, EventSet u) {
  return (v.ic[e] & ~dc_set(v, u, e) & ~u) == 0;
}

inline bool des_cause_ok(const SemView& v, EventId e, EventSet u) {
  for (EventSet members : v.bundles_of[e])
    if (!(members & u)) return false;
  return true;
}

inline bool cause_ok(const TraceCauseContext& c, EventSet u) {
  if (c.view->family == Family::Ses) return ses_cause_ok(*c.view, c.target, u);
  return des_cause_ok(*c.view, c.target, u);
}

// Candidate pool: for a DES the union of bundles, for a SES the initial
// causes plus every dropper of one of them.
inline EventSet cause_pool(const SemView& v, EventId e) {
  EventSet pool = 0;
  if (v.family == Family::Ses) {
    pool = v.ic[e];
    for_each_event(v.ic[e], [&](EventId c) { pool |= v.drops_at(c, e); });
  } else {
    for (EventSet members : v.bundles_of[e]) pool |= members;
  }
  return pool;
}

inline EventId earliest(const TraceCauseContext& c, EventSet s) {
  EventId best = -1;
  for_each_event(s, [&](EventId e) {
    if (best < 0 || (*c.pos)[e] < (*c.pos)[best]) best = e;
  });
  if (best < 0) throw DynesError("early cause: unsatisfied enabling group");
  return best;
}

// Deterministic early cause: the earliest prior event of each enabling group
// (bundle, or initial cause together with its droppers), reduced to a minimal
// set by discarding latest-first whatever is redundant.
inline EventSet early_cause(const TraceCauseContext& c) {
  const SemView& v = *c.view;
  EventSet u = 0;
  if (v.family == Family::Ses) {
    for_each_event(v.ic[c.target], [&](EventId x) {
      EventSet group = (bit(x) | v.drops_at(x, c.target)) & c.prior;
      u |= bit(earliest(c, group));
    });
  } else {
    for (EventSet members : v.bundles_of[c.target])
      u |= bit(earliest(c, members & c.prior));
  }
  std::vector<EventId> order;
  for_each_event(u, [&](EventId e) { order.push_back(e); });
  std::sort(order.begin(), order.end(),
            [&](EventId a, EventId b) { return (*c.pos)[a] > (*c.pos)[b]; });
  for (EventId e : order)
    if (cause_ok(c, u & ~bit(e))) u &= ~bit(e);
  return u;
}

inline std::vector<EventSet> minimal_causes(const TraceCauseContext& c) {
  EventSet pool = cause_pool(*c.view, c.target) & c.prior;
  std::vector<EventSet> hits;
  EventSet u = pool;
  while (true) {
    if (cause_ok(c, u)) hits.push_back(u);
    if (u == 0) break;
    u = (u - 1) & pool;
  }
  std::vector<EventSet> out;
  for (EventSet a : hits) {
    bool minimal = true;
    for (EventSet b : hits)
      if (b != a && (b & ~a) == 0) { minimal = false; break; }
    if (minimal) out.push_back(a);
  }
  return out;
}

// Descending-position key; larger key = later cause set.
inline std::vector<int> late_key(const TraceCauseContext& c, EventSet u) {
  std::vector<int> key;
  for_each_event(u, [&](EventId e) { key.push_back((*c.pos)[e]); });
  std::sort(key.rbegin(), key.rend());
  return key;
}

inline std::vector<EventSet> cause_sets(const TraceCauseContext& c, PosetMode mode) {
  const SemView& v = *c.view;
  switch (mode) {
    case PosetMode::Early:
      return {early_cause(c)};
    case PosetMode::Liberal: {
      EventSet pool = cause_pool(v, c.target) & c.prior;
      std::vector<EventSet> out;
      EventSet u = pool;
      while (true) {
        if (cause_ok(c, u)) out.push_back(u);
        if (u == 0) break;
        u = (u - 1) & pool;
      }
      return out;
    }
    case PosetMode::Bsat: {
      const auto& bundles = v.bundles_of[c.target];
      std::vector<EventSet> images{0};
      for (EventSet members : bundles) {
        std::vector<EventSet> next;
        for_each_event(members & c.prior, [&](EventId pick) {
          for (EventSet img : images) next.push_back(img | bit(pick));
        });
        images = std::move(next);
      }
      std::sort(images.begin(), images.end());
      images.erase(std::unique(images.begin(), images.end()), images.end());
      return images;
    }
    case PosetMode::Minimal:
      return minimal_causes(c);
    case PosetMode::Late: {
      auto min = minimal_causes(c);
      std::vector<EventSet> out;
      std::vector<int> best;
      for (EventSet u : min) {
        auto key = late_key(c, u);
        if (out.empty() || best < key) {
          best = key;
          out = {u};
        } else if (best == key) {
          out.push_back(u);
        }
      }
      return out;
    }
    case PosetMode::Precedence:
      throw DynesError("precedence is not a trace mode");
  }
  return {};
}

inline void trace_posets(const Alphabet& al, const SemView& v, const Trace& t,
                         PosetMode mode, PosetFamily& out) {
  std::vector<int> pos(v.n, -1);
  EventSet carrier = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    pos[t[i]] = static_cast<int>(i);
    carrier |= bit(t[i]);
  }
  // per-position candidate cause sets
  std::vector<std::vector<EventSet>> options(t.size());
  EventSet prior = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    TraceCauseContext c{&v, t[i], prior, &pos};
    options[i] = cause_sets(c, mode);
    prior |= bit(t[i]);
  }
  std::vector<std::pair<EventId, EventId>> edges;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == t.size()) {
      out.insert(close_poset(al, carrier, edges));
      return;
    }
    for (EventSet u : options[i]) {
      std::size_t mark = edges.size();
      for_each_event(u, [&](EventId x) { edges.emplace_back(x, t[i]); });
      self(self, i + 1);
      edges.resize(mark);
    }
  };
  rec(rec, 0);
}

}  // namespace detail

// Posets of one trace under a trace-based causality mode (test hook for the
// per-trace inclusion laws).
inline PosetFamily posets_of_trace(const Structure& s, const Trace& t, PosetMode mode) {
  PosetFamily out;
  detail::trace_posets(alphabet_of(s), make_view(s), t, mode, out);
  return out;
}

// Precedence order of an EBDC at one configuration, as below-masks over the
// full alphabet: leq[e] = {x | x <= e}, zero outside the configuration.
inline std::vector<EventSet> ebdc_leq(const Dces& d, EventSet config) {
  int n = d.alphabet.size();
  std::vector<EventSet> below(n, 0);
  for_each_event(config, [&](EventId e) { below[e] = bit(e); });
  auto add_edge = [&](EventId x, EventId y) {
    if (contains(config, x) && contains(config, y)) below[y] |= bit(x);
  };
  for (const auto& p : d.causes) add_edge(p.cause, p.target);
  for (const auto& m : d.adds)
    if (m.cause == m.target) add_edge(m.cause, m.modifier);
  for (const auto& m : d.drops) add_edge(m.modifier, m.target);
  bool changed = true;
  while (changed) {
    changed = false;
    for_each_event(config, [&](EventId e) {
      EventSet acc = below[e];
      for_each_event(below[e], [&](EventId x) { acc |= below[x]; });
      if (acc != below[e]) { below[e] = acc; changed = true; }
    });
  }
  return below;
}

inline PosetFamily posets(const Structure& s, PosetMode mode) {
  Family fam = family_of(s);
  const Alphabet& al = alphabet_of(s);
  if (mode == PosetMode::Precedence) {
    PosetFamily out;
    if (fam == Family::Ebes || fam == Family::Bes) {
      SemView v = make_view(s);
      std::vector<std::pair<EventId, EventId>> all_edges;
      for (EventId t = 0; t < v.n; ++t)
        for (EventSet members : v.bundles_of[t])
          for_each_event(members, [&](EventId x) { all_edges.emplace_back(x, t); });
      if (fam == Family::Ebes)
        for (const auto& d : std::get<Ebes>(s).disabling)
          all_edges.emplace_back(d.a, d.b);
      for (EventSet config : configurations(v, ConfigMode::Trace)) {
        std::vector<std::pair<EventId, EventId>> edges;
        for (const auto& [x, y] : all_edges)
          if (contains(config, x) && contains(config, y)) edges.emplace_back(x, y);
        out.insert(detail::close_poset(al, config, edges));
      }
      return out;
    }
    if (fam == Family::Dces) {
      const Dces& d = std::get<Dces>(s);
      if (!classify_dces(d).is_ebdc)
        throw DynesError("precedence posets need an EBDC");
      std::vector<std::pair<EventId, EventId>> all_edges;
      for (const auto& p : d.causes) all_edges.emplace_back(p.cause, p.target);
      for (const auto& m : d.adds)
        if (m.cause == m.target) all_edges.emplace_back(m.cause, m.modifier);
      for (const auto& m : d.drops) all_edges.emplace_back(m.modifier, m.target);
      PosetFamily fam_out;
      for (EventSet config : configurations(s, ConfigMode::Step)) {
        std::vector<std::pair<EventId, EventId>> edges;
        for (const auto& [x, y] : all_edges)
          if (contains(config, x) && contains(config, y)) edges.emplace_back(x, y);
        fam_out.insert(detail::close_poset(al, config, edges));
      }
      return fam_out;
    }
    throw DynesError(std::string("precedence posets undefined for family ") +
                     family_name(fam));
  }
  if (fam != Family::Ses && fam != Family::Des)
    throw DynesError(std::string(poset_mode_name(mode)) +
                     " posets are defined for SES and DES only");
  if (mode == PosetMode::Bsat && fam != Family::Des)
    throw DynesError("bsat posets are defined for DES only");
  SemView v = make_view(s);
  PosetFamily out;
  for (const Trace& t : traces(v).seqs) detail::trace_posets(al, v, t, mode, out);
  return out;
}

}  // namespace dynes
