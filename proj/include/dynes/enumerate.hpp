#pragma once

#include <chrono>
#include <functional>

#include "dynes/equiv.hpp"

namespace dynes {

// Description of an enumeration space: one family over a fixed alphabet,
// optionally narrowed by slot restrictions. Every named restriction carried
// in constraint_ids has a companion soundness check (see claims).
struct SearchSpec {
  Family family{};
  Alphabet alphabet;
  std::optional<std::vector<ConflictPair>> conflict_slots;
  std::optional<std::vector<CausePair>> cause_slots;
  bool effective_modifiers_only = false;
  std::vector<std::string> constraint_ids;
  std::uint64_t max_structures = 10'000'000;
  double max_seconds = 120.0;
};

struct SearchOutcome {
  enum class Status { Found, ExhaustedNone, BudgetExceeded };
  Status status = Status::ExhaustedNone;
  std::optional<Structure> found;
  std::uint64_t explored = 0;
};

namespace detail {

inline std::vector<ConflictPair> default_conflict_slots(int n) {
  std::vector<ConflictPair> out;
  for (EventId a = 0; a < n; ++a)
    for (EventId b = a + 1; b < n; ++b) out.emplace_back(a, b);
  return out;
}

inline std::vector<CausePair> default_cause_slots(int n) {
  std::vector<CausePair> out;
  for (EventId c = 0; c < n; ++c)
    for (EventId t = 0; t < n; ++t) out.push_back({c, t});
  return out;
}

inline std::vector<Bundle> all_bundles(int n) {
  std::vector<Bundle> out;
  for (EventId t = 0; t < n; ++t) {
    EventSet pool = full_set(n) & ~bit(t);
    EventSet s = pool;
    while (true) {
      if (s) out.push_back({s, t});
      if (s == 0) break;
      s = (s - 1) & pool;
    }
  }
  return out;
}

// Candidate handed to the enumeration callback. materialize() builds the
// full Structure for the current candidate; it is only valid inside the
// callback invocation.
struct Candidate {
  const SemView& view;
  const std::function<Structure()>& materialize;
};

using EnumCb = std::function<bool(const Candidate&)>;  // false aborts

class Enumerator {
 public:
  explicit Enumerator(const SearchSpec& spec) : spec_(spec), n_(spec.alphabet.size()) {
    conflict_slots_ = spec.conflict_slots ? *spec.conflict_slots
                                          : default_conflict_slots(n_);
    cause_slots_ = spec.cause_slots ? *spec.cause_slots : default_cause_slots(n_);
  }

  // Returns the number of structures emitted; sets aborted when cb stopped.
  std::uint64_t run(const EnumCb& cb, bool* aborted) {
    count_ = 0;
    aborted_ = false;
    switch (spec_.family) {
      case Family::Ses: run_ses(cb); break;
      case Family::Ges: run_ges(cb); break;
      case Family::Dces: run_dces(cb); break;
      case Family::Des: run_bundle(cb, /*stable=*/false); break;
      case Family::Bes: run_bundle(cb, /*stable=*/true); break;
      case Family::Ebes: run_ebes(cb); break;
      case Family::Rces:
        throw DynesError("enumerate: RCES spaces are not enumerated");
    }
    if (aborted) *aborted = aborted_;
    return count_;
  }

 private:
  const SearchSpec& spec_;
  int n_;
  std::vector<ConflictPair> conflict_slots_;
  std::vector<CausePair> cause_slots_;
  std::uint64_t count_ = 0;
  bool aborted_ = false;

  bool modifier_ok(EventId m, EventId c, EventId t) const {
    if (!spec_.effective_modifiers_only) return true;
    return m != c && m != t;
  }

  static std::uint64_t mask_end(std::size_t slots) {
    if (slots > 62) throw DynesError("enumerate: slot space too large");
    return std::uint64_t{1} << slots;
  }

  bool emit(const SemView& v, const std::function<Structure()>& make,
            const EnumCb& cb) {
    ++count_;
    if (!cb(Candidate{v, make})) {
      aborted_ = true;
      return false;
    }
    return true;
  }

  void set_conflicts(SemView& v, std::uint64_t cmask,
                     std::set<ConflictPair>* out) const {
    for (int e = 0; e < n_; ++e) v.conflict[e] = 0;
    for (std::size_t i = 0; i < conflict_slots_.size(); ++i) {
      if (!((cmask >> i) & 1)) continue;
      const auto& p = conflict_slots_[i];
      v.conflict[p.a] |= bit(p.b);
      v.conflict[p.b] |= bit(p.a);
      if (out) out->insert(p);
    }
    for (int e = 0; e < n_; ++e) v.blocked_prior[e] = v.conflict[e];
  }

  void run_ses(const EnumCb& cb) {
    SemView v;
    init_view(v, Family::Ses, n_);
    std::set<ConflictPair> cset;
    for (std::uint64_t cm = 0; cm < mask_end(conflict_slots_.size()); ++cm) {
      cset.clear();
      set_conflicts(v, cm, &cset);
      for (std::uint64_t am = 0; am < mask_end(cause_slots_.size()); ++am) {
        for (int e = 0; e < n_; ++e) v.ic[e] = 0;
        std::vector<CausePair> chosen;
        for (std::size_t i = 0; i < cause_slots_.size(); ++i)
          if ((am >> i) & 1) {
            chosen.push_back(cause_slots_[i]);
            v.ic[cause_slots_[i].target] |= bit(cause_slots_[i].cause);
          }
        std::vector<Modifier> slots;
        for (const auto& p : chosen)
          for (EventId d = 0; d < n_; ++d)
            if (modifier_ok(d, p.cause, p.target))
              slots.push_back({p.cause, d, p.target});
        for (std::uint64_t dm = 0; dm < mask_end(slots.size()); ++dm) {
          std::fill(v.droppers.begin(), v.droppers.end(), 0);
          for (std::size_t i = 0; i < slots.size(); ++i)
            if ((dm >> i) & 1)
              v.droppers[static_cast<std::size_t>(slots[i].cause) * n_ +
                         slots[i].target] |= bit(slots[i].modifier);
          std::function<Structure()> make = [&]() -> Structure {
            Ses s;
            s.alphabet = spec_.alphabet;
            s.conflict = cset;
            for (const auto& p : chosen) s.causes.insert(p);
            for (std::size_t i = 0; i < slots.size(); ++i)
              if ((dm >> i) & 1) s.drops.insert(slots[i]);
            return s;
          };
          if (!emit(v, make, cb)) return;
        }
      }
    }
  }

  void run_ges(const EnumCb& cb) {
    SemView v;
    init_view(v, Family::Ges, n_);
    std::set<ConflictPair> cset;
    std::vector<Modifier> slots;
    for (EventId c = 0; c < n_; ++c)
      for (EventId m = 0; m < n_; ++m)
        for (EventId t = 0; t < n_; ++t)
          if (modifier_ok(m, c, t)) slots.push_back({c, m, t});
    for (std::uint64_t cm = 0; cm < mask_end(conflict_slots_.size()); ++cm) {
      cset.clear();
      set_conflicts(v, cm, &cset);
      for (std::uint64_t am = 0; am < mask_end(cause_slots_.size()); ++am) {
        for (int e = 0; e < n_; ++e) v.ic[e] = 0;
        std::vector<CausePair> chosen;
        for (std::size_t i = 0; i < cause_slots_.size(); ++i)
          if ((am >> i) & 1) {
            chosen.push_back(cause_slots_[i]);
            v.ic[cause_slots_[i].target] |= bit(cause_slots_[i].cause);
          }
        for (std::uint64_t gm = 0; gm < mask_end(slots.size()); ++gm) {
          std::fill(v.adders.begin(), v.adders.end(), 0);
          for (std::size_t i = 0; i < slots.size(); ++i)
            if ((gm >> i) & 1) {
              const auto& s = slots[i];
              if (s.modifier != s.cause && s.modifier != s.target)
                v.adders[static_cast<std::size_t>(s.cause) * n_ + s.target] |=
                    bit(s.modifier);
            }
          std::function<Structure()> make = [&]() -> Structure {
            Ges g;
            g.alphabet = spec_.alphabet;
            g.conflict = cset;
            for (const auto& p : chosen) g.causes.insert(p);
            for (std::size_t i = 0; i < slots.size(); ++i)
              if ((gm >> i) & 1) g.adds.insert(slots[i]);
            return g;
          };
          if (!emit(v, make, cb)) return;
        }
      }
    }
  }

  void run_bundle(const EnumCb& cb, bool stable) {
    SemView v;
    init_view(v, stable ? Family::Bes : Family::Des, n_);
    std::set<ConflictPair> cset;
    for (std::uint64_t cm = 0; cm < mask_end(conflict_slots_.size()); ++cm) {
      cset.clear();
      set_conflicts(v, cm, &cset);
      std::vector<Bundle> slots;
      for (const Bundle& b : all_bundles(n_)) {
        if (stable) {
          bool ok = true;
          for_each_event(b.members, [&](EventId x) {
            for_each_event(b.members, [&](EventId y) {
              if (x < y && !cset.count(ConflictPair(x, y))) ok = false;
            });
          });
          if (!ok) continue;
        }
        slots.push_back(b);
      }
      for (std::uint64_t bm = 0; bm < mask_end(slots.size()); ++bm) {
        for (int e = 0; e < n_; ++e) v.bundles_of[e].clear();
        for (std::size_t i = 0; i < slots.size(); ++i)
          if ((bm >> i) & 1) v.bundles_of[slots[i].target].push_back(slots[i].members);
        std::function<Structure()> make = [&]() -> Structure {
          if (stable) {
            Bes b;
            b.alphabet = spec_.alphabet;
            b.conflict = cset;
            for (std::size_t i = 0; i < slots.size(); ++i)
              if ((bm >> i) & 1) b.bundles.insert(slots[i]);
            return b;
          }
          Des d;
          d.alphabet = spec_.alphabet;
          d.conflict = cset;
          for (std::size_t i = 0; i < slots.size(); ++i)
            if ((bm >> i) & 1) d.bundles.insert(slots[i]);
          return d;
        };
        if (!emit(v, make, cb)) return;
      }
    }
  }

  void run_ebes(const EnumCb& cb) {
    SemView v;
    init_view(v, Family::Ebes, n_);
    std::vector<Disabling> dslots;
    for (EventId a = 0; a < n_; ++a)
      for (EventId b = 0; b < n_; ++b)
        if (a != b) dslots.push_back({a, b});
    for (std::uint64_t dm = 0; dm < mask_end(dslots.size()); ++dm) {
      std::set<Disabling> disa;
      for (int e = 0; e < n_; ++e) v.blocked_prior[e] = 0;
      for (std::size_t i = 0; i < dslots.size(); ++i)
        if ((dm >> i) & 1) {
          disa.insert(dslots[i]);
          v.blocked_prior[dslots[i].a] |= bit(dslots[i].b);
        }
      auto mutual = [&](EventId x, EventId y) {
        return disa.count({x, y}) && disa.count({y, x});
      };
      std::vector<Bundle> slots;
      for (const Bundle& b : all_bundles(n_)) {
        bool ok = true;
        for_each_event(b.members, [&](EventId x) {
          for_each_event(b.members, [&](EventId y) {
            if (x < y && !mutual(x, y)) ok = false;
          });
        });
        if (ok) slots.push_back(b);
      }
      for (std::uint64_t bm = 0; bm < mask_end(slots.size()); ++bm) {
        for (int e = 0; e < n_; ++e) v.bundles_of[e].clear();
        for (std::size_t i = 0; i < slots.size(); ++i)
          if ((bm >> i) & 1) v.bundles_of[slots[i].target].push_back(slots[i].members);
        std::function<Structure()> make = [&]() -> Structure {
          Ebes x;
          x.alphabet = spec_.alphabet;
          x.disabling = disa;
          for (std::size_t i = 0; i < slots.size(); ++i)
            if ((bm >> i) & 1) x.bundles.insert(slots[i]);
          return x;
        };
        if (!emit(v, make, cb)) return;
      }
    }
  }

  // DCES: per causal pair, drops on initial pairs, coupled add/drop choices
  // on the others (a drop needs an addable pair).
  void run_dces(const EnumCb& cb) {
    SemView v;
    init_view(v, Family::Dces, n_);
    std::set<ConflictPair> cset;
    struct PairChoice {
      EventId cause, target;
      bool initial;
      std::vector<EventId> adders, droppers;
      // enumerated choice
      std::uint64_t amask = 0, dmask = 0;
    };
    for (std::uint64_t cm = 0; cm < mask_end(conflict_slots_.size()); ++cm) {
      cset.clear();
      set_conflicts(v, cm, &cset);
      for (std::uint64_t am = 0; am < mask_end(cause_slots_.size()); ++am) {
        for (int e = 0; e < n_; ++e) v.ic[e] = 0;
        std::set<CausePair> chosen;
        for (std::size_t i = 0; i < cause_slots_.size(); ++i)
          if ((am >> i) & 1) {
            chosen.insert(cause_slots_[i]);
            v.ic[cause_slots_[i].target] |= bit(cause_slots_[i].cause);
          }
        std::vector<PairChoice> pairs;
        for (EventId c = 0; c < n_; ++c)
          for (EventId t = 0; t < n_; ++t) {
            PairChoice p;
            p.cause = c;
            p.target = t;
            p.initial = chosen.count({c, t}) != 0;
            for (EventId m = 0; m < n_; ++m) {
              if (!modifier_ok(m, c, t)) continue;
              p.droppers.push_back(m);
              if (!p.initial) p.adders.push_back(m);
            }
            pairs.push_back(p);
          }
        auto rec = [&](auto&& self, std::size_t i) -> bool {
          if (i == pairs.size()) {
            std::fill(v.droppers.begin(), v.droppers.end(), 0);
            std::fill(v.adders.begin(), v.adders.end(), 0);
            for (const auto& p : pairs) {
              std::size_t idx = static_cast<std::size_t>(p.cause) * n_ + p.target;
              for (std::size_t k = 0; k < p.droppers.size(); ++k)
                if ((p.dmask >> k) & 1) v.droppers[idx] |= bit(p.droppers[k]);
              for (std::size_t k = 0; k < p.adders.size(); ++k)
                if ((p.amask >> k) & 1) v.adders[idx] |= bit(p.adders[k]);
            }
            std::function<Structure()> make = [&]() -> Structure {
              Dces d;
              d.alphabet = spec_.alphabet;
              d.conflict = cset;
              for (const auto& p : chosen) d.causes.insert(p);
              for (const auto& p : pairs) {
                for (std::size_t k = 0; k < p.droppers.size(); ++k)
                  if ((p.dmask >> k) & 1)
                    d.drops.insert({p.cause, p.droppers[k], p.target});
                for (std::size_t k = 0; k < p.adders.size(); ++k)
                  if ((p.amask >> k) & 1)
                    d.adds.insert({p.cause, p.adders[k], p.target});
              }
              return d;
            };
            return emit(v, make, cb);
          }
          PairChoice& p = pairs[i];
          if (p.initial) {
            for (std::uint64_t dm = 0; dm < mask_end(p.droppers.size()); ++dm) {
              p.dmask = dm;
              p.amask = 0;
              if (!self(self, i + 1)) return false;
            }
            return true;
          }
          // no adder: only the empty drop set is well-formed
          p.amask = 0;
          p.dmask = 0;
          if (!self(self, i + 1)) return false;
          for (std::uint64_t gm = 1; gm < mask_end(p.adders.size()); ++gm) {
            p.amask = gm;
            for (std::uint64_t dm = 0; dm < mask_end(p.droppers.size()); ++dm) {
              p.dmask = dm;
              if (!self(self, i + 1)) return false;
            }
          }
          return true;
        };
        if (!rec(rec, 0)) return;
      }
    }
  }
};

// Streaming equality of trace sets for families whose extension condition
// depends only on the set of fired events.
inline bool views_trace_equal(const SemView& a, const SemView& b) {
  std::vector<char> seen(std::size_t{1} << a.n, 0);
  std::vector<EventSet> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    EventSet h = stack.back();
    stack.pop_back();
    for (EventId e = 0; e < a.n; ++e) {
      if (contains(h, e)) continue;
      bool ea = can_extend(a, h, e);
      if (ea != can_extend(b, h, e)) return false;
      EventSet next = h | bit(e);
      if (ea && !seen[next]) {
        seen[next] = 1;
        stack.push_back(next);
      }
    }
  }
  return true;
}

inline bool view_configs_equal(const SemView& v, const std::set<EventSet>& target) {
  std::set<EventSet> seen{0};
  if (!target.count(0)) return false;
  std::vector<EventSet> stack{0};
  while (!stack.empty()) {
    EventSet h = stack.back();
    stack.pop_back();
    for (EventId e = 0; e < v.n; ++e) {
      if (contains(h, e) || !can_extend(v, h, e)) continue;
      EventSet next = h | bit(e);
      if (!target.count(next)) return false;
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return seen.size() == target.size();
}

inline bool view_graph_equal(const SemView& v, const TransitionGraph& target) {
  if (v.family == Family::Dces) return transition_graph(v) == target;
  std::set<EventSet> nodes{0};
  if (!target.nodes.count(0)) return false;
  std::size_t edge_count = 0;
  std::vector<EventSet> stack{0};
  while (!stack.empty()) {
    EventSet x = stack.back();
    stack.pop_back();
    EventSet rest = full_set(v.n) & ~x;
    EventSet s = rest;
    while (true) {
      bool step = (v.family == Family::Ses || v.family == Family::Ges)
                      ? ses_ges_step(v, x, x | s)
                      : rces_step(v, x, x | s);
      if (step) {
        if (!target.edges.count({x, x | s})) return false;
        ++edge_count;
        if (nodes.insert(x | s).second) stack.push_back(x | s);
      }
      if (s == 0) break;
      s = (s - 1) & rest;
    }
  }
  return nodes.size() == target.nodes.size() && edge_count == target.edges.size();
}

}  // namespace detail

// Emits every structure of the space exactly once, in a fixed order.
// The callback returns false to abort. Returns the number emitted.
inline std::uint64_t enumerate(const SearchSpec& spec,
                               const std::function<bool(const detail::Candidate&)>& cb,
                               bool* aborted = nullptr) {
  detail::Enumerator en(spec);
  return en.run(cb, aborted);
}

inline SearchOutcome find_match(const SearchSpec& spec, const Structure& target,
                                EquivKind kind) {
  SearchOutcome out;
  auto start = std::chrono::steady_clock::now();
  auto over_time = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
               .count() > spec.max_seconds;
  };

  SemView target_view = make_view(target);
  std::set<EventSet> target_configs;
  TransitionGraph target_graph;
  if (kind.tag == EquivKind::Config)
    target_configs = configurations(target, ConfigMode::Trace);
  if (kind.tag == EquivKind::Transition) target_graph = transition_graph(target);

  std::uint64_t seen = 0;
  bool aborted = false;
  bool budget_hit = false;
  enumerate(spec, [&](const detail::Candidate& c) {
    ++seen;
    if (seen > spec.max_structures || ((seen & 0x1fff) == 0 && over_time())) {
      budget_hit = true;
      return false;
    }
    bool match = false;
    switch (kind.tag) {
      case EquivKind::Trace:
        match = detail::views_trace_equal(c.view, target_view);
        break;
      case EquivKind::Config:
        match = detail::view_configs_equal(c.view, target_configs);
        break;
      case EquivKind::Transition:
        match = detail::view_graph_equal(c.view, target_graph);
        break;
      default:
        match = equivalent(c.materialize(), target, kind).equal;
        break;
    }
    if (match) {
      out.found = c.materialize();
      return false;
    }
    return true;
  }, &aborted);

  out.explored = budget_hit ? seen - 1 : seen;
  if (out.found)
    out.status = SearchOutcome::Status::Found;
  else if (budget_hit)
    out.status = SearchOutcome::Status::BudgetExceeded;
  else
    out.status = SearchOutcome::Status::ExhaustedNone;
  return out;
}

}  // namespace dynes
