#pragma once

#include <random>

#include "dynes/translate.hpp"

namespace dynes {

// Deterministic random structures for the property suites. Every generator
// yields a structure that passes validate().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  bool chance(double p) { return dist_(eng_) < p; }
  int pick(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

  EventSet subset(EventSet pool, double p) {
    EventSet out = 0;
    for_each_event(pool, [&](EventId e) {
      if (chance(p)) out |= bit(e);
    });
    return out;
  }

  EventSet nonempty_subset(EventSet pool, double p) {
    if (pool == 0) return 0;
    EventSet s = subset(pool, p);
    if (s) return s;
    std::vector<EventId> events;
    for_each_event(pool, [&](EventId e) { events.push_back(e); });
    return bit(events[pick(static_cast<int>(events.size()))]);
  }

 private:
  std::mt19937_64 eng_;
  std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

inline Alphabet letters(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return Alphabet(names);
}

inline Ses random_ses(Rng& rng, int n, bool allow_self_cause = true) {
  Ses s;
  s.alphabet = letters(n);
  for (EventId a = 0; a < n; ++a)
    for (EventId b = a + 1; b < n; ++b)
      if (rng.chance(0.12)) s.conflict.insert(ConflictPair(a, b));
  for (EventId c = 0; c < n; ++c)
    for (EventId t = 0; t < n; ++t) {
      if (c == t && !allow_self_cause) continue;
      if (rng.chance(c == t ? 0.05 : 0.18)) s.causes.insert(CausePair{c, t});
    }
  for (const auto& p : s.causes)
    for (EventId d = 0; d < n; ++d)
      if (rng.chance(0.15)) s.drops.insert(Modifier{p.cause, d, p.target});
  return s;
}

// A SES whose self-caused events always have a foreign dropper, so that
// ses_to_des is defined on it.
inline Ses random_encodable_ses(Rng& rng, int n) {
  Ses s = random_ses(rng, n);
  std::vector<CausePair> selfcauses;
  for (const auto& p : s.causes)
    if (p.cause == p.target &&
        !(droppers_of_ses(s, p.cause, p.target) & ~bit(p.target)))
      selfcauses.push_back(p);
  for (const auto& p : selfcauses) {
    if (n == 1) {
      s.causes.erase(p);
      for (auto it = s.drops.begin(); it != s.drops.end();)
        it = (it->cause == p.cause && it->target == p.target) ? s.drops.erase(it)
                                                              : std::next(it);
      continue;
    }
    EventId d = p.target;
    while (d == p.target) d = rng.pick(n);
    s.drops.insert(Modifier{p.cause, d, p.target});
  }
  return s;
}

inline Ges random_ges(Rng& rng, int n, bool degenerate_adds = true) {
  Ges g;
  g.alphabet = letters(n);
  for (EventId a = 0; a < n; ++a)
    for (EventId b = a + 1; b < n; ++b)
      if (rng.chance(0.12)) g.conflict.insert(ConflictPair(a, b));
  for (EventId c = 0; c < n; ++c)
    for (EventId t = 0; t < n; ++t)
      if (c != t && rng.chance(0.15)) g.causes.insert(CausePair{c, t});
  int triples = rng.pick(2 * n + 1);
  for (int i = 0; i < triples; ++i) {
    Modifier m{rng.pick(n), rng.pick(n), rng.pick(n)};
    if (!degenerate_adds && (m.modifier == m.cause || m.modifier == m.target))
      continue;
    g.adds.insert(m);
  }
  return g;
}

inline Des random_des(Rng& rng, int n) {
  Des d;
  d.alphabet = letters(n);
  for (EventId a = 0; a < n; ++a)
    for (EventId b = a + 1; b < n; ++b)
      if (rng.chance(0.12)) d.conflict.insert(ConflictPair(a, b));
  for (EventId t = 0; t < n; ++t) {
    int k = rng.chance(0.6) ? rng.pick(3) : 0;
    for (int i = 0; i < k; ++i) {
      EventSet members = rng.nonempty_subset(full_set(n) & ~bit(t), 0.4);
      if (members) d.bundles.insert(Bundle{members, t});
    }
  }
  return d;
}

inline Ebes random_ebes(Rng& rng, int n) {
  Ebes x;
  x.alphabet = letters(n);
  for (EventId a = 0; a < n; ++a)
    for (EventId b = 0; b < n; ++b)
      if (a != b && rng.chance(0.2)) x.disabling.insert(Disabling{a, b});
  auto mutual = [&](EventId a, EventId b) {
    return x.disabling.count({a, b}) && x.disabling.count({b, a});
  };
  for (EventId t = 0; t < n; ++t) {
    int k = rng.chance(0.6) ? rng.pick(3) : 0;
    for (int i = 0; i < k; ++i) {
      // grow a mutually-disabling clique among the candidates
      EventSet pool = full_set(n) & ~bit(t);
      EventSet members = 0;
      for_each_event(pool, [&](EventId e) {
        bool ok = rng.chance(0.4);
        for_each_event(members, [&](EventId m) {
          if (!mutual(e, m)) ok = false;
        });
        if (ok) members |= bit(e);
      });
      if (members) x.bundles.insert(Bundle{members, t});
    }
  }
  return x;
}

inline Bes random_bes(Rng& rng, int n) {
  Bes b;
  b.alphabet = letters(n);
  for (EventId x = 0; x < n; ++x)
    for (EventId y = x + 1; y < n; ++y)
      if (rng.chance(0.25)) b.conflict.insert(ConflictPair(x, y));
  auto conflicting = [&](EventId x, EventId y) {
    return b.conflict.count(ConflictPair(x, y)) != 0;
  };
  for (EventId t = 0; t < n; ++t) {
    int k = rng.chance(0.6) ? rng.pick(3) : 0;
    for (int i = 0; i < k; ++i) {
      EventSet members = 0;
      for_each_event(full_set(n) & ~bit(t), [&](EventId e) {
        bool ok = rng.chance(0.4);
        for_each_event(members, [&](EventId m) {
          if (!conflicting(e, m)) ok = false;
        });
        if (ok) members |= bit(e);
      });
      if (members) b.bundles.insert(Bundle{members, t});
    }
  }
  return b;
}

// SSDC: drops only on initial pairs, adds only on non-initial pairs, so no
// causal pair is both droppable and addable.
inline Dces random_ssdc(Rng& rng, int n) {
  Dces d;
  d.alphabet = letters(n);
  for (EventId a = 0; a < n; ++a)
    for (EventId b = a + 1; b < n; ++b)
      if (rng.chance(0.12)) d.conflict.insert(ConflictPair(a, b));
  for (EventId c = 0; c < n; ++c)
    for (EventId t = 0; t < n; ++t)
      if (rng.chance(c == t ? 0.05 : 0.15)) d.causes.insert(CausePair{c, t});
  for (const auto& p : d.causes)
    for (EventId m = 0; m < n; ++m)
      if (rng.chance(0.12)) d.drops.insert(Modifier{p.cause, m, p.target});
  for (EventId c = 0; c < n; ++c)
    for (EventId t = 0; t < n; ++t) {
      if (d.causes.count({c, t})) continue;
      for (EventId m = 0; m < n; ++m)
        if (rng.chance(0.06)) d.adds.insert(Modifier{c, m, t});
    }
  return d;
}

// EBDC: all adds are self-causes, and each initial cause's drop group is a
// conflict clique containing the cause.
inline Dces random_ebdc(Rng& rng, int n) {
  Dces d;
  d.alphabet = letters(n);
  for (EventId a = 0; a < n; ++a)
    for (EventId b = a + 1; b < n; ++b)
      if (rng.chance(0.25)) d.conflict.insert(ConflictPair(a, b));
  auto conflicting = [&](EventId x, EventId y) {
    return d.conflict.count(ConflictPair(x, y)) != 0;
  };
  for (EventId c = 0; c < n; ++c)
    for (EventId t = 0; t < n; ++t)
      if (c != t && rng.chance(0.15)) d.causes.insert(CausePair{c, t});
  for (const auto& p : d.causes) {
    EventSet group = 0;
    for (EventId m = 0; m < n; ++m) {
      if (m == p.cause || !conflicting(m, p.cause)) continue;
      bool ok = rng.chance(0.5);
      for_each_event(group, [&](EventId g) {
        if (!conflicting(m, g)) ok = false;
      });
      if (ok) group |= bit(m);
    }
    for_each_event(group, [&](EventId m) {
      d.drops.insert(Modifier{p.cause, m, p.target});
    });
  }
  for (EventId t = 0; t < n; ++t) {
    if (d.causes.count({t, t})) continue;
    for (EventId m = 0; m < n; ++m)
      if (m != t && rng.chance(0.08)) d.adds.insert(Modifier{t, m, t});
  }
  return d;
}

// Small random edit of a SES; may or may not change its semantics.
inline Ses mutate_ses(Rng& rng, const Ses& base) {
  Ses s = base;
  int n = s.alphabet.size();
  for (int attempt = 0; attempt < 8; ++attempt) {
    switch (rng.pick(4)) {
      case 0: {
        if (n < 2) break;
        EventId a = rng.pick(n), b = rng.pick(n);
        if (a == b) break;
        ConflictPair p(a, b);
        if (s.conflict.count(p)) s.conflict.erase(p); else s.conflict.insert(p);
        return s;
      }
      case 1: {
        CausePair p{rng.pick(n), rng.pick(n)};
        if (s.causes.count(p)) {
          s.causes.erase(p);
          for (auto it = s.drops.begin(); it != s.drops.end();)
            it = (it->cause == p.cause && it->target == p.target) ? s.drops.erase(it)
                                                                  : std::next(it);
        } else {
          s.causes.insert(p);
        }
        return s;
      }
      case 2: {
        if (s.causes.empty()) break;
        auto it = s.causes.begin();
        std::advance(it, rng.pick(static_cast<int>(s.causes.size())));
        Modifier m{it->cause, rng.pick(n), it->target};
        if (s.drops.count(m)) s.drops.erase(m); else s.drops.insert(m);
        return s;
      }
      default: {
        // semantically inert edit: a dropper equal to its cause
        if (s.causes.empty()) break;
        auto it = s.causes.begin();
        std::advance(it, rng.pick(static_cast<int>(s.causes.size())));
        Modifier m{it->cause, it->cause, it->target};
        if (s.drops.count(m)) s.drops.erase(m); else s.drops.insert(m);
        return s;
      }
    }
  }
  return s;
}

}  // namespace dynes
