#pragma once

#include <optional>
#include <set>
#include <utility>
#include <variant>

#include "dynes/core.hpp"

namespace dynes {

enum class Family { Ses, Ges, Dces, Des, Bes, Ebes, Rces };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Ses: return "SES";
    case Family::Ges: return "GES";
    case Family::Dces: return "DCES";
    case Family::Des: return "DES";
    case Family::Bes: return "BES";
    case Family::Ebes: return "EBES";
    case Family::Rces: return "RCES";
  }
  return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
  if (s == "SES") return Family::Ses;
  if (s == "GES") return Family::Ges;
  if (s == "DCES") return Family::Dces;
  if (s == "DES") return Family::Des;
  if (s == "BES") return Family::Bes;
  if (s == "EBES") return Family::Ebes;
  if (s == "RCES") return Family::Rces;
  return std::nullopt;
}

// Unordered conflict pair, stored normalized (first <= second). A reflexive
// pair is representable so that validation can report it.
struct ConflictPair {
  EventId a, b;
  ConflictPair(EventId x, EventId y) : a(std::min(x, y)), b(std::max(x, y)) {}
  friend auto operator<=>(const ConflictPair&, const ConflictPair&) = default;
};

// Ordered (cause, target) pair of the causality relation.
struct CausePair {
  EventId cause, target;
  friend auto operator<=>(const CausePair&, const CausePair&) = default;
};

// drop [cause -> target] by modifier, or add [cause -> target] by modifier.
struct Modifier {
  EventId cause, modifier, target;
  friend auto operator<=>(const Modifier&, const Modifier&) = default;
};

// bundle {members} -> target
struct Bundle {
  EventSet members;
  EventId target;
  friend auto operator<=>(const Bundle&, const Bundle&) = default;
};

// disabling a ~> b: b can never precede a.
struct Disabling {
  EventId a, b;
  friend auto operator<=>(const Disabling&, const Disabling&) = default;
};

// enable {lhs} |- {rhs}
struct Enabling {
  EventSet lhs, rhs;
  friend auto operator<=>(const Enabling&, const Enabling&) = default;
};

struct Ses {
  std::string name = "S";
  Alphabet alphabet;
  std::set<ConflictPair> conflict;
  std::set<CausePair> causes;
  std::set<Modifier> drops;
  friend bool operator==(const Ses&, const Ses&) = default;
};

struct Ges {
  std::string name = "G";
  Alphabet alphabet;
  std::set<ConflictPair> conflict;
  std::set<CausePair> causes;
  std::set<Modifier> adds;
  friend bool operator==(const Ges&, const Ges&) = default;
};

struct Dces {
  std::string name = "D";
  Alphabet alphabet;
  std::set<ConflictPair> conflict;
  std::set<CausePair> causes;
  std::set<Modifier> drops;
  std::set<Modifier> adds;
  friend bool operator==(const Dces&, const Dces&) = default;
};

struct Des {
  std::string name = "B";
  Alphabet alphabet;
  std::set<ConflictPair> conflict;
  std::set<Bundle> bundles;
  friend bool operator==(const Des&, const Des&) = default;
};

struct Bes {
  std::string name = "B";
  Alphabet alphabet;
  std::set<ConflictPair> conflict;
  std::set<Bundle> bundles;
  friend bool operator==(const Bes&, const Bes&) = default;
};

struct Ebes {
  std::string name = "X";
  Alphabet alphabet;
  std::set<Disabling> disabling;
  std::set<Bundle> bundles;
  friend bool operator==(const Ebes&, const Ebes&) = default;
};

struct Rces {
  std::string name = "R";
  Alphabet alphabet;
  std::set<Enabling> enablings;
  friend bool operator==(const Rces&, const Rces&) = default;
};

using Structure = std::variant<Ses, Ges, Dces, Des, Bes, Ebes, Rces>;

inline Family family_of(const Structure& s) {
  switch (s.index()) {
    case 0: return Family::Ses;
    case 1: return Family::Ges;
    case 2: return Family::Dces;
    case 3: return Family::Des;
    case 4: return Family::Bes;
    case 5: return Family::Ebes;
    default: return Family::Rces;
  }
}

inline const Alphabet& alphabet_of(const Structure& s) {
  return std::visit([](const auto& v) -> const Alphabet& { return v.alphabet; }, s);
}

inline const std::string& name_of(const Structure& s) {
  return std::visit([](const auto& v) -> const std::string& { return v.name; }, s);
}

inline void set_name(Structure& s, std::string n) {
  std::visit([&](auto& v) { v.name = std::move(n); }, s);
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string rule;
  std::string detail;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void flag(std::string rule, std::string detail) {
    ok = false;
    violations.push_back({std::move(rule), std::move(detail)});
  }
};

namespace detail {

inline void check_conflict(const Alphabet& al,
                           const std::set<ConflictPair>& conflict,
                           ValidationReport& r) {
  for (const auto& p : conflict)
    if (p.a == p.b)
      r.flag("conflict-irreflexive", al.name(p.a) + " # " + al.name(p.a));
}

inline std::string triple_str(const Alphabet& al, const Modifier& m) {
  return "[" + al.name(m.cause) + " -> " + al.name(m.target) + "] by " +
         al.name(m.modifier);
}

inline void check_bundles(const Alphabet& al, const std::set<Bundle>& bundles,
                          ValidationReport& r) {
  for (const auto& b : bundles) {
    if (b.members == 0)
      r.flag("bundle-nonempty", "bundle {} -> " + al.name(b.target));
    if (contains(b.members, b.target))
      r.flag("bundle-target-outside",
             "bundle " + al.set_to_string(b.members) + " -> " + al.name(b.target));
  }
}

}  // namespace detail

inline ValidationReport validate(const Ses& s) {
  ValidationReport r;
  detail::check_conflict(s.alphabet, s.conflict, r);
  for (const auto& d : s.drops)
    if (!s.causes.count({d.cause, d.target}))
      r.flag("drop-needs-cause", detail::triple_str(s.alphabet, d));
  return r;
}

inline ValidationReport validate(const Ges& s) {
  ValidationReport r;
  detail::check_conflict(s.alphabet, s.conflict, r);
  return r;
}

inline ValidationReport validate(const Dces& s) {
  ValidationReport r;
  detail::check_conflict(s.alphabet, s.conflict, r);
  // A dropped cause must be initial or addable; an added cause must not be
  // initial already.
  for (const auto& d : s.drops) {
    bool initial = s.causes.count({d.cause, d.target}) != 0;
    bool addable = false;
    for (const auto& a : s.adds)
      if (a.cause == d.cause && a.target == d.target) { addable = true; break; }
    if (!initial && !addable)
      r.flag("drop-initial-or-addable", detail::triple_str(s.alphabet, d));
  }
  for (const auto& a : s.adds)
    if (s.causes.count({a.cause, a.target}))
      r.flag("add-not-initial", detail::triple_str(s.alphabet, a));
  return r;
}

inline ValidationReport validate(const Des& s) {
  ValidationReport r;
  detail::check_conflict(s.alphabet, s.conflict, r);
  detail::check_bundles(s.alphabet, s.bundles, r);
  return r;
}

inline ValidationReport validate(const Bes& s) {
  ValidationReport r;
  detail::check_conflict(s.alphabet, s.conflict, r);
  detail::check_bundles(s.alphabet, s.bundles, r);
  // Stability: bundle members are pairwise in conflict.
  for (const auto& b : s.bundles) {
    for_each_event(b.members, [&](EventId x) {
      for_each_event(b.members, [&](EventId y) {
        if (x < y && !s.conflict.count(ConflictPair(x, y)))
          r.flag("stability", s.alphabet.name(x) + ", " + s.alphabet.name(y) +
                                  " in bundle -> " + s.alphabet.name(b.target));
      });
    });
  }
  return r;
}

inline ValidationReport validate(const Ebes& s) {
  ValidationReport r;
  detail::check_bundles(s.alphabet, s.bundles, r);
  // Stability: bundle members mutually disable each other.
  for (const auto& b : s.bundles) {
    for_each_event(b.members, [&](EventId x) {
      for_each_event(b.members, [&](EventId y) {
        if (x != y && !s.disabling.count({x, y}))
          r.flag("stability", s.alphabet.name(x) + " ~> " + s.alphabet.name(y) +
                                  " missing for bundle -> " +
                                  s.alphabet.name(b.target));
      });
    });
  }
  return r;
}

inline ValidationReport validate(const Rces& s) {
  (void)s;
  return {};
}

inline ValidationReport validate(const Structure& s) {
  return std::visit([](const auto& v) { return validate(v); }, s);
}

// ---------------------------------------------------------------------------
// DCES subclass classification

struct SubclassFlags {
  bool is_ssdc = false;
  bool is_ebdc = false;
};

inline EventSet droppers_of(const Dces& d, EventId cause, EventId target) {
  EventSet out = 0;
  for (const auto& m : d.drops)
    if (m.cause == cause && m.target == target) out |= bit(m.modifier);
  return out;
}

inline SubclassFlags classify_dces(const Dces& d) {
  if (!validate(d).ok) throw DynesError("classify_dces: invalid structure");
  SubclassFlags f;
  // SSDC: no causal pair (c,t) appears in both drops and adds.
  std::set<std::pair<EventId, EventId>> dropped, added;
  for (const auto& m : d.drops) dropped.insert({m.cause, m.target});
  for (const auto& m : d.adds) added.insert({m.cause, m.target});
  f.is_ssdc = true;
  for (const auto& p : dropped)
    if (added.count(p)) { f.is_ssdc = false; break; }
  if (!f.is_ssdc) return f;
  // EBDC additionally: every add is a self-cause, and for every drop the
  // cause together with all droppers of its pair is pairwise conflicting.
  f.is_ebdc = true;
  for (const auto& m : d.adds)
    if (m.cause != m.target) { f.is_ebdc = false; return f; }
  for (const auto& m : d.drops) {
    EventSet group = bit(m.cause) | droppers_of(d, m.cause, m.target);
    bool ok = true;
    for_each_event(group, [&](EventId x) {
      for_each_event(group, [&](EventId y) {
        if (x < y && !d.conflict.count(ConflictPair(x, y))) ok = false;
      });
    });
    if (!ok) { f.is_ebdc = false; return f; }
  }
  return f;
}

}  // namespace dynes
