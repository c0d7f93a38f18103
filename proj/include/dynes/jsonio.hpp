#pragma once

#include <json.hpp>

#include "dynes/claims.hpp"
#include "dynes/equiv.hpp"
#include "dynes/posets.hpp"

namespace dynes {

using nlohmann::json;

inline json set_json(const Alphabet& al, EventSet s) {
  json arr = json::array();
  for_each_event(s, [&](EventId e) { arr.push_back(al.name(e)); });
  return arr;
}

inline json trace_json(const Alphabet& al, const Trace& t) {
  json arr = json::array();
  for (EventId e : t) arr.push_back(al.name(e));
  return arr;
}

inline json structure_json(const Structure& s) {
  const Alphabet& al = alphabet_of(s);
  json j;
  j["name"] = name_of(s);
  j["family"] = family_name(family_of(s));
  j["events"] = al.names();
  std::visit([&](const auto& v) {
    if constexpr (requires { v.conflict; }) {
      json arr = json::array();
      for (const auto& p : v.conflict) arr.push_back({al.name(p.a), al.name(p.b)});
      j["conflict"] = arr;
    }
    if constexpr (requires { v.causes; }) {
      json arr = json::array();
      for (const auto& p : v.causes)
        arr.push_back({al.name(p.cause), al.name(p.target)});
      j["causes"] = arr;
    }
    if constexpr (requires { v.drops; }) {
      json arr = json::array();
      for (const auto& m : v.drops)
        arr.push_back({{"cause", al.name(m.cause)},
                       {"dropper", al.name(m.modifier)},
                       {"target", al.name(m.target)}});
      j["drops"] = arr;
    }
    if constexpr (requires { v.adds; }) {
      json arr = json::array();
      for (const auto& m : v.adds)
        arr.push_back({{"adder", al.name(m.modifier)},
                       {"cause", al.name(m.cause)},
                       {"target", al.name(m.target)}});
      j["adds"] = arr;
    }
    if constexpr (requires { v.bundles; }) {
      json arr = json::array();
      for (const auto& b : v.bundles)
        arr.push_back({{"members", set_json(al, b.members)},
                       {"target", al.name(b.target)}});
      j["bundles"] = arr;
    }
    if constexpr (requires { v.disabling; }) {
      json arr = json::array();
      for (const auto& d : v.disabling) arr.push_back({al.name(d.a), al.name(d.b)});
      j["disabling"] = arr;
    }
    if constexpr (requires { v.enablings; }) {
      json arr = json::array();
      for (const auto& e : v.enablings)
        arr.push_back({{"enables", set_json(al, e.rhs)},
                       {"set", set_json(al, e.lhs)}});
      j["enablings"] = arr;
    }
  }, s);
  return j;
}

inline json result_json(const Structure& s, const std::string& kind, json payload) {
  json j;
  j["structure"] = name_of(s);
  j["kind"] = kind;
  j["payload"] = std::move(payload);
  return j;
}

inline json traces_json(const Structure& s) {
  const Alphabet& al = alphabet_of(s);
  json arr = json::array();
  for (const auto& t : traces(s).seqs) arr.push_back(trace_json(al, t));
  return result_json(s, "traces", arr);
}

inline json configs_json(const Structure& s, ConfigMode mode) {
  const Alphabet& al = alphabet_of(s);
  json arr = json::array();
  for (EventSet c : configurations(s, mode)) arr.push_back(set_json(al, c));
  return result_json(s, mode == ConfigMode::Trace ? "configurations"
                                                  : "configurations-step",
                     arr);
}

inline json transitions_json(const Structure& s) {
  const Alphabet& al = alphabet_of(s);
  TransitionGraph g = transition_graph(s);
  json nodes = json::array(), edges = json::array();
  for (EventSet c : g.nodes) nodes.push_back(set_json(al, c));
  for (const auto& [x, y] : g.edges)
    edges.push_back({{"from", set_json(al, x)}, {"to", set_json(al, y)}});
  return result_json(s, "transitions", {{"edges", edges}, {"nodes", nodes}});
}

inline json state_json(const Alphabet& al, const DcesState& st) {
  json cs = json::object();
  for (EventId e = 0; e < al.size(); ++e)
    if (!contains(st.config, e))
      cs[al.name(e)] = set_json(al, st.need[static_cast<std::size_t>(e)]);
  return {{"config", set_json(al, st.config)}, {"cs", cs}};
}

inline json states_json(const Structure& s) {
  if (family_of(s) != Family::Dces)
    throw DynesError("states: structure is not a DCES");
  const Alphabet& al = alphabet_of(s);
  StateGraph g = dces_state_graph(std::get<Dces>(s));
  json nodes = json::array(), edges = json::array();
  for (const auto& st : g.states) nodes.push_back(state_json(al, st));
  for (const auto& [a, b] : g.edges)
    edges.push_back({{"from", state_json(al, g.states[a])},
                     {"to", state_json(al, g.states[b])}});
  return result_json(s, "states", {{"edges", edges}, {"nodes", nodes}});
}

inline json poset_json(const Poset& p) {
  json le = json::array();
  for (std::size_t i = 0; i < p.events.size(); ++i)
    for_each_event(p.below[i], [&](EventId j) {
      if (static_cast<std::size_t>(j) != i)
        le.push_back({p.events[j], p.events[i]});
    });
  return {{"events", p.events}, {"le", le}};
}

inline json posets_json(const Structure& s, PosetMode mode) {
  json arr = json::array();
  for (const Poset& p : posets(s, mode)) arr.push_back(poset_json(p));
  return result_json(s, std::string("posets-") + poset_mode_name(mode), arr);
}

inline json validation_json(const Structure& s) {
  ValidationReport r = validate(s);
  json arr = json::array();
  for (const auto& viol : r.violations)
    arr.push_back({{"detail", viol.detail}, {"rule", viol.rule}});
  return result_json(s, "validation", {{"ok", r.ok}, {"violations", arr}});
}

inline json verdict_json(const Verdict& v, const std::string& kind) {
  json j;
  j["equal"] = v.equal;
  j["kind"] = kind;
  if (v.witness)
    j["witness"] = {{"item", v.witness->text},
                    {"kind", v.witness->kind},
                    {"side", v.witness->side}};
  return j;
}

inline json outcome_json(const SearchOutcome& o) {
  json j;
  switch (o.status) {
    case SearchOutcome::Status::Found: j["status"] = "Found"; break;
    case SearchOutcome::Status::ExhaustedNone: j["status"] = "ExhaustedNone"; break;
    case SearchOutcome::Status::BudgetExceeded: j["status"] = "BudgetExceeded"; break;
  }
  j["explored"] = o.explored;
  if (o.found) j["found"] = structure_json(*o.found);
  return j;
}

inline json claims_json(const std::vector<ClaimResult>& rs) {
  json arr = json::array();
  for (const auto& r : rs)
    arr.push_back({{"evidence", r.evidence}, {"id", r.id}, {"pass", r.pass}});
  return {{"claims", arr}};
}

}  // namespace dynes
