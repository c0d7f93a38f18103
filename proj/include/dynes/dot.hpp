#pragma once

#include <sstream>

#include "dynes/semantics.hpp"

namespace dynes {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

inline std::string transition_graph_dot(const Structure& s) {
  const Alphabet& al = alphabet_of(s);
  TransitionGraph g = transition_graph(s);
  std::ostringstream out;
  out << "digraph \"" << detail::dot_escape(name_of(s)) << "\" {\n";
  out << "  rankdir=LR;\n";
  std::map<EventSet, std::size_t> id;
  for (EventSet c : g.nodes) {
    std::size_t k = id.size();
    id[c] = k;
    out << "  n" << k << " [label=\"" << detail::dot_escape(al.set_to_string(c))
        << "\"];\n";
  }
  for (const auto& [x, y] : g.edges)
    out << "  n" << id[x] << " -> n" << id[y] << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string state_graph_dot(const Structure& s) {
  if (family_of(s) != Family::Dces)
    throw DynesError("state graph output needs a DCES");
  const Alphabet& al = alphabet_of(s);
  StateGraph g = dces_state_graph(std::get<Dces>(s));
  std::ostringstream out;
  out << "digraph \"" << detail::dot_escape(name_of(s)) << "\" {\n";
  out << "  rankdir=LR;\n";
  for (std::size_t k = 0; k < g.states.size(); ++k) {
    const auto& st = g.states[k];
    // event names and set braces need no escaping; \n separates label lines
    std::string label = al.set_to_string(st.config);
    for (EventId e = 0; e < al.size(); ++e)
      if (!contains(st.config, e))
        label += "\\ncs(" + al.name(e) + ")=" +
                 al.set_to_string(st.need[static_cast<std::size_t>(e)]);
    out << "  s" << k << " [label=\"" << label << "\"];\n";
  }
  for (const auto& [a, b] : g.edges) out << "  s" << a << " -> s" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace dynes
