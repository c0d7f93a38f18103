#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "dynes/structures.hpp"

namespace dynes {

struct ParseError : DynesError {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : DynesError(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_), col(col_) {}
};

namespace detail {

struct Token {
  std::string text;
  int col;
};

// One line of the file. '#' starts a comment only at the beginning of a line;
// elsewhere it is the conflict operator.
inline std::vector<Token> tokenize_line(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_word = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  };
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') { ++i; continue; }
    if (c == '#' && out.empty()) return out;  // comment line
    int col = static_cast<int>(i) + 1;
    if (is_word(c)) {
      std::size_t j = i;
      while (j < line.size() && is_word(line[j])) ++j;
      out.push_back({line.substr(i, j - i), col});
      i = j;
      continue;
    }
    auto two = line.substr(i, 2);
    if (two == "->" || two == "~>" || two == "|-") {
      out.push_back({two, col});
      i += 2;
      continue;
    }
    if (c == ':' || c == '#' || c == '[' || c == ']' || c == '{' || c == '}' ||
        c == ',') {
      out.push_back({std::string(1, c), col});
      ++i;
      continue;
    }
    throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
  }
  return out;
}

class ClauseReader {
 public:
  ClauseReader(const std::vector<Token>& toks, int lineno, const Alphabet& al)
      : toks_(toks), lineno_(lineno), al_(al) {}

  bool done() const { return pos_ >= toks_.size(); }

  const Token& peek() const {
    if (done()) throw ParseError(lineno_, end_col(), "unexpected end of line");
    return toks_[pos_];
  }

  Token take() {
    Token t = peek();
    ++pos_;
    return t;
  }

  void expect(const std::string& sym) {
    Token t = take();
    if (t.text != sym)
      throw ParseError(lineno_, t.col, "expected '" + sym + "', got '" + t.text + "'");
  }

  EventId event() {
    Token t = take();
    EventId e = al_.index_of(t.text);
    if (e < 0)
      throw ParseError(lineno_, t.col, "unknown event '" + t.text + "'");
    return e;
  }

  // {a, b, c} or {}
  EventSet event_set() {
    expect("{");
    EventSet s = 0;
    if (!done() && peek().text == "}") { take(); return s; }
    while (true) {
      s |= bit(event());
      Token t = take();
      if (t.text == "}") return s;
      if (t.text != ",")
        throw ParseError(lineno_, t.col, "expected ',' or '}'");
    }
  }

  void finish() {
    if (!done())
      throw ParseError(lineno_, peek().col, "trailing tokens after clause");
  }

 private:
  int end_col() const {
    return toks_.empty() ? 1 : toks_.back().col + static_cast<int>(toks_.back().text.size());
  }
  const std::vector<Token>& toks_;
  int lineno_;
  const Alphabet& al_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses the line-oriented structure format. Event declarations are gathered
// first so that relation clauses may appear in any order.
inline Structure parse_structure(const std::string& text) {
  std::vector<std::pair<int, std::vector<detail::Token>>> lines;
  {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto toks = detail::tokenize_line(line, lineno);
      if (!toks.empty()) lines.emplace_back(lineno, std::move(toks));
    }
  }
  if (lines.empty()) throw ParseError(1, 1, "empty structure file");

  // header + alphabet
  std::string name;
  Family family{};
  bool have_header = false;
  std::vector<std::string> event_names;
  for (const auto& [lineno, toks] : lines) {
    const std::string& kw = toks[0].text;
    if (kw == "structure") {
      if (have_header)
        throw ParseError(lineno, toks[0].col, "duplicate 'structure' line");
      if (toks.size() != 4 || toks[2].text != ":")
        throw ParseError(lineno, toks[0].col,
                         "expected 'structure NAME : FAMILY'");
      name = toks[1].text;
      auto fam = family_from_name(toks[3].text);
      if (!fam)
        throw ParseError(lineno, toks[3].col,
                         "unknown family '" + toks[3].text + "'");
      family = *fam;
      have_header = true;
    } else if (kw == "events") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!valid_event_name(toks[i].text))
          throw ParseError(lineno, toks[i].col,
                           "invalid event name '" + toks[i].text + "'");
        for (const auto& seen : event_names)
          if (seen == toks[i].text)
            throw ParseError(lineno, toks[i].col,
                             "duplicate event '" + toks[i].text + "'");
        event_names.push_back(toks[i].text);
      }
    }
  }
  if (!have_header)
    throw ParseError(lines.front().first, 1, "missing 'structure' line");
  Alphabet alphabet(event_names);

  Structure out = [&]() -> Structure {
    switch (family) {
      case Family::Ses: return Ses{};
      case Family::Ges: return Ges{};
      case Family::Dces: return Dces{};
      case Family::Des: return Des{};
      case Family::Bes: return Bes{};
      case Family::Ebes: return Ebes{};
      case Family::Rces: return Rces{};
    }
    return Ses{};
  }();
  set_name(out, name);
  std::visit([&](auto& v) { v.alphabet = alphabet; }, out);

  auto illegal = [&](int lineno, int col, const std::string& kw) {
    throw ParseError(lineno, col, "clause '" + kw + "' not allowed for family " +
                                      family_name(family));
  };

  for (const auto& [lineno, toks] : lines) {
    const std::string& kw = toks[0].text;
    if (kw == "structure" || kw == "events") continue;
    detail::ClauseReader r(toks, lineno, alphabet);
    int kwcol = toks[0].col;
    r.take();  // keyword
    if (kw == "conflict") {
      EventId a = r.event();
      r.expect("#");
      EventId b = r.event();
      r.finish();
      std::visit([&](auto& v) {
        if constexpr (requires { v.conflict; })
          v.conflict.insert(ConflictPair(a, b));
        else
          illegal(lineno, kwcol, kw);
      }, out);
    } else if (kw == "cause") {
      EventId a = r.event();
      r.expect("->");
      EventId b = r.event();
      r.finish();
      std::visit([&](auto& v) {
        if constexpr (requires { v.causes; })
          v.causes.insert(CausePair{a, b});
        else
          illegal(lineno, kwcol, kw);
      }, out);
    } else if (kw == "drop" || kw == "add") {
      r.expect("[");
      EventId c = r.event();
      r.expect("->");
      EventId t = r.event();
      r.expect("]");
      detail::Token byTok = r.take();
      if (byTok.text != "by")
        throw ParseError(lineno, byTok.col, "expected 'by'");
      EventId m = r.event();
      r.finish();
      Modifier mod{c, m, t};
      bool drop = (kw == "drop");
      std::visit([&](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ses>) {
          if (drop) v.drops.insert(mod); else illegal(lineno, kwcol, kw);
        } else if constexpr (std::is_same_v<T, Ges>) {
          if (!drop) v.adds.insert(mod); else illegal(lineno, kwcol, kw);
        } else if constexpr (std::is_same_v<T, Dces>) {
          if (drop) v.drops.insert(mod); else v.adds.insert(mod);
        } else {
          illegal(lineno, kwcol, kw);
        }
      }, out);
    } else if (kw == "bundle") {
      EventSet members = r.event_set();
      r.expect("->");
      detail::Token targetTok = r.peek();
      EventId t = r.event();
      r.finish();
      if (members == 0)
        throw ParseError(lineno, kwcol, "empty bundle");
      if (contains(members, t))
        throw ParseError(lineno, targetTok.col,
                         "bundle target '" + alphabet.name(t) +
                             "' inside its own bundle");
      std::visit([&](auto& v) {
        if constexpr (requires { v.bundles; })
          v.bundles.insert(Bundle{members, t});
        else
          illegal(lineno, kwcol, kw);
      }, out);
    } else if (kw == "disabling") {
      EventId a = r.event();
      r.expect("~>");
      EventId b = r.event();
      r.finish();
      std::visit([&](auto& v) {
        if constexpr (requires { v.disabling; })
          v.disabling.insert(Disabling{a, b});
        else
          illegal(lineno, kwcol, kw);
      }, out);
    } else if (kw == "enable") {
      EventSet lhs = r.event_set();
      r.expect("|-");
      EventSet rhs = r.event_set();
      r.finish();
      std::visit([&](auto& v) {
        if constexpr (requires { v.enablings; })
          v.enablings.insert(Enabling{lhs, rhs});
        else
          illegal(lineno, kwcol, kw);
      }, out);
    } else {
      throw ParseError(lineno, kwcol, "unknown clause '" + kw + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical serialization: events and clauses in sorted order, so that
// serialize . parse is the identity on its own output.

namespace detail {

inline std::string set_text(const Alphabet& al, EventSet s) {
  std::string out = "{";
  bool first = true;
  for_each_event(s, [&](EventId e) {
    if (!first) out += ", ";
    out += al.name(e);
    first = false;
  });
  return out + "}";
}

}  // namespace detail

inline std::string serialize(const Structure& s) {
  const Alphabet& al = alphabet_of(s);
  std::ostringstream out;
  out << "structure " << name_of(s) << " : " << family_name(family_of(s)) << "\n";
  out << "events";
  for (const auto& n : al.names()) out << " " << n;
  out << "\n";
  std::visit([&](const auto& v) {
    if constexpr (requires { v.conflict; })
      for (const auto& p : v.conflict)
        out << "conflict " << al.name(p.a) << " # " << al.name(p.b) << "\n";
    if constexpr (requires { v.causes; })
      for (const auto& p : v.causes)
        out << "cause " << al.name(p.cause) << " -> " << al.name(p.target) << "\n";
    if constexpr (requires { v.drops; })
      for (const auto& m : v.drops)
        out << "drop [" << al.name(m.cause) << " -> " << al.name(m.target)
            << "] by " << al.name(m.modifier) << "\n";
    if constexpr (requires { v.adds; })
      for (const auto& m : v.adds)
        out << "add [" << al.name(m.cause) << " -> " << al.name(m.target)
            << "] by " << al.name(m.modifier) << "\n";
    if constexpr (requires { v.bundles; })
      for (const auto& b : v.bundles)
        out << "bundle " << detail::set_text(al, b.members) << " -> "
            << al.name(b.target) << "\n";
    if constexpr (requires { v.disabling; })
      for (const auto& d : v.disabling)
        out << "disabling " << al.name(d.a) << " ~> " << al.name(d.b) << "\n";
    if constexpr (requires { v.enablings; })
      for (const auto& e : v.enablings)
        out << "enable " << detail::set_text(al, e.lhs) << " |- "
            << detail::set_text(al, e.rhs) << "\n";
  }, s);
  return out.str();
}

}  // namespace dynes
