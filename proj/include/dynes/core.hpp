#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynes {

// Events are indices into an Alphabet; sets of events are bitmasks.
using EventId = int;
using EventSet = std::uint64_t;

constexpr int kMaxEvents = 64;

constexpr EventSet bit(EventId e) { return EventSet{1} << e; }
constexpr bool contains(EventSet s, EventId e) { return (s >> e) & 1; }

inline int popcount(EventSet s) { return __builtin_popcountll(s); }

// Full set over n events.
constexpr EventSet full_set(int n) {
  return n == kMaxEvents ? ~EventSet{0} : (EventSet{1} << n) - 1;
}

template <typename F>
void for_each_event(EventSet s, F&& f) {
  while (s) {
    EventId e = __builtin_ctzll(s);
    f(e);
    s &= s - 1;
  }
}

struct DynesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool valid_event_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

// An ordered event alphabet. Names are unique, sorted lexicographically, so
// event indices (and everything derived from them) are deterministic.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!valid_event_name(names_[i]))
        throw DynesError("invalid event name: '" + names_[i] + "'");
      if (i > 0 && names_[i] == names_[i - 1])
        throw DynesError("duplicate event name: '" + names_[i] + "'");
    }
    if (names_.size() > kMaxEvents)
      throw DynesError("alphabet exceeds " + std::to_string(kMaxEvents) +
                       " events");
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(EventId e) const { return names_.at(e); }
  const std::vector<std::string>& names() const { return names_; }

  // -1 when absent.
  EventId index_of(const std::string& name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return -1;
    return static_cast<EventId>(it - names_.begin());
  }

  EventSet all() const { return full_set(size()); }

  std::string set_to_string(EventSet s) const {
    std::string out = "{";
    bool first = true;
    for_each_event(s, [&](EventId e) {
      if (!first) out += ",";
      out += name(e);
      first = false;
    });
    out += "}";
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
};

}  // namespace dynes
