#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynes/corpus.hpp"
#include "dynes/enumerate.hpp"
#include "dynes/translate.hpp"

using namespace dynes;

namespace {

std::uint64_t count_space(const SearchSpec& spec) {
  return enumerate(spec, [](const detail::Candidate&) { return true; });
}

std::uint64_t pow2(std::uint64_t e) { return std::uint64_t{1} << e; }

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Closed-form structure counts, derived directly from the well-formedness
// rules, independently of the enumerator:
//  SES: conflicts free over unordered pairs; causes free over ordered pairs;
//       per chosen cause pair any dropper set over n events, i.e. each of the
//       n^2 pairs contributes (absent) + (present with 2^n dropper sets).
std::uint64_t ses_count(std::uint64_t n) {
  return pow2(n * (n - 1) / 2) * ipow(1 + pow2(n), n * n);
}

//  GES: conflicts x causes x arbitrary add triples.
std::uint64_t ges_count(std::uint64_t n) {
  return pow2(n * (n - 1) / 2) * pow2(n * n) * pow2(n * n * n);
}

//  DCES: per causal pair either initial (dropper sets free, adds forbidden)
//  or not (adder set A, dropper set D, D nonempty needs A nonempty):
//  2^n + 1 + (2^n - 1) 2^n = 1 + 4^n per pair.
std::uint64_t dces_count(std::uint64_t n) {
  return pow2(n * (n - 1) / 2) * ipow(1 + ipow(4, n), n * n);
}

//  DES: conflicts x any set of (nonempty members excluding target, target).
std::uint64_t des_count(std::uint64_t n) {
  return pow2(n * (n - 1) / 2) * pow2(n * (pow2(n - 1) - 1));
}

//  BES/EBES: summed by brute force over the conflict/disabling choice, with
//  per-target bundle candidates restricted to cliques.
std::uint64_t bes_count(int n) {
  std::uint64_t total = 0;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
  for (std::uint64_t k = 0; k < pow2(pairs.size()); ++k) {
    auto conflicting = [&](int x, int y) {
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if ((k >> i) & 1 &&
            ((pairs[i].first == x && pairs[i].second == y) ||
             (pairs[i].first == y && pairs[i].second == x)))
          return true;
      return false;
    };
    std::uint64_t slots = 0;
    for (int t = 0; t < n; ++t)
      for (std::uint64_t members = 1; members < pow2(n); ++members) {
        if ((members >> t) & 1) continue;
        bool clique = true;
        for (int x = 0; x < n; ++x)
          for (int y = x + 1; y < n; ++y)
            if (((members >> x) & 1) && ((members >> y) & 1) &&
                !conflicting(x, y))
              clique = false;
        if (clique) ++slots;
      }
    total += pow2(slots);
  }
  return total;
}

std::uint64_t ebes_count(int n) {
  std::uint64_t total = 0;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) pairs.push_back({a, b});
  for (std::uint64_t k = 0; k < pow2(pairs.size()); ++k) {
    auto disa = [&](int x, int y) {
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if ((k >> i) & 1 && pairs[i].first == x && pairs[i].second == y)
          return true;
      return false;
    };
    std::uint64_t slots = 0;
    for (int t = 0; t < n; ++t)
      for (std::uint64_t members = 1; members < pow2(n); ++members) {
        if ((members >> t) & 1) continue;
        bool clique = true;
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            if (x != y && ((members >> x) & 1) && ((members >> y) & 1) &&
                !disa(x, y))
              clique = false;
        if (clique) ++slots;
      }
    total += pow2(slots);
  }
  return total;
}

SearchSpec spec_for(Family f, int n) {
  SearchSpec spec;
  spec.family = f;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  spec.alphabet = Alphabet(names);
  return spec;
}

}  // namespace

TEST_CASE("enumerator counts match the independently derived closed forms") {
  CHECK(count_space(spec_for(Family::Ses, 1)) == ses_count(1));
  CHECK(count_space(spec_for(Family::Ses, 2)) == ses_count(2));
  CHECK(ses_count(2) == 1250);
  CHECK(count_space(spec_for(Family::Ges, 1)) == ges_count(1));
  CHECK(count_space(spec_for(Family::Ges, 2)) == ges_count(2));
  CHECK(ges_count(2) == 8192);
  CHECK(count_space(spec_for(Family::Dces, 1)) == dces_count(1));
  CHECK(count_space(spec_for(Family::Dces, 2)) == dces_count(2));
  CHECK(dces_count(2) == 167042);
  CHECK(count_space(spec_for(Family::Des, 1)) == des_count(1));
  CHECK(count_space(spec_for(Family::Des, 2)) == des_count(2));
  CHECK(count_space(spec_for(Family::Bes, 1)) == bes_count(1));
  CHECK(count_space(spec_for(Family::Bes, 2)) == bes_count(2));
  CHECK(count_space(spec_for(Family::Ebes, 1)) == ebes_count(1));
  CHECK(count_space(spec_for(Family::Ebes, 2)) == ebes_count(2));
}

TEST_CASE("an empty alphabet admits exactly one structure") {
  SearchSpec spec = spec_for(Family::Ses, 0);
  std::uint64_t n = 0;
  enumerate(spec, [&](const detail::Candidate& c) {
    ++n;
    CHECK(validate(c.materialize()).ok);
    return true;
  });
  CHECK(n == 1);
}

TEST_CASE("every emitted structure is well-formed and unique") {
  for (Family f : {Family::Ses, Family::Ges, Family::Des, Family::Bes,
                   Family::Ebes, Family::Dces}) {
    SearchSpec spec = spec_for(f, 2);
    std::set<std::string> seen;
    enumerate(spec, [&](const detail::Candidate& c) {
      Structure s = c.materialize();
      CHECK(validate(s).ok);
      CHECK(family_of(s) == f);
      CHECK(seen.insert(serialize(s)).second);
      return true;
    });
    CHECK(seen.size() == count_space(spec));
  }
}

TEST_CASE("cause-slot restrictions hold in every emitted structure") {
  SearchSpec spec = spec_for(Family::Ges, 3);
  spec.cause_slots = std::vector<CausePair>{{0, 2}, {1, 2}};  // targets only c
  spec.effective_modifiers_only = true;
  enumerate(spec, [&](const detail::Candidate& c) {
    CHECK(c.view.ic[0] == 0);
    CHECK(c.view.ic[1] == 0);
    return true;
  });
}

TEST_CASE("enumeration is deterministic") {
  SearchSpec spec = spec_for(Family::Ebes, 2);
  std::vector<std::string> first, second;
  enumerate(spec, [&](const detail::Candidate& c) {
    first.push_back(serialize(c.materialize()));
    return true;
  });
  enumerate(spec, [&](const detail::Candidate& c) {
    second.push_back(serialize(c.materialize()));
    return true;
  });
  CHECK(first == second);

  Structure target = load_example("gamma_sigma").structure();
  SearchSpec sspec = spec_for(Family::Ses, 2);
  sspec.alphabet = alphabet_of(target);
  SearchOutcome a = find_match(sspec, target, EquivKind::trace());
  SearchOutcome b = find_match(sspec, target, EquivKind::trace());
  CHECK(a.status == b.status);
  CHECK(a.explored == b.explored);
}

TEST_CASE("partitioned enumeration yields the same structures as one pass") {
  SearchSpec spec = spec_for(Family::Ses, 2);
  std::vector<std::string> full;
  enumerate(spec, [&](const detail::Candidate& c) {
    full.push_back(serialize(c.materialize()));
    return true;
  });
  std::vector<std::string> merged;
  std::uint64_t total = full.size();
  std::uint64_t cut1 = total / 3, cut2 = 2 * total / 3;
  for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{0, cut1},
                        {cut1, cut2},
                        {cut2, total}}) {
    std::uint64_t index = 0;
    enumerate(spec, [&](const detail::Candidate& c) {
      if (index >= lo && index < hi) merged.push_back(serialize(c.materialize()));
      ++index;
      return index < hi;  // later partitions re-scan; earlier work is skipped
    });
  }
  CHECK(merged == full);
}

TEST_CASE("find_match locates a member of the target's own family") {
  Structure sigma = load_example("sigma_xi").structure();
  Structure target{ses_to_des(std::get<Ses>(sigma))};
  SearchSpec spec = spec_for(Family::Des, 3);
  spec.alphabet = alphabet_of(target);
  SearchOutcome out = find_match(spec, target, EquivKind::trace());
  REQUIRE(out.status == SearchOutcome::Status::Found);
  REQUIRE(out.found.has_value());
  CHECK(equivalent(*out.found, target, EquivKind::trace()).equal);
}

TEST_CASE("budget exhaustion is reported distinctly") {
  Structure target = load_example("xi_sigma").structure();
  SearchSpec spec = spec_for(Family::Ses, 2);
  spec.alphabet = alphabet_of(target);
  spec.max_structures = 10;
  SearchOutcome out = find_match(spec, target, EquivKind::trace());
  CHECK(out.status == SearchOutcome::Status::BudgetExceeded);
  CHECK(out.explored == 10);
}

TEST_CASE("RCES spaces are rejected") {
  SearchSpec spec = spec_for(Family::Rces, 2);
  CHECK_THROWS_AS(count_space(spec), DynesError);
}
