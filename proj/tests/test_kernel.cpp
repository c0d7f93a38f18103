#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynes/corpus.hpp"
#include "dynes/generators.hpp"
#include "dynes/structures.hpp"
#include "dynes/translate.hpp"

using namespace dynes;

TEST_CASE("alphabet is sorted and rejects duplicates and bad names") {
  Alphabet al({"b", "a", "c"});
  CHECK(al.name(0) == "a");
  CHECK(al.name(2) == "c");
  CHECK(al.index_of("b") == 1);
  CHECK(al.index_of("zz") == -1);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), DynesError);
  CHECK_THROWS_AS(Alphabet({"a-b"}), DynesError);
  CHECK_THROWS_AS(Alphabet({""}), DynesError);
}

TEST_CASE("validate flags reflexive conflict") {
  Ses s;
  s.alphabet = Alphabet({"a", "b"});
  s.conflict.insert(ConflictPair(0, 0));
  ValidationReport r = validate(s);
  CHECK(!r.ok);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].rule == "conflict-irreflexive");
}

TEST_CASE("validate flags drops without a cause") {
  Ses s;
  s.alphabet = Alphabet({"a", "b", "c"});
  s.drops.insert(Modifier{0, 2, 1});
  CHECK(!validate(s).ok);
  s.causes.insert(CausePair{0, 1});
  CHECK(validate(s).ok);
}

TEST_CASE("validate flags EBES stability violations") {
  Ebes x;
  x.alphabet = Alphabet({"a", "b", "c"});
  x.bundles.insert(Bundle{bit(0) | bit(1), 2});
  ValidationReport r = validate(x);
  CHECK(!r.ok);
  CHECK(r.violations[0].rule == "stability");
  x.disabling.insert(Disabling{0, 1});
  x.disabling.insert(Disabling{1, 0});
  CHECK(validate(x).ok);
}

TEST_CASE("validate flags BES stability") {
  Bes b;
  b.alphabet = Alphabet({"a", "b", "c"});
  b.bundles.insert(Bundle{bit(0) | bit(1), 2});
  CHECK(!validate(b).ok);
  b.conflict.insert(ConflictPair(0, 1));
  CHECK(validate(b).ok);
}

TEST_CASE("validate checks DCES drop/add coupling") {
  Dces d;
  d.alphabet = Alphabet({"a", "b", "c"});
  d.drops.insert(Modifier{0, 1, 2});
  CHECK(!validate(d).ok);  // dropped cause neither initial nor addable
  d.adds.insert(Modifier{0, 1, 2});
  CHECK(validate(d).ok);
  d.causes.insert(CausePair{0, 2});
  CHECK(!validate(d).ok);  // now the added cause is initial
}

TEST_CASE("classify_dces on the order-sensitivity witness") {
  Dces delta = std::get<Dces>(load_example("lemma1_delta").structure());
  SubclassFlags f = classify_dces(delta);
  CHECK(!f.is_ssdc);
  CHECK(!f.is_ebdc);
}

TEST_CASE("classify_dces: empty modifiers give SSDC and EBDC") {
  Dces d;
  d.alphabet = Alphabet({"x"});
  SubclassFlags f = classify_dces(d);
  CHECK(f.is_ssdc);
  CHECK(f.is_ebdc);
}

TEST_CASE("classify_dces rejects invalid structures") {
  Dces d;
  d.alphabet = Alphabet({"a", "b"});
  d.conflict.insert(ConflictPair(0, 0));
  CHECK_THROWS_AS(classify_dces(d), DynesError);
}

TEST_CASE("translated EBESs are EBDCs") {
  Rng rng(99);
  for (int i = 0; i < 40; ++i) {
    Ebes x = random_ebes(rng, 2 + rng.pick(3));
    Dces d = ebes_to_dces(x);
    CHECK(validate(d).ok);
    SubclassFlags f = classify_dces(d);
    CHECK(f.is_ssdc);
    CHECK(f.is_ebdc);
  }
}

TEST_CASE("embeddings of SESs are SSDCs") {
  Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    Ses s = random_ses(rng, 2 + rng.pick(3));
    Dces d = embed(Structure{s});
    CHECK(validate(d).ok);
    CHECK(classify_dces(d).is_ssdc);
  }
}

TEST_CASE("every corpus structure validates") {
  for (const auto& e : corpus()) CHECK(validate(e.structure()).ok);
}

TEST_CASE("random generators produce valid structures") {
  Rng rng(123);
  for (int i = 0; i < 60; ++i) {
    int n = 1 + rng.pick(4);
    CHECK(validate(Structure{random_ses(rng, n)}).ok);
    CHECK(validate(Structure{random_ges(rng, n)}).ok);
    CHECK(validate(Structure{random_des(rng, n)}).ok);
    CHECK(validate(Structure{random_bes(rng, n)}).ok);
    CHECK(validate(Structure{random_ebes(rng, n)}).ok);
    CHECK(validate(Structure{random_ssdc(rng, n)}).ok);
    Dces ebdc = random_ebdc(rng, n);
    CHECK(validate(Structure{ebdc}).ok);
    CHECK(classify_dces(ebdc).is_ebdc);
  }
}
