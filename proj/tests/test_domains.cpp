//  Copyright 2026 The Ambiguity Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ambiguity/domains.hpp"
#include "support/oracles.hpp"

using namespace ambiguity;
using ambiguity::testing::random_pool_domain;

namespace {

KnobDomain kd(std::initializer_list<Knob> knobs) { return KnobDomain(knobs); }

const Knob A{"A", {"a1", "a2"}};
const Knob B{"B", {"b0", "b1"}};
const Knob C{"C", {"c0"}};

}  // namespace

TEST_CASE("join of disjoint domains is the union") {
  auto j = join(kd({A}), kd({B}));
  CHECK(j.size() == 2);
  CHECK(j.has("A"));
  CHECK(j.has("B"));
}

TEST_CASE("join is idempotent") {
  auto k = kd({A, B});
  CHECK(join(k, k) == k);
}

TEST_CASE("join unions by name") {
  CHECK(join(kd({A, B}), kd({B, C})) == kd({A, B, C}));
}

TEST_CASE("meet keeps the shared factors") {
  CHECK(meet(kd({A, B}), kd({B, C})) == kd({B}));
  CHECK(meet(kd({A}), kd({B})).empty());
  auto k = kd({A, B});
  CHECK(meet(k, k) == k);
}

TEST_CASE("diff drops the second domain's factors") {
  CHECK(diff(kd({A, B}), kd({B})) == kd({A}));
  CHECK(diff(kd({A}), kd({A})).empty());
  CHECK(diff(kd({A}), kd({B, C})) == kd({A}));  // disjoint: unchanged
}

TEST_CASE("leq is factor containment") {
  CHECK(leq(kd({A}), kd({A, B})));
  CHECK_FALSE(leq(kd({A, B}), kd({A})));
  CHECK(leq(kd({A}), kd({A})));
  CHECK(leq(KnobDomain{}, kd({A})));
}

TEST_CASE("same name with different settings is rejected everywhere") {
  Knob a_other{"A", {"a1", "a3"}};
  CHECK_THROWS_AS(join(kd({A}), kd({a_other})), Error);
  CHECK_THROWS_AS(meet(kd({A}), kd({a_other})), Error);
  CHECK_THROWS_AS(diff(kd({A}), kd({a_other})), Error);
  CHECK_THROWS_AS(leq(kd({A}), kd({a_other})), Error);
  try {
    join(kd({A}), kd({a_other}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NameClash);
  }
}

TEST_CASE("domain construction validates factors") {
  CHECK_THROWS_AS(KnobDomain({Knob{"", {"x"}}}), Error);
  CHECK_THROWS_AS(KnobDomain({Knob{"A", {}}}), Error);
  CHECK_THROWS_AS(KnobDomain({Knob{"A", {"x", "x"}}}), Error);
  CHECK_THROWS_AS(KnobDomain({A, Knob{"A", {"other"}}}), Error);
  // the same factor twice is that factor once
  CHECK(KnobDomain({A, A}) == kd({A}));
}

TEST_CASE("rebuilding a domain from its factors gives an equal domain") {
  auto k = kd({B, A, C});
  CHECK(KnobDomain(k.factors()) == k);
}

TEST_CASE("combine merges settings of disjoint domains") {
  auto ka = kd({A});
  auto kb = kd({B});
  Setting x(ka, {{"A", "a1"}});
  Setting y(kb, {{"B", "b0"}});
  Setting z = combine(ka, x, kb, y);
  CHECK(z.label("A") == "a1");
  CHECK(z.label("B") == "b0");
}

TEST_CASE("combining with the empty domain is the identity") {
  auto ka = kd({A});
  Setting x(ka, {{"A", "a2"}});
  Setting e;
  CHECK(combine(ka, x, KnobDomain{}, e) == x);
  CHECK(combine(KnobDomain{}, e, ka, x) == x);
}

TEST_CASE("combine rejects overlapping domains") {
  auto k1 = kd({A, B});
  auto k2 = kd({B, C});
  Setting x(k1, {{"A", "a1"}, {"B", "b0"}});
  Setting y(k2, {{"B", "b0"}, {"C", "c0"}});
  CHECK_THROWS_AS(combine(k1, x, k2, y), Error);
  try {
    combine(k1, x, k2, y);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlappingDomains);
  }
}

TEST_CASE("combine over three disjoint singletons is association-free") {
  auto ka = kd({A});
  auto kb = kd({B});
  auto kc = kd({C});
  Setting x(ka, {{"A", "a1"}});
  Setting y(kb, {{"B", "b1"}});
  Setting z(kc, {{"C", "c0"}});
  auto left = combine(join(ka, kb), combine(ka, x, kb, y), kc, z);
  auto right = combine(ka, x, join(kb, kc), combine(kb, y, kc, z));
  CHECK(left == right);
}

TEST_CASE("enumeration is lexicographic by name then label index") {
  auto one = enumerate_assignments(kd({A}));
  REQUIRE(one.size() == 2);
  CHECK(one[0].label("A") == "a1");
  CHECK(one[1].label("A") == "a2");

  auto empty = enumerate_assignments(KnobDomain{});
  REQUIRE(empty.size() == 1);  // the empty product has one element
  CHECK(empty[0].entries().empty());

  auto two = enumerate_assignments(kd({A, Knob{"B", {"b1"}}}));
  CHECK(two.size() == 2);

  auto mixed = enumerate_assignments(kd({B, A}));
  REQUIRE(mixed.size() == 4);
  // A sorts before B, so A is the slow index
  CHECK(mixed[0].label("A") == "a1");
  CHECK(mixed[0].label("B") == "b0");
  CHECK(mixed[1].label("A") == "a1");
  CHECK(mixed[1].label("B") == "b1");
  CHECK(mixed[2].label("A") == "a2");
  for (std::size_t i = 0; i < mixed.size(); ++i)
    CHECK(assignment_index(kd({B, A}), mixed[i]) == i);
}

TEST_CASE("assignments validate coverage and labels") {
  auto k = kd({A, B});
  CHECK_THROWS_AS(Setting(k, {{"A", "a1"}}), Error);              // missing B
  CHECK_THROWS_AS(Setting(k, {{"A", "a1"}, {"B", "zz"}}), Error); // bad label
  CHECK_THROWS_AS(Setting(k, {{"A", "a1"}, {"X", "b0"}}), Error); // unknown
}

TEST_CASE("events validate and deduplicate atoms") {
  DetectorDomain d({Detector{"d", {"x", "y"}}});
  AtomicOutcome ax(d, {{"d", "x"}});
  Event e{{ax, ax}};
  CHECK(event_indices(d, e).size() == 1);
  AtomicOutcome bad = AtomicOutcome::unchecked({{"d", "zzz"}});
  CHECK_THROWS_AS(event_indices(d, Event{{bad}}), Error);
}

TEST_CASE("lattice laws hold on random domains") {
  Rng rng(2024);
  for (int trial = 0; trial < 1200; ++trial) {
    KnobDomain x = random_pool_domain(rng);
    KnobDomain y = random_pool_domain(rng);
    KnobDomain z = random_pool_domain(rng);

    CHECK(join(x, y) == join(y, x));
    CHECK(meet(x, y) == meet(y, x));
    CHECK(join(x, join(y, z)) == join(join(x, y), z));
    CHECK(meet(x, meet(y, z)) == meet(meet(x, y), z));
    CHECK(join(x, x) == x);
    CHECK(meet(x, x) == x);
    CHECK(join(x, meet(x, y)) == x);
    CHECK(meet(x, join(x, y)) == x);
    CHECK(meet(x, join(y, z)) == join(meet(x, y), meet(x, z)));
    CHECK(join(x, meet(y, z)) == meet(join(x, y), join(x, z)));
    CHECK(join(diff(y, x), meet(y, x)) == y);
    CHECK(leq(meet(x, y), x));
    CHECK(leq(x, join(x, y)));
  }
}

TEST_CASE("combine is a bijection when the meet is empty") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    KnobDomain x = random_pool_domain(rng);
    KnobDomain y = diff(random_pool_domain(rng), x);
    auto xs = enumerate_assignments(x);
    auto ys = enumerate_assignments(y);
    std::set<Setting> seen;
    for (const auto& a : xs)
      for (const auto& b : ys) seen.insert(combine(x, a, y, b));
    CHECK(seen.size() == xs.size() * ys.size());
    CHECK(seen.size() == enumerate_assignments(join(x, y)).size());
  }
}
