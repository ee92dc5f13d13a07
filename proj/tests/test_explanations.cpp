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

#include <cmath>

#include "ambiguity/explanations.hpp"
#include "ambiguity/random.hpp"
#include "support/oracles.hpp"

using namespace ambiguity;
using namespace ambiguity::testing;

TEST_CASE("all-in-measurement reproduces any table exactly") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto knobs = single_knob_domain("k", 2 + rng.index(3));
    auto detectors = single_detector_domain("d", 2 + rng.index(3));
    auto mu = random_measure(rng, knobs, detectors);
    auto e = explain_all_in_measurement(mu);
    CHECK(e.dim() == 1);
    CHECK(verify_explains(e, mu, 1e-12).ok);
    CHECK(metdev_density(e, e) == 0.0);
  }
}

TEST_CASE("all-in-state: constant table collapses to dimension one") {
  auto mu = measure_from_rows({{0.3, 0.7}, {0.3, 0.7}}, "k", "d");
  auto e = explain_all_in_state(mu);
  CHECK(e.dim() == 1);
  CHECK(verify_explains(e, mu, 1e-12).ok);
}

TEST_CASE("all-in-state: distinct rows get orthogonal states") {
  auto mu = measure_from_rows({{1.0, 0.0}, {0.0, 1.0}}, "k", "d");
  auto e = explain_all_in_state(mu);
  CHECK(e.dim() == 2);
  CHECK(verify_explains(e, mu, 1e-12).ok);
  CHECK(trace_distance(e.rho(std::size_t{0}), e.rho(std::size_t{1})) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the two extreme constructions are maximally inequivalent") {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    auto knobs = single_knob_domain("k", 2 + rng.index(3));
    auto detectors = single_detector_domain("d", 2 + rng.index(3));
    auto mu = random_measure(rng, knobs, detectors);
    auto state = explain_all_in_state(mu);
    if (state.dim() < 2) continue;  // all rows equal; no second class
    auto meas = explain_all_in_measurement(mu);
    CHECK(metdev_density(meas, state) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(metdev_density(meas, explain_sqrt(mu)) > 0.0);
  }
}

TEST_CASE("sqrt construction: frozen distances") {
  auto orthogonal = measure_from_rows({{1.0, 0.0}, {0.0, 1.0}}, "k", "d");
  auto e1 = explain_sqrt(orthogonal);
  CHECK(trace_distance(e1.rho(std::size_t{0}), e1.rho(std::size_t{1})) ==
        doctest::Approx(1.0).epsilon(1e-12));

  auto equal = measure_from_rows({{0.5, 0.5}, {0.5, 0.5}}, "k", "d");
  auto e2 = explain_sqrt(equal);
  CHECK(trace_distance(e2.rho(std::size_t{0}), e2.rho(std::size_t{1})) <=
        1e-12);

  // rows (1,0) and (1/2,1/2): overlap is sqrt(1/2), distance sqrt(1/2)
  auto half = measure_from_rows({{1.0, 0.0}, {0.5, 0.5}}, "k", "d");
  auto e3 = explain_sqrt(half);
  CHECK(trace_distance(e3.rho(std::size_t{0}), e3.rho(std::size_t{1})) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("sqrt construction matches the closed-form distance") {
  Rng rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t atoms = 2 + rng.index(4);
    auto mu = measure_from_rows(
        {random_distribution(rng, atoms), random_distribution(rng, atoms)},
        "k", "d");
    auto e = explain_sqrt(mu);
    CHECK(verify_explains(e, mu, 1e-10).ok);
    double overlap = 0.0;
    for (std::size_t a = 0; a < atoms; ++a)
      overlap += std::sqrt(mu.value(0, a) * mu.value(1, a));
    double expected = std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
    CHECK(trace_distance(e.rho(std::size_t{0}), e.rho(std::size_t{1})) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("all three constructions explain random tables") {
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    auto knobs = single_knob_domain("k", 2 + rng.index(4));
    auto detectors = single_detector_domain("d", 2 + rng.index(4));
    auto mu = random_measure(rng, knobs, detectors);
    CHECK(verify_explains(explain_all_in_measurement(mu), mu, 1e-10).ok);
    CHECK(verify_explains(explain_all_in_state(mu), mu, 1e-10).ok);
    CHECK(verify_explains(explain_sqrt(mu), mu, 1e-10).ok);
  }
}

TEST_CASE("factored all-in-state: POVM depends only on the measurement part") {
  Rng rng(35);
  KnobDomain a = single_knob_domain("a", 3);
  KnobDomain b = single_knob_domain("bknob", 2);
  KnobDomain full = join(a, b);
  auto detectors = single_detector_domain("d", 3);
  auto mu = random_measure(rng, full, detectors);
  Factorization f{a, b};

  auto e = explain_all_in_state(mu, f);
  CHECK(verify_explains(e, mu, 1e-10).ok);
  CHECK(e.dim() == 3);  // random rows: one class per a-setting

  for (const auto& b_setting : enumerate_assignments(b)) {
    const Povm* reference = nullptr;
    for (const auto& a_setting : enumerate_assignments(a)) {
      Setting k = combine(a, a_setting, b, b_setting);
      const Povm& povm = e.povm(k);
      if (!reference) {
        reference = &povm;
        continue;
      }
      for (std::size_t atom = 0; atom < povm.size(); ++atom)
        CHECK((povm.op(atom).matrix() - reference->op(atom).matrix())
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }
  }

  // distinct a-classes sit at distance one regardless of the b part
  for (const auto& b_setting : enumerate_assignments(b)) {
    Setting k0 = combine(a, enumerate_assignments(a)[0], b, b_setting);
    Setting k1 = combine(a, enumerate_assignments(a)[1], b, b_setting);
    CHECK(trace_distance(e.rho(k0), e.rho(k1)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("factorization validation") {
  KnobDomain a = single_knob_domain("a", 2);
  KnobDomain b = single_knob_domain("bknob", 2);
  KnobDomain full = join(a, b);
  CHECK_NOTHROW(validate_factorization({a, b}, full));
  CHECK_THROWS_AS(validate_factorization({a, a}, full), Error);
  CHECK_THROWS_AS(validate_factorization({a, KnobDomain{}}, full), Error);
  Rng rng(36);
  auto mu = random_measure(rng, full, single_detector_domain("d", 2));
  CHECK_THROWS_AS(explain_all_in_state(mu, Factorization{a, a}), Error);
}

TEST_CASE("verify localizes a planted deviation") {
  auto mu = measure_from_rows({{0.5, 0.5}, {0.25, 0.75}}, "k", "d");
  auto e = explain_all_in_measurement(mu);

  // rebuild with one POVM nudged by 1e-3 (keeping completeness)
  const double delta = 1e-3;
  std::vector<DensityOperator> rho(e.rho_map());
  std::vector<Povm> povm;
  for (std::size_t k = 0; k < e.settings().size(); ++k) {
    if (k == 1) {
      povm.emplace_back(std::vector<HermitianMatrix>{
          HermitianMatrix{Matrix::Constant(1, 1, mu.value(1, 0) + delta)},
          HermitianMatrix{Matrix::Constant(1, 1, mu.value(1, 1) - delta)}});
    } else {
      povm.push_back(e.povm(k));
    }
  }
  Explanation perturbed(1, e.knob_domain(), e.detector_domain(), std::move(rho),
                        std::move(povm));

  auto report = verify_explains(perturbed, mu, 1e-10);
  CHECK_FALSE(report.ok);
  CHECK(report.metric == doctest::Approx(delta).epsilon(1e-9));
  CHECK(report.argmax_setting == mu.settings()[1]);
  CHECK(report.max_entry_dev == doctest::Approx(delta).epsilon(1e-9));

  CHECK(verify_explains(perturbed, mu, 1.0).ok);  // tolerance one passes anything
}

TEST_CASE("verify requires matching domains") {
  auto mu = measure_from_rows({{0.5, 0.5}}, "k", "d");
  auto other = measure_from_rows({{0.5, 0.5}}, "q", "d");
  auto e = explain_all_in_measurement(mu);
  CHECK_THROWS_AS(verify_explains(e, other, 1e-9), Error);
}

TEST_CASE("inequivalence condition: perfectly separated pairs close the door") {
  KnobDomain a = single_knob_domain("a", 2);
  KnobDomain b = single_knob_domain("bknob", 1);
  // rows orthogonal for the two a-settings: a perfect separator exists
  std::vector<double> table{1.0, 0.0, 0.0, 1.0};
  ParamProbMeasure mu(join(a, b), single_detector_domain("d", 2),
                      std::move(table));
  auto check = check_inequivalence_condition(mu, {a, b});
  CHECK_FALSE(check.possible);
  CHECK_FALSE(check.witness.has_value());
}

TEST_CASE("inequivalence condition: constant tables always leave room") {
  KnobDomain a = single_knob_domain("a", 3);
  KnobDomain b = single_knob_domain("bknob", 2);
  std::vector<double> table;
  for (int i = 0; i < 6; ++i) {
    table.push_back(0.5);
    table.push_back(0.5);
  }
  ParamProbMeasure mu(join(a, b), single_detector_domain("d", 2),
                      std::move(table));
  auto check = check_inequivalence_condition(mu, {a, b});
  CHECK(check.possible);
  REQUIRE(check.witness.has_value());
  // first pair in enumeration order
  CHECK(check.witness->first == enumerate_assignments(a)[0]);
  CHECK(check.witness->second == enumerate_assignments(a)[1]);
  CHECK(check.witness_separation == 0.0);
}

TEST_CASE("state partition mirrors the factored equivalence") {
  KnobDomain a = single_knob_domain("a", 2);
  KnobDomain b = single_knob_domain("bknob", 2);
  // both a-settings produce identical rows for every b
  std::vector<double> table{0.2, 0.8, 0.6, 0.4, 0.2, 0.8, 0.6, 0.4};
  ParamProbMeasure mu(join(a, b), single_detector_domain("d", 2),
                      std::move(table));
  auto p = state_partition(mu, Factorization{a, b});
  CHECK(p.classes.size() == 1);
  CHECK(explain_all_in_state(mu, Factorization{a, b}).dim() == 1);
}
