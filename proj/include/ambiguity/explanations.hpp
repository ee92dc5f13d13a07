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

#ifndef AMBIGUITY_EXPLANATIONS_HPP_
#define AMBIGUITY_EXPLANATIONS_HPP_

#include <optional>
#include <utility>

#include "ambiguity/measures.hpp"
#include "ambiguity/quantum.hpp"

namespace ambiguity {

// Split of a knob domain into knobs that control the state and knobs that
// control the measurement. The two parts must partition the domain's knobs.
struct Factorization {
  KnobDomain state_knobs;  // A
  KnobDomain meas_knobs;   // B
};

void validate_factorization(const Factorization& f, const KnobDomain& full);

// The inverse problem has many solutions; these are three canonical members
// of the inverse image of a given statement of results, spanning the
// extremes of pairwise state distance.

// dim 1: the trivial state, all structure in the detection operators. Every
// pair of states is at trace distance 0.
Explanation explain_all_in_measurement(const ParamProbMeasure& mu);

// One orthogonal pure state per equivalence class of (state-)settings, all
// structure in the states. Distinct classes sit at trace distance 1. With a
// factorization, classes live on the A-part and the POVM depends only on
// the B-part.
Explanation explain_all_in_state(
    const ParamProbMeasure& mu,
    const std::optional<Factorization>& f = std::nullopt,
    double eps_eq = defaults::eps_eq);

// Pure states with amplitudes sqrt(mu(k, atom)) against a fixed basis
// measurement; pairwise distances are sqrt(1 - F^2) for the Bhattacharyya
// coefficient F of the two rows.
Explanation explain_sqrt(const ParamProbMeasure& mu);

// The equivalence used by explain_all_in_state: two A-settings are the same
// iff their rows agree (within eps_eq) for every B-setting. Classes are over
// A-settings; distances are the largest row distance over B-settings.
PartitionWithMetric state_partition(
    const ParamProbMeasure& mu,
    const std::optional<Factorization>& f = std::nullopt,
    double eps_eq = defaults::eps_eq);

struct VerifyReport {
  bool ok = false;
  double metric = 0.0;  // uniform distance between trace rule output and mu
  double tol = 0.0;
  double max_entry_dev = 0.0;
  Setting argmax_setting;
  AtomicOutcome argmax_atom;
};

// Does the explanation reproduce the statement of results within tol?
VerifyReport verify_explains(const Explanation& e, const ParamProbMeasure& mu,
                             double tol = defaults::verify_tol);

struct InequivalenceCheck {
  // True unless every pair of A-settings is separated by some B-setting at
  // row distance 1; when true, metrically inequivalent state assignments
  // explaining the same results exist.
  bool possible = false;
  std::optional<std::pair<Setting, Setting>> witness;  // A-settings
  double witness_separation = 0.0;  // best separating distance for the witness
};

InequivalenceCheck check_inequivalence_condition(
    const ParamProbMeasure& mu, const Factorization& f,
    double eps_eq = defaults::eps_eq);

}  // namespace ambiguity

#endif  // AMBIGUITY_EXPLANATIONS_HPP_
