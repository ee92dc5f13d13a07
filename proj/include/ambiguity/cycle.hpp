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

#ifndef AMBIGUITY_CYCLE_HPP_
#define AMBIGUITY_CYCLE_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ambiguity/explanations.hpp"
#include "ambiguity/measures.hpp"
#include "ambiguity/quantum.hpp"

namespace ambiguity {

// The expanded knob domain for one cycle round: the given domain, a renamed
// copy of it (measurement side), and one extra binary knob that switches the
// measurement between "replay the original" (b0) and "run the decision
// measurement" (b1).
struct ExtendedDomain {
  KnobDomain base;
  KnobDomain copy;
  KnobDomain extra;
  KnobDomain full;
  std::string b_knob;
  std::string b0;
  std::string b1;
  std::vector<std::pair<std::string, std::string>> copy_to_base;
};

// Copied knob names get "#m" appended (repeatedly, if needed, to stay clear
// of existing names); the switch knob is named "b" (with "#" appended while
// taken).
ExtendedDomain make_extended_domain(const KnobDomain& base);

// Envelop an explanation on the expanded domain: states follow the base part
// of the setting unchanged; at b0 the POVM replays the copied setting's
// original POVM; at b1 it is the minimum-error decision POVM between the
// states of the chosen pair, placed on the first two atoms, independent of
// the copied setting.
Explanation extend_explanation(const Explanation& e, const ExtendedDomain& ext,
                               const Setting& k1, const Setting& k2);

struct CycleOptions {
  std::optional<std::pair<Setting, Setting>> pair;
  double verify_tol = defaults::verify_tol;
  double tol_conflict = defaults::tol_conflict;
};

struct CycleReport {
  ExtendedDomain domain;
  Setting k1, k2;
  // When the pair is auto-selected the explanations are ordered so that
  // distance1 >= distance2; `swapped` records whether that reversed the
  // caller's order.
  bool swapped = false;
  double distance1 = 0.0;  // trace distance of the pair under explanation 1
  double distance2 = 0.0;  // ... under explanation 2
  ParamProbMeasure mu_hat;        // extension of explanation 1's results
  ParamProbMeasure mu_hat_prime;  // extension of explanation 2's results
  double metdev = 0.0;            // metric deviation between the two
  bool conflict = false;          // |distance1 - distance2| > tol_conflict
  AtomicOutcome star_atom{}, star2_atom{};
  // Largest deviation of the diagonal b0 slice from the given results.
  double envelope_dev1 = 0.0, envelope_dev2 = 0.0;
  // Largest error in "b1 probability gap at the designated atom equals the
  // pair's trace distance", over all copied settings.
  double decision_eq_err1 = 0.0, decision_eq_err2 = 0.0;
  // Same check with the gap taken as a sup over events.
  double decision_sup_err1 = 0.0, decision_sup_err2 = 0.0;
};

// One round: verify both explanations against mu, pick (or take) a setting
// pair, envelop both explanations on the expanded domain and compare the
// extended statements of results they imply.
CycleReport run_cycle(const ParamProbMeasure& mu, const Explanation& e,
                      const Explanation& e_prime,
                      const CycleOptions& options = {});

enum class RejectRule { KeepFirst, KeepSecond };

struct IterateOptions {
  std::size_t max_settings = defaults::max_extended_settings;
  double eps_eq = defaults::eps_eq;
  double verify_tol = defaults::verify_tol;
  double tol_conflict = defaults::tol_conflict;
};

// Repeated rounds: each round explains the surviving extended results with
// the two canonical constructions (all-in-measurement, all-in-state), runs
// the cycle, and keeps one of the two conflicting extensions as the next
// round's given results. The knob domain grows as |K|^2 * 2 per round.
std::vector<CycleReport> iterate_cycle(const ParamProbMeasure& mu,
                                       RejectRule rule, std::size_t rounds,
                                       const IterateOptions& options = {});

}  // namespace ambiguity

#endif  // AMBIGUITY_CYCLE_HPP_
