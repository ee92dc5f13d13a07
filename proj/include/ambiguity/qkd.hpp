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

#ifndef AMBIGUITY_QKD_HPP_
#define AMBIGUITY_QKD_HPP_

#include <string>
#include <vector>

#include "ambiguity/explanations.hpp"
#include "ambiguity/measures.hpp"
#include "ambiguity/quantum.hpp"

namespace ambiguity {

// Ideal BB84 at the level of one transmitted qubit. Alice's knob picks one
// of four (bit, basis) preparations, labeled 0Z, 0X, 1Z, 1X; Bob's knob
// picks the measurement basis Z or X; one binary detector reports the bit.
// The standard explanation uses the four qubit states and Bob's projective
// basis measurement.
struct BB84Scenario {
  KnobDomain knob_domain;
  DetectorDomain detector_domain;
  Explanation standard;
  ParamProbMeasure mu;
  Factorization factorization;  // Alice | Bob
};

BB84Scenario bb84_build();

inline const std::vector<std::string>& bb84_alice_labels() {
  static const std::vector<std::string> labels{"0Z", "0X", "1Z", "1X"};
  return labels;
}

struct PairDiscrimination {
  std::string alice1, alice2;
  double trace_distance = 0.0;
  double helstrom_error = 0.0;
  // whether the pair attains the 2^(-1/2) cross-basis distance that the
  // standard security argument leans on
  bool at_bound = false;
};

// Minimum probability of error for deciding between the states of every
// unordered pair of Alice settings under the standard explanation. The
// cross-basis pairs sit at distance 2^(-1/2), error (1 - 2^(-1/2)) / 2.
std::vector<PairDiscrimination> bb84_security_floor(const BB84Scenario& s);

struct BB84Alternative {
  Explanation explanation;  // all-in-state over the Alice | Bob split
  std::vector<PairDiscrimination> errors;
  VerifyReport verification;      // against the same mu
  InequivalenceCheck condition;   // why such an alternative must exist
  double metdev_density_value = 0.0;  // against the standard explanation
};

// A metrically inequivalent explanation of the identical results, under
// which every distinct Alice pair is perfectly distinguishable: the error
// floor disappears.
BB84Alternative bb84_insecure_alternative(const BB84Scenario& s);

}  // namespace ambiguity

#endif  // AMBIGUITY_QKD_HPP_
