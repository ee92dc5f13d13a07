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

#include "ambiguity/qkd.hpp"

#include <cmath>
#include <map>

namespace ambiguity {

namespace {

Matrix ket_bra(std::initializer_list<Complex> amplitudes) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amplitudes.size()));
  Eigen::Index i = 0;
  for (Complex a : amplitudes) v(i++) = a;
  return v * v.adjoint();
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::map<std::string, DensityOperator> alice_states() {
  std::map<std::string, DensityOperator> states;
  states.emplace("0Z", DensityOperator{HermitianMatrix{ket_bra({1.0, 0.0})}});
  states.emplace("1Z", DensityOperator{HermitianMatrix{ket_bra({0.0, 1.0})}});
  states.emplace("0X", DensityOperator{
                           HermitianMatrix{ket_bra({kInvSqrt2, kInvSqrt2})}});
  states.emplace("1X", DensityOperator{
                           HermitianMatrix{ket_bra({kInvSqrt2, -kInvSqrt2})}});
  return states;
}

std::map<std::string, Povm> bob_measurements() {
  std::map<std::string, Povm> povms;
  povms.emplace("Z", Povm{{HermitianMatrix{ket_bra({1.0, 0.0})},
                           HermitianMatrix{ket_bra({0.0, 1.0})}}});
  povms.emplace("X", Povm{{HermitianMatrix{ket_bra({kInvSqrt2, kInvSqrt2})},
                           HermitianMatrix{ket_bra({kInvSqrt2, -kInvSqrt2})}}});
  return povms;
}

}  // namespace

BB84Scenario bb84_build() {
  KnobDomain alice({Knob{"alice", bb84_alice_labels()}});
  KnobDomain bob({Knob{"bob", {"Z", "X"}}});
  KnobDomain knobs = join(alice, bob);
  DetectorDomain detectors({Detector{"bit", {"0", "1"}}});

  auto states = alice_states();
  auto povms = bob_measurements();

  std::vector<DensityOperator> rho;
  std::vector<Povm> povm;
  for (const auto& k : enumerate_assignments(knobs)) {
    rho.push_back(states.at(k.label("alice")));
    povm.push_back(povms.at(k.label("bob")));
  }
  Explanation standard(2, knobs, detectors, std::move(rho), std::move(povm));
  ParamProbMeasure mu = trace_rule(standard);
  return BB84Scenario{knobs, detectors, std::move(standard), std::move(mu),
                      Factorization{alice, bob}};
}

namespace {

std::vector<PairDiscrimination> pair_table(
    const std::vector<DensityOperator>& by_alice) {
  const auto& labels = bb84_alice_labels();
  std::vector<PairDiscrimination> table;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i; j < labels.size(); ++j) {
      PairDiscrimination row;
      row.alice1 = labels[i];
      row.alice2 = labels[j];
      row.trace_distance = trace_distance(by_alice[i], by_alice[j]);
      row.helstrom_error = helstrom_error(by_alice[i], by_alice[j]);
      row.at_bound = std::abs(row.trace_distance - kInvSqrt2) <= 1e-9;
      table.push_back(row);
    }
  }
  return table;
}

// The state each Alice label gets under an explanation whose rho depends
// only on the Alice part (true for both explanations here).
std::vector<DensityOperator> states_by_alice(const BB84Scenario& s,
                                             const Explanation& e) {
  std::vector<DensityOperator> by_alice;
  for (const auto& label : bb84_alice_labels()) {
    Setting k = Setting::unchecked({{"alice", label}, {"bob", "Z"}});
    by_alice.push_back(e.rho(assignment_index(s.knob_domain, k)));
  }
  return by_alice;
}

}  // namespace

std::vector<PairDiscrimination> bb84_security_floor(const BB84Scenario& s) {
  return pair_table(states_by_alice(s, s.standard));
}

BB84Alternative bb84_insecure_alternative(const BB84Scenario& s) {
  Explanation alt = explain_all_in_state(s.mu, s.factorization);
  VerifyReport verification = verify_explains(alt, s.mu, 1e-10);
  InequivalenceCheck condition =
      check_inequivalence_condition(s.mu, s.factorization);
  std::vector<PairDiscrimination> errors = pair_table(states_by_alice(s, alt));
  double metdev = metdev_density(s.standard, alt);
  return BB84Alternative{std::move(alt), std::move(errors), verification,
                         condition, metdev};
}

}  // namespace ambiguity
