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

#ifndef AMBIGUITY_JSON_IO_HPP_
#define AMBIGUITY_JSON_IO_HPP_

#include <string>

#include <json.hpp>

#include "ambiguity/cycle.hpp"
#include "ambiguity/domains.hpp"
#include "ambiguity/explanations.hpp"
#include "ambiguity/measures.hpp"
#include "ambiguity/qkd.hpp"
#include "ambiguity/quantum.hpp"

namespace ambiguity {

using nlohmann::json;

// Writers. Keys come out sorted and floats are printed with 17 significant
// digits by dump_canonical, so identical values give identical bytes.
void to_json(json& j, const Knob& k);
void to_json(json& j, const Detector& d);
void to_json(json& j, const KnobDomain& d);
void to_json(json& j, const DetectorDomain& d);
template <class Factor>
void to_json(json& j, const Assignment<Factor>& a) {
  j = json::object();
  for (const auto& [name, label] : a.entries()) j[name] = label;
}
void to_json(json& j, const ParamProbMeasure& mu);
void to_json(json& j, const PartitionWithMetric& p);
void to_json(json& j, const HermitianMatrix& m);
void to_json(json& j, const DensityOperator& rho);
void to_json(json& j, const Explanation& e);
void to_json(json& j, const VerifyReport& r);
void to_json(json& j, const InequivalenceCheck& c);
void to_json(json& j, const BoundCheck& b);
void to_json(json& j, const BinaryPovm& p);
void to_json(json& j, const PairDiscrimination& p);
void to_json(json& j, const ExtendedDomain& d);
void to_json(json& j, const CycleReport& r);
void to_json(json& j, const BB84Scenario& s);
void to_json(json& j, const BB84Alternative& a);

// Parsers; all validation errors surface as ambiguity::Error.
Knob parse_knob(const json& j);
Detector parse_detector(const json& j);
KnobDomain parse_knob_domain(const json& j);
DetectorDomain parse_detector_domain(const json& j);
Setting parse_setting(const json& j);
AtomicOutcome parse_atom(const json& j);
ParamProbMeasure parse_measure(const json& j,
                               double eps_norm = defaults::eps_norm);
HermitianMatrix parse_matrix(const json& j);
DensityOperator parse_density(const json& j);
Explanation parse_explanation(const json& j);

// Deterministic serialization: sorted keys, two-space indent, floats with
// %.17g (round-trip exact). Rejects non-finite numbers.
std::string dump_canonical(const json& j);

json load_json_file(const std::string& path);

}  // namespace ambiguity

#endif  // AMBIGUITY_JSON_IO_HPP_
