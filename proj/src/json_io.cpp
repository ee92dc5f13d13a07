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

#include "ambiguity/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace ambiguity {

namespace {

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
  return *it;
}

std::map<std::string, std::string> parse_string_map(const json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidInput, "expected an object");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string())
      fail(ErrorCode::InvalidInput, "assignment labels must be strings");
    out[k] = v.get<std::string>();
  }
  return out;
}

}  // namespace

void to_json(json& j, const Knob& k) {
  j = json{{"name", k.name}, {"settings", k.settings}};
}

void to_json(json& j, const Detector& d) {
  j = json{{"name", d.name}, {"outcomes", d.outcomes}};
}

void to_json(json& j, const KnobDomain& d) {
  j = json{{"knobs", d.factors()}};
}

void to_json(json& j, const DetectorDomain& d) {
  j = json{{"detectors", d.factors()}};
}

void to_json(json& j, const ParamProbMeasure& mu) {
  json entries = json::array();
  for (std::size_t k = 0; k < mu.setting_count(); ++k) {
    for (std::size_t a = 0; a < mu.atom_count(); ++a) {
      entries.push_back(json{{"setting", mu.settings()[k]},
                             {"atom", mu.atoms()[a]},
                             {"p", mu.value(k, a)}});
    }
  }
  j = json{{"knobDomain", mu.knob_domain()},
           {"detectorDomain", mu.detector_domain()},
           {"entries", std::move(entries)}};
}

void to_json(json& j, const PartitionWithMetric& p) {
  j = json{{"classes", p.classes},
           {"representatives", p.representatives},
           {"distances", p.distances},
           {"chainAmbiguity", p.chain_ambiguity}};
  if (p.near_pair)
    j["nearPair"] = json::array({p.near_pair->first, p.near_pair->second});
}

void to_json(json& j, const HermitianMatrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.matrix().rows(); ++r)
    for (Eigen::Index c = 0; c < m.matrix().cols(); ++c)
      entries.push_back(
          json::array({m.matrix()(r, c).real(), m.matrix()(r, c).imag()}));
  j = json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

void to_json(json& j, const DensityOperator& rho) { to_json(j, rho.hermitian()); }

void to_json(json& j, const Explanation& e) {
  json rho = json::array();
  json povm = json::array();
  for (std::size_t k = 0; k < e.settings().size(); ++k) {
    rho.push_back(json{{"setting", e.settings()[k]}, {"matrix", e.rho(k)}});
    json ops = json::array();
    for (std::size_t a = 0; a < e.atoms().size(); ++a)
      ops.push_back(
          json{{"atom", e.atoms()[a]}, {"matrix", e.povm(k).op(a)}});
    povm.push_back(
        json{{"setting", e.settings()[k]}, {"operators", std::move(ops)}});
  }
  j = json{{"dim", e.dim()},
           {"knobDomain", e.knob_domain()},
           {"detectorDomain", e.detector_domain()},
           {"rho", std::move(rho)},
           {"povm", std::move(povm)}};
}

void to_json(json& j, const VerifyReport& r) {
  j = json{{"ok", r.ok},
           {"metric", r.metric},
           {"tol", r.tol},
           {"maxEntryDeviation", r.max_entry_dev},
           {"argmaxSetting", r.argmax_setting},
           {"argmaxAtom", r.argmax_atom}};
}

void to_json(json& j, const InequivalenceCheck& c) {
  j = json{{"possible", c.possible}};
  if (c.witness) {
    j["witness"] = json::array({c.witness->first, c.witness->second});
    j["witnessSeparation"] = c.witness_separation;
  }
}

void to_json(json& j, const BoundCheck& b) {
  j = json{{"lhs", b.lhs},
           {"rhs", b.rhs},
           {"holds", b.holds},
           {"eventSupMethod", to_string(b.method)}};
}

void to_json(json& j, const BinaryPovm& p) {
  j = json{{"ePlus", p.e_plus}, {"eMinus", p.e_minus}};
}

void to_json(json& j, const PairDiscrimination& p) {
  j = json{{"alice1", p.alice1},
           {"alice2", p.alice2},
           {"traceDistance", p.trace_distance},
           {"helstromError", p.helstrom_error},
           {"atBound", p.at_bound}};
}

void to_json(json& j, const ExtendedDomain& d) {
  json mapping = json::object();
  for (const auto& [copy_name, base_name] : d.copy_to_base)
    mapping[copy_name] = base_name;
  j = json{{"base", d.base},     {"copy", d.copy}, {"extra", d.extra},
           {"full", d.full},     {"bKnob", d.b_knob}, {"b0", d.b0},
           {"b1", d.b1},         {"copyToBase", std::move(mapping)}};
}

void to_json(json& j, const CycleReport& r) {
  j = json{{"domain", r.domain},
           {"k1", r.k1},
           {"k2", r.k2},
           {"swapped", r.swapped},
           {"distance1", r.distance1},
           {"distance2", r.distance2},
           {"muHat", r.mu_hat},
           {"muHatPrime", r.mu_hat_prime},
           {"metdev", r.metdev},
           {"conflict", r.conflict},
           {"starAtom", r.star_atom},
           {"star2Atom", r.star2_atom},
           {"envelopeDeviation1", r.envelope_dev1},
           {"envelopeDeviation2", r.envelope_dev2},
           {"decisionEqualityError1", r.decision_eq_err1},
           {"decisionEqualityError2", r.decision_eq_err2},
           {"decisionSupError1", r.decision_sup_err1},
           {"decisionSupError2", r.decision_sup_err2}};
}

void to_json(json& j, const BB84Scenario& s) {
  j = json{{"knobDomain", s.knob_domain},
           {"detectorDomain", s.detector_domain},
           {"standard", s.standard},
           {"mu", s.mu}};
}

void to_json(json& j, const BB84Alternative& a) {
  j = json{{"explanation", a.explanation},
           {"errors", a.errors},
           {"verification", a.verification},
           {"condition", a.condition},
           {"metdevDensity", a.metdev_density_value}};
}

Knob parse_knob(const json& j) {
  return Knob{field(j, "name").get<std::string>(),
              field(j, "settings").get<std::vector<std::string>>()};
}

Detector parse_detector(const json& j) {
  return Detector{field(j, "name").get<std::string>(),
                  field(j, "outcomes").get<std::vector<std::string>>()};
}

KnobDomain parse_knob_domain(const json& j) {
  std::vector<Knob> knobs;
  for (const auto& item : field(j, "knobs")) knobs.push_back(parse_knob(item));
  return KnobDomain(std::move(knobs));
}

DetectorDomain parse_detector_domain(const json& j) {
  std::vector<Detector> detectors;
  for (const auto& item : field(j, "detectors"))
    detectors.push_back(parse_detector(item));
  return DetectorDomain(std::move(detectors));
}

Setting parse_setting(const json& j) {
  return Setting::unchecked(parse_string_map(j));
}

AtomicOutcome parse_atom(const json& j) {
  return AtomicOutcome::unchecked(parse_string_map(j));
}

ParamProbMeasure parse_measure(const json& j, double eps_norm) {
  KnobDomain knobs = parse_knob_domain(field(j, "knobDomain"));
  DetectorDomain detectors = parse_detector_domain(field(j, "detectorDomain"));
  std::vector<std::tuple<Setting, AtomicOutcome, double>> entries;
  for (const auto& item : field(j, "entries")) {
    entries.emplace_back(parse_setting(field(item, "setting")),
                         parse_atom(field(item, "atom")),
                         field(item, "p").get<double>());
  }
  return ParamProbMeasure::from_entries(std::move(knobs), std::move(detectors),
                                        entries, eps_norm);
}

HermitianMatrix parse_matrix(const json& j) {
  const auto dim = field(j, "dim").get<std::size_t>();
  const auto& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != dim * dim)
    fail(ErrorCode::InvalidInput, "matrix entries must hold dim^2 pairs");
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::size_t i = 0;
  for (const auto& pair : entries) {
    if (!pair.is_array() || pair.size() != 2)
      fail(ErrorCode::InvalidInput, "complex entries must be [re, im] pairs");
    m(static_cast<Eigen::Index>(i / dim), static_cast<Eigen::Index>(i % dim)) =
        Complex(pair[0].get<double>(), pair[1].get<double>());
    ++i;
  }
  return HermitianMatrix(std::move(m));
}

DensityOperator parse_density(const json& j) {
  return DensityOperator(parse_matrix(j));
}

Explanation parse_explanation(const json& j) {
  const auto dim = field(j, "dim").get<std::size_t>();
  KnobDomain knobs = parse_knob_domain(field(j, "knobDomain"));
  DetectorDomain detectors = parse_detector_domain(field(j, "detectorDomain"));
  auto settings = enumerate_assignments(knobs);
  auto atoms = enumerate_assignments(detectors);

  std::vector<std::optional<DensityOperator>> rho(settings.size());
  for (const auto& item : field(j, "rho")) {
    std::size_t k = assignment_index(knobs, parse_setting(field(item, "setting")));
    if (rho[k]) fail(ErrorCode::InvalidInput, "duplicate rho entry");
    rho[k] = DensityOperator(parse_matrix(field(item, "matrix")));
  }

  std::vector<std::optional<Povm>> povm(settings.size());
  for (const auto& item : field(j, "povm")) {
    std::size_t k = assignment_index(knobs, parse_setting(field(item, "setting")));
    if (povm[k]) fail(ErrorCode::InvalidInput, "duplicate povm entry");
    std::vector<std::optional<HermitianMatrix>> ops(atoms.size());
    for (const auto& op : field(item, "operators")) {
      std::size_t a = assignment_index(detectors, parse_atom(field(op, "atom")));
      if (ops[a]) fail(ErrorCode::InvalidInput, "duplicate POVM operator");
      ops[a] = parse_matrix(field(op, "matrix"));
    }
    std::vector<HermitianMatrix> filled;
    for (std::size_t a = 0; a < ops.size(); ++a) {
      if (!ops[a])
        fail(ErrorCode::InvalidInput, "POVM misses an atomic outcome");
      filled.push_back(std::move(*ops[a]));
    }
    povm[k] = Povm(std::move(filled));
  }

  std::vector<DensityOperator> rho_filled;
  std::vector<Povm> povm_filled;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    if (!rho[k]) fail(ErrorCode::InvalidInput, "rho misses a setting");
    if (!povm[k]) fail(ErrorCode::InvalidInput, "povm misses a setting");
    rho_filled.push_back(std::move(*rho[k]));
    povm_filled.push_back(std::move(*povm[k]));
  }
  return Explanation(dim, std::move(knobs), std::move(detectors),
                     std::move(rho_filled), std::move(povm_filled));
}

namespace {

void append_double(std::string& out, double v) {
  if (!std::isfinite(v))
    fail(ErrorCode::InvalidInput, "cannot serialize a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void append_canonical(std::string& out, const json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::null:
      out += "null";
      break;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case json::value_t::number_float:
      append_double(out, j.get<double>());
      break;
    case json::value_t::string:
      out += json(j.get<std::string>()).dump();
      break;
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        append_canonical(out, j[i], depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      for (const auto& [key, value] : j.items()) {
        out += pad_in + json(key).dump() + ": ";
        append_canonical(out, value, depth + 1);
        if (++i < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      break;
    }
    default:
      fail(ErrorCode::InvalidInput, "unsupported JSON value type");
  }
}

}  // namespace

std::string dump_canonical(const json& j) {
  std::string out;
  append_canonical(out, j, 0);
  out += "\n";
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidInput,
         "malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

}  // namespace ambiguity
