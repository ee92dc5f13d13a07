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

#include "ambiguity/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace ambiguity {

namespace {

std::string fresh_name(std::string candidate, const std::set<std::string>& taken,
                       const char* suffix) {
  while (taken.count(candidate)) candidate += suffix;
  return candidate;
}

}  // namespace

ExtendedDomain make_extended_domain(const KnobDomain& base) {
  ExtendedDomain ext;
  ext.base = base;

  std::set<std::string> taken;
  for (const auto& k : base.factors()) taken.insert(k.name);

  std::vector<Knob> copies;
  for (const auto& k : base.factors()) {
    std::string name = fresh_name(k.name + "#m", taken, "#m");
    taken.insert(name);
    ext.copy_to_base.emplace_back(name, k.name);
    copies.push_back(Knob{name, k.settings});
  }
  ext.copy = KnobDomain(std::move(copies));

  ext.b_knob = fresh_name("b", taken, "#");
  ext.b0 = "b0";
  ext.b1 = "b1";
  ext.extra = KnobDomain({Knob{ext.b_knob, {ext.b0, ext.b1}}});
  ext.full = join(join(ext.base, ext.copy), ext.extra);
  return ext;
}

namespace {

Setting copied_as_base(const ExtendedDomain& ext, const Setting& full_setting) {
  std::map<std::string, std::string> entries;
  for (const auto& [copy_name, base_name] : ext.copy_to_base)
    entries[base_name] = full_setting.label(copy_name);
  return Setting::unchecked(std::move(entries));
}

Setting assemble(const ExtendedDomain& ext, const Setting& k_state,
                 const Setting& k_meas, const std::string& b_label) {
  std::map<std::string, std::string> entries = k_state.entries();
  for (const auto& [copy_name, base_name] : ext.copy_to_base)
    entries[copy_name] = k_meas.label(base_name);
  entries[ext.b_knob] = b_label;
  return Setting::unchecked(std::move(entries));
}

}  // namespace

Explanation extend_explanation(const Explanation& e, const ExtendedDomain& ext,
                               const Setting& k1, const Setting& k2) {
  if (!(e.knob_domain() == ext.base))
    fail(ErrorCode::DomainMismatch,
         "explanation does not live on the extended domain's base");
  if (e.atoms().size() < 2)
    fail(ErrorCode::DetectorTooSmall,
         "need at least two atomic outcomes to host the decision POVM");

  std::size_t i1, i2;
  try {
    i1 = assignment_index(ext.base, k1);
    i2 = assignment_index(ext.base, k2);
  } catch (const Error& err) {
    fail(ErrorCode::PairInvalid, err.what());
  }
  if (i1 == i2)
    fail(ErrorCode::PairInvalid, "the two settings of the pair coincide");

  BinaryPovm decision = helstrom_povm(e.rho(i1), e.rho(i2));
  std::vector<HermitianMatrix> decision_ops;
  decision_ops.reserve(e.atoms().size());
  decision_ops.push_back(decision.e_plus);
  decision_ops.push_back(decision.e_minus);
  const auto d = static_cast<Eigen::Index>(e.dim());
  for (std::size_t a = 2; a < e.atoms().size(); ++a)
    decision_ops.emplace_back(Matrix::Zero(d, d));
  Povm decision_povm(std::move(decision_ops));

  auto full_settings = enumerate_assignments(ext.full);
  std::vector<DensityOperator> rho;
  std::vector<Povm> povm;
  rho.reserve(full_settings.size());
  povm.reserve(full_settings.size());
  for (const auto& s : full_settings) {
    Setting k_state = restrict_to(ext.base, s);
    rho.push_back(e.rho(assignment_index(ext.base, k_state)));
    if (s.label(ext.b_knob) == ext.b0) {
      Setting k_meas = copied_as_base(ext, s);
      povm.push_back(e.povm(assignment_index(ext.base, k_meas)));
    } else {
      povm.push_back(decision_povm);
    }
  }
  return Explanation(e.dim(), ext.full, e.detector_domain(), std::move(rho),
                     std::move(povm));
}

namespace {

struct PairChoice {
  Setting k1, k2;
  double d1 = 0.0, d2 = 0.0;
  bool swapped = false;
};

// Largest |distance gap| pair, ties broken toward the earliest pair in
// enumeration order; also reports the gap's sup (the density metric
// deviation) for the genericity precondition.
PairChoice select_pair(const ParamProbMeasure& mu, const Explanation& e,
                       const Explanation& e_prime, const CycleOptions& options,
                       double* metdev_rho) {
  const auto& settings = mu.settings();
  PairChoice choice;

  double best = -1.0;
  std::size_t best_i = 0, best_j = 0;
  *metdev_rho = 0.0;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    for (std::size_t j = i + 1; j < settings.size(); ++j) {
      double gap = std::abs(trace_distance(e.rho(i), e.rho(j)) -
                            trace_distance(e_prime.rho(i), e_prime.rho(j)));
      *metdev_rho = std::max(*metdev_rho, gap);
      if (gap > best) {
        best = gap;
        best_i = i;
        best_j = j;
      }
    }
  }

  if (options.pair) {
    choice.k1 = options.pair->first;
    choice.k2 = options.pair->second;
    std::size_t i1, i2;
    try {
      i1 = assignment_index(mu.knob_domain(), choice.k1);
      i2 = assignment_index(mu.knob_domain(), choice.k2);
    } catch (const Error& err) {
      fail(ErrorCode::PairInvalid, err.what());
    }
    if (i1 == i2) fail(ErrorCode::PairInvalid, "pair settings coincide");
    choice.d1 = trace_distance(e.rho(i1), e.rho(i2));
    choice.d2 = trace_distance(e_prime.rho(i1), e_prime.rho(i2));
    return choice;
  }

  choice.k1 = settings[best_i];
  choice.k2 = settings[best_j];
  choice.d1 = trace_distance(e.rho(best_i), e.rho(best_j));
  choice.d2 = trace_distance(e_prime.rho(best_i), e_prime.rho(best_j));
  if (choice.d1 < choice.d2) {
    std::swap(choice.d1, choice.d2);
    choice.swapped = true;
  }
  return choice;
}

}  // namespace

CycleReport run_cycle(const ParamProbMeasure& mu, const Explanation& e,
                      const Explanation& e_prime, const CycleOptions& options) {
  for (const Explanation* cand : {&e, &e_prime}) {
    VerifyReport v = verify_explains(*cand, mu, options.verify_tol);
    if (!v.ok)
      fail(ErrorCode::NotAnExplanation,
           "explanation misses the given results by " +
               std::to_string(v.metric));
  }

  double metdev_rho = 0.0;
  PairChoice choice = select_pair(mu, e, e_prime, options, &metdev_rho);
  if (metdev_rho <= options.tol_conflict)
    fail(ErrorCode::NoInequivalentPair,
         "the two explanations are metrically equivalent (deviation " +
             std::to_string(metdev_rho) + ")");

  const Explanation& first = choice.swapped ? e_prime : e;
  const Explanation& second = choice.swapped ? e : e_prime;

  ExtendedDomain ext = make_extended_domain(mu.knob_domain());
  Explanation ext1 = extend_explanation(first, ext, choice.k1, choice.k2);
  Explanation ext2 = extend_explanation(second, ext, choice.k1, choice.k2);

  CycleReport report{.domain = ext,
                     .k1 = choice.k1,
                     .k2 = choice.k2,
                     .swapped = choice.swapped,
                     .distance1 = choice.d1,
                     .distance2 = choice.d2,
                     .mu_hat = trace_rule(ext1),
                     .mu_hat_prime = trace_rule(ext2)};
  report.star_atom = mu.atoms()[0];
  report.star2_atom = mu.atoms()[1];

  // b0 diagonal slice must replay the given results
  for (std::size_t k = 0; k < mu.setting_count(); ++k) {
    const Setting& base = mu.settings()[k];
    Setting diag = assemble(ext, base, base, ext.b0);
    std::size_t fi = assignment_index(ext.full, diag);
    for (std::size_t a = 0; a < mu.atom_count(); ++a) {
      report.envelope_dev1 =
          std::max(report.envelope_dev1,
                   std::abs(report.mu_hat.value(fi, a) - mu.value(k, a)));
      report.envelope_dev2 =
          std::max(report.envelope_dev2,
                   std::abs(report.mu_hat_prime.value(fi, a) - mu.value(k, a)));
    }
  }

  // at b1 the probability gap between k1 and k2 at the designated atom must
  // equal the pair's trace distance, whatever the copied setting
  auto decision_errors = [&](const ParamProbMeasure& mu_hat, double dist,
                             double* eq_err, double* sup_err) {
    for (const Setting& k_meas : mu.settings()) {
      std::size_t f1 =
          assignment_index(ext.full, assemble(ext, choice.k1, k_meas, ext.b1));
      std::size_t f2 =
          assignment_index(ext.full, assemble(ext, choice.k2, k_meas, ext.b1));
      double gap_at_star = std::abs(mu_hat.value(f1, 0) - mu_hat.value(f2, 0));
      *eq_err = std::max(*eq_err, std::abs(gap_at_star - dist));
      double row_gap = detail::half_l1(mu_hat.row(f1), mu_hat.row(f2));
      *sup_err = std::max(*sup_err, std::abs(row_gap - dist));
    }
  };
  decision_errors(report.mu_hat, report.distance1, &report.decision_eq_err1,
                  &report.decision_sup_err1);
  decision_errors(report.mu_hat_prime, report.distance2,
                  &report.decision_eq_err2, &report.decision_sup_err2);

  report.metdev = metdev_ppm(report.mu_hat, report.mu_hat_prime);
  report.conflict =
      std::abs(report.distance1 - report.distance2) > options.tol_conflict;
  return report;
}

std::vector<CycleReport> iterate_cycle(const ParamProbMeasure& mu,
                                       RejectRule rule, std::size_t rounds,
                                       const IterateOptions& options) {
  if (rounds < 1) fail(ErrorCode::InvalidInput, "rounds must be at least 1");
  std::vector<CycleReport> reports;
  reports.reserve(rounds);
  ParamProbMeasure current = mu;
  for (std::size_t r = 0; r < rounds; ++r) {
    std::size_t n = current.setting_count();
    if (n > options.max_settings / (2 * n))
      fail(ErrorCode::GrowthCapExceeded,
           "round " + std::to_string(r + 1) + " would need " +
               std::to_string(n * n * 2) + " settings (cap " +
               std::to_string(options.max_settings) + ")");
    Explanation e = explain_all_in_measurement(current);
    Explanation e_prime =
        explain_all_in_state(current, std::nullopt, options.eps_eq);
    CycleOptions copts;
    copts.verify_tol = options.verify_tol;
    copts.tol_conflict = options.tol_conflict;
    reports.push_back(run_cycle(current, e, e_prime, copts));
    current = rule == RejectRule::KeepFirst ? reports.back().mu_hat
                                            : reports.back().mu_hat_prime;
  }
  return reports;
}

}  // namespace ambiguity
