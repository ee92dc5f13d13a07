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

#include "ambiguity/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ambiguity {

namespace {

void validate_table(const std::vector<double>& table, std::size_t n_settings,
                    std::size_t n_atoms, double eps_norm) {
  if (table.size() != n_settings * n_atoms)
    fail(ErrorCode::InvalidInput,
         "table has " + std::to_string(table.size()) + " entries, expected " +
             std::to_string(n_settings * n_atoms));
  for (std::size_t k = 0; k < n_settings; ++k) {
    double sum = 0.0;
    for (std::size_t a = 0; a < n_atoms; ++a) {
      double p = table[k * n_atoms + a];
      if (!std::isfinite(p) || p < -eps_norm || p > 1.0 + eps_norm)
        fail(ErrorCode::NotNormalized,
             "entry " + std::to_string(p) + " at setting " + std::to_string(k) +
                 " outside [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > eps_norm)
      fail(ErrorCode::NotNormalized,
           "row of setting " + std::to_string(k) + " sums to " +
               std::to_string(sum));
  }
}

}  // namespace

ParamProbMeasure::ParamProbMeasure(KnobDomain knobs, DetectorDomain detectors,
                                   std::vector<double> table, double eps_norm)
    : knobs_(std::move(knobs)),
      detectors_(std::move(detectors)),
      settings_(enumerate_assignments(knobs_)),
      atoms_(enumerate_assignments(detectors_)),
      table_(std::move(table)) {
  validate_table(table_, settings_.size(), atoms_.size(), eps_norm);
}

ParamProbMeasure ParamProbMeasure::from_entries(
    KnobDomain knobs, DetectorDomain detectors,
    const std::vector<std::tuple<Setting, AtomicOutcome, double>>& entries,
    double eps_norm) {
  auto settings = enumerate_assignments(knobs);
  auto atoms = enumerate_assignments(detectors);
  std::vector<double> table(settings.size() * atoms.size(), 0.0);
  std::vector<bool> seen(table.size(), false);
  for (const auto& [k, a, p] : entries) {
    std::size_t ki = assignment_index(knobs, k);
    std::size_t ai = assignment_index(detectors, a);
    std::size_t idx = ki * atoms.size() + ai;
    if (seen[idx])
      fail(ErrorCode::InvalidInput, "duplicate entry for a (setting, atom) pair");
    seen[idx] = true;
    table[idx] = p;
  }
  return ParamProbMeasure(std::move(knobs), std::move(detectors),
                          std::move(table), eps_norm);
}

double ParamProbMeasure::value(const Setting& k, const AtomicOutcome& a) const {
  return value(assignment_index(knobs_, k), assignment_index(detectors_, a));
}

double event_prob(const ParamProbMeasure& mu, const Setting& k,
                  const Event& event) {
  std::size_t ki = assignment_index(mu.knob_domain(), k);
  double sum = 0.0;
  for (std::size_t ai : event_indices(mu.detector_domain(), event))
    sum += mu.value(ki, ai);
  return sum;
}

namespace detail {

double half_l1(std::span<const double> a, std::span<const double> b) {
  // sum of positive differences, accumulated smallest-first so the value is
  // independent of atom order
  std::vector<double> pos;
  pos.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (d > 0.0) pos.push_back(d);
  }
  std::sort(pos.begin(), pos.end());
  double sum = 0.0;
  for (double d : pos) sum += d;
  return sum;
}

Clustering single_linkage(const std::vector<std::vector<double>>& dist,
                          double eps) {
  const std::size_t n = dist.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist[i][j] <= eps) parent[root(i)] = root(j);

  Clustering out;
  out.class_of.resize(n);
  std::map<std::size_t, std::size_t> id;  // root -> class index, by first member
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = root(i);
    auto [it, fresh] = id.try_emplace(r, out.classes.size());
    if (fresh) out.classes.emplace_back();
    out.class_of[i] = it->second;
    out.classes[it->second].push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (out.class_of[i] == out.class_of[j]) {
        if (dist[i][j] > eps)
          fail(ErrorCode::ChainAmbiguity,
               "settings " + std::to_string(i) + " and " + std::to_string(j) +
                   " are chained together but " + std::to_string(dist[i][j]) +
                   " apart; pick a different eps");
      } else if (dist[i][j] < 2.0 * eps && !out.near_pair) {
        out.chain_ambiguity = true;
        out.near_pair = {i, j};
      }
    }
  }
  return out;
}

}  // namespace detail

double d_uniform(std::span<const double> nu, std::span<const double> nu_prime,
                 double eps_norm) {
  if (nu.size() != nu_prime.size())
    fail(ErrorCode::DomainMismatch, "distributions over different atom sets");
  for (auto dist : {nu, nu_prime}) {
    double sum = 0.0;
    for (double p : dist) {
      if (!std::isfinite(p) || p < -eps_norm || p > 1.0 + eps_norm)
        fail(ErrorCode::NotNormalized, "entry outside [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > eps_norm)
      fail(ErrorCode::NotNormalized, "distribution sums to " + std::to_string(sum));
  }
  return detail::half_l1(nu, nu_prime);
}

double uniform_metric_ppm(const ParamProbMeasure& mu1,
                          const ParamProbMeasure& mu2) {
  if (mu1.knob_domain() != mu2.knob_domain() ||
      mu1.detector_domain() != mu2.detector_domain())
    fail(ErrorCode::DomainMismatch,
         "uniform metric needs identical knob and detector domains");
  double best = 0.0;
  for (std::size_t k = 0; k < mu1.setting_count(); ++k)
    best = std::max(best, detail::half_l1(mu1.row(k), mu2.row(k)));
  return best;
}

namespace {

// Settings grouped by their bit-exact (row in mu, row in mu') pair. The
// pairwise sup only needs one witness per group.
std::vector<std::size_t> joint_row_reps(const ParamProbMeasure& mu,
                                        const ParamProbMeasure& mu_prime) {
  std::map<std::pair<std::vector<double>, std::vector<double>>, std::size_t>
      groups;
  std::vector<std::size_t> reps;
  for (std::size_t k = 0; k < mu.setting_count(); ++k) {
    auto r1 = mu.row(k);
    auto r2 = mu_prime.row(k);
    std::pair<std::vector<double>, std::vector<double>> key{
        {r1.begin(), r1.end()}, {r2.begin(), r2.end()}};
    if (groups.try_emplace(std::move(key), k).second) reps.push_back(k);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace

double metdev_ppm(const ParamProbMeasure& mu,
                  const ParamProbMeasure& mu_prime) {
  if (mu.knob_domain() != mu_prime.knob_domain())
    fail(ErrorCode::KnobDomainMismatch,
         "metric deviation needs a shared knob domain");
  auto reps = joint_row_reps(mu, mu_prime);
  double best = 0.0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      double d1 = detail::half_l1(mu.row(reps[i]), mu.row(reps[j]));
      double d2 = detail::half_l1(mu_prime.row(reps[i]), mu_prime.row(reps[j]));
      best = std::max(best, std::abs(d1 - d2));
    }
  }
  return best;
}

PartitionWithMetric induced_partition(const ParamProbMeasure& mu,
                                      double eps_eq) {
  const std::size_t n = mu.setting_count();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dist[i][j] = dist[j][i] = detail::half_l1(mu.row(i), mu.row(j));

  auto clusters = detail::single_linkage(dist, eps_eq);

  PartitionWithMetric out;
  out.class_of = clusters.class_of;
  out.chain_ambiguity = clusters.chain_ambiguity;
  if (clusters.near_pair)
    out.near_pair = {mu.settings()[clusters.near_pair->first],
                     mu.settings()[clusters.near_pair->second]};
  for (const auto& cls : clusters.classes) {
    std::vector<Setting> members;
    for (std::size_t i : cls) members.push_back(mu.settings()[i]);
    out.representatives.push_back(members.front());
    out.classes.push_back(std::move(members));
  }
  const std::size_t c = clusters.classes.size();
  out.distances.assign(c, std::vector<double>(c, 0.0));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      out.distances[i][j] = dist[clusters.classes[i][0]][clusters.classes[j][0]];
  return out;
}

bool lemma_metdev_zero(const ParamProbMeasure& mu,
                       const ParamProbMeasure& mu_prime, double eps_eq) {
  if (mu.knob_domain() != mu_prime.knob_domain())
    fail(ErrorCode::KnobDomainMismatch,
         "lemma check needs a shared knob domain");
  auto p1 = induced_partition(mu, eps_eq);
  auto p2 = induced_partition(mu_prime, eps_eq);
  if (p1.class_of != p2.class_of) return false;
  for (std::size_t i = 0; i < p1.distances.size(); ++i)
    for (std::size_t j = 0; j < p1.distances.size(); ++j)
      if (std::abs(p1.distances[i][j] - p2.distances[i][j]) > eps_eq)
        return false;
  return true;
}

ParamProbMeasure marginalize(const ParamProbMeasure& mu,
                             const std::set<std::string>& drop) {
  const DetectorDomain& full = mu.detector_domain();
  for (const auto& name : drop)
    if (!full.has(name))
      fail(ErrorCode::UnknownDetector, "no detector named '" + name + "'");
  if (!drop.empty() && drop.size() == full.size())
    fail(ErrorCode::CannotDropAll, "cannot drop every detector");

  std::vector<Detector> kept;
  for (const auto& d : full.factors())
    if (!drop.count(d.name)) kept.push_back(d);
  DetectorDomain reduced(std::move(kept));

  auto reduced_atoms = enumerate_assignments(reduced);
  const std::size_t n_settings = mu.setting_count();
  std::vector<double> table(n_settings * reduced_atoms.size(), 0.0);
  for (std::size_t a = 0; a < mu.atom_count(); ++a) {
    std::size_t ra =
        assignment_index(reduced, restrict_to(reduced, mu.atoms()[a]));
    for (std::size_t k = 0; k < n_settings; ++k)
      table[k * reduced_atoms.size() + ra] += mu.value(k, a);
  }
  return ParamProbMeasure(mu.knob_domain(), std::move(reduced),
                          std::move(table));
}

}  // namespace ambiguity
