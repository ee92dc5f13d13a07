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

#ifndef AMBIGUITY_MEASURES_HPP_
#define AMBIGUITY_MEASURES_HPP_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ambiguity/defaults.hpp"
#include "ambiguity/domains.hpp"

namespace ambiguity {

// A statement of results: one probability distribution over the atomic
// outcomes of a detector domain for every setting of a knob domain. Rows are
// stored dense in the deterministic enumeration order of settings and atoms.
class ParamProbMeasure {
 public:
  // `table` is row-major: table[k * atom_count + a]. Every row must sum to 1
  // within eps_norm and every entry must lie in [-eps_norm, 1 + eps_norm].
  ParamProbMeasure(KnobDomain knobs, DetectorDomain detectors,
                   std::vector<double> table,
                   double eps_norm = defaults::eps_norm);

  // Sparse construction; entries not listed are zero. Duplicate
  // (setting, atom) entries are rejected.
  static ParamProbMeasure from_entries(
      KnobDomain knobs, DetectorDomain detectors,
      const std::vector<std::tuple<Setting, AtomicOutcome, double>>& entries,
      double eps_norm = defaults::eps_norm);

  const KnobDomain& knob_domain() const { return knobs_; }
  const DetectorDomain& detector_domain() const { return detectors_; }

  std::size_t setting_count() const { return settings_.size(); }
  std::size_t atom_count() const { return atoms_.size(); }

  const std::vector<Setting>& settings() const { return settings_; }
  const std::vector<AtomicOutcome>& atoms() const { return atoms_; }

  double value(std::size_t setting, std::size_t atom) const {
    return table_[setting * atoms_.size() + atom];
  }
  double value(const Setting& k, const AtomicOutcome& a) const;

  std::span<const double> row(std::size_t setting) const {
    return {table_.data() + setting * atoms_.size(), atoms_.size()};
  }

  const std::vector<double>& table() const { return table_; }

  friend bool operator==(const ParamProbMeasure&,
                         const ParamProbMeasure&) = default;

 private:
  KnobDomain knobs_;
  DetectorDomain detectors_;
  std::vector<Setting> settings_;
  std::vector<AtomicOutcome> atoms_;
  std::vector<double> table_;
};

// Probability of an event: the sum of its atoms' probabilities.
double event_prob(const ParamProbMeasure& mu, const Setting& k,
                  const Event& event);

// Uniform distance between two outcome distributions over the same atoms:
// the largest probability gap over all events, which equals the sum of the
// positive per-atom differences and half the L1 distance. The positive
// differences are accumulated in sorted order, so relabeling atoms cannot
// change the result even at the last bit.
double d_uniform(std::span<const double> nu, std::span<const double> nu_prime,
                 double eps_norm = defaults::eps_norm);

// Uniform distance between two statements of results over identical domains:
// the largest event-probability gap over all settings and events.
double uniform_metric_ppm(const ParamProbMeasure& mu1,
                          const ParamProbMeasure& mu2);

// Metric deviation of two statements of results sharing a knob domain (their
// detector domains may differ): the largest difference, over unordered
// setting pairs, between the two induced pairwise row distances. Zero means
// the two statements are metrically equivalent.
double metdev_ppm(const ParamProbMeasure& mu, const ParamProbMeasure& mu_prime);

// Quotient of a knob domain by "same outcome distribution", together with
// the induced metric between class representatives. For a finite knob domain
// this determines the induced topology: open sets are unions of classes.
struct PartitionWithMetric {
  std::vector<std::vector<Setting>> classes;  // ordered by first setting index
  std::vector<Setting> representatives;       // lexicographically first member
  std::vector<std::size_t> class_of;          // setting index -> class index
  std::vector<std::vector<double>> distances; // between representatives
  // Set when some cross-class pair sits closer than 2*eps_eq: the clustering
  // is sound but a slightly different eps_eq could merge the pair.
  bool chain_ambiguity = false;
  std::optional<std::pair<Setting, Setting>> near_pair;
};

// Single-linkage clustering of settings at threshold eps_eq, verified: if a
// linked chain ends up wider than eps_eq the partition is rejected
// (ChainAmbiguity error) rather than silently merged.
PartitionWithMetric induced_partition(const ParamProbMeasure& mu,
                                      double eps_eq = defaults::eps_eq);

// True iff the two statements induce the same partition and the same
// quotient distances (within eps_eq). Metric deviation zero implies this.
bool lemma_metdev_zero(const ParamProbMeasure& mu,
                       const ParamProbMeasure& mu_prime,
                       double eps_eq = defaults::eps_eq);

// Restriction to a smaller detector domain: probabilities of the retained
// atoms are sums over the dropped detectors' outcomes.
ParamProbMeasure marginalize(const ParamProbMeasure& mu,
                             const std::set<std::string>& drop);

namespace detail {

// Unchecked core of d_uniform.
double half_l1(std::span<const double> a, std::span<const double> b);

// Single-linkage connected components at threshold eps over a symmetric
// distance matrix. Throws ChainAmbiguity if a component is wider than eps.
struct Clustering {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;
  bool chain_ambiguity = false;
  std::optional<std::pair<std::size_t, std::size_t>> near_pair;
};
Clustering single_linkage(const std::vector<std::vector<double>>& dist,
                          double eps);

}  // namespace detail

}  // namespace ambiguity

#endif  // AMBIGUITY_MEASURES_HPP_
