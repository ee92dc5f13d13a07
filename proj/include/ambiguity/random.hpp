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

#ifndef AMBIGUITY_RANDOM_HPP_
#define AMBIGUITY_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "ambiguity/measures.hpp"
#include "ambiguity/quantum.hpp"

namespace ambiguity {

// Seeded generators for randomized checks. Everything downstream of a fixed
// seed is deterministic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Normalized vector of exponential samples.
std::vector<double> random_distribution(Rng& rng, std::size_t n);

ParamProbMeasure random_measure(Rng& rng, const KnobDomain& knobs,
                                const DetectorDomain& detectors);

// Ginibre construction: G G^dagger normalized to unit trace.
DensityOperator random_density(Rng& rng, std::size_t dim);

// Random PSD operators whitened to sum to the identity.
Povm random_povm(Rng& rng, std::size_t dim, std::size_t n_atoms);

BinaryPovm random_binary_povm(Rng& rng, std::size_t dim);

Explanation random_explanation(Rng& rng, std::size_t dim,
                               const KnobDomain& knobs,
                               const DetectorDomain& detectors);

}  // namespace ambiguity

#endif  // AMBIGUITY_RANDOM_HPP_
