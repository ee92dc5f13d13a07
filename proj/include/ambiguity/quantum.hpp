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

#ifndef AMBIGUITY_QUANTUM_HPP_
#define AMBIGUITY_QUANTUM_HPP_

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "ambiguity/defaults.hpp"
#include "ambiguity/domains.hpp"
#include "ambiguity/measures.hpp"

namespace ambiguity {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Square complex matrix validated to equal its conjugate transpose within
// 1e-12 * (max |entry| + 1).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m);

  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

 private:
  Matrix m_;
};

// Hermitian, positive semidefinite (within eps_psd), unit trace (within
// trace_tol).
class DensityOperator {
 public:
  explicit DensityOperator(HermitianMatrix m,
                           double eps_psd = defaults::eps_psd,
                           double trace_tol = defaults::trace_tol);

  const Matrix& matrix() const { return m_.matrix(); }
  const HermitianMatrix& hermitian() const { return m_; }
  std::size_t dim() const { return m_.dim(); }

 private:
  HermitianMatrix m_;
};

// Detection operators for one setting, aligned with the atom enumeration of
// the owning detector domain. Each operator PSD, sum equal to the identity
// entrywise within completeness_tol.
class Povm {
 public:
  explicit Povm(std::vector<HermitianMatrix> ops,
                double eps_psd = defaults::eps_psd,
                double completeness_tol = defaults::completeness_tol);

  std::size_t dim() const { return ops_.front().dim(); }
  std::size_t size() const { return ops_.size(); }
  const HermitianMatrix& op(std::size_t atom) const { return ops_[atom]; }
  const std::vector<HermitianMatrix>& ops() const { return ops_; }

 private:
  std::vector<HermitianMatrix> ops_;
};

// A quantum explanation: a Hilbert-space dimension, a density operator per
// setting and a POVM per setting, over a knob domain and a detector domain.
class Explanation {
 public:
  Explanation(std::size_t dim, KnobDomain knobs, DetectorDomain detectors,
              std::vector<DensityOperator> rho, std::vector<Povm> povm);

  std::size_t dim() const { return dim_; }
  const KnobDomain& knob_domain() const { return knobs_; }
  const DetectorDomain& detector_domain() const { return detectors_; }
  const std::vector<Setting>& settings() const { return settings_; }
  const std::vector<AtomicOutcome>& atoms() const { return atoms_; }

  const DensityOperator& rho(std::size_t k) const { return rho_[k]; }
  const Povm& povm(std::size_t k) const { return povm_[k]; }
  const DensityOperator& rho(const Setting& k) const;
  const Povm& povm(const Setting& k) const;

  const std::vector<DensityOperator>& rho_map() const { return rho_; }
  const std::vector<Povm>& povm_map() const { return povm_; }

 private:
  std::size_t dim_;
  KnobDomain knobs_;
  DetectorDomain detectors_;
  std::vector<Setting> settings_;
  std::vector<AtomicOutcome> atoms_;
  std::vector<DensityOperator> rho_;
  std::vector<Povm> povm_;
};

// mu(k, atom) = Tr[rho(k) M(k, atom)].
ParamProbMeasure trace_rule(const Explanation& e);

// Half the trace norm of the difference; the operational distinguishability
// of two states.
double trace_distance(const DensityOperator& rho1, const DensityOperator& rho2);

// Largest absolute eigenvalue.
double op_norm(const HermitianMatrix& a);

// Metric deviation of two parametrized density operators over the same knob
// domain; the Hilbert spaces may differ.
double metdev_density(const KnobDomain& knobs,
                      const std::vector<DensityOperator>& rho,
                      const std::vector<DensityOperator>& rho_prime);
double metdev_density(const Explanation& e, const Explanation& e_prime);

enum class EventSupMethod { Exhaustive, Heuristic };

inline const char* to_string(EventSupMethod m) noexcept {
  return m == EventSupMethod::Exhaustive ? "exhaustive" : "heuristic";
}

struct EventSup {
  double value = 0.0;
  EventSupMethod method = EventSupMethod::Exhaustive;
};

// sup over events of ||sum of the given per-atom Hermitian deltas||.
// Exhaustive for at most `exhaustive_limit` atoms; above that the positive/
// negative-part iteration plus single atoms, labeled as a heuristic.
EventSup sup_event_norm(
    const std::vector<Matrix>& atom_deltas,
    std::size_t exhaustive_limit = defaults::exhaustive_event_limit);

// Largest event-norm gap between the detection operators of two settings.
EventSup povm_pair_distance(const Povm& at_k1, const Povm& at_k2);

struct MetdevPovm {
  double value = 0.0;
  EventSupMethod method = EventSupMethod::Exhaustive;
};

// Metric deviation of two parametrized POVMs over the same knob domain; the
// Hilbert spaces and detector domains may differ.
MetdevPovm metdev_povm(const Explanation& e, const Explanation& e_prime);

struct BinaryPovm {
  HermitianMatrix e_plus;
  HermitianMatrix e_minus;
};

// Minimum-error decision measurement between two states: E+ projects onto
// the strictly positive eigenspace of rho1 - rho2 (eigenvalues within
// 1e-12 * max|eigenvalue| of zero go to E-), E- is its complement. Satisfies
// Tr[E+ (rho1 - rho2)] = trace_distance(rho1, rho2).
BinaryPovm helstrom_povm(const DensityOperator& rho1,
                         const DensityOperator& rho2);

// Minimum probability of error when deciding between two equally likely
// states: (1 - trace_distance) / 2.
double helstrom_error(const DensityOperator& rho1, const DensityOperator& rho2);

struct BoundCheck {
  double lhs = 0.0;   // row distance of the implied statement of results
  double rhs = 0.0;   // trace distance + largest POVM event-norm gap
  bool holds = false; // lhs <= rhs + slack
  EventSupMethod method = EventSupMethod::Exhaustive;
};

// The constraint a statement of results places on any explanation of it:
// the row distance between two settings never exceeds the trace distance of
// their states plus the largest detection-operator gap.
BoundCheck results_bound_check(const Explanation& e, const Setting& k1,
                               const Setting& k2,
                               double slack = defaults::bound_slack);

}  // namespace ambiguity

#endif  // AMBIGUITY_QUANTUM_HPP_
