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

#include "ambiguity/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace ambiguity {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> eigensolve(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::InvalidInput, "eigendecomposition failed");
  return solver;
}

// Tr[AB] for matrices of equal size, without forming the product.
Complex product_trace(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

// Bit-exact fingerprint of a matrix, for grouping repeated operators.
std::vector<double> fingerprint(const Matrix& m) {
  std::vector<double> key;
  key.reserve(2 * static_cast<std::size_t>(m.size()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      key.push_back(m(r, c).real());
      key.push_back(m(r, c).imag());
    }
  }
  return key;
}

}  // namespace

HermitianMatrix::HermitianMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    fail(ErrorCode::InvalidInput, "matrix must be square and nonempty");
  double scale = m_.cwiseAbs().maxCoeff() + 1.0;
  double dev = (m_ - m_.adjoint().eval()).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-12 * scale))
    fail(ErrorCode::InvalidInput,
         "matrix is not hermitian (asymmetry " + std::to_string(dev) + ")");
}

DensityOperator::DensityOperator(HermitianMatrix m, double eps_psd,
                                 double trace_tol)
    : m_(std::move(m)) {
  double tr = m_.matrix().trace().real();
  if (std::abs(tr - 1.0) > trace_tol)
    fail(ErrorCode::InvalidInput,
         "density operator trace is " + std::to_string(tr));
  double min_eig = eigensolve(m_.matrix()).eigenvalues().minCoeff();
  if (min_eig < -eps_psd)
    fail(ErrorCode::InvalidInput,
         "density operator has eigenvalue " + std::to_string(min_eig));
}

Povm::Povm(std::vector<HermitianMatrix> ops, double eps_psd,
           double completeness_tol)
    : ops_(std::move(ops)) {
  if (ops_.empty()) fail(ErrorCode::InvalidInput, "POVM with no operators");
  const std::size_t d = ops_.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& op : ops_) {
    if (op.dim() != d)
      fail(ErrorCode::DimMismatch, "POVM operators of mixed dimension");
    double min_eig = eigensolve(op.matrix()).eigenvalues().minCoeff();
    if (min_eig < -eps_psd)
      fail(ErrorCode::InvalidInput,
           "detection operator has eigenvalue " + std::to_string(min_eig));
    sum += op.matrix();
  }
  double dev = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > completeness_tol)
    fail(ErrorCode::InvalidInput,
         "POVM does not sum to the identity (deviation " +
             std::to_string(dev) + ")");
}

Explanation::Explanation(std::size_t dim, KnobDomain knobs,
                         DetectorDomain detectors,
                         std::vector<DensityOperator> rho,
                         std::vector<Povm> povm)
    : dim_(dim),
      knobs_(std::move(knobs)),
      detectors_(std::move(detectors)),
      settings_(enumerate_assignments(knobs_)),
      atoms_(enumerate_assignments(detectors_)),
      rho_(std::move(rho)),
      povm_(std::move(povm)) {
  if (rho_.size() != settings_.size() || povm_.size() != settings_.size())
    fail(ErrorCode::InvalidInput,
         "explanation must assign one state and one POVM to every setting");
  for (const auto& r : rho_)
    if (r.dim() != dim_)
      fail(ErrorCode::DimMismatch, "state dimension differs from declared dim");
  for (const auto& p : povm_) {
    if (p.dim() != dim_)
      fail(ErrorCode::DimMismatch, "POVM dimension differs from declared dim");
    if (p.size() != atoms_.size())
      fail(ErrorCode::DomainMismatch,
           "POVM must assign one operator per atomic outcome");
  }
}

const DensityOperator& Explanation::rho(const Setting& k) const {
  return rho_[assignment_index(knobs_, k)];
}

const Povm& Explanation::povm(const Setting& k) const {
  return povm_[assignment_index(knobs_, k)];
}

ParamProbMeasure trace_rule(const Explanation& e) {
  const std::size_t n = e.settings().size();
  const std::size_t m = e.atoms().size();
  std::vector<double> table(n * m);
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix& state = e.rho(k).matrix();
    for (std::size_t a = 0; a < m; ++a)
      table[k * m + a] = product_trace(state, e.povm(k).op(a).matrix()).real();
  }
  return ParamProbMeasure(e.knob_domain(), e.detector_domain(),
                          std::move(table));
}

double trace_distance(const DensityOperator& rho1,
                      const DensityOperator& rho2) {
  if (rho1.dim() != rho2.dim())
    fail(ErrorCode::DimMismatch, "trace distance needs equal dimensions");
  auto eigs = eigensolve(rho1.matrix() - rho2.matrix()).eigenvalues();
  return 0.5 * eigs.cwiseAbs().sum();
}

double op_norm(const HermitianMatrix& a) {
  return eigensolve(a.matrix()).eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// One representative per group of settings whose (rho, rho') pair repeats
// bit-exactly; the pairwise sup is unchanged by dropping duplicates.
std::vector<std::size_t> joint_state_reps(
    const std::vector<DensityOperator>& rho,
    const std::vector<DensityOperator>& rho_prime) {
  std::map<std::pair<std::vector<double>, std::vector<double>>, std::size_t>
      groups;
  std::vector<std::size_t> reps;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    std::pair<std::vector<double>, std::vector<double>> key{
        fingerprint(rho[k].matrix()), fingerprint(rho_prime[k].matrix())};
    if (groups.try_emplace(std::move(key), k).second) reps.push_back(k);
  }
  return reps;
}

}  // namespace

double metdev_density(const KnobDomain& knobs,
                      const std::vector<DensityOperator>& rho,
                      const std::vector<DensityOperator>& rho_prime) {
  if (rho.size() != rho_prime.size() ||
      rho.size() != enumerate_assignments(knobs).size())
    fail(ErrorCode::KnobDomainMismatch,
         "density maps must cover the same knob domain");
  auto reps = joint_state_reps(rho, rho_prime);
  double best = 0.0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      double d1 = trace_distance(rho[reps[i]], rho[reps[j]]);
      double d2 = trace_distance(rho_prime[reps[i]], rho_prime[reps[j]]);
      best = std::max(best, std::abs(d1 - d2));
    }
  }
  return best;
}

double metdev_density(const Explanation& e, const Explanation& e_prime) {
  if (e.knob_domain() != e_prime.knob_domain())
    fail(ErrorCode::KnobDomainMismatch,
         "metric deviation needs a shared knob domain");
  return metdev_density(e.knob_domain(), e.rho_map(), e_prime.rho_map());
}

EventSup sup_event_norm(const std::vector<Matrix>& atom_deltas,
                        std::size_t exhaustive_limit) {
  if (atom_deltas.empty()) return {0.0, EventSupMethod::Exhaustive};
  const std::size_t n = atom_deltas.size();
  const auto d = atom_deltas.front().rows();

  if (n <= exhaustive_limit) {
    double best = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      Matrix sum = Matrix::Zero(d, d);
      for (std::size_t a = 0; a < n; ++a)
        if (mask & (std::size_t{1} << a)) sum += atom_deltas[a];
      best = std::max(best, eigensolve(sum).eigenvalues().cwiseAbs().maxCoeff());
    }
    return {best, EventSupMethod::Exhaustive};
  }

  // For any unit vector v the best event is the set of atoms with positive
  // expectation <v|delta|v>, worth sum_a max(<v|delta_a|v>, 0). Seed v with
  // the eigenvectors of every delta and of the total, refine a few rounds
  // from the running sum's extreme eigenvector, and also try single atoms.
  double best = 0.0;
  for (const auto& delta : atom_deltas)
    best = std::max(best, eigensolve(delta).eigenvalues().cwiseAbs().maxCoeff());

  auto event_sum = [&](const Eigen::VectorXcd& v, double sign, Matrix* sum) {
    *sum = Matrix::Zero(d, d);
    bool any = false;
    for (const auto& delta : atom_deltas) {
      if (sign * (v.adjoint() * delta * v)(0).real() > 0.0) {
        *sum += delta;
        any = true;
      }
    }
    return any;
  };

  std::vector<Eigen::VectorXcd> seeds;
  Matrix total = Matrix::Zero(d, d);
  for (const auto& delta : atom_deltas) {
    auto solver = eigensolve(delta);
    for (Eigen::Index c = 0; c < d; ++c)
      seeds.push_back(solver.eigenvectors().col(c));
    total += delta;
  }
  {
    auto solver = eigensolve(total);
    for (Eigen::Index c = 0; c < d; ++c)
      seeds.push_back(solver.eigenvectors().col(c));
  }

  for (const auto& seed : seeds) {
    for (double sign : {+1.0, -1.0}) {
      Eigen::VectorXcd v = seed;
      for (int iter = 0; iter < 4; ++iter) {
        Matrix sum;
        if (!event_sum(v, sign, &sum)) break;
        auto solver = eigensolve(sum);
        best = std::max(best, solver.eigenvalues().cwiseAbs().maxCoeff());
        Eigen::Index which;
        (sign * solver.eigenvalues()).maxCoeff(&which);
        Eigen::VectorXcd next = solver.eigenvectors().col(which);
        if ((next - v).norm() < 1e-12) break;
        v = next;
      }
    }
  }
  return {best, EventSupMethod::Heuristic};
}

EventSup povm_pair_distance(const Povm& at_k1, const Povm& at_k2) {
  if (at_k1.size() != at_k2.size())
    fail(ErrorCode::DomainMismatch, "POVMs over different atom sets");
  if (at_k1.dim() != at_k2.dim())
    fail(ErrorCode::DimMismatch, "POVMs of different dimension");
  std::vector<Matrix> deltas;
  deltas.reserve(at_k1.size());
  for (std::size_t a = 0; a < at_k1.size(); ++a)
    deltas.push_back(at_k1.op(a).matrix() - at_k2.op(a).matrix());
  return sup_event_norm(deltas);
}

MetdevPovm metdev_povm(const Explanation& e, const Explanation& e_prime) {
  if (e.knob_domain() != e_prime.knob_domain())
    fail(ErrorCode::KnobDomainMismatch,
         "metric deviation needs a shared knob domain");
  const std::size_t n = e.settings().size();
  MetdevPovm out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      EventSup a = povm_pair_distance(e.povm(i), e.povm(j));
      EventSup b = povm_pair_distance(e_prime.povm(i), e_prime.povm(j));
      if (a.method == EventSupMethod::Heuristic ||
          b.method == EventSupMethod::Heuristic)
        out.method = EventSupMethod::Heuristic;
      out.value = std::max(out.value, std::abs(a.value - b.value));
    }
  }
  return out;
}

BinaryPovm helstrom_povm(const DensityOperator& rho1,
                         const DensityOperator& rho2) {
  if (rho1.dim() != rho2.dim())
    fail(ErrorCode::DimMismatch, "decision POVM needs equal dimensions");
  const auto d = rho1.matrix().rows();
  auto solver = eigensolve(rho1.matrix() - rho2.matrix());
  double tie = 1e-12 * solver.eigenvalues().cwiseAbs().maxCoeff();
  Matrix e_plus = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (solver.eigenvalues()(i) > tie) {
      Eigen::VectorXcd v = solver.eigenvectors().col(i);
      e_plus += v * v.adjoint();
    }
  }
  Matrix e_minus = Matrix::Identity(d, d) - e_plus;
  // symmetrize away rounding so the operators stay valid detection operators
  e_plus = ((e_plus + e_plus.adjoint()) / 2.0).eval();
  e_minus = ((e_minus + e_minus.adjoint()) / 2.0).eval();
  return {HermitianMatrix(std::move(e_plus)), HermitianMatrix(std::move(e_minus))};
}

double helstrom_error(const DensityOperator& rho1,
                      const DensityOperator& rho2) {
  return 0.5 * (1.0 - trace_distance(rho1, rho2));
}

BoundCheck results_bound_check(const Explanation& e, const Setting& k1,
                               const Setting& k2, double slack) {
  std::size_t i1 = assignment_index(e.knob_domain(), k1);
  std::size_t i2 = assignment_index(e.knob_domain(), k2);
  ParamProbMeasure mu = trace_rule(e);
  BoundCheck out;
  out.lhs = detail::half_l1(mu.row(i1), mu.row(i2));
  EventSup gap = povm_pair_distance(e.povm(i1), e.povm(i2));
  out.rhs = trace_distance(e.rho(i1), e.rho(i2)) + gap.value;
  out.method = gap.method;
  out.holds = out.lhs <= out.rhs + slack;
  return out;
}

}  // namespace ambiguity
