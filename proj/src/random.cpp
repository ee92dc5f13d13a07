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

#include "ambiguity/random.hpp"

#include <cmath>

namespace ambiguity {

std::vector<double> random_distribution(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  for (auto& x : p) x /= sum;
  return p;
}

ParamProbMeasure random_measure(Rng& rng, const KnobDomain& knobs,
                                const DetectorDomain& detectors) {
  const std::size_t n = knobs.assignment_count();
  const std::size_t m = detectors.assignment_count();
  std::vector<double> table;
  table.reserve(n * m);
  for (std::size_t k = 0; k < n; ++k) {
    auto row = random_distribution(rng, m);
    table.insert(table.end(), row.begin(), row.end());
  }
  return ParamProbMeasure(knobs, detectors, std::move(table));
}

namespace {

Matrix ginibre(Rng& rng, std::size_t dim) {
  Matrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c)
      g(r, c) = Complex(rng.normal(), rng.normal());
  return g;
}

Matrix inverse_sqrt(const Matrix& psd) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(psd);
  Eigen::VectorXd vals = solver.eigenvalues();
  Eigen::VectorXcd scaled(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    scaled(i) = Complex(1.0 / std::sqrt(vals(i)), 0.0);
  return solver.eigenvectors() * scaled.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace

DensityOperator random_density(Rng& rng, std::size_t dim) {
  Matrix g = ginibre(rng, dim);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  m = ((m + m.adjoint()) / 2.0).eval();
  return DensityOperator(HermitianMatrix(std::move(m)));
}

Povm random_povm(Rng& rng, std::size_t dim, std::size_t n_atoms) {
  std::vector<Matrix> raw;
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t a = 0; a < n_atoms; ++a) {
    Matrix g = ginibre(rng, dim);
    raw.push_back(g * g.adjoint());
    sum += raw.back();
  }
  Matrix w = inverse_sqrt(sum);
  std::vector<HermitianMatrix> ops;
  ops.reserve(n_atoms);
  for (const auto& m : raw) {
    Matrix e = w * m * w;
    e = ((e + e.adjoint()) / 2.0).eval();
    ops.emplace_back(std::move(e));
  }
  return Povm(std::move(ops));
}

BinaryPovm random_binary_povm(Rng& rng, std::size_t dim) {
  Povm p = random_povm(rng, dim, 2);
  return BinaryPovm{p.op(0), p.op(1)};
}

Explanation random_explanation(Rng& rng, std::size_t dim,
                               const KnobDomain& knobs,
                               const DetectorDomain& detectors) {
  const std::size_t n = knobs.assignment_count();
  const std::size_t m = detectors.assignment_count();
  std::vector<DensityOperator> rho;
  std::vector<Povm> povm;
  for (std::size_t k = 0; k < n; ++k) {
    rho.push_back(random_density(rng, dim));
    povm.push_back(random_povm(rng, dim, m));
  }
  return Explanation(dim, knobs, detectors, std::move(rho), std::move(povm));
}

}  // namespace ambiguity
