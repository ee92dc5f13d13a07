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

#include "ambiguity/explanations.hpp"

#include <algorithm>
#include <cmath>

namespace ambiguity {

void validate_factorization(const Factorization& f, const KnobDomain& full) {
  if (!meet(f.state_knobs, f.meas_knobs).empty())
    fail(ErrorCode::FactorizationInvalid,
         "state and measurement knobs overlap");
  if (!(join(f.state_knobs, f.meas_knobs) == full))
    fail(ErrorCode::FactorizationInvalid,
         "state and measurement knobs do not cover the knob domain");
}

namespace {

Factorization effective_factorization(const ParamProbMeasure& mu,
                                      const std::optional<Factorization>& f) {
  if (f) {
    validate_factorization(*f, mu.knob_domain());
    return *f;
  }
  return {mu.knob_domain(), KnobDomain{}};
}

struct StateClasses {
  Factorization f;
  std::vector<Setting> a_settings;
  std::vector<Setting> b_settings;
  detail::Clustering clusters;  // over a_settings
  std::vector<std::vector<double>> dist;
};

StateClasses split_and_cluster(const ParamProbMeasure& mu,
                               const std::optional<Factorization>& f_opt,
                               double eps_eq) {
  StateClasses out;
  out.f = effective_factorization(mu, f_opt);
  out.a_settings = enumerate_assignments(out.f.state_knobs);
  out.b_settings = enumerate_assignments(out.f.meas_knobs);

  auto full_index = [&](const Setting& a, const Setting& b) {
    return assignment_index(
        mu.knob_domain(),
        combine(out.f.state_knobs, a, out.f.meas_knobs, b));
  };

  const std::size_t n = out.a_settings.size();
  out.dist.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = 0.0;
      for (const auto& b : out.b_settings) {
        std::size_t ki = full_index(out.a_settings[i], b);
        std::size_t kj = full_index(out.a_settings[j], b);
        d = std::max(d, detail::half_l1(mu.row(ki), mu.row(kj)));
      }
      out.dist[i][j] = out.dist[j][i] = d;
    }
  }
  out.clusters = detail::single_linkage(out.dist, eps_eq);
  return out;
}

}  // namespace

Explanation explain_all_in_measurement(const ParamProbMeasure& mu) {
  const std::size_t n = mu.setting_count();
  const std::size_t m = mu.atom_count();
  DensityOperator trivial{HermitianMatrix{Matrix::Ones(1, 1)}};
  std::vector<DensityOperator> rho(n, trivial);
  std::vector<Povm> povm;
  povm.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<HermitianMatrix> ops;
    ops.reserve(m);
    for (std::size_t a = 0; a < m; ++a)
      ops.emplace_back(Matrix::Constant(1, 1, mu.value(k, a)));
    povm.emplace_back(std::move(ops));
  }
  return Explanation(1, mu.knob_domain(), mu.detector_domain(), std::move(rho),
                     std::move(povm));
}

Explanation explain_all_in_state(const ParamProbMeasure& mu,
                                 const std::optional<Factorization>& f,
                                 double eps_eq) {
  auto sc = split_and_cluster(mu, f, eps_eq);
  const std::size_t dim = sc.clusters.classes.size();
  const std::size_t m = mu.atom_count();

  // class representative: the lexicographically first A-setting of the class
  std::vector<std::size_t> rep_a;
  rep_a.reserve(dim);
  for (const auto& cls : sc.clusters.classes) rep_a.push_back(cls.front());

  std::vector<DensityOperator> class_state;
  class_state.reserve(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    Matrix proj = Matrix::Zero(dim, dim);
    proj(c, c) = 1.0;
    class_state.emplace_back(HermitianMatrix{std::move(proj)});
  }

  // POVM depends only on the B-part of the setting
  std::vector<Povm> povm_by_b;
  povm_by_b.reserve(sc.b_settings.size());
  for (const auto& b : sc.b_settings) {
    std::vector<HermitianMatrix> ops;
    ops.reserve(m);
    std::vector<std::size_t> row_of_class(dim);
    for (std::size_t c = 0; c < dim; ++c)
      row_of_class[c] = assignment_index(
          mu.knob_domain(), combine(sc.f.state_knobs, sc.a_settings[rep_a[c]],
                                    sc.f.meas_knobs, b));
    for (std::size_t a = 0; a < m; ++a) {
      Matrix op = Matrix::Zero(dim, dim);
      for (std::size_t c = 0; c < dim; ++c)
        op(c, c) = mu.value(row_of_class[c], a);
      ops.emplace_back(std::move(op));
    }
    povm_by_b.emplace_back(std::move(ops));
  }

  std::vector<DensityOperator> rho;
  std::vector<Povm> povm;
  rho.reserve(mu.setting_count());
  povm.reserve(mu.setting_count());
  for (const auto& k : mu.settings()) {
    Setting a = restrict_to(sc.f.state_knobs, k);
    Setting b = restrict_to(sc.f.meas_knobs, k);
    std::size_t ai = assignment_index(sc.f.state_knobs, a);
    std::size_t bi = assignment_index(sc.f.meas_knobs, b);
    rho.push_back(class_state[sc.clusters.class_of[ai]]);
    povm.push_back(povm_by_b[bi]);
  }
  return Explanation(dim, mu.knob_domain(), mu.detector_domain(),
                     std::move(rho), std::move(povm));
}

Explanation explain_sqrt(const ParamProbMeasure& mu) {
  const std::size_t n = mu.setting_count();
  const std::size_t m = mu.atom_count();

  std::vector<HermitianMatrix> basis;
  basis.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    Matrix proj = Matrix::Zero(m, m);
    proj(a, a) = 1.0;
    basis.emplace_back(std::move(proj));
  }
  Povm fixed(std::move(basis));

  std::vector<DensityOperator> rho;
  rho.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Eigen::VectorXcd psi(m);
    for (std::size_t a = 0; a < m; ++a)
      psi(static_cast<Eigen::Index>(a)) =
          std::sqrt(std::max(0.0, mu.value(k, a)));
    rho.emplace_back(HermitianMatrix{psi * psi.adjoint()});
  }
  return Explanation(m, mu.knob_domain(), mu.detector_domain(), std::move(rho),
                     std::vector<Povm>(n, fixed));
}

PartitionWithMetric state_partition(const ParamProbMeasure& mu,
                                    const std::optional<Factorization>& f,
                                    double eps_eq) {
  auto sc = split_and_cluster(mu, f, eps_eq);
  PartitionWithMetric out;
  out.class_of = sc.clusters.class_of;
  out.chain_ambiguity = sc.clusters.chain_ambiguity;
  if (sc.clusters.near_pair)
    out.near_pair = {sc.a_settings[sc.clusters.near_pair->first],
                     sc.a_settings[sc.clusters.near_pair->second]};
  for (const auto& cls : sc.clusters.classes) {
    std::vector<Setting> members;
    for (std::size_t i : cls) members.push_back(sc.a_settings[i]);
    out.representatives.push_back(members.front());
    out.classes.push_back(std::move(members));
  }
  const std::size_t c = out.classes.size();
  out.distances.assign(c, std::vector<double>(c, 0.0));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      out.distances[i][j] =
          sc.dist[sc.clusters.classes[i][0]][sc.clusters.classes[j][0]];
  return out;
}

VerifyReport verify_explains(const Explanation& e, const ParamProbMeasure& mu,
                             double tol) {
  if (e.knob_domain() != mu.knob_domain() ||
      e.detector_domain() != mu.detector_domain())
    fail(ErrorCode::DomainMismatch,
         "explanation and measure live on different domains");
  ParamProbMeasure implied = trace_rule(e);
  VerifyReport report;
  report.tol = tol;
  report.metric = uniform_metric_ppm(implied, mu);
  report.ok = report.metric <= tol;
  for (std::size_t k = 0; k < mu.setting_count(); ++k) {
    for (std::size_t a = 0; a < mu.atom_count(); ++a) {
      double dev = std::abs(implied.value(k, a) - mu.value(k, a));
      if (dev > report.max_entry_dev) {
        report.max_entry_dev = dev;
        report.argmax_setting = mu.settings()[k];
        report.argmax_atom = mu.atoms()[a];
      }
    }
  }
  if (report.max_entry_dev == 0.0) {
    report.argmax_setting = mu.settings().front();
    report.argmax_atom = mu.atoms().front();
  }
  return report;
}

InequivalenceCheck check_inequivalence_condition(const ParamProbMeasure& mu,
                                                 const Factorization& f,
                                                 double eps_eq) {
  validate_factorization(f, mu.knob_domain());
  auto a_settings = enumerate_assignments(f.state_knobs);
  auto b_settings = enumerate_assignments(f.meas_knobs);
  auto full_index = [&](const Setting& a, const Setting& b) {
    return assignment_index(mu.knob_domain(),
                            combine(f.state_knobs, a, f.meas_knobs, b));
  };

  InequivalenceCheck out;
  for (std::size_t i = 0; i < a_settings.size(); ++i) {
    for (std::size_t j = i + 1; j < a_settings.size(); ++j) {
      double sep = 0.0;
      for (const auto& b : b_settings) {
        std::size_t ki = full_index(a_settings[i], b);
        std::size_t kj = full_index(a_settings[j], b);
        sep = std::max(sep, detail::half_l1(mu.row(ki), mu.row(kj)));
      }
      if (sep < 1.0 - eps_eq) {
        // no B-setting tells these two A-settings apart with certainty
        out.possible = true;
        out.witness = {a_settings[i], a_settings[j]};
        out.witness_separation = sep;
        return out;
      }
    }
  }
  out.possible = false;
  return out;
}

}  // namespace ambiguity
