// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Superactivation, nonconvexity and Q1-gap constructions built from the
// four-dimensional private Horodecki channel N_H and the 50% erasure channel A_e.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/information.hpp"
#include "qcap/linops.hpp"
#include "qcap/optimizer.hpp"

namespace qcap {

/// Two equiprobable key states |x><x| (x) I/2 on A = A1 A2.
inline Ensemble paper_ensemble_h4() {
  std::vector<QuantumState> states;
  for (std::size_t x = 0; x < 2; ++x) {
    states.push_back(QuantumState::on(tensor_product(mat::ket_bra(2, x, x), mat::maximally_mixed(2)), "A"));
  }
  return Ensemble({0.5, 0.5}, std::move(states));
}

inline std::size_t numerical_rank(const QuantumState& s) { return support_eigenpairs(s.matrix()).size(); }

struct SuperactivationInput {
  PureStateVector pure;  // on (X, A, C)
  QuantumState rho_ac;   // on (A, C)
};

/// |rho>^{XAC} = sum_x sqrt(p_x) |x> |rho_x>^{AC}, each rho_x purified into its own
/// block of C. Blocks follow ensemble order; columns within a block follow
/// support_eigenpairs order (descending eigenvalue).
inline SuperactivationInput superactivation_input(const Ensemble& e) {
  std::vector<std::vector<std::pair<double, ComplexVector>>> supports;
  std::size_t cdim = 0;
  for (const auto& s : e.states()) {
    supports.push_back(support_eigenpairs(s.matrix()));
    cdim += supports.back().size();
  }
  const auto nx = static_cast<Eigen::Index>(e.size());
  const auto da = static_cast<Eigen::Index>(e.shape().total_dim());
  const auto dc = static_cast<Eigen::Index>(cdim);
  ComplexVector psi = ComplexVector::Zero(nx * da * dc);
  Eigen::Index offset = 0;
  for (Eigen::Index x = 0; x < nx; ++x) {
    const double px = e.probabilities()[static_cast<std::size_t>(x)];
    const auto& sup = supports[static_cast<std::size_t>(x)];
    for (std::size_t i = 0; i < sup.size(); ++i) {
      const double w = std::sqrt(px * sup[i].first);
      const auto c = offset + static_cast<Eigen::Index>(i);
      for (Eigen::Index a = 0; a < da; ++a) psi((x * da + a) * dc + c) = w * sup[i].second(a);
    }
    offset += static_cast<Eigen::Index>(sup.size());
  }
  psi /= psi.norm();
  PureStateVector pure(std::move(psi), SubsystemShape({e.size(), e.shape().total_dim(), cdim}, {"X", "A", "C"}));
  QuantumState rho_ac = partial_trace(pure, {"A", "C"});
  return {std::move(pure), std::move(rho_ac)};
}

/// 1/2 (|00><00| + |11><11|)_{A1 C1} (x) |phi+><phi+|_{A2 C2}, reordered to (A1 A2)(C1 C2)
/// and returned on (A, C) with dims (4, 4).
inline QuantumState rho_ac_symmetric() {
  const ComplexMatrix corr = 0.5 * (tensor_product(mat::ket_bra(2, 0, 0), mat::ket_bra(2, 0, 0)) +
                                    tensor_product(mat::ket_bra(2, 1, 1), mat::ket_bra(2, 1, 1)));
  const ComplexVector phi = mat::phi_plus();
  const QuantumState raw(tensor_product(corr, ComplexMatrix(phi * phi.adjoint())),
                         SubsystemShape({2, 2, 2, 2}, {"A1", "C1", "A2", "C2"}));
  const auto ordered = permute_subsystems(raw, {"A1", "A2", "C1", "C2"});
  return ordered.relabeled(SubsystemShape({4, 4}, {"A", "C"}));
}

struct HalvingReport {
  double lhs = 0.0;  // I_c(N (x) A_e, rho^{AC})
  double rhs = 0.0;  // 1/2 (I(X;B) - I(X;E))
  double abs_diff = 0.0;
  std::size_t erasure_input_dim = 0;
};

/// Evaluates both sides of I_c(N (x) A_e, rho^{AC}) = 1/2 (I(X;B) - I(X;E)).
/// The left side goes through the dilated pure state on X B E D F; the right side
/// through Holevo quantities of the ensemble.
inline HalvingReport verify_halving_identity(const KrausChannel& c, const Ensemble& e) {
  detail::require_input_dim(c, e.shape().total_dim(), "verify_halving_identity");
  const auto input = superactivation_input(e);
  const std::size_t cdim = input.pure.shape().dim_of("C");
  const KrausChannel erasure = erasure_channel(cdim, 0.5);
  const auto after_n = extend_and_apply(c, input.pure, "A", "B", "E");            // X C B E
  const auto after_both = extend_and_apply(erasure, after_n, "C", "D", "F");      // X B E D F
  HalvingReport r;
  r.lhs = entropy_of(after_both, {"B", "D"}) - entropy_of(after_both, {"E", "F"});
  r.rhs = 0.5 * private_information_value(c, e);
  r.abs_diff = std::abs(r.lhs - r.rhs);
  r.erasure_input_dim = cdim;
  return r;
}

struct NonconvexitySample {
  double p = 0.0;
  double direct = 0.0;         // I_c(M_p (x) M_p, rho^{AC})
  double decomposition = 0.0;  // four-term expansion
};

struct NonconvexityReport {
  double i1 = 0.0;       // I_c(N_H (x) A_e, rho^{AC})
  double c_bound = 0.0;  // log2 denv(N_H)
  double p_star = 0.0;   // i1 / (c_bound + i1)
  double ic_nh_nh = 0.0;
  double ic_nh_ae = 0.0;
  double ic_ae_nh = 0.0;
  double ic_ae_ae = 0.0;
  std::vector<NonconvexitySample> samples;
};

inline NonconvexityReport nonconvexity_analysis(const std::vector<double>& p_samples,
                                                const KrausChannel& nh = horodecki_channel_4()) {
  for (double p : p_samples) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("nonconvexity_analysis: p = " + std::to_string(p) + " outside [0, 1]");
  }
  const KrausChannel ae = erasure_channel(nh.din(), 0.5);
  const QuantumState rho = rho_ac_symmetric();

  NonconvexityReport r;
  r.ic_nh_nh = coherent_information(tensor(nh, nh), rho);
  r.ic_nh_ae = coherent_information(tensor(nh, ae), rho);
  r.ic_ae_nh = coherent_information(tensor(ae, nh), rho);
  r.ic_ae_ae = coherent_information(tensor(ae, ae), rho);
  r.i1 = r.ic_nh_ae;
  r.c_bound = std::log2(static_cast<double>(nh.denv()));
  r.p_star = r.i1 / (r.c_bound + r.i1);

  for (double p : p_samples) {
    const KrausChannel mp = flagged_mixture(nh, ae, p);
    NonconvexitySample s;
    s.p = p;
    s.direct = coherent_information(tensor(mp, mp), rho);
    s.decomposition = p * p * r.ic_nh_nh + p * (1.0 - p) * (r.ic_nh_ae + r.ic_ae_nh) + (1.0 - p) * (1.0 - p) * r.ic_ae_ae;
    r.samples.push_back(s);
  }
  return r;
}

struct GapReport {
  double q1_single_bound = 0.0;  // optimizer's best I_c(M, rho)
  double q1_pair_value = 0.0;    // I_c(M (x) M, sigma)
  std::size_t din = 0, dout = 0, denv = 0;
  OptimizationResult optimization;
};

/// Input of M (x) M on (A1, A2, A1', A2') that routes rho^{AC} through N_H (x) A_e:
/// |0><0|_{A1} (x) |1><1|_{A1'} (x) rho^{AC} with A -> A2, C -> A2'.
inline QuantumState gap_routed_input() {
  const QuantumState flags(tensor_product(mat::ket_bra(2, 0, 0), mat::ket_bra(2, 1, 1)), SubsystemShape({2, 2}, {"A1", "A1'"}));
  const QuantumState rho = rho_ac_symmetric().relabeled(SubsystemShape({4, 4}, {"A2", "A2'"}));
  const auto ordered = permute_subsystems(tensor_product(flags, rho), {"A1", "A2", "A1'", "A2'"});
  return ordered.relabeled(SubsystemShape({8, 8}, {"A", "A'"}));
}

inline GapReport gap_analysis(const OptimizerConfig& cfg = {}, const KrausChannel& nh = horodecki_channel_4()) {
  const KrausChannel ae = erasure_channel(nh.din(), 0.5);
  const KrausChannel m = switch_channel(nh, ae);
  GapReport r{0.0, 0.0, m.din(), m.dout(), m.denv(), maximize_coherent_information(m, cfg)};
  r.q1_single_bound = r.optimization.best_value;
  r.q1_pair_value = coherent_information(tensor(m, m), gap_routed_input());
  return r;
}

}  // namespace qcap
