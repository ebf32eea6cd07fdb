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

// Kraus-form channels and their Stinespring extensions.
//
// Conventions:
//  * The environment of a channel is indexed by its Kraus operators, so
//    denv == kraus().size() and the isometry is V|psi> = sum_k K_k|psi> (x) |k>_E.
//  * Tensor products order Kraus operators lexicographically: (i, j) -> i * n2 + j.
//  * Branching channels (flagged_mixture, switch_channel) pad the smaller branch
//    output with zero rows and append the flag qubit as the last output factor.
//  * The erasure flag is the last output basis vector.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qcap/linops.hpp"

namespace qcap {

class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw ValidationError("KrausChannel: at least one Kraus operator is required");
    dout_ = static_cast<std::size_t>(kraus_.front().rows());
    din_ = static_cast<std::size_t>(kraus_.front().cols());
    if (din_ == 0 || dout_ == 0) throw DimensionError("KrausChannel: empty Kraus operator");
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(din_), static_cast<Eigen::Index>(din_));
    for (std::size_t k = 0; k < kraus_.size(); ++k) {
      const auto& K = kraus_[k];
      if (static_cast<std::size_t>(K.rows()) != dout_ || static_cast<std::size_t>(K.cols()) != din_) {
        throw DimensionError("KrausChannel: Kraus operator " + std::to_string(k) + " is " + std::to_string(K.rows()) + "x" +
                             std::to_string(K.cols()) + ", expected " + std::to_string(dout_) + "x" + std::to_string(din_));
      }
      if (!detail::all_finite(K)) throw ValidationError("KrausChannel: Kraus operator " + std::to_string(k) + " is not finite");
      sum += K.adjoint() * K;
    }
    const double err = detail::max_abs_entry(sum - mat::identity(din_));
    if (err > tol::kCompleteness) {
      throw ValidationError("KrausChannel: completeness violated (max |sum K^dag K - I| = " + std::to_string(err) + ")");
    }
  }

  std::size_t din() const { return din_; }
  std::size_t dout() const { return dout_; }
  std::size_t denv() const { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  std::vector<ComplexMatrix> kraus_;
  std::size_t din_ = 0;
  std::size_t dout_ = 0;
};

/// (dout * denv) x din isometry; row index b * denv + k.
struct StinespringIsometry {
  ComplexMatrix matrix;
  std::size_t dout = 0;
  std::size_t denv = 0;
};

inline StinespringIsometry stinespring(const KrausChannel& c) {
  const auto dout = static_cast<Eigen::Index>(c.dout());
  const auto denv = static_cast<Eigen::Index>(c.denv());
  ComplexMatrix v(dout * denv, static_cast<Eigen::Index>(c.din()));
  for (Eigen::Index k = 0; k < denv; ++k) {
    const auto& K = c.kraus()[static_cast<std::size_t>(k)];
    for (Eigen::Index b = 0; b < dout; ++b) v.row(b * denv + k) = K.row(b);
  }
  const double err = detail::max_abs_entry(v.adjoint() * v - mat::identity(c.din()));
  if (err > tol::kCompleteness) throw ValidationError("stinespring: V^dag V deviates from identity by " + std::to_string(err));
  return {std::move(v), c.dout(), c.denv()};
}

namespace detail {
inline void require_input_dim(const KrausChannel& c, std::size_t d, const char* what) {
  if (d != c.din()) {
    throw DimensionError(std::string(what) + ": state dimension " + std::to_string(d) + " does not match channel input " +
                         std::to_string(c.din()));
  }
}

/// Order that moves `act_on` to the end, spectators keep their relative order.
inline LabelSet act_last_order(const SubsystemShape& shape, const std::string& act_on) {
  LabelSet order;
  for (const auto& l : shape.labels()) {
    if (l != act_on) order.push_back(l);
  }
  order.push_back(act_on);
  return order;
}

inline SubsystemShape extended_shape(const SubsystemShape& shape, const std::string& act_on, const KrausChannel& c,
                                     const std::string& out_label, const std::string& env_label) {
  std::vector<std::size_t> dims;
  LabelSet labels;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape.label(i) == act_on) continue;
    dims.push_back(shape.dim(i));
    labels.push_back(shape.label(i));
  }
  dims.push_back(c.dout());
  labels.push_back(out_label);
  dims.push_back(c.denv());
  labels.push_back(env_label);
  return {std::move(dims), std::move(labels)};
}
}  // namespace detail

/// Applies the Stinespring isometry of `c` to subsystem `act_on`. The result lives on
/// (spectators in original order, out_label, env_label).
inline QuantumState extend_and_apply(const KrausChannel& c, const QuantumState& s, const std::string& act_on,
                                     const std::string& out_label = "B", const std::string& env_label = "E") {
  detail::require_input_dim(c, s.shape().dim_of(act_on), "extend_and_apply");
  const auto shape = detail::extended_shape(s.shape(), act_on, c, out_label, env_label);
  const auto moved = permute_subsystems(s, detail::act_last_order(s.shape(), act_on));
  const std::size_t spect = s.dim() / c.din();
  const ComplexMatrix big = tensor_product(mat::identity(spect), stinespring(c).matrix);
  return QuantumState(big * moved.matrix() * big.adjoint(), shape);
}

/// Pure-state version of extend_and_apply; the dilated vector stays pure.
inline PureStateVector extend_and_apply(const KrausChannel& c, const PureStateVector& v, const std::string& act_on,
                                        const std::string& out_label = "B", const std::string& env_label = "E") {
  detail::require_input_dim(c, v.shape().dim_of(act_on), "extend_and_apply");
  const auto shape = detail::extended_shape(v.shape(), act_on, c, out_label, env_label);
  const auto moved = permute_subsystems(v, detail::act_last_order(v.shape(), act_on));
  const auto din = static_cast<Eigen::Index>(c.din());
  const auto spect = moved.amplitudes().size() / din;
  const ComplexMatrix& V = stinespring(c).matrix;
  const auto dbe = V.rows();
  // Psi(s, a) -> Psi(s, a) V^T, flattened as s * dbe + j.
  ComplexVector out(spect * dbe);
  for (Eigen::Index s = 0; s < spect; ++s) {
    out.segment(s * dbe, dbe) = V * moved.amplitudes().segment(s * din, din);
  }
  return PureStateVector(std::move(out), shape);
}

/// sum_k K rho K^dag, labeled "B".
inline QuantumState output_state(const KrausChannel& c, const QuantumState& rho) {
  detail::require_input_dim(c, rho.dim(), "output_state");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(c.dout()), static_cast<Eigen::Index>(c.dout()));
  for (const auto& K : c.kraus()) out.noalias() += K * rho.matrix() * K.adjoint();
  return QuantumState::on(std::move(out), "B");
}

namespace detail {

/// Nonzero entries of each Kraus operator, used to form channel marginals in
/// O(nnz * d) instead of dense products.
class SparseKraus {
 public:
  struct Entry {
    Eigen::Index row, col;
    Complex value;
  };

  explicit SparseKraus(const KrausChannel& c) : dout_(static_cast<Eigen::Index>(c.dout())), din_(static_cast<Eigen::Index>(c.din())) {
    ops_.reserve(c.denv());
    for (const auto& K : c.kraus()) {
      std::vector<Entry> entries;
      for (Eigen::Index a = 0; a < K.cols(); ++a) {
        for (Eigen::Index b = 0; b < K.rows(); ++b) {
          if (K(b, a) != Complex(0.0, 0.0)) entries.push_back({b, a, K(b, a)});
        }
      }
      ops_.push_back(std::move(entries));
    }
  }

  /// Output sum_k K_k rho K_k^dag and environment E_kl = tr(K_k rho K_l^dag).
  std::pair<ComplexMatrix, ComplexMatrix> marginals(const ComplexMatrix& rho) const {
    const auto n = static_cast<Eigen::Index>(ops_.size());
    ComplexMatrix out = ComplexMatrix::Zero(dout_, dout_);
    ComplexMatrix env(n, n);
    std::vector<ComplexMatrix> krho(ops_.size());
    for (std::size_t k = 0; k < ops_.size(); ++k) {
      ComplexMatrix& p = krho[k];
      p = ComplexMatrix::Zero(dout_, din_);
      for (const auto& e : ops_[k]) p.row(e.row) += e.value * rho.row(e.col);
      // out += P K^dag: column b of K^dag row a -> out(:, b) += conj(K(b, a)) P(:, a)
      for (const auto& e : ops_[k]) out.col(e.row) += std::conj(e.value) * p.col(e.col);
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const ComplexMatrix& p = krho[static_cast<std::size_t>(k)];
      for (Eigen::Index l = k; l < n; ++l) {
        Complex acc{0.0, 0.0};
        for (const auto& e : ops_[static_cast<std::size_t>(l)]) acc += p(e.row, e.col) * std::conj(e.value);
        env(k, l) = acc;
        env(l, k) = std::conj(acc);
      }
      env(k, k) = Complex(env(k, k).real(), 0.0);
    }
    return {std::move(out), std::move(env)};
  }

 private:
  Eigen::Index dout_, din_;
  std::vector<std::vector<Entry>> ops_;
};

inline ComplexMatrix environment_matrix(const KrausChannel& c, const ComplexMatrix& rho) {
  return SparseKraus(c).marginals(rho).second;
}

inline ComplexMatrix output_matrix(const KrausChannel& c, const ComplexMatrix& rho) {
  return SparseKraus(c).marginals(rho).first;
}
}  // namespace detail

/// Complementary-channel output, labeled "E"; basis index k is Kraus operator k.
inline QuantumState environment_state(const KrausChannel& c, const QuantumState& rho) {
  detail::require_input_dim(c, rho.dim(), "environment_state");
  return QuantumState::on(detail::environment_matrix(c, rho.matrix()), "E");
}

inline KrausChannel tensor(const KrausChannel& c1, const KrausChannel& c2) {
  std::vector<ComplexMatrix> ks;
  ks.reserve(c1.denv() * c2.denv());
  for (const auto& a : c1.kraus()) {
    for (const auto& b : c2.kraus()) ks.push_back(tensor_product(a, b));
  }
  return KrausChannel(std::move(ks));
}

/// (c (x) id)(|Phi><Phi|) on ("B", "R") with |Phi> maximally entangled on din (x) din.
inline QuantumState choi_matrix(const KrausChannel& c) {
  const auto din = static_cast<Eigen::Index>(c.din());
  const auto dout = static_cast<Eigen::Index>(c.dout());
  ComplexMatrix choi = ComplexMatrix::Zero(dout * din, dout * din);
  for (const auto& K : c.kraus()) {
    ComplexVector v = ComplexVector::Zero(dout * din);
    for (Eigen::Index i = 0; i < din; ++i) {
      for (Eigen::Index b = 0; b < dout; ++b) v(b * din + i) += K(b, i);
    }
    choi.noalias() += v * v.adjoint();
  }
  choi /= static_cast<double>(din);
  return QuantumState(std::move(choi), SubsystemShape({c.dout(), c.din()}, {"B", "R"}));
}

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

/// Positive-partial-transpose test across `cut` (the systems transposed).
inline PptResult is_ppt(const QuantumState& s, const LabelSet& cut) {
  if (cut.empty() || cut.size() >= s.shape().size()) throw LabelError("is_ppt: cut must be a nontrivial subset of the labels");
  const auto ev = hermitian_eigenvalues(partial_transpose(s, cut));
  return {ev.front() >= -tol::kState, ev.front()};
}

// ---------------------------------------------------------------------------
// Constructors

inline KrausChannel identity_channel(std::size_t d) { return KrausChannel({mat::identity(d)}); }

/// rho -> tr(rho) I/d, with d^2 Kraus operators |i><j|/sqrt(d).
inline KrausChannel completely_depolarizing_channel(std::size_t d) {
  std::vector<ComplexMatrix> ks;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) ks.push_back(mat::ket_bra(d, i, j) / std::sqrt(static_cast<double>(d)));
  }
  return KrausChannel(std::move(ks));
}

/// Erasure channel: input delivered with probability 1 - p, otherwise replaced by the
/// flag |e> = |d>. Kraus: sqrt(1-p) * embed, sqrt(p) |e><i|.
inline KrausChannel erasure_channel(std::size_t d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erasure_channel: probability " + std::to_string(p) + " outside [0, 1]");
  if (d == 0) throw DimensionError("erasure_channel: dimension must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  std::vector<ComplexMatrix> ks;
  ComplexMatrix keep = ComplexMatrix::Zero(n + 1, n);
  keep.topRows(n) = mat::identity(d);
  ks.push_back(std::sqrt(1.0 - p) * keep);
  for (Eigen::Index i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n + 1, n);
    e(n, i) = std::sqrt(p);
    ks.push_back(std::move(e));
  }
  return KrausChannel(std::move(ks));
}

/// Parameters of the four-dimensional private Horodecki channel.
struct HorodeckiParams {
  double q = std::sqrt(2.0) / (1.0 + std::sqrt(2.0));
};

inline ComplexMatrix horodecki_m0() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.5 * std::sqrt(2.0 + std::sqrt(2.0));
  m(1, 1) = 0.5 * std::sqrt(2.0 - std::sqrt(2.0));
  return m;
}

/// Shield operator of the Y branch. The lower entry carries a minus sign: with a
/// positive entry the Choi matrix is not PPT (min PT eigenvalue -0.0732) and the
/// environment learns the key bit. With the sign the channel sits exactly on the
/// PPT boundary and I(X;E) = 0 for the standard key ensemble.
inline ComplexMatrix horodecki_m1() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.5 * std::sqrt(2.0 - std::sqrt(2.0));
  m(1, 1) = -0.5 * std::sqrt(2.0 + std::sqrt(2.0));
  return m;
}

/// Private Horodecki channel on A = A1 A2 (two qubits): six Kraus operators
///   sqrt(q/2) I(x)|0><0|, sqrt(q/2) Z(x)|1><1|, sqrt(q/4) Z(x)Y, sqrt(q/4) I(x)X,
///   sqrt(1-q) X(x)M0,    sqrt(1-q) Y(x)M1.
/// Changing `params.q` breaks PPT-ness; it exists for fault-injection tests.
inline KrausChannel horodecki_channel_4(const HorodeckiParams& params = {}) {
  const double q = params.q;
  const auto I = mat::identity(2);
  const auto X = mat::pauli_x();
  const auto Y = mat::pauli_y();
  const auto Z = mat::pauli_z();
  return KrausChannel({
      std::sqrt(q / 2.0) * tensor_product(I, mat::ket_bra(2, 0, 0)),
      std::sqrt(q / 2.0) * tensor_product(Z, mat::ket_bra(2, 1, 1)),
      std::sqrt(q / 4.0) * tensor_product(Z, Y),
      std::sqrt(q / 4.0) * tensor_product(I, X),
      std::sqrt(1.0 - q) * tensor_product(X, horodecki_m0()),
      std::sqrt(1.0 - q) * tensor_product(Y, horodecki_m1()),
  });
}

namespace detail {
/// Pads K (dout x din) with zero rows to `rows`, then appends flag |f> as last factor.
inline ComplexMatrix embed_with_flag(const ComplexMatrix& K, Eigen::Index rows, std::size_t flag) {
  ComplexMatrix padded = ComplexMatrix::Zero(rows, K.cols());
  padded.topRows(K.rows()) = K;
  return tensor_product(padded, ComplexMatrix(mat::basis(2, flag)));
}
}  // namespace detail

/// p * c1 (x) |0><0| + (1 - p) * c2 (x) |1><1| with the flag revealed at the output.
inline KrausChannel flagged_mixture(const KrausChannel& c1, const KrausChannel& c2, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("flagged_mixture: probability " + std::to_string(p) + " outside [0, 1]");
  if (c1.din() != c2.din()) {
    throw DimensionError("flagged_mixture: input dimensions differ (" + std::to_string(c1.din()) + " vs " + std::to_string(c2.din()) + ")");
  }
  const auto rows = static_cast<Eigen::Index>(std::max(c1.dout(), c2.dout()));
  std::vector<ComplexMatrix> ks;
  for (const auto& K : c1.kraus()) ks.push_back(std::sqrt(p) * detail::embed_with_flag(K, rows, 0));
  for (const auto& L : c2.kraus()) ks.push_back(std::sqrt(1.0 - p) * detail::embed_with_flag(L, rows, 1));
  return KrausChannel(std::move(ks));
}

/// Measures the leading control qubit of A = A1 A2 and applies c1 (outcome 0) or c2
/// (outcome 1) to A2, revealing the outcome as the last output factor.
inline KrausChannel switch_channel(const KrausChannel& c1, const KrausChannel& c2) {
  if (c1.din() != c2.din()) {
    throw DimensionError("switch_channel: input dimensions differ (" + std::to_string(c1.din()) + " vs " + std::to_string(c2.din()) + ")");
  }
  const auto rows = static_cast<Eigen::Index>(std::max(c1.dout(), c2.dout()));
  const ComplexMatrix bra0 = mat::basis(2, 0).transpose();
  const ComplexMatrix bra1 = mat::basis(2, 1).transpose();
  const ComplexMatrix select0 = tensor_product(bra0, mat::identity(c1.din()));
  const ComplexMatrix select1 = tensor_product(bra1, mat::identity(c1.din()));
  std::vector<ComplexMatrix> ks;
  for (const auto& K : c1.kraus()) ks.push_back(detail::embed_with_flag(K * select0, rows, 0));
  for (const auto& L : c2.kraus()) ks.push_back(detail::embed_with_flag(L * select1, rows, 1));
  return KrausChannel(std::move(ks));
}

}  // namespace qcap
