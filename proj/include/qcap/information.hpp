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

// Entropic quantities. All logarithms are base 2.

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/linops.hpp"

namespace qcap {

/// Shannon entropy of a spectrum. Eigenvalues in (-1e-10, 1e-12] count as zero;
/// anything below -1e-10 is a PSD violation.
inline double entropy_of_spectrum(std::span<const double> spectrum) {
  double h = 0.0;
  for (double l : spectrum) {
    if (l < -tol::kState) throw ValidationError("entropy: negative eigenvalue " + std::to_string(l));
    if (l <= tol::kRank) continue;
    h -= l * std::log2(l);
  }
  return h;
}

inline double shannon_entropy(std::span<const double> probabilities) { return entropy_of_spectrum(probabilities); }

namespace detail {

/// Groups indices into connected components of the exact-nonzero off-diagonal
/// pattern. Branching channels (flags, erasure) give block-diagonal marginals with
/// structurally zero couplings, and eigensolving the blocks separately is exact.
inline std::vector<std::vector<Eigen::Index>> nonzero_blocks(const ComplexMatrix& m) {
  const auto n = m.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (m(i, j) != Complex(0.0, 0.0) || m(j, i) != Complex(0.0, 0.0)) {
        const auto a = find(i), b = find(j);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(i);
  }
  return blocks;
}

inline double matrix_entropy(const ComplexMatrix& m) {
  const auto blocks = nonzero_blocks(m);
  if (blocks.size() <= 1) return entropy_of_spectrum(hermitian_eigenvalues(m));
  double h = 0.0;
  for (const auto& idx : blocks) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    if (k == 1) {
      const double v = m(idx[0], idx[0]).real();
      const double single[] = {v};
      h += entropy_of_spectrum(single);
      continue;
    }
    ComplexMatrix sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
    h += entropy_of_spectrum(hermitian_eigenvalues(sub));
  }
  return h;
}
}  // namespace detail

inline double von_neumann_entropy(const QuantumState& s) { return detail::matrix_entropy(s.matrix()); }

/// Entropy of the marginal on `labels`; the empty set has entropy 0.
inline double entropy_of(const QuantumState& s, const LabelSet& labels) {
  if (labels.empty()) return 0.0;
  if (labels.size() == s.shape().size()) {
    detail::positions_of(s.shape(), labels);
    return von_neumann_entropy(s);
  }
  return von_neumann_entropy(partial_trace(s, labels));
}

inline double entropy_of(const PureStateVector& v, const LabelSet& labels) {
  if (labels.empty() || labels.size() == v.shape().size()) {
    detail::positions_of(v.shape(), labels);
    return 0.0;
  }
  return von_neumann_entropy(partial_trace(v, labels));
}

/// I_c = H(B) - H(E) for input rho.
inline double coherent_information(const KrausChannel& c, const QuantumState& rho) {
  detail::require_input_dim(c, rho.dim(), "coherent_information");
  const auto [out, env] = detail::SparseKraus(c).marginals(rho.matrix());
  return detail::matrix_entropy(out) - detail::matrix_entropy(env);
}

/// Probability-weighted states on a common system.
class Ensemble {
 public:
  Ensemble(std::vector<double> probabilities, std::vector<QuantumState> states)
      : probabilities_(std::move(probabilities)), states_(std::move(states)) {
    if (probabilities_.size() != states_.size()) throw ValidationError("Ensemble: probability and state counts differ");
    if (states_.empty()) throw ValidationError("Ensemble: empty");
    double total = 0.0;
    for (double p : probabilities_) {
      if (!(p >= 0.0)) throw ValidationError("Ensemble: negative probability");
      total += p;
    }
    if (std::abs(total - 1.0) > tol::kState) throw ValidationError("Ensemble: probabilities sum to " + std::to_string(total));
    for (const auto& s : states_) {
      if (!(s.shape() == states_.front().shape())) throw ValidationError("Ensemble: states live on different systems");
    }
  }

  const std::vector<double>& probabilities() const { return probabilities_; }
  const std::vector<QuantumState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const SubsystemShape& shape() const { return states_.front().shape(); }

  QuantumState average() const {
    ComplexMatrix avg = ComplexMatrix::Zero(states_.front().matrix().rows(), states_.front().matrix().cols());
    for (std::size_t x = 0; x < size(); ++x) avg += probabilities_[x] * states_[x].matrix();
    return QuantumState(std::move(avg), shape());
  }

 private:
  std::vector<double> probabilities_;
  std::vector<QuantumState> states_;
};

/// Holevo quantity H(sum p_x sigma_x) - sum p_x H(sigma_x) with sigma_x = map(rho_x).
template <typename Map>
double holevo_information(const Ensemble& e, Map&& map) {
  std::vector<QuantumState> images;
  images.reserve(e.size());
  for (const auto& s : e.states()) images.push_back(map(s));
  ComplexMatrix avg = ComplexMatrix::Zero(images.front().matrix().rows(), images.front().matrix().cols());
  double conditional = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) {
    avg += e.probabilities()[x] * images[x].matrix();
    if (e.probabilities()[x] > 0.0) conditional += e.probabilities()[x] * von_neumann_entropy(images[x]);
  }
  return detail::matrix_entropy(avg) - conditional;
}

/// I(X;B) - I(X;E) for the ensemble sent through c.
inline double private_information_value(const KrausChannel& c, const Ensemble& e) {
  detail::require_input_dim(c, e.shape().total_dim(), "private_information_value");
  const double ixb = holevo_information(e, [&](const QuantumState& s) { return output_state(c, s); });
  const double ixe = holevo_information(e, [&](const QuantumState& s) { return environment_state(c, s); });
  return ixb - ixe;
}

/// sum_x p_x |x><x| (x) rho_x on (x_label, ensemble systems...).
inline QuantumState cq_state(const Ensemble& e, const std::string& x_label = "X") {
  const auto n = static_cast<Eigen::Index>(e.size());
  const auto d = e.states().front().matrix().rows();
  ComplexMatrix m = ComplexMatrix::Zero(n * d, n * d);
  for (Eigen::Index x = 0; x < n; ++x) {
    m.block(x * d, x * d, d, d) = e.probabilities()[static_cast<std::size_t>(x)] * e.states()[static_cast<std::size_t>(x)].matrix();
  }
  return QuantumState(std::move(m), SubsystemShape::single(e.size(), x_label).concat(e.shape()));
}

namespace detail {
inline void require_disjoint(const std::vector<const LabelSet*>& sets) {
  LabelSet seen;
  for (const auto* s : sets) {
    for (const auto& l : *s) {
      if (std::find(seen.begin(), seen.end(), l) != seen.end()) throw LabelError("label '" + l + "' appears in more than one set");
      seen.push_back(l);
    }
  }
}

inline LabelSet join(const LabelSet& a, const LabelSet& b) {
  LabelSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}
inline LabelSet join(const LabelSet& a, const LabelSet& b, const LabelSet& c) { return join(join(a, b), c); }
}  // namespace detail

/// I(X;B|C) = H(XC) + H(BC) - H(XBC) - H(C). `c` may be empty.
template <typename State>
double conditional_mutual_information(const State& s, const LabelSet& x, const LabelSet& b, const LabelSet& c) {
  detail::require_disjoint({&x, &b, &c});
  if (x.empty() || b.empty()) throw LabelError("conditional_mutual_information: x and b must be nonempty");
  return entropy_of(s, detail::join(x, c)) + entropy_of(s, detail::join(b, c)) - entropy_of(s, detail::join(x, b, c)) -
         entropy_of(s, c);
}

template <typename State>
double mutual_information(const State& s, const LabelSet& x, const LabelSet& b) {
  return conditional_mutual_information(s, x, b, {});
}

/// One-state value of 1/2 (I(X;B|C) - I(X;E|C)) after sending A through c.
template <typename State>
double assisted_rate_lower_bound(const KrausChannel& c, const State& s, const std::string& x_label = "X",
                                 const std::string& a_label = "A", const std::string& c_label = "C") {
  const auto out = extend_and_apply(c, s, a_label, "B", "E");
  const LabelSet x{x_label}, cond{c_label};
  return 0.5 * (conditional_mutual_information(out, x, {"B"}, cond) - conditional_mutual_information(out, x, {"E"}, cond));
}

}  // namespace qcap
