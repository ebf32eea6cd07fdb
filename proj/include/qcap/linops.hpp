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

// Dense complex linear algebra over labeled multipartite systems.
//
// Index convention: composite indices are big-endian in subsystem order, i.e.
// for dims (d0, d1, ..., dn-1) the flat index of digits (i0, ..., in-1) is
// i0*d1*...*dn-1 + ... + in-1. This matches the Kronecker product, so
// tensor_product(a, b) lives on shape (a-systems..., b-systems...).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Tolerances shared across the library.
namespace tol {
inline constexpr double kState = 1e-10;        // Hermiticity, trace, PSD floor of states
inline constexpr double kEigenInput = 1e-8;    // max Hermitian drift accepted by eigensolves
inline constexpr double kRank = 1e-12;         // numerical rank / 0 log 0 floor
inline constexpr double kCompleteness = 1e-10; // sum_k K^dag K = I
}  // namespace tol

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct LabelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using LabelSet = std::vector<std::string>;

/// Ordered list of labeled subsystem dimensions.
class SubsystemShape {
 public:
  SubsystemShape() = default;
  SubsystemShape(std::vector<std::size_t> dims, LabelSet labels)
      : dims_(std::move(dims)), labels_(std::move(labels)) {
    if (dims_.size() != labels_.size()) {
      throw LabelError("SubsystemShape: " + std::to_string(dims_.size()) + " dims but " +
                       std::to_string(labels_.size()) + " labels");
    }
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (dims_[i] == 0) throw DimensionError("SubsystemShape: zero dimension for '" + labels_[i] + "'");
      for (std::size_t j = 0; j < i; ++j) {
        if (labels_[i] == labels_[j]) throw LabelError("SubsystemShape: duplicate label '" + labels_[i] + "'");
      }
    }
  }

  static SubsystemShape single(std::size_t dim, std::string label) { return {{dim}, {std::move(label)}}; }

  const std::vector<std::size_t>& dims() const { return dims_; }
  const LabelSet& labels() const { return labels_; }
  std::size_t size() const { return dims_.size(); }
  std::size_t dim(std::size_t pos) const { return dims_.at(pos); }
  const std::string& label(std::size_t pos) const { return labels_.at(pos); }

  std::size_t total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
  }

  bool contains(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
  }

  std::size_t position(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw LabelError("unknown subsystem label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::size_t dim_of(const std::string& label) const { return dims_[position(label)]; }

  /// Stride of subsystem `pos` in the flat index.
  std::size_t stride(std::size_t pos) const {
    std::size_t s = 1;
    for (std::size_t i = pos + 1; i < dims_.size(); ++i) s *= dims_[i];
    return s;
  }

  /// Concatenation (this systems first).
  SubsystemShape concat(const SubsystemShape& other) const {
    auto d = dims_;
    auto l = labels_;
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    l.insert(l.end(), other.labels_.begin(), other.labels_.end());
    return {std::move(d), std::move(l)};
  }

  SubsystemShape with_label(std::size_t pos, std::string label) const {
    auto l = labels_;
    l.at(pos) = std::move(label);
    return {dims_, std::move(l)};
  }

  bool operator==(const SubsystemShape&) const = default;

 private:
  std::vector<std::size_t> dims_;
  LabelSet labels_;
};

namespace detail {

inline double max_abs_entry(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double hermitian_drift(const ComplexMatrix& m) { return max_abs_entry(m - m.adjoint()); }

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
  }
  return true;
}

/// Positions (in shape order) of the given labels; throws on unknown or duplicate labels.
inline std::vector<std::size_t> positions_of(const SubsystemShape& shape, const LabelSet& labels) {
  std::vector<std::size_t> pos;
  pos.reserve(labels.size());
  for (const auto& l : labels) {
    std::size_t p = shape.position(l);
    if (std::find(pos.begin(), pos.end(), p) != pos.end()) throw LabelError("label '" + l + "' repeated");
    pos.push_back(p);
  }
  return pos;
}

/// Flat-index table splitting a composite index into (kept, traced) parts.
/// Entry [k * traced_dim + t] is the full flat index. Kept systems retain shape order.
struct SplitTable {
  std::vector<std::size_t> full_index;
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  SubsystemShape kept_shape;
};

inline SplitTable split_table(const SubsystemShape& shape, std::vector<std::size_t> keep_pos) {
  std::sort(keep_pos.begin(), keep_pos.end());
  std::vector<std::size_t> traced_pos;
  for (std::size_t p = 0; p < shape.size(); ++p) {
    if (!std::binary_search(keep_pos.begin(), keep_pos.end(), p)) traced_pos.push_back(p);
  }
  SplitTable table;
  std::vector<std::size_t> kd;
  LabelSet kl;
  for (auto p : keep_pos) {
    table.kept_dim *= shape.dim(p);
    kd.push_back(shape.dim(p));
    kl.push_back(shape.label(p));
  }
  for (auto p : traced_pos) table.traced_dim *= shape.dim(p);
  table.kept_shape = SubsystemShape(std::move(kd), std::move(kl));

  auto offsets = [&](const std::vector<std::size_t>& positions) {
    std::size_t n = 1;
    for (auto p : positions) n *= shape.dim(p);
    std::vector<std::size_t> off(n, 0);
    std::size_t block = n;
    for (auto p : positions) {
      block /= shape.dim(p);
      const std::size_t st = shape.stride(p);
      for (std::size_t i = 0; i < n; ++i) off[i] += ((i / block) % shape.dim(p)) * st;
    }
    return off;
  };
  const auto koff = offsets(keep_pos);
  const auto toff = offsets(traced_pos);
  table.full_index.resize(table.kept_dim * table.traced_dim);
  for (std::size_t k = 0; k < table.kept_dim; ++k) {
    for (std::size_t t = 0; t < table.traced_dim; ++t) table.full_index[k * table.traced_dim + t] = koff[k] + toff[t];
  }
  return table;
}

/// Map new flat index -> old flat index for reordering subsystems so that new
/// position j holds old subsystem order[j].
inline std::vector<std::size_t> permutation_map(const SubsystemShape& shape, const std::vector<std::size_t>& order) {
  if (order.size() != shape.size()) throw LabelError("permutation must list every subsystem exactly once");
  std::vector<bool> seen(order.size(), false);
  for (auto o : order) {
    if (o >= order.size() || seen[o]) throw LabelError("invalid subsystem permutation");
    seen[o] = true;
  }
  const std::size_t n = shape.total_dim();
  std::vector<std::size_t> map(n, 0);
  std::size_t block = n;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const std::size_t d = shape.dim(order[j]);
    block /= d;
    const std::size_t st = shape.stride(order[j]);
    for (std::size_t i = 0; i < n; ++i) map[i] += ((i / block) % d) * st;
  }
  return map;
}

}  // namespace detail

/// Density matrix over labeled subsystems. Always Hermitian, unit trace, PSD.
class QuantumState {
 public:
  QuantumState(ComplexMatrix matrix, SubsystemShape shape) : matrix_(std::move(matrix)), shape_(std::move(shape)) {
    validate();
  }

  /// Single unlabeled-by-caller system named `label`.
  static QuantumState on(ComplexMatrix matrix, std::string label = "A") {
    const auto d = static_cast<std::size_t>(matrix.rows());
    return QuantumState(std::move(matrix), SubsystemShape::single(d, std::move(label)));
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  const SubsystemShape& shape() const { return shape_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  QuantumState relabeled(SubsystemShape shape) const { return QuantumState(matrix_, std::move(shape)); }

 private:
  void validate();

  ComplexMatrix matrix_;
  SubsystemShape shape_;
};

/// Unit vector over labeled subsystems.
class PureStateVector {
 public:
  PureStateVector(ComplexVector amplitudes, SubsystemShape shape)
      : amplitudes_(std::move(amplitudes)), shape_(std::move(shape)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != shape_.total_dim()) {
      throw DimensionError("PureStateVector: length " + std::to_string(amplitudes_.size()) +
                           " does not match shape dimension " + std::to_string(shape_.total_dim()));
    }
    if (std::abs(amplitudes_.norm() - 1.0) > tol::kState) {
      throw ValidationError("PureStateVector: norm " + std::to_string(amplitudes_.norm()) + " is not 1");
    }
  }

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const SubsystemShape& shape() const { return shape_; }

  QuantumState density() const { return QuantumState(amplitudes_ * amplitudes_.adjoint(), shape_); }

 private:
  ComplexVector amplitudes_;
  SubsystemShape shape_;
};

// ---------------------------------------------------------------------------
// Eigendecomposition

namespace detail {
inline ComplexMatrix checked_symmetrized(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("eigendecomposition requires a square matrix");
  if (!all_finite(m)) throw ValidationError("matrix has non-finite entries");
  const double drift = hermitian_drift(m);
  if (drift > tol::kEigenInput) {
    throw ValidationError("matrix is not Hermitian (max |m - m^dag| = " + std::to_string(drift) + ")");
  }
  return (m + m.adjoint()) * 0.5;
}
}  // namespace detail

/// Real eigenvalues of a Hermitian matrix in ascending order.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = detail::checked_symmetrized(m);
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ValidationError("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

inline EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  const ComplexMatrix h = detail::checked_symmetrized(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw ValidationError("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {{ev.data(), ev.data() + ev.size()}, solver.eigenvectors()};
}

inline void QuantumState::validate() {
  if (matrix_.rows() != matrix_.cols()) throw ValidationError("QuantumState: matrix is not square");
  if (static_cast<std::size_t>(matrix_.rows()) != shape_.total_dim()) {
    throw DimensionError("QuantumState: matrix dimension " + std::to_string(matrix_.rows()) +
                         " does not match shape dimension " + std::to_string(shape_.total_dim()));
  }
  if (!detail::all_finite(matrix_)) throw ValidationError("QuantumState: non-finite entries");
  const double drift = detail::hermitian_drift(matrix_);
  if (drift > tol::kState) throw ValidationError("QuantumState: not Hermitian (drift " + std::to_string(drift) + ")");
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::kState) throw ValidationError("QuantumState: trace " + std::to_string(tr) + " is not 1");
  matrix_ = (matrix_ + matrix_.adjoint()).eval() * 0.5;
  const auto ev = hermitian_eigenvalues(matrix_);
  if (!ev.empty() && ev.front() < -tol::kState) {
    throw ValidationError("QuantumState: not positive semidefinite (min eigenvalue " + std::to_string(ev.front()) + ")");
  }
}

// ---------------------------------------------------------------------------
// Products and reshuffles

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline QuantumState tensor_product(const QuantumState& a, const QuantumState& b) {
  return QuantumState(tensor_product(a.matrix(), b.matrix()), a.shape().concat(b.shape()));
}

inline PureStateVector tensor_product(const PureStateVector& a, const PureStateVector& b) {
  return PureStateVector(tensor_product(a.amplitudes(), b.amplitudes()), a.shape().concat(b.shape()));
}

/// The one routine through which subsystems are reordered. New position j holds
/// the subsystem labeled new_order[j]; every label must appear exactly once.
inline std::pair<ComplexMatrix, SubsystemShape> permute_subsystems(const ComplexMatrix& m, const SubsystemShape& shape,
                                                                   const LabelSet& new_order) {
  if (static_cast<std::size_t>(m.rows()) != shape.total_dim() || m.rows() != m.cols()) {
    throw DimensionError("permute_subsystems: matrix does not match shape");
  }
  const auto order = detail::positions_of(shape, new_order);
  const auto map = detail::permutation_map(shape, order);
  std::vector<std::size_t> nd;
  for (auto o : order) nd.push_back(shape.dim(o));
  ComplexMatrix out(m.rows(), m.cols());
  const auto n = static_cast<Eigen::Index>(map.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = m(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j]));
  }
  return {std::move(out), SubsystemShape(std::move(nd), new_order)};
}

inline QuantumState permute_subsystems(const QuantumState& s, const LabelSet& new_order) {
  auto [m, shape] = permute_subsystems(s.matrix(), s.shape(), new_order);
  return QuantumState(std::move(m), std::move(shape));
}

inline PureStateVector permute_subsystems(const PureStateVector& v, const LabelSet& new_order) {
  const auto order = detail::positions_of(v.shape(), new_order);
  const auto map = detail::permutation_map(v.shape(), order);
  std::vector<std::size_t> nd;
  for (auto o : order) nd.push_back(v.shape().dim(o));
  ComplexVector out(v.amplitudes().size());
  for (std::size_t i = 0; i < map.size(); ++i) out(static_cast<Eigen::Index>(i)) = v.amplitudes()(static_cast<Eigen::Index>(map[i]));
  return PureStateVector(std::move(out), SubsystemShape(std::move(nd), new_order));
}

// ---------------------------------------------------------------------------
// Partial operations

/// Reduced matrix on `keep` (kept systems stay in their original order). No validation of the input.
inline std::pair<ComplexMatrix, SubsystemShape> partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                                                              const LabelSet& keep) {
  if (static_cast<std::size_t>(m.rows()) != shape.total_dim()) throw DimensionError("partial_trace: matrix does not match shape");
  const auto table = detail::split_table(shape, detail::positions_of(shape, keep));
  const std::size_t dk = table.kept_dim, dt = table.traced_dim;
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < dt; ++t) {
        acc += m(static_cast<Eigen::Index>(table.full_index[a * dt + t]), static_cast<Eigen::Index>(table.full_index[b * dt + t]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return {std::move(out), table.kept_shape};
}

inline QuantumState partial_trace(const QuantumState& s, const LabelSet& keep) {
  if (keep.empty()) throw LabelError("partial_trace: keep set must be nonempty");
  auto [m, shape] = partial_trace(s.matrix(), s.shape(), keep);
  return QuantumState(std::move(m), std::move(shape));
}

/// Reduced density matrix of a pure state, computed as Psi Psi^dag without
/// materializing the full projector.
inline QuantumState partial_trace(const PureStateVector& v, const LabelSet& keep) {
  if (keep.empty()) throw LabelError("partial_trace: keep set must be nonempty");
  const auto table = detail::split_table(v.shape(), detail::positions_of(v.shape(), keep));
  const auto dk = static_cast<Eigen::Index>(table.kept_dim);
  const auto dt = static_cast<Eigen::Index>(table.traced_dim);
  ComplexMatrix psi(dk, dt);
  for (Eigen::Index k = 0; k < dk; ++k) {
    for (Eigen::Index t = 0; t < dt; ++t) psi(k, t) = v.amplitudes()(static_cast<Eigen::Index>(table.full_index[k * dt + t]));
  }
  return QuantumState(psi * psi.adjoint(), table.kept_shape);
}

/// Transpose of the indices belonging to `transpose_on`. The result may fail to be PSD.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemShape& shape, const LabelSet& transpose_on) {
  if (static_cast<std::size_t>(m.rows()) != shape.total_dim()) throw DimensionError("partial_transpose: matrix does not match shape");
  const auto pos = detail::positions_of(shape, transpose_on);
  std::vector<std::pair<std::size_t, std::size_t>> sys;  // (stride, dim)
  for (auto p : pos) sys.emplace_back(shape.stride(p), shape.dim(p));
  const auto n = static_cast<std::size_t>(m.rows());
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t ti = i, tj = j;
      for (const auto& [st, d] : sys) {
        const std::size_t di = (i / st) % d;
        const std::size_t dj = (j / st) % d;
        ti = ti - di * st + dj * st;
        tj = tj - dj * st + di * st;
      }
      out(static_cast<Eigen::Index>(ti), static_cast<Eigen::Index>(tj)) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const QuantumState& s, const LabelSet& transpose_on) {
  return partial_transpose(s.matrix(), s.shape(), transpose_on);
}

// ---------------------------------------------------------------------------
// Purification

/// Eigenpairs above the rank threshold, descending by eigenvalue with ties broken
/// by the index of each eigenvector's leading component. Each eigenvector's phase is
/// fixed so its leading (largest-magnitude, first) component is real positive.
inline std::vector<std::pair<double, ComplexVector>> support_eigenpairs(const ComplexMatrix& m) {
  const auto es = hermitian_eigensystem(m);
  struct Entry {
    double value;
    Eigen::Index lead;
    ComplexVector vec;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < es.values.size(); ++i) {
    if (es.values[i] <= tol::kRank) continue;
    ComplexVector v = es.vectors.col(static_cast<Eigen::Index>(i));
    Eigen::Index lead = 0;
    double best = -1.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v(k)) > best + 1e-12) {
        best = std::abs(v(k));
        lead = k;
      }
    }
    v *= std::conj(v(lead)) / std::abs(v(lead));
    entries.push_back({es.values[i], lead, std::move(v)});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (std::abs(a.value - b.value) > 1e-12) return a.value > b.value;
    return a.lead < b.lead;
  });
  std::vector<std::pair<double, ComplexVector>> out;
  out.reserve(entries.size());
  for (auto& e : entries) out.emplace_back(e.value, std::move(e.vec));
  return out;
}

/// Purification on (state systems..., reference) with reference dimension = numerical rank.
inline PureStateVector purify(const QuantumState& s, const std::string& reference_label = "R") {
  if (s.shape().contains(reference_label)) throw LabelError("purify: reference label '" + reference_label + "' already in use");
  const auto pairs = support_eigenpairs(s.matrix());
  const auto d = static_cast<Eigen::Index>(s.dim());
  const auto r = static_cast<Eigen::Index>(pairs.size());
  ComplexVector psi = ComplexVector::Zero(d * r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double w = std::sqrt(pairs[static_cast<std::size_t>(i)].first);
    const auto& v = pairs[static_cast<std::size_t>(i)].second;
    for (Eigen::Index a = 0; a < d; ++a) psi(a * r + i) = w * v(a);
  }
  psi /= psi.norm();
  return PureStateVector(std::move(psi), s.shape().concat(SubsystemShape::single(static_cast<std::size_t>(r), reference_label)));
}

// ---------------------------------------------------------------------------
// Common matrices

namespace mat {
inline ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}
inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
/// |i><j| in dimension d.
inline ComplexMatrix ket_bra(std::size_t d, std::size_t i, std::size_t j) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}
inline ComplexVector basis(std::size_t d, std::size_t i) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}
/// (|00> + |11>)/sqrt(2).
inline ComplexVector phi_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}
inline ComplexMatrix maximally_mixed(std::size_t d) {
  return identity(d) / static_cast<double>(d);
}
}  // namespace mat

}  // namespace qcap
